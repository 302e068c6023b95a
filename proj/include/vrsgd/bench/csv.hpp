#pragma once

#include "vrsgd/solver/record.hpp"

#include <filesystem>
#include <iosfwd>
#include <vector>

namespace vrsgd::bench {

inline constexpr const char* kTraceHeader = "epoch,effective_passes,wall_seconds,objective,gap";

void write_csv(const RunRecord<double>& record, std::ostream& out);
void emit_csv(const RunRecord<double>& record, const std::filesystem::path& path);

/// Reads a trace written by emit_csv. Epoch lengths are not stored and come back as 0.
std::vector<EpochEntry<double>> read_csv(std::istream& in);
std::vector<EpochEntry<double>> read_csv(const std::filesystem::path& path);

}  // namespace vrsgd::bench
