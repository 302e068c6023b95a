#pragma once

#include "vrsgd/bench/config.hpp"
#include "vrsgd/data.hpp"
#include "vrsgd/solver/record.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace vrsgd::bench {

struct RunOutcome {
  std::string solver;
  std::uint64_t seed = 0;
  RunRecord<double> record;
  std::filesystem::path csv;
};

struct SummaryRow {
  std::string solver;
  std::uint64_t seed = 0;
  RunStatus status = RunStatus::ok;
  double tolerance = 0;
  std::optional<double> passes_to_tolerance;
  std::optional<double> seconds_to_tolerance;
  std::optional<double> final_gap;
  double final_objective = 0;
  bool monotone = true;
};

struct ExperimentReport {
  std::optional<double> optimum;
  std::vector<RunOutcome> runs;
  std::vector<SummaryRow> summary;
  std::filesystem::path summary_path;
};

/// First trace row whose gap is at most `tol`.
std::optional<EpochEntry<double>> first_below(const RunRecord<double>& record, double tol);

/// Objective (or gap) never rises between epochs, ignoring rounding once the
/// gap is below `floor`.
bool is_monotone(const RunRecord<double>& record, double floor);

Dataset<double> load_dataset(const ExperimentConfig& cfg);

/// Runs every (solver, seed), writes one CSV per run plus summary.csv.
ExperimentReport run_experiment(const ExperimentConfig& cfg);

void write_summary(const std::vector<SummaryRow>& rows, const std::filesystem::path& path);

}  // namespace vrsgd::bench
