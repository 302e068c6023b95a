#include "vrsgd/bench/csv.hpp"

#include "vrsgd/data.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace vrsgd::bench {

void write_csv(const RunRecord<double>& record, std::ostream& out) {
  out << kTraceHeader << '\n';
  for (const auto& e : record.epochs) {
    out << e.epoch << ',' << detail::format_real(e.effective_passes) << ',' << detail::format_real(e.wall_seconds) << ','
        << detail::format_real(e.objective) << ',';
    if (e.gap) out << detail::format_real(*e.gap);
    out << '\n';
  }
}

void emit_csv(const RunRecord<double>& record, const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_csv(record, out);
  out.flush();
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::vector<EpochEntry<double>> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(1, "empty trace file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kTraceHeader) throw ParseError(1, "unexpected trace header '" + line + "'");

  std::vector<EpochEntry<double>> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string_view> fields;
    std::string_view rest(line);
    while (true) {
      const auto comma = rest.find(',');
      fields.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (fields.size() != 5) throw ParseError(line_no, "expected 5 fields");
    EpochEntry<double> e;
    long long epoch = 0;
    double gap = 0;
    if (!detail::parse_index(fields[0], epoch) || !detail::parse_real(fields[1], e.effective_passes) ||
        !detail::parse_real(fields[2], e.wall_seconds) || !detail::parse_real(fields[3], e.objective))
      throw ParseError(line_no, "malformed trace row");
    e.epoch = static_cast<int>(epoch);
    if (!fields[4].empty()) {
      if (!detail::parse_real(fields[4], gap)) throw ParseError(line_no, "malformed gap");
      e.gap = gap;
    }
    rows.push_back(e);
  }
  return rows;
}

std::vector<EpochEntry<double>> read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_csv(in);
}

}  // namespace vrsgd::bench
