#pragma once

#include "vrsgd/model.hpp"
#include "vrsgd/solver/config.hpp"

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace vrsgd::bench {

/// Thrown for malformed or inconsistent experiment files; carries the line.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::size_t line, const std::string& what)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

enum class OptimumMode { none, ridge_oracle, best_of_long_run, given };

/// A step size either absolute or as a multiple of 1/L for the loaded objective.
struct StepSpec {
  double value = 0.1;
  bool per_smoothness = false;  // value / L

  double resolve(double L) const { return per_smoothness ? value / L : value; }
};

StepSpec parse_step(std::string_view text);

struct SolverEntry {
  std::string name;
  SolverConfig<double> config;
  StepSpec eta;
};

struct SyntheticSpec {
  std::string kind;
  Index n = 0;
  Index d = 0;
  std::uint64_t seed = 1;
  double density = 0.002;
};

struct ExperimentConfig {
  std::filesystem::path data_path;
  std::optional<SyntheticSpec> synthetic;
  std::optional<Index> dim;
  bool normalize = true;
  LossKind loss = LossKind::logistic;
  double lambda1 = 0;
  double lambda2 = 0;
  std::optional<bool> fold_l2;
  OptimumMode optimum_mode = OptimumMode::none;
  double optimum_value = 0;
  int long_run_factor = 5;
  std::filesystem::path output_dir = "results";
  std::vector<std::uint64_t> seeds{1};
  std::vector<double> tolerances{1e-8};
  std::vector<SolverEntry> solvers;

  void validate() const;
};

/// Parses the flat `key = value` format; relative paths resolve against `base_dir`.
ExperimentConfig parse_experiment_config(std::string_view text, const std::filesystem::path& base_dir = {});
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

}  // namespace vrsgd::bench
