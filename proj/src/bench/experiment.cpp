#include "vrsgd/bench/experiment.hpp"

#include "vrsgd/bench/csv.hpp"
#include "vrsgd/bench/synth.hpp"
#include "vrsgd/diagnostics.hpp"
#include "vrsgd/solver.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>

namespace vrsgd::bench {

namespace {

Objective<double> make_objective(const ExperimentConfig& cfg, const Dataset<double>& ds) {
  const auto reg = Regularizer<double>::from_weights(cfg.lambda1, cfg.lambda2);
  if (cfg.fold_l2) return Objective<double>(ds, cfg.loss, reg, *cfg.fold_l2);
  return Objective<double>(ds, cfg.loss, reg);
}

SolverConfig<double> resolve(const SolverEntry& entry, std::uint64_t seed, double L, std::optional<double> optimum) {
  SolverConfig<double> c = entry.config;
  c.seed = seed;
  c.eta0 = entry.eta.resolve(L);
  c.optimum = optimum;
  return c;
}

double lowest_objective(const RunRecord<double>& rec) {
  double best = rec.initial_objective;
  for (const auto& e : rec.epochs)
    if (std::isfinite(e.objective)) best = std::min(best, e.objective);
  return best;
}

std::optional<double> find_optimum(const ExperimentConfig& cfg, const Dataset<double>& ds, const Objective<double>& obj, double L) {
  switch (cfg.optimum_mode) {
    case OptimumMode::none: return std::nullopt;
    case OptimumMode::given: return cfg.optimum_value;
    case OptimumMode::ridge_oracle: {
      if (cfg.loss != LossKind::squared || cfg.lambda2 > 0)
        throw std::invalid_argument("ridge-oracle optimum needs the squared loss without an l1 term");
      return obj.value(ridge_closed_form(ds, cfg.lambda1));
    }
    case OptimumMode::best_of_long_run: {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& entry : cfg.solvers) {
        for (auto seed : cfg.seeds) {
          SolverConfig<double> c = resolve(entry, seed, L, std::nullopt);
          c.epochs *= cfg.long_run_factor;
          const auto rec = run(c, obj);
          if (rec.status != RunStatus::diverged) best = std::min(best, lowest_objective(rec));
        }
      }
      if (!std::isfinite(best)) throw std::runtime_error("every long run diverged; no optimum estimate");
      return best;
    }
  }
  return std::nullopt;
}

std::string fmt_opt(const std::optional<double>& v) { return v ? detail::format_real(*v) : std::string(); }

// shortest text that reads back as the same double
std::string shortest(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace

std::optional<EpochEntry<double>> first_below(const RunRecord<double>& record, double tol) {
  for (const auto& e : record.epochs)
    if (e.gap && *e.gap <= tol) return e;
  return std::nullopt;
}

bool is_monotone(const RunRecord<double>& record, double floor) {
  double prev = record.initial_objective;
  for (const auto& e : record.epochs) {
    if (!std::isfinite(e.objective)) return false;
    if (e.gap && *e.gap <= floor) break;
    if (e.objective > prev + floor) return false;
    prev = e.objective;
  }
  return true;
}

Dataset<double> load_dataset(const ExperimentConfig& cfg) {
  if (cfg.synthetic) {
    const auto& s = *cfg.synthetic;
    return generate_synthetic(synth_kind_from_string(s.kind), s.n, s.d, s.seed, s.density);
  }
  auto ds = load_libsvm<double>(cfg.data_path.string(), cfg.dim);
  return cfg.normalize ? normalize_rows(ds) : ds;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const Dataset<double> ds = load_dataset(cfg);
  const Objective<double> obj = make_objective(cfg, ds);
  const double L = obj.smoothness() + obj.g().l2_weight();

  ExperimentReport report;
  report.optimum = find_optimum(cfg, ds, obj, L);
  std::filesystem::create_directories(cfg.output_dir);

  for (const auto& entry : cfg.solvers) {
    for (auto seed : cfg.seeds) {
      RunOutcome out;
      out.solver = entry.name;
      out.seed = seed;
      out.record = run(resolve(entry, seed, L, report.optimum), obj);
      out.csv = cfg.output_dir / (entry.name + "_seed" + std::to_string(seed) + ".csv");
      emit_csv(out.record, out.csv);

      const double floor = 1e-12 * std::max(1.0, std::abs(out.record.initial_objective));
      const bool monotone = is_monotone(out.record, floor);
      for (double tol : cfg.tolerances) {
        SummaryRow row;
        row.solver = entry.name;
        row.seed = seed;
        row.status = out.record.status;
        row.tolerance = tol;
        if (const auto hit = first_below(out.record, tol)) {
          row.passes_to_tolerance = hit->effective_passes;
          row.seconds_to_tolerance = hit->wall_seconds;
        }
        if (!out.record.epochs.empty()) {
          row.final_gap = out.record.epochs.back().gap;
          row.final_objective = out.record.epochs.back().objective;
        } else {
          row.final_objective = out.record.initial_objective;
        }
        row.monotone = monotone;
        report.summary.push_back(row);
      }
      report.runs.push_back(std::move(out));
    }
  }
  report.summary_path = cfg.output_dir / "summary.csv";
  write_summary(report.summary, report.summary_path);
  return report;
}

void write_summary(const std::vector<SummaryRow>& rows, const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "solver,seed,status,tolerance,passes_to_tolerance,seconds_to_tolerance,final_gap,final_objective,monotone\n";
  for (const auto& r : rows) {
    out << r.solver << ',' << r.seed << ',' << to_string(r.status) << ',' << shortest(r.tolerance) << ','
        << fmt_opt(r.passes_to_tolerance) << ',' << fmt_opt(r.seconds_to_tolerance) << ',' << fmt_opt(r.final_gap) << ','
        << detail::format_real(r.final_objective) << ',' << (r.monotone ? "true" : "false") << '\n';
  }
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace vrsgd::bench
