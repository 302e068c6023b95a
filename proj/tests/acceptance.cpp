// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include "vrsgd/bench/experiment.hpp"
#include "vrsgd/bench/synth.hpp"
#include "vrsgd/diagnostics.hpp"
#include "vrsgd/estimator.hpp"
#include "vrsgd/prox.hpp"
#include "vrsgd/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

using namespace vrsgd;
using bench::SynthKind;
using bench::generate_synthetic;

namespace {

struct Verdict {
  bool passed = false;
  std::string detail;
};

std::string num(double v) {
  std::ostringstream ss;
  ss.precision(4);
  ss << v;
  return ss.str();
}

Vec<double> gaussian_vec(std::mt19937_64& gen, Index d, double scale = 1.0) {
  std::normal_distribution<double> normal(0.0, scale);
  Vec<double> x(d);
  for (Index j = 0; j < d; ++j) x(j) = normal(gen);
  return x;
}

double rel(const Vec<double>& a, const Vec<double>& b) { return (a - b).norm() / std::max(1e-300, b.norm()); }

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

// 1. mean over i of the SVRG estimate is the full gradient
Verdict estimator_identity() {
  const auto ds = generate_synthetic(SynthKind::ridge, 200, 10, 101);
  const double lambda = 1e-2;
  const Objective<double> obj(ds, LossKind::squared, Regularizer<double>::l2(lambda), true);
  const Mat<double> a = ds.to_dense();
  std::mt19937_64 gen(1);
  double worst = 0;
  for (int t = 0; t < 20; ++t) {
    const Vec<double> x = gaussian_vec(gen, 10);
    const Vec<double> anchor = gaussian_vec(gen, 10);
    const auto state = EstimatorState<double>::at(obj, anchor);
    Vec<double> mean = Vec<double>::Zero(10);
    for (Index i = 0; i < ds.n(); ++i) mean += svrg_estimate(state, obj, i, x);
    mean /= 200.0;
    // dense normal-equation gradient as the reference
    const Vec<double> full = a.transpose() * (a * x - ds.labels()) / 200.0 + lambda * x;
    worst = std::max(worst, rel(mean, full));
  }
  return {worst <= 1e-12, "max rel err " + num(worst)};
}

// 2. enumerated estimator variance against 4 L delta(b) [gaps]
Verdict variance_bound() {
  const auto ds = generate_synthetic(SynthKind::ridge, 10, 4, 202);
  const Objective<double> obj(ds, LossKind::squared, Regularizer<double>::l2(0.05), true);
  const Vec<double> opt = ridge_closed_form(ds, 0.05);
  std::mt19937_64 gen(2);
  int failures = 0, checks = 0;
  double tightest = 0;
  for (int t = 0; t < 100; ++t) {
    const double scale = std::pow(10.0, -3.0 + 3.0 * std::uniform_real_distribution<double>()(gen));
    const Vec<double> x = opt + gaussian_vec(gen, 4, scale);
    const Vec<double> anchor = opt + gaussian_vec(gen, 4, scale);
    for (Index b = 1; b <= 10; ++b) {
      const auto r = variance_bound_report(obj, x, anchor, opt, b);
      ++checks;
      if (!r.satisfied) ++failures;
      if (r.rhs > 0) tightest = std::max(tightest, r.lhs / r.rhs);
    }
  }
  return {failures == 0, std::to_string(checks - failures) + "/" + std::to_string(checks) + " hold, max lhs/rhs " + num(tightest)};
}

// 3. central differences for every loss family
Verdict gradient_check() {
  const auto cls = generate_synthetic(SynthKind::logistic, 40, 6, 303);
  const auto reg = generate_synthetic(SynthKind::ridge, 40, 6, 303);
  std::mt19937_64 gen(3);
  double worst = 0;
  for (auto loss : {LossKind::logistic, LossKind::squared, LossKind::sigmoid, LossKind::eigen_quadratic}) {
    const bool classify = loss == LossKind::logistic || loss == LossKind::sigmoid;
    const auto& ds = classify ? cls : reg;
    const auto r = loss == LossKind::eigen_quadratic ? Regularizer<double>::none() : Regularizer<double>::l2(1e-2);
    const Objective<double> obj(ds, loss, r, true);
    std::uniform_int_distribution<Index> pick(0, ds.n() - 1);
    for (int t = 0; t < 100; ++t) {
      const Vec<double> x = gaussian_vec(gen, ds.d());
      const Vec<double> fd = finite_diff_grad<double>([&](const Vec<double>& p) { return obj.value(p); }, x, 1e-6);
      worst = std::max(worst, (obj.gradient(x) - fd).cwiseAbs().maxCoeff());
      const Index i = pick(gen);
      const Vec<double> fdi = finite_diff_grad<double>([&](const Vec<double>& p) { return obj.component_value(i, p); }, x, 1e-6);
      worst = std::max(worst, (obj.component_gradient(i, x) - fdi).cwiseAbs().maxCoeff());
    }
  }
  return {worst <= 1e-5, "max abs err " + num(worst)};
}

// coarse-to-fine grid minimization of the 1-D prox objective
double grid_prox(double y, double step, double l2, double l1) {
  auto h = [&](double x) { return (x - y) * (x - y) / (2 * step) + 0.5 * l2 * x * x + l1 * std::abs(x); };
  double center = 0, width = std::abs(y) + 1.0;
  for (int level = 0; level < 6; ++level) {
    const double spacing = width / 100.0;
    double best = center, best_val = h(center);
    for (int k = -100; k <= 100; ++k) {
      const double x = center + k * spacing;
      const double v = h(x);
      if (v < best_val) best_val = v, best = x;
    }
    // also probe the kink
    if (h(0.0) <= best_val) best = 0.0;
    center = best;
    width = 2 * spacing;
  }
  return center;
}

// 4. prox operators against grid search, optimality residual, nonexpansiveness
Verdict prox_check() {
  std::mt19937_64 gen(4);
  std::uniform_real_distribution<double> weight(0.01, 1.0), step(0.05, 2.0);
  double grid_err = 0, residual = 0, expansion = 0;
  for (auto kind : {RegKind::none, RegKind::l2, RegKind::l1, RegKind::elastic_net}) {
    for (int t = 0; t < 10; ++t) {
      Regularizer<double> r;
      r.kind = kind;
      r.lambda1 = weight(gen);
      r.lambda2 = weight(gen);
      const ProxSpec<double> spec(r, step(gen));
      const Vec<double> y = gaussian_vec(gen, 8, 1.5);
      const Vec<double> x = prox_apply(spec, y);
      for (Index j = 0; j < 8; ++j)
        grid_err = std::max(grid_err, std::abs(x(j) - grid_prox(y(j), spec.step, r.l2_weight(), r.l1_weight())));
      residual = std::max(residual, prox_optimality_residual(spec, y, x));
    }
    for (int t = 0; t < 250; ++t) {
      Regularizer<double> r;
      r.kind = kind;
      r.lambda1 = weight(gen);
      r.lambda2 = weight(gen);
      const ProxSpec<double> spec(r, step(gen));
      const Vec<double> y1 = gaussian_vec(gen, 8), y2 = gaussian_vec(gen, 8);
      const double ratio = (prox_apply(spec, y1) - prox_apply(spec, y2)).norm() / (y1 - y2).norm();
      expansion = std::max(expansion, ratio);
    }
  }
  const bool ok = grid_err <= 1e-4 && residual <= 1e-10 && expansion <= 1 + 1e-12;
  return {ok, "grid err " + num(grid_err) + ", residual " + num(residual) + ", max ratio " + num(expansion)};
}

// least-squares slope of log10(gap) over the epochs in [first, last] with a
// gap above the rounding floor
std::optional<double> fitted_ratio(const RunRecord<double>& rec, int first, int last) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = 0;
  for (const auto& e : rec.epochs) {
    if (e.epoch < first || e.epoch > last || !e.gap || *e.gap <= 1e-13) continue;
    const double y = std::log10(*e.gap);
    sx += e.epoch, sy += y, sxx += double(e.epoch) * e.epoch, sxy += e.epoch * y;
    ++count;
  }
  if (count < 3) return std::nullopt;
  const double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
  return std::pow(10.0, slope);
}

// 5. linear convergence on ridge
Verdict linear_convergence() {
  const auto ds = generate_synthetic(SynthKind::ridge, 200, 10, 505);
  const Objective<double> obj(ds, LossKind::squared, Regularizer<double>::l2(1e-2));
  const double optimum = obj.value(ridge_closed_form(ds, 1e-2));
  const double L = obj.smoothness() + obj.g().l2_weight();
  std::vector<double> ratios;
  int worst_epoch = 0;
  bool all_reached = true;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    SolverConfig<double> cfg;
    cfg.algorithm = Algorithm::vr_sgd;
    cfg.snapshot = SnapshotOption::average_then_last;
    cfg.epochs = 60;
    cfg.epoch_length = 400;
    cfg.eta0 = 0.25 / L;
    cfg.seed = seed;
    cfg.optimum = optimum;
    const auto rec = run(cfg, obj);
    if (const auto r = fitted_ratio(rec, 2, 20)) ratios.push_back(*r);
    else ratios.push_back(std::numeric_limits<double>::infinity());
    int reached = 0;
    for (const auto& e : rec.epochs)
      if (*e.gap <= 1e-10) {
        reached = e.epoch;
        break;
      }
    if (reached == 0) all_reached = false;
    worst_epoch = std::max(worst_epoch, reached);
  }
  const double med = median(ratios);
  return {med < 1 && all_reached,
          "median ratio " + num(med) + ", gap <= 1e-10 by epoch " + (all_reached ? std::to_string(worst_epoch) : "never")};
}

// 6. momentum form against plain VR-SGD on shared index streams
Verdict momentum_equivalence() {
  const auto ds = generate_synthetic(SynthKind::logistic, 50, 6, 606);
  const Objective<double> obj(ds, LossKind::logistic, Regularizer<double>::l2(1e-3));
  std::vector<Vec<double>> plain, coupled;
  RunHooks<double> hp, hc;
  hp.on_iterate = [&](int, Index, const Vec<double>& x) { plain.push_back(x); };
  hc.on_iterate = [&](int, Index, const Vec<double>& x) { coupled.push_back(x); };
  SolverConfig<double> cfg;
  cfg.algorithm = Algorithm::vr_sgd;
  cfg.epochs = 5;
  cfg.eta0 = 0.4;
  cfg.alpha = 0.2;
  cfg.snapshot = SnapshotOption::average_then_last;
  run(cfg, obj, hp);
  cfg.algorithm = Algorithm::momentum_vr_sgd;
  cfg.momentum_option = MomentumOption::I;
  cfg.lr_mode = LrMode::varying;  // eta_s = eta0 / w_s
  run(cfg, obj, hc);
  if (plain.size() != coupled.size() || plain.empty()) return {false, "iterate counts differ"};
  double worst = 0;
  for (std::size_t k = 0; k < plain.size(); ++k) worst = std::max(worst, rel(coupled[k], plain[k]));
  return {worst <= 1e-9, std::to_string(plain.size()) + " iterates, max rel deviation " + num(worst)};
}

// 7. step-size robustness through the experiment runner
Verdict step_robustness() {
  const auto dir = std::filesystem::temp_directory_path() / ("vrsgd_accept_" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  bench::ExperimentConfig cfg;
  cfg.synthetic = bench::SyntheticSpec{"ridge", 200, 10, 707};
  cfg.loss = LossKind::squared;
  cfg.lambda1 = 1e-2;
  cfg.optimum_mode = bench::OptimumMode::ridge_oracle;
  cfg.output_dir = dir;
  cfg.tolerances = {1e-8};
  const std::vector<double> factors{0.2, 0.4, 0.6, 0.8, 1.0, 1.2};
  for (double f : factors) {
    bench::SolverEntry e;
    e.name = "vr_sgd_" + num(f);
    e.config.algorithm = Algorithm::vr_sgd;
    e.config.epochs = 30;
    e.eta = {f, true};
    cfg.solvers.push_back(e);
  }
  bench::SolverEntry svrg;
  svrg.name = "svrg_I_1";
  svrg.config.algorithm = Algorithm::svrg;
  svrg.config.snapshot = SnapshotOption::last;
  svrg.config.epochs = 30;
  svrg.eta = {1.0, true};
  cfg.solvers.push_back(svrg);

  const auto report = bench::run_experiment(cfg);
  std::filesystem::remove_all(dir);
  int converged = 0;
  bool svrg_ok = false;
  std::string svrg_note;
  for (std::size_t k = 0; k < report.runs.size(); ++k) {
    const auto& run = report.runs[k];
    const auto& row = report.summary[k];
    const double floor = 1e-13;
    if (run.solver.starts_with("vr_sgd")) {
      if (run.record.status == RunStatus::ok && row.monotone && bench::is_monotone(run.record, floor) &&
          row.final_gap && *row.final_gap < 1e-8)
        ++converged;
    } else {
      int rises = 0;
      double prev = run.record.initial_objective - *report.optimum;
      for (const auto& e : run.record.epochs) {
        if (*e.gap > prev && prev > floor) ++rises;
        prev = *e.gap;
      }
      svrg_ok = run.record.status == RunStatus::diverged || rises > 0;
      svrg_note = run.record.status == RunStatus::diverged ? "diverged" : std::to_string(rises) + " rising epochs";
    }
  }
  return {converged == static_cast<int>(factors.size()) && svrg_ok,
          "VR-SGD monotone and converged at " + std::to_string(converged) + "/6 steps; SVRG-I at 1/L: " + svrg_note};
}

// 8. lazy and dense paths on sparse data
Verdict lazy_equivalence() {
  const auto ds = generate_synthetic(SynthKind::sparse, 1000, 5000, 808, 0.002);
  const Objective<double> obj(ds, LossKind::logistic, Regularizer<double>::l2(1e-4));
  SolverConfig<double> cfg;
  cfg.algorithm = Algorithm::vr_sgd;
  cfg.epochs = 3;
  cfg.eta0 = 1.0 / obj.smoothness();
  const auto dense = run(cfg, obj);
  cfg.lazy = true;
  const auto lazy = run(cfg, obj);
  const double dev = std::max(rel(lazy.last_iterate, dense.last_iterate), rel(lazy.x_hat, dense.x_hat));
  const double share = double(lazy.coordinate_updates) / double(dense.coordinate_updates);
  return {dev <= 1e-9 && share <= 0.05, "rel deviation " + num(dev) + ", lazy/dense updates " + num(share)};
}

// 9. full batches are seed independent; one sample is exact (prox-)gradient descent
Verdict degenerate_reductions() {
  const auto ds = generate_synthetic(SynthKind::logistic, 40, 5, 909);
  const Objective<double> obj(ds, LossKind::logistic, Regularizer<double>::l2(1e-2));
  SolverConfig<double> cfg;
  cfg.algorithm = Algorithm::vr_sgd;
  cfg.epochs = 6;
  cfg.batch_size = 40;
  cfg.epoch_length = 10;
  cfg.eta0 = 1.0;
  cfg.seed = 3;
  const auto a = run(cfg, obj);
  cfg.seed = 4;
  const auto b = run(cfg, obj);
  bool same = a.epochs.size() == b.epochs.size() && a.x_hat == b.x_hat;
  for (std::size_t s = 0; same && s < a.epochs.size(); ++s) same = a.epochs[s].objective == b.epochs[s].objective;

  // n = 1: x <- prox(x - eta (a a^T x - a y)), iterated by hand
  Mat<double> row(1, 4);
  row << 0.3, -0.7, 0.5, 0.2;
  Vec<double> label(1);
  label << 0.9;
  const auto single = Dataset<double>::from_dense(row, label);
  double worst = 0;
  for (auto kind : {RegKind::l2, RegKind::l1}) {
    const auto reg = kind == RegKind::l2 ? Regularizer<double>::l2(0.1) : Regularizer<double>::l1(0.05);
    const Objective<double> one(single, LossKind::squared, reg);
    SolverConfig<double> c;
    c.algorithm = Algorithm::vr_sgd;
    c.epochs = 8;
    c.eta0 = 0.8;
    c.update_rule = kind == RegKind::l1 ? UpdateRule::proximal : UpdateRule::smooth;
    std::vector<Vec<double>> seen;
    RunHooks<double> h;
    h.on_iterate = [&](int, Index, const Vec<double>& x) { seen.push_back(x); };
    run(c, one, h);
    const Vec<double> arow = row.row(0).transpose();
    Vec<double> x = Vec<double>::Zero(4);
    for (const auto& got : seen) {
      const Vec<double> grad = arow * (arow.dot(x) - label(0));
      if (kind == RegKind::l2) {
        x = x - c.eta0 * (grad + 0.1 * x);
      } else {
        const Vec<double> y = x - c.eta0 * grad;
        for (Index j = 0; j < 4; ++j) x(j) = std::copysign(std::max(std::abs(y(j)) - c.eta0 * 0.05, 0.0), y(j));
      }
      worst = std::max(worst, (got - x).cwiseAbs().maxCoeff());
    }
    if (seen.size() != 16) worst = std::numeric_limits<double>::infinity();
  }
  return {same && worst <= 1e-12,
          std::string(same ? "b = n traces identical" : "b = n traces differ") + ", n = 1 max deviation " + num(worst)};
}

// 10. growing epoch lengths
Verdict growth_schedule() {
  auto oracle = [](Index m1, Index cap, double rho, int epochs) {
    std::vector<Index> out;
    double cur = static_cast<double>(m1);
    for (int s = 0; s < epochs; ++s) {
      out.push_back(static_cast<Index>(std::min(cur, static_cast<double>(cap))));
      cur = std::floor(rho * out.back());
    }
    return out;
  };
  const auto got = growing_epoch_lengths(100, 2000, 1.75, 10);
  const auto want = oracle(100, 2000, 1.75, 10);
  const auto doubling = growing_epoch_lengths(25, 1 << 20, 2.0, 8);
  bool doubles = true;
  for (std::size_t s = 0; s < doubling.size(); ++s) doubles = doubles && doubling[s] == (Index(25) << s);

  // the solver uses the same lengths
  const auto ds = generate_synthetic(SynthKind::ridge, 40, 3, 1010);
  const Objective<double> obj(ds, LossKind::squared, Regularizer<double>::l2(1e-2));
  SolverConfig<double> cfg;
  cfg.algorithm = Algorithm::vr_sgd_pp;
  cfg.epochs = 6;
  cfg.eta0 = 0.2;
  cfg.epoch_length = 80;
  cfg.growth.m1 = 10;
  cfg.growth.rho = 1.75;
  const auto rec = run(cfg, obj);
  const auto used_want = oracle(10, 80, 1.75, 6);
  bool used = rec.epochs.size() == used_want.size();
  for (std::size_t s = 0; used && s < used_want.size(); ++s) used = rec.epochs[s].epoch_length == used_want[s];

  std::string seq;
  for (auto v : got) seq += (seq.empty() ? "" : ",") + std::to_string(v);
  return {got == want && doubles && used, "rho 1.75: " + seq + (doubles ? "; doubling ok" : "; doubling wrong") +
                                              (used ? "; solver ok" : "; solver lengths differ")};
}

// 11. leading eigenvector on a 200 x 20 instance with eigengap ratio 0.03
Verdict eigen_solvers() {
  const auto ds = generate_synthetic(SynthKind::eigen, 200, 20, 1111);
  const Objective<double> obj(ds, LossKind::eigen_quadratic, Regularizer<double>::none());
  const double lmax = leading_eigenvalue(ds);
  auto passes_to = [&](const RunRecord<double>& rec) {
    for (std::size_t s = 0; s < rec.epochs.size(); ++s)
      if (eigen_relative_error(obj, rec.snapshots[s], lmax) <= -8) return rec.epochs[s].effective_passes;
    return std::numeric_limits<double>::infinity();
  };
  std::string detail;
  std::vector<double> passes;
  bool all_reach = true;
  for (auto [alg, eta, epochs] : {std::tuple{Algorithm::power, 1.0, 1500}, std::tuple{Algorithm::vr_pca, 0.05, 150},
                                  std::tuple{Algorithm::eigen_vr_sgd, 0.05, 150}}) {
    SolverConfig<double> cfg;
    cfg.algorithm = alg;
    cfg.eta0 = eta;
    cfg.epochs = epochs;
    const auto rec = run(cfg, obj);
    const double err = eigen_relative_error(obj, rec.x_hat, lmax);
    all_reach = all_reach && err <= -8;
    passes.push_back(passes_to(rec));
    detail += std::string(to_string(alg)) + " " + num(passes.back()) + " passes (" + num(err) + ") ";
  }
  return {all_reach && passes[2] < passes[0], detail};
}

// 12. non-convex sigmoid loss
Verdict sigmoid_descent() {
  const auto ds = generate_synthetic(SynthKind::sigmoid, 500, 10, 1212);
  const Objective<double> obj(ds, LossKind::sigmoid, Regularizer<double>::l2(1e-4));
  SolverConfig<double> cfg;
  cfg.algorithm = Algorithm::vr_sgd;
  cfg.epochs = 50;
  cfg.eta0 = 0.1 / (obj.smoothness() + obj.g().l2_weight());
  const auto rec = run(cfg, obj);
  int rises = 0;
  double prev = rec.initial_objective;
  std::optional<int> hit;
  for (std::size_t s = 0; s < rec.epochs.size(); ++s) {
    // changes at the rounding level of F are not counted
    if (rec.epochs[s].objective > prev + 1e-12 * std::abs(prev)) ++rises;
    prev = rec.epochs[s].objective;
    if (!hit && obj.gradient(rec.snapshots[s]).norm() <= 1e-4) hit = rec.epochs[s].epoch;
  }
  const double gnorm = obj.gradient(rec.x_hat).norm();
  return {rec.epochs.size() == 50 && rises <= 2 && hit.has_value(),
          std::to_string(rises) + " rising epochs of " + std::to_string(rec.epochs.size()) + ", |grad| <= 1e-4 at epoch " +
              (hit ? std::to_string(*hit) : "never") + ", final |grad| " + num(gnorm)};
}

// 13. rate calculator through the command line
Verdict rate_cli() {
  const std::string cmd = std::string(VRSGD_CLI) + " rate --L 1 --mu 0.1 --eta 0.1 --m 2000 --c 1 --option II";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return {false, "cannot start " + cmd};
  std::string out;
  char buf[256];
  while (std::fgets(buf, sizeof(buf), pipe)) out += buf;
  const int rc = ::pclose(pipe);
  double rho = std::nan("");
  if (const auto pos = out.find("rho = "); pos != std::string::npos) rho = std::strtod(out.c_str() + pos + 6, nullptr);
  const bool convergent = out.find("\nconvergent") != std::string::npos;
  return {rc == 0 && std::abs(rho - 0.350) <= 1e-3 && convergent, "rho " + num(rho) + (convergent ? ", convergent" : "")};
}

}  // namespace

int main() {
  const std::vector<std::tuple<int, const char*, double, std::function<Verdict()>>> criteria{
      {1, "estimator identity", 1.0, estimator_identity},
      {2, "variance bound for every batch size", 5.0, variance_bound},
      {3, "gradients match central differences", 0, gradient_check},
      {4, "prox operators", 0, prox_check},
      {5, "linear convergence on ridge", 10.0, linear_convergence},
      {6, "momentum form equals plain VR-SGD", 0, momentum_equivalence},
      {7, "step-size robustness", 0, step_robustness},
      {8, "lazy updates", 0, lazy_equivalence},
      {9, "degenerate reductions", 0, degenerate_reductions},
      {10, "growing epoch schedule", 0, growth_schedule},
      {11, "eigen solvers", 10.0, eigen_solvers},
      {12, "non-convex sigmoid", 0, sigmoid_descent},
      {13, "rate calculator", 0, rate_cli},
  };
  int failed = 0;
  for (const auto& [id, name, budget, check] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (budget > 0 && secs > budget) {
      v.passed = false;
      v.detail += "; over the " + num(budget) + " s budget";
    }
    if (!v.passed) ++failed;
    std::printf("%s %2d %s: %s [%.2f s]\n", v.passed ? "PASS" : "FAIL", id, name, v.detail.c_str(), secs);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
