#include "vrsgd/bench/verify.hpp"

#include "vrsgd/bench/synth.hpp"
#include "vrsgd/diagnostics.hpp"
#include "vrsgd/estimator.hpp"
#include "vrsgd/prox.hpp"
#include "vrsgd/solver.hpp"

#include <cmath>
#include <ostream>
#include <random>
#include <sstream>

namespace vrsgd::bench {

namespace {

std::string describe(double value) {
  std::ostringstream ss;
  ss.precision(3);
  ss << value;
  return ss.str();
}

Vec<double> random_point(CounterRng& rng, Index d, double scale) {
  std::normal_distribution<double> normal(0.0, scale);
  Vec<double> x(d);
  for (Index j = 0; j < d; ++j) x(j) = normal(rng);
  return x;
}

CheckResult estimator_mean() {
  const auto ds = generate_synthetic(SynthKind::ridge, 60, 6, 11);
  const Objective<double> obj(ds, LossKind::squared, Regularizer<double>::l2(1e-2), true);
  CounterRng rng(3);
  double worst = 0;
  for (int t = 0; t < 5; ++t) {
    const Vec<double> x = random_point(rng, ds.d(), 1.0);
    const auto state = EstimatorState<double>::at(obj, random_point(rng, ds.d(), 1.0));
    Vec<double> mean = Vec<double>::Zero(ds.d());
    for (Index i = 0; i < ds.n(); ++i) mean += svrg_estimate(state, obj, i, x);
    mean /= static_cast<double>(ds.n());
    const Vec<double> full = obj.smooth_gradient(x);
    worst = std::max(worst, (mean - full).norm() / std::max(1.0, full.norm()));
  }
  return {"estimator mean equals full gradient", worst <= 1e-12, "rel err " + describe(worst)};
}

CheckResult gradients() {
  const auto cls = generate_synthetic(SynthKind::logistic, 30, 5, 5);
  const auto reg = generate_synthetic(SynthKind::ridge, 30, 5, 5);
  CounterRng rng(9);
  double worst = 0;
  for (auto loss : {LossKind::logistic, LossKind::sigmoid, LossKind::squared, LossKind::eigen_quadratic}) {
    const auto& ds = loss == LossKind::squared || loss == LossKind::eigen_quadratic ? reg : cls;
    const auto r = loss == LossKind::eigen_quadratic ? Regularizer<double>::none() : Regularizer<double>::l2(1e-3);
    const Objective<double> obj(ds, loss, r);
    for (int t = 0; t < 10; ++t) {
      const Vec<double> x = random_point(rng, ds.d(), 1.0);
      const Vec<double> fd = finite_diff_grad<double>([&](const Vec<double>& p) { return obj.value(p); }, x, 1e-6);
      worst = std::max(worst, (obj.gradient(x) - fd).cwiseAbs().maxCoeff());
    }
  }
  return {"central differences match gradients", worst <= 1e-5, "max abs err " + describe(worst)};
}

CheckResult prox_grid() {
  const ProxSpec<double> spec(Regularizer<double>::elastic_net(0.3, 0.5), 0.7);
  double worst = 0;
  for (double y = -2.0; y <= 2.0; y += 0.37) {
    const double got = prox_scalar(spec, y);
    double best = 0, best_val = std::numeric_limits<double>::infinity();
    for (int k = -40000; k <= 40000; ++k) {
      const double x = k * 1e-4;
      const double v = (x - y) * (x - y) / (2 * spec.step) + 0.15 * x * x + 0.5 * std::abs(x);
      if (v < best_val) best_val = v, best = x;
    }
    worst = std::max(worst, std::abs(got - best));
  }
  return {"prox matches grid search", worst <= 1e-4, "max abs err " + describe(worst)};
}

CheckResult ridge_convergence() {
  const auto ds = generate_synthetic(SynthKind::ridge, 100, 8, 2);
  const Objective<double> obj(ds, LossKind::squared, Regularizer<double>::l2(1e-2));
  const double optimum = obj.value(ridge_closed_form(ds, 1e-2));
  SolverConfig<double> cfg;
  cfg.algorithm = Algorithm::vr_sgd;
  cfg.snapshot = SnapshotOption::average_then_last;
  cfg.epochs = 40;
  cfg.eta0 = 0.25 / (obj.smoothness() + obj.g().l2_weight());
  cfg.optimum = optimum;
  const auto rec = run(cfg, obj);
  const double gap = rec.epochs.empty() ? std::numeric_limits<double>::infinity() : *rec.epochs.back().gap;
  return {"VR-SGD reaches the ridge optimum", rec.status == RunStatus::ok && gap <= 1e-10, "final gap " + describe(gap)};
}

CheckResult rate_calculator() {
  const auto r = theoretical_rate_sc(1.0, 0.1, 0.1, 2000, 1.0, RateOption::II);
  return {"rate calculator reference point", std::abs(r.rho - 0.3503) < 1e-3 && r.convergent, "rho " + describe(r.rho)};
}

CheckResult eigen_solver() {
  const auto ds = generate_synthetic(SynthKind::eigen, 60, 8, 4);
  const Objective<double> obj(ds, LossKind::eigen_quadratic, Regularizer<double>::none());
  SolverConfig<double> cfg;
  cfg.algorithm = Algorithm::vr_pca;
  cfg.epochs = 60;
  cfg.eta0 = 0.1;
  const auto rec = run(cfg, obj);
  const double err = eigen_relative_error(obj, rec.x_hat, leading_eigenvalue(ds));
  return {"VR-PCA finds the leading eigenvector", err <= -8, "log10 rel err " + describe(err)};
}

}  // namespace

std::vector<CheckResult> run_verify_suite() {
  std::vector<CheckResult> out;
  for (auto* check : {estimator_mean, gradients, prox_grid, ridge_convergence, rate_calculator, eigen_solver}) {
    try {
      out.push_back(check());
    } catch (const std::exception& e) {
      out.push_back({"check threw", false, e.what()});
    }
  }
  return out;
}

bool print_checks(const std::vector<CheckResult>& checks, std::ostream& out) {
  bool all = true;
  for (const auto& c : checks) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name << " (" << c.detail << ")\n";
    all = all && c.passed;
  }
  return all;
}

}  // namespace vrsgd::bench
