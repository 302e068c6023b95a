#pragma once

#include "vrsgd/estimator.hpp"
#include "vrsgd/solver/common.hpp"
#include "vrsgd/solver/schedule.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>

namespace vrsgd {

/// Largest eigenvalue of C = (1/n) sum_i a_i a_i^T by dense decomposition.
template <typename Scalar>
Scalar leading_eigenvalue(const Dataset<Scalar>& data) {
  const Mat<Scalar> a = data.to_dense();
  const Mat<Scalar> cov = (a.transpose() * a) / static_cast<Scalar>(data.n());
  Eigen::SelfAdjointEigenSolver<Mat<Scalar>> es(cov, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(es.eigenvalues().size() - 1);
}

/// log10(1 - x^T C x / lambda_max) for unit x; -inf once the gap reaches zero.
template <typename Scalar, typename Derived>
Scalar eigen_relative_error(const Objective<Scalar>& obj, const Eigen::MatrixBase<Derived>& x, Scalar lambda_max) {
  const Scalar gap = Scalar(1) + obj.value(x) / lambda_max;
  if (!(gap > Scalar(0))) return -std::numeric_limits<Scalar>::infinity();
  return std::log10(gap);
}

namespace detail {

template <typename Scalar>
Vec<Scalar> unit_start(const SolverConfig<Scalar>& cfg, Index d) {
  Vec<Scalar> x(d);
  if (cfg.x0) {
    if (cfg.x0->size() != d) throw std::invalid_argument("x0 has the wrong dimension");
    x = *cfg.x0;
  } else {
    CounterRng rng = CounterRng(cfg.seed).split(0x5eed);
    for (Index j = 0; j < d; ++j) x(j) = static_cast<Scalar>(2.0 * rng.uniform01() - 1.0);
  }
  const Scalar norm = x.norm();
  if (!(norm > Scalar(0))) throw std::invalid_argument("eigen solvers need a nonzero start");
  return x / norm;
}

template <typename Scalar>
void normalize_in_place(Vec<Scalar>& x) {
  const Scalar norm = x.norm();
  if (norm > Scalar(0)) x /= norm;
}

}  // namespace detail

/// Leading eigenvector by power iteration, VR-PCA or VR-SGD on
/// min_{|x|=1} -x^T C x. The gap column is lambda_max - x^T C x unless an
/// optimum is configured. A zero matrix gives status `degenerate`.
template <typename Scalar>
RunRecord<Scalar> run_eigen(SolverConfig<Scalar> cfg, const Objective<Scalar>& obj, const RunHooks<Scalar>& hooks = {}) {
  if (obj.loss() != LossKind::eigen_quadratic) throw std::invalid_argument("eigen solvers need the eigen-quadratic loss");
  if (!is_eigen_algorithm(cfg.algorithm)) throw std::invalid_argument("not an eigen solver");
  const Scalar lambda_max = leading_eigenvalue(obj.data());
  if (!cfg.optimum) cfg.optimum = -lambda_max;
  RunRecord<Scalar> rec = detail::start_record(cfg);
  const Index n = obj.n();
  const Index d = obj.d();
  Vec<Scalar> x = detail::unit_start(cfg, d);
  if (!(lambda_max > Scalar(0))) {
    rec.status = RunStatus::degenerate;
    rec.initial_objective = obj.value(x);
    rec.x_hat = x;
    rec.last_iterate = x;
    return rec;
  }

  detail::EpochTracer<Scalar> tracer(rec, obj.value(x));
  if (cfg.algorithm == Algorithm::power) {
    for (int s = 1; s <= cfg.epochs; ++s) {
      // C x = -(1/2) grad F(x)
      x = -obj.smooth_gradient(x);
      detail::normalize_in_place(x);
      rec.coordinate_updates += static_cast<std::uint64_t>(d);
      tracer.add_passes(1.0);
      if (hooks.on_iterate) hooks.on_iterate(s, 1, x);
      rec.snapshots.push_back(x);
      tracer.pause();
      const Scalar f = obj.value(x);
      tracer.resume();
      if (!tracer.record(s, f, 1)) break;
    }
    rec.last_iterate = x;
    rec.x_hat = x;
    return rec;
  }

  const Index m = cfg.resolved_epoch_length(n);
  const bool averaged = cfg.algorithm == Algorithm::eigen_vr_sgd;
  CounterRng rng(cfg.seed);
  const SamplingScheme scheme = SamplingScheme::uniform();
  Vec<Scalar> snapshot = x;
  Vec<Scalar> snapshot_sum = Vec<Scalar>::Zero(d);
  Vec<Scalar> est(d);
  SnapshotAccumulator<Scalar> acc(d);
  for (int s = 1; s <= cfg.epochs; ++s) {
    const auto state = EstimatorState<Scalar>::at(obj, snapshot);
    tracer.add_passes(1.0);
    const Scalar eta = step_size(cfg, s);
    acc.reset();
    for (Index k = 0; k < m; ++k) {
      const Index i = sample_index(rng, scheme, n);
      est = svrg_estimate(state, obj, i, x);
      x -= eta * est;
      detail::normalize_in_place(x);
      acc.push(x);
      if (hooks.on_iterate) hooks.on_iterate(s, k + 1, x);
    }
    rec.coordinate_updates += static_cast<std::uint64_t>(m) * static_cast<std::uint64_t>(d);
    tracer.add_passes(static_cast<double>(m) / static_cast<double>(n));
    if (averaged) {
      snapshot = acc.finish(cfg.snapshot.value_or(SnapshotOption::average_then_last), cfg.average_window, x).first;
      detail::normalize_in_place(snapshot);
    } else {
      snapshot = x;
    }
    snapshot_sum += snapshot;
    rec.snapshots.push_back(snapshot);
    tracer.pause();
    const Scalar f = obj.value(snapshot);
    tracer.resume();
    if (!tracer.record(s, f, m)) break;
  }
  rec.last_iterate = x;
  if (rec.snapshots.empty()) {
    rec.x_hat = snapshot;
  } else {
    Vec<Scalar> mean = snapshot_sum;
    detail::normalize_in_place(mean);
    rec.x_hat = final_output_select(rec.snapshots.back(), mean, obj);
  }
  return rec;
}

}  // namespace vrsgd
