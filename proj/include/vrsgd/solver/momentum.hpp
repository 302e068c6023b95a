#pragma once

#include "vrsgd/estimator.hpp"
#include "vrsgd/solver/common.hpp"
#include "vrsgd/solver/schedule.hpp"

namespace vrsgd {

/// Momentum-accelerated VR-SGD. Each inner step moves an auxiliary sequence v
/// and sets x to the convex combination x~ + w_s (v - x~).
///
/// Option I carries x and restarts v at the point whose combination with x~
/// is x itself (v = x whenever w_s = 1 or x = x~), so every inner step moves x
/// by exactly w_s eta_s times the direction. Option II carries v and rebuilds
/// x = w_s v + (1 - w_s) x~.
template <typename Scalar>
RunRecord<Scalar> run_momentum_vr_sgd(const SolverConfig<Scalar>& cfg, const Objective<Scalar>& obj,
                                      const RunHooks<Scalar>& hooks = {}) {
  if (cfg.update_rule != UpdateRule::smooth) throw std::invalid_argument("momentum VR-SGD uses the smooth update rule");
  detail::require_rule_supported(cfg.update_rule, obj);
  RunRecord<Scalar> rec = detail::start_record(cfg);
  const Index n = obj.n();
  const Index d = obj.d();
  const Index m = cfg.resolved_epoch_length(n);
  CounterRng rng(cfg.seed);
  const SamplingScheme scheme = detail::make_scheme(cfg, obj);

  Vec<Scalar> snapshot = detail::initial_point(cfg, d);
  Vec<Scalar> x = snapshot;
  Vec<Scalar> v = snapshot;
  Vec<Scalar> snapshot_sum = Vec<Scalar>::Zero(d);
  Vec<Scalar> est(d);
  SnapshotAccumulator<Scalar> acc(d);
  detail::EpochTracer<Scalar> tracer(rec, obj.value(snapshot));

  for (int s = 1; s <= cfg.epochs; ++s) {
    const Scalar w = momentum_weight(s, cfg.alpha);
    const Scalar eta = step_size(cfg, s);
    if (cfg.momentum_option == MomentumOption::I) {
      v = snapshot + (x - snapshot) / w;
    } else {
      x = w * v + (Scalar(1) - w) * snapshot;
    }
    std::optional<Scalar> start_obj;
    if (cfg.track_start_objective) {
      tracer.pause();
      start_obj = obj.value(x);
      tracer.resume();
    }
    const auto state = EstimatorState<Scalar>::at(obj, snapshot);
    tracer.add_passes(1.0);

    acc.reset();
    for (Index k = 0; k < m; ++k) {
      const Index i = sample_index(rng, scheme, n);
      const Scalar iw = scheme.kind == SamplingKind::uniform
                            ? Scalar(1)
                            : static_cast<Scalar>(1.0 / (static_cast<double>(n) * scheme.probability(i, n)));
      est = svrg_estimate(state, obj, i, x, iw);
      if (obj.g().l2_weight() != Scalar(0)) est += obj.g().l2_weight() * x;
      v -= eta * est;
      x = snapshot + w * (v - snapshot);
      acc.push(x);
      if (hooks.on_iterate) hooks.on_iterate(s, k + 1, x);
    }
    rec.coordinate_updates += static_cast<std::uint64_t>(m) * static_cast<std::uint64_t>(d);
    tracer.add_passes(static_cast<double>(m) / static_cast<double>(n));

    // x~^s is the plain epoch average; x (Option I) or v (Option II) carries over
    snapshot = acc.finish(SnapshotOption::average_all, AverageWindow::all, x).first;
    snapshot_sum += snapshot;
    rec.snapshots.push_back(snapshot);
    tracer.pause();
    const Scalar f = obj.value(snapshot);
    tracer.resume();
    if (!tracer.record(s, f, m, start_obj)) break;
  }

  rec.last_iterate = x;
  if (rec.snapshots.empty()) {
    rec.x_hat = snapshot;
  } else {
    const Vec<Scalar> mean = snapshot_sum / static_cast<Scalar>(rec.snapshots.size());
    rec.x_hat = final_output_select(rec.snapshots.back(), mean, obj);
  }
  return rec;
}

}  // namespace vrsgd
