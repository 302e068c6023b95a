#pragma once

#include "vrsgd/estimator.hpp"
#include "vrsgd/solver/common.hpp"

namespace vrsgd {

/// SAGA with proximal steps. The gradient table is filled at x^0 (one extra
/// pass, charged to the first trace row); a trace row is written every m steps.
template <typename Scalar>
RunRecord<Scalar> run_saga(const SolverConfig<Scalar>& cfg, const Objective<Scalar>& obj, const RunHooks<Scalar>& hooks = {}) {
  RunRecord<Scalar> rec = detail::start_record(cfg);
  const Index n = obj.n();
  const Index d = obj.d();
  const Index m = cfg.resolved_epoch_length(n);
  CounterRng rng(cfg.seed);
  const SamplingScheme scheme = SamplingScheme::uniform();

  Vec<Scalar> x = detail::initial_point(cfg, d);
  detail::EpochTracer<Scalar> tracer(rec, obj.value(x));
  auto table = SagaTable<Scalar>::at(obj, x);
  tracer.add_passes(1.0);
  Vec<Scalar> est(d);

  for (int s = 1; s <= cfg.epochs; ++s) {
    for (Index k = 0; k < m; ++k) {
      const Index i = sample_index(rng, scheme, n);
      est = saga_estimate_and_update(table, obj, i, x);
      detail::take_step(x, est, cfg.eta0, UpdateRule::proximal, obj.g());
      if (hooks.on_iterate) hooks.on_iterate(s, k + 1, x);
    }
    rec.coordinate_updates += static_cast<std::uint64_t>(m) * static_cast<std::uint64_t>(d);
    tracer.add_passes(static_cast<double>(m) / static_cast<double>(n));
    rec.snapshots.push_back(x);
    tracer.pause();
    const Scalar f = obj.value(x);
    tracer.resume();
    if (!tracer.record(s, f, m)) break;
  }
  rec.last_iterate = x;
  rec.x_hat = x;
  return rec;
}

}  // namespace vrsgd
