#pragma once

#include "vrsgd/estimator.hpp"
#include "vrsgd/prox.hpp"
#include "vrsgd/solver/common.hpp"
#include "vrsgd/solver/schedule.hpp"

#include <algorithm>
#include <cmath>

namespace vrsgd {

/// w1 for epoch s: the configured value, else min{sqrt(m mu / (3L)), 1/2} when
/// strongly convex, else min{2/(s+1), 1 - w2}.
template <typename Scalar>
Scalar katyusha_w1(const KatyushaSettings<Scalar>& k, int s, Index m, Scalar mu, Scalar L) {
  if (k.w1) return *k.w1;
  if (mu > Scalar(0)) return std::min(std::sqrt(static_cast<Scalar>(m) * mu / (Scalar(3) * L)), Scalar(0.5));
  return std::min(Scalar(2) / static_cast<Scalar>(s + 1), Scalar(1) - k.w2);
}

/// Katyusha. Variant II couples (x, y, z) with proximal y/z steps; variant I
/// replaces them by plain gradient steps. eta = 1/(3 w1 L); the snapshot is the
/// epoch average of x.
template <typename Scalar>
RunRecord<Scalar> run_katyusha(const SolverConfig<Scalar>& cfg, const Objective<Scalar>& obj, const RunHooks<Scalar>& hooks = {}) {
  const KatyushaVariant variant = cfg.katyusha.variant;
  if (variant == KatyushaVariant::I) detail::require_rule_supported(UpdateRule::smooth, obj);
  RunRecord<Scalar> rec = detail::start_record(cfg);
  const Index n = obj.n();
  const Index d = obj.d();
  const Index m = cfg.resolved_epoch_length(n);
  const Scalar L = obj.smoothness();
  const Scalar mu = obj.strong_convexity();
  const Scalar w2 = cfg.katyusha.w2;
  const auto& g = obj.g();
  CounterRng rng(cfg.seed);
  const SamplingScheme scheme = SamplingScheme::uniform();

  Vec<Scalar> snapshot = detail::initial_point(cfg, d);
  Vec<Scalar> y = snapshot;
  Vec<Scalar> z = snapshot;
  Vec<Scalar> x = snapshot;
  Vec<Scalar> snapshot_sum = Vec<Scalar>::Zero(d);
  Vec<Scalar> est(d);
  SnapshotAccumulator<Scalar> acc(d);
  detail::EpochTracer<Scalar> tracer(rec, obj.value(snapshot));
  const ProxSpec<Scalar> z_prox(g, Scalar(1) / (Scalar(3) * L));

  for (int s = 1; s <= cfg.epochs; ++s) {
    const Scalar w1 = katyusha_w1(cfg.katyusha, s, m, mu, L);
    if (w1 + w2 > Scalar(1) + Scalar(1e-12)) throw std::invalid_argument("katyusha needs w1 + w2 <= 1");
    const Scalar eta = Scalar(1) / (Scalar(3) * w1 * L);
    const ProxSpec<Scalar> y_prox(g, eta);
    const auto state = EstimatorState<Scalar>::at(obj, snapshot);
    tracer.add_passes(1.0);

    acc.reset();
    for (Index k = 0; k < m; ++k) {
      x = w1 * y + w2 * snapshot + (Scalar(1) - w1 - w2) * z;
      const Index i = sample_index(rng, scheme, n);
      est = svrg_estimate(state, obj, i, x);
      if (variant == KatyushaVariant::II) {
        y = prox_apply(y_prox, y - eta * est);
        z = prox_apply(z_prox, x - est / (Scalar(3) * L));
      } else {
        if (g.l2_weight() != Scalar(0)) est += g.l2_weight() * x;
        y -= eta * est;
        z = x - est / (Scalar(3) * L);
      }
      acc.push(x);
      if (hooks.on_iterate) hooks.on_iterate(s, k + 1, x);
    }
    rec.coordinate_updates += static_cast<std::uint64_t>(m) * static_cast<std::uint64_t>(d);
    tracer.add_passes(static_cast<double>(m) / static_cast<double>(n));

    snapshot = acc.finish(SnapshotOption::average_all, AverageWindow::all, x).first;
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
    const Vec<Scalar> mean = snapshot_sum / static_cast<Scalar>(rec.snapshots.size());
    rec.x_hat = final_output_select(rec.snapshots.back(), mean, obj);
  }
  return rec;
}

}  // namespace vrsgd
