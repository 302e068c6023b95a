#pragma once

#include "vrsgd/solver/common.hpp"

#include <cmath>
#include <utility>

namespace vrsgd {

/// alpha_1 = 1, alpha_{k+1} = (1 + sqrt(1 + 4 alpha_k^2)) / 2.
template <typename Scalar>
Scalar apg_next_alpha(Scalar alpha) {
  return (Scalar(1) + std::sqrt(Scalar(1) + Scalar(4) * alpha * alpha)) / Scalar(2);
}

/// Fixed AGD momentum (sqrt L - sqrt mu) / (sqrt L + sqrt mu).
template <typename Scalar>
Scalar agd_momentum(Scalar L, Scalar mu) {
  const Scalar a = std::sqrt(L);
  const Scalar b = std::sqrt(mu);
  return (a - b) / (a + b);
}

namespace detail {

template <typename Scalar>
Scalar full_smoothness(const Objective<Scalar>& obj) {
  return obj.smoothness() + obj.g().l2_weight();
}

/// Full-gradient loop; one trace row per iteration. `momentum(k)` gives the
/// extrapolation weight for iteration k (k = 1, 2, ...).
template <typename Scalar, typename Momentum>
RunRecord<Scalar> run_full_gradient(const SolverConfig<Scalar>& cfg, const Objective<Scalar>& obj, UpdateRule rule,
                                    Momentum momentum, const RunHooks<Scalar>& hooks) {
  require_rule_supported(rule, obj);
  RunRecord<Scalar> rec = start_record(cfg);
  const Index d = obj.d();
  Vec<Scalar> x = initial_point(cfg, d);
  Vec<Scalar> prev = x;
  Vec<Scalar> y(d);
  EpochTracer<Scalar> tracer(rec, obj.value(x));
  for (int k = 1; k <= cfg.epochs; ++k) {
    const Scalar w = momentum(k);
    y = x + w * (x - prev);
    prev = x;
    x = y;
    take_step(x, obj.smooth_gradient(y), cfg.eta0, rule, obj.g());
    rec.coordinate_updates += static_cast<std::uint64_t>(d);
    tracer.add_passes(1.0);
    if (hooks.on_iterate) hooks.on_iterate(k, 1, x);
    rec.snapshots.push_back(x);
    tracer.pause();
    const Scalar f = obj.value(x);
    tracer.resume();
    if (!tracer.record(k, f, 1)) break;
  }
  rec.last_iterate = x;
  rec.x_hat = x;
  return rec;
}

}  // namespace detail

/// Gradient descent (smooth g) or proximal gradient descent.
template <typename Scalar>
RunRecord<Scalar> run_gd(const SolverConfig<Scalar>& cfg, const Objective<Scalar>& obj, const RunHooks<Scalar>& hooks = {}) {
  return detail::run_full_gradient(cfg, obj, cfg.update_rule, [](int) { return Scalar(0); }, hooks);
}

/// Nesterov's method with constant momentum from (L, mu). Without strong
/// convexity the weight falls back to (k - 1)/(k + 2).
template <typename Scalar>
RunRecord<Scalar> run_agd(const SolverConfig<Scalar>& cfg, const Objective<Scalar>& obj, const RunHooks<Scalar>& hooks = {}) {
  const Scalar L = detail::full_smoothness(obj);
  const Scalar mu = obj.strong_convexity();
  const bool sc = mu > Scalar(0) && L > Scalar(0);
  const Scalar w = sc ? agd_momentum(L, mu) : Scalar(0);
  return detail::run_full_gradient(
      cfg, obj, cfg.update_rule,
      [sc, w](int k) { return sc ? w : static_cast<Scalar>(k - 1) / static_cast<Scalar>(k + 2); }, hooks);
}

/// Accelerated proximal gradient; always takes proximal steps.
template <typename Scalar>
RunRecord<Scalar> run_apg(const SolverConfig<Scalar>& cfg, const Objective<Scalar>& obj, const RunHooks<Scalar>& hooks = {}) {
  Scalar alpha = Scalar(1);
  return detail::run_full_gradient(
      cfg, obj, UpdateRule::proximal,
      [alpha](int) mutable {
        const Scalar next = apg_next_alpha(alpha);
        const Scalar w = (alpha - Scalar(1)) / next;
        alpha = next;
        return w;
      },
      hooks);
}

/// Plain SGD with eta_k = eta0 / sqrt(k); a trace row every m steps.
template <typename Scalar>
RunRecord<Scalar> run_sgd(const SolverConfig<Scalar>& cfg, const Objective<Scalar>& obj, const RunHooks<Scalar>& hooks = {}) {
  detail::require_rule_supported(cfg.update_rule, obj);
  RunRecord<Scalar> rec = detail::start_record(cfg);
  const Index n = obj.n();
  const Index d = obj.d();
  const Index m = cfg.resolved_epoch_length(n);
  CounterRng rng(cfg.seed);
  const SamplingScheme scheme = SamplingScheme::uniform();
  Vec<Scalar> x = detail::initial_point(cfg, d);
  Vec<Scalar> grad(d);
  detail::EpochTracer<Scalar> tracer(rec, obj.value(x));
  std::int64_t k = 0;
  for (int s = 1; s <= cfg.epochs; ++s) {
    for (Index j = 0; j < m; ++j) {
      ++k;
      const Index i = sample_index(rng, scheme, n);
      grad = obj.component_gradient(i, x);
      const Scalar eta = cfg.eta0 / std::sqrt(static_cast<Scalar>(k));
      detail::take_step(x, grad, eta, cfg.update_rule, obj.g());
      if (hooks.on_iterate) hooks.on_iterate(s, j + 1, x);
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
