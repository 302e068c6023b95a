#pragma once

#include "vrsgd/estimator.hpp"
#include "vrsgd/prox.hpp"
#include "vrsgd/solver/common.hpp"
#include "vrsgd/solver/schedule.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

namespace vrsgd {

/// The per-step map x_j <- c x_j + d applied to a coordinate no sample touched,
/// with 1 - c carried separately so c close to 1 keeps full precision.
template <typename Scalar>
struct AffineStep {
  Scalar one_minus_c;
  Scalar shift;

  Scalar c() const { return Scalar(1) - one_minus_c; }
};

/// Result of replaying t identical steps: final value and the sum of the t
/// intermediate values x^(1) + ... + x^(t).
template <typename Scalar>
struct Replay {
  Scalar value;
  Scalar sum;
};

/// Closed form of t applications of an affine step.
template <typename Scalar>
Replay<Scalar> replay_affine(const AffineStep<Scalar>& step, Scalar x, std::int64_t t) {
  if (t <= 0) return {x, Scalar(0)};
  const auto tt = static_cast<Scalar>(t);
  const Scalar e = step.one_minus_c;
  const Scalar d = step.shift;
  if (e == Scalar(0)) return {x + tt * d, tt * x + d * tt * (tt + 1) / Scalar(2)};

  // u = t log c; ct = c^t; a = 1 - c^t
  const Scalar log_c = std::log1p(-e);
  const Scalar u = tt * log_c;
  const Scalar a = -std::expm1(u);
  const Scalar ct = Scalar(1) - a;

  // t e - a = t (e + log c) + (expm1(u) - u), each piece without cancellation
  Scalar e_plus_log;
  if (std::abs(e) < Scalar(1e-2)) {
    Scalar term = e * e, acc(0);
    for (int k = 2; k < 12; ++k, term *= e) acc -= term / static_cast<Scalar>(k);
    e_plus_log = acc;
  } else {
    e_plus_log = e + log_c;
  }
  Scalar expm1_minus;
  if (std::abs(u) < Scalar(1e-2)) {
    Scalar term = u * u / Scalar(2), acc(0);
    for (int k = 3; k < 14; ++k) {
      acc += term;
      term *= u / static_cast<Scalar>(k);
    }
    expm1_minus = acc;
  } else {
    expm1_minus = std::expm1(u) - u;
  }
  const Scalar te_minus_a = tt * e_plus_log + expm1_minus;

  const Scalar value = ct * x + d * (a / e);
  const Scalar c = Scalar(1) - e;
  const Scalar sum = x * c * (a / e) + d * ((te_minus_a + e * a) / (e * e));
  return {value, sum};
}

/// Reference for replay_affine: t explicit steps.
template <typename Scalar>
Replay<Scalar> replay_affine_loop(const AffineStep<Scalar>& step, Scalar x, std::int64_t t) {
  Scalar sum(0);
  for (std::int64_t r = 0; r < t; ++r) {
    x = step.c() * x + step.shift;
    sum += x;
  }
  return {x, sum};
}

namespace detail {

/// Just-in-time SVRG-family epoch loop for b = 1. Only coordinates in the
/// sampled row are updated eagerly; the others are caught up on their next
/// touch (and at epoch end) by replaying the deferred identical steps.
template <typename Scalar>
RunRecord<Scalar> run_epoch_method_lazy(const SolverConfig<Scalar>& cfg, const Objective<Scalar>& obj, SnapshotOption option,
                                        const std::vector<Index>& lengths, const RunHooks<Scalar>& hooks) {
  if (cfg.batch_size != 1) throw std::invalid_argument("lazy updates support batch size 1 only");
  require_rule_supported(cfg.update_rule, obj);
  RunRecord<Scalar> rec = start_record(cfg);
  const Index n = obj.n();
  const Index d = obj.d();
  const auto& g = obj.g();
  const Scalar folded = obj.folded_l2();
  const bool smooth_rule = cfg.update_rule == UpdateRule::smooth;
  const bool affine = smooth_rule || g.l1_weight() == Scalar(0);

  CounterRng rng(cfg.seed);
  const SamplingScheme scheme = make_scheme(cfg, obj);
  Vec<Scalar> snapshot = initial_point(cfg, d);
  Vec<Scalar> x = snapshot;
  Vec<Scalar> snapshot_sum = Vec<Scalar>::Zero(d);
  detail::EpochTracer<Scalar> tracer(rec, obj.value(snapshot));

  std::vector<std::int64_t> done(static_cast<std::size_t>(d));
  Vec<Scalar> iterate_sum(d);
  Vec<Scalar> mu_loss(d);

  for (int s = 1; s <= cfg.epochs; ++s) {
    const Index m = lengths[static_cast<std::size_t>(s - 1)];
    std::optional<Scalar> start_obj;
    if (cfg.track_start_objective) {
      tracer.pause();
      start_obj = obj.value(x);
      tracer.resume();
    }
    const auto state = EstimatorState<Scalar>::at(obj, snapshot);
    tracer.add_passes(1.0);
    const Scalar eta = step_size(cfg, s);
    mu_loss = state.anchor_grad;
    if (folded != Scalar(0)) mu_loss -= folded * state.snapshot;

    // off-support map, identical for every deferred step of this epoch
    const Scalar l2_total = folded + g.l2_weight();
    const ProxSpec<Scalar> prox(g, eta);
    const Scalar prox_shrink = Scalar(1) + eta * g.l2_weight();
    auto affine_for = [&](Index j) -> AffineStep<Scalar> {
      if (smooth_rule) return {eta * l2_total, -eta * mu_loss(j)};
      return {(eta * folded + eta * g.l2_weight()) / prox_shrink, -eta * mu_loss(j) / prox_shrink};
    };
    auto catch_up = [&](Index j, std::int64_t target) {
      auto& dj = done[static_cast<std::size_t>(j)];
      const std::int64_t t = target - dj;
      if (t <= 0) return;
      if (affine) {
        const auto r = replay_affine(affine_for(j), x(j), t);
        x(j) = r.value;
        iterate_sum(j) += r.sum;
        ++rec.coordinate_updates;
      } else {
        Scalar xj = x(j), acc(0);
        for (std::int64_t r = 0; r < t; ++r) {
          xj = prox_scalar(prox, xj - eta * (mu_loss(j) + folded * xj));
          acc += xj;
        }
        x(j) = xj;
        iterate_sum(j) += acc;
        rec.coordinate_updates += static_cast<std::uint64_t>(t);
      }
      dj = target;
    };

    std::fill(done.begin(), done.end(), 0);
    iterate_sum.setZero();
    for (Index k = 0; k < m; ++k) {
      const Index i = sample_index(rng, scheme, n);
      const Scalar w = scheme.kind == SamplingKind::uniform
                           ? Scalar(1)
                           : static_cast<Scalar>(1.0 / (static_cast<double>(n) * scheme.probability(i, n)));
      obj.data().for_each_entry(i, [&](Index j, Scalar) { catch_up(j, k); });
      const Scalar delta = w * svrg_link_delta(state, obj, i, x);
      obj.data().for_each_entry(i, [&](Index j, Scalar a) {
        const Scalar est = delta * a + mu_loss(j);
        if (smooth_rule) {
          x(j) -= eta * (est + l2_total * x(j));
        } else {
          x(j) = prox_scalar(prox, x(j) - eta * (est + folded * x(j)));
        }
        iterate_sum(j) += x(j);
        done[static_cast<std::size_t>(j)] = k + 1;
        ++rec.coordinate_updates;
      });
      if (hooks.on_iterate) {
        for (Index j = 0; j < d; ++j) catch_up(j, k + 1);
        hooks.on_iterate(s, k + 1, x);
      }
    }
    for (Index j = 0; j < d; ++j) catch_up(j, m);
    tracer.add_passes(static_cast<double>(m) / static_cast<double>(n));

    SnapshotAccumulator<Scalar> acc(d);
    acc.set_sum(iterate_sum, m);
    auto [snap, start] = acc.finish(option, cfg.average_window, x);
    snapshot = std::move(snap);
    x = std::move(start);
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

}  // namespace detail
}  // namespace vrsgd
