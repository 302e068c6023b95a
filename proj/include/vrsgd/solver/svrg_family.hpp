#pragma once

#include "vrsgd/estimator.hpp"
#include "vrsgd/solver/common.hpp"
#include "vrsgd/solver/lazy.hpp"
#include "vrsgd/solver/schedule.hpp"

#include <optional>
#include <vector>

namespace vrsgd {

/// Shared epoch loop for SVRG, Prox-SVRG, VR-SGD and VR-SGD++: anchor gradient at
/// the snapshot, `lengths[s-1]` variance-reduced steps, then the snapshot rule.
template <typename Scalar>
RunRecord<Scalar> run_epoch_method(const SolverConfig<Scalar>& cfg, const Objective<Scalar>& obj, SnapshotOption option,
                                   const std::vector<Index>& lengths, const RunHooks<Scalar>& hooks = {}) {
  if (static_cast<int>(lengths.size()) < cfg.epochs) throw std::invalid_argument("need one epoch length per epoch");
  if (cfg.lazy) return detail::run_epoch_method_lazy(cfg, obj, option, lengths, hooks);
  detail::require_rule_supported(cfg.update_rule, obj);
  if (cfg.batch_size > obj.n()) throw std::invalid_argument("mini-batch size must be in [1, n]");

  RunRecord<Scalar> rec = detail::start_record(cfg);
  const Index n = obj.n();
  const Index d = obj.d();
  const Index b = cfg.batch_size;
  CounterRng rng(cfg.seed);
  const SamplingScheme scheme = detail::make_scheme(cfg, obj);

  Vec<Scalar> snapshot = detail::initial_point(cfg, d);
  Vec<Scalar> x = snapshot;
  Vec<Scalar> snapshot_sum = Vec<Scalar>::Zero(d);
  Vec<Scalar> est(d);
  SnapshotAccumulator<Scalar> acc(d);
  detail::EpochTracer<Scalar> tracer(rec, obj.value(snapshot));

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

    acc.reset();
    for (Index k = 0; k < m; ++k) {
      if (b == 1) {
        const Index i = sample_index(rng, scheme, n);
        const Scalar w = scheme.kind == SamplingKind::uniform
                             ? Scalar(1)
                             : static_cast<Scalar>(1.0 / (static_cast<double>(n) * scheme.probability(i, n)));
        est = svrg_estimate(state, obj, i, x, w);
      } else {
        const auto batch = sample_batch(rng, n, b);
        est = minibatch_estimate(state, obj, std::span<const Index>(batch), x);
      }
      detail::take_step(x, est, eta, cfg.update_rule, obj.g());
      acc.push(x);
      if (hooks.on_iterate) hooks.on_iterate(s, k + 1, x);
    }
    rec.coordinate_updates += static_cast<std::uint64_t>(m) * static_cast<std::uint64_t>(d);
    tracer.add_passes(static_cast<double>(m) * static_cast<double>(b) / static_cast<double>(n));

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

template <typename Scalar>
std::vector<Index> fixed_epoch_lengths(const SolverConfig<Scalar>& cfg, Index n) {
  return std::vector<Index>(static_cast<std::size_t>(std::max(cfg.epochs, 0)), cfg.resolved_epoch_length(n));
}

/// VR-SGD: snapshot = epoch average, next start = last iterate.
template <typename Scalar>
RunRecord<Scalar> run_vr_sgd(const SolverConfig<Scalar>& cfg, const Objective<Scalar>& obj, const RunHooks<Scalar>& hooks = {}) {
  return run_epoch_method(cfg, obj, cfg.snapshot.value_or(SnapshotOption::average_then_last), fixed_epoch_lengths(cfg, obj.n()),
                          hooks);
}

/// SVRG: snapshot = next start = last iterate; gradient or proximal inner step
/// per `update_rule`.
template <typename Scalar>
RunRecord<Scalar> run_svrg(const SolverConfig<Scalar>& cfg, const Objective<Scalar>& obj, const RunHooks<Scalar>& hooks = {}) {
  return run_epoch_method(cfg, obj, cfg.snapshot.value_or(SnapshotOption::last), fixed_epoch_lengths(cfg, obj.n()), hooks);
}

/// Prox-SVRG: snapshot = next start = epoch average, proximal inner step.
template <typename Scalar>
RunRecord<Scalar> run_prox_svrg(SolverConfig<Scalar> cfg, const Objective<Scalar>& obj, const RunHooks<Scalar>& hooks = {}) {
  cfg.update_rule = UpdateRule::proximal;
  return run_epoch_method(cfg, obj, cfg.snapshot.value_or(SnapshotOption::average_all), fixed_epoch_lengths(cfg, obj.n()),
                          hooks);
}

/// VR-SGD++: VR-SGD with epoch lengths growing geometrically up to m.
template <typename Scalar>
RunRecord<Scalar> run_vr_sgd_pp(const SolverConfig<Scalar>& cfg, const Objective<Scalar>& obj,
                                const RunHooks<Scalar>& hooks = {}) {
  const Index m = cfg.resolved_epoch_length(obj.n());
  const Index m1 = cfg.growth.m1 > 0 ? cfg.growth.m1 : std::max<Index>(obj.n() / 4, 1);
  const auto lengths = growing_epoch_lengths(m1, m, static_cast<double>(cfg.growth.rho), cfg.epochs);
  return run_epoch_method(cfg, obj, cfg.snapshot.value_or(SnapshotOption::average_then_last), lengths, hooks);
}

}  // namespace vrsgd
