#pragma once

#include "vrsgd/model.hpp"
#include "vrsgd/prox.hpp"
#include "vrsgd/random.hpp"
#include "vrsgd/solver/config.hpp"
#include "vrsgd/solver/record.hpp"

#include <stdexcept>
#include <vector>

namespace vrsgd::detail {

template <typename Scalar>
Vec<Scalar> initial_point(const SolverConfig<Scalar>& cfg, Index d) {
  if (!cfg.x0) return Vec<Scalar>::Zero(d);
  if (cfg.x0->size() != d) throw std::invalid_argument("x0 has the wrong dimension");
  return *cfg.x0;
}

template <typename Scalar>
void require_rule_supported(UpdateRule rule, const Objective<Scalar>& obj) {
  if (rule == UpdateRule::smooth && !obj.g().smooth())
    throw std::invalid_argument("smooth update rule needs a differentiable regularizer; use the proximal rule");
}

template <typename Scalar>
SamplingScheme make_scheme(const SolverConfig<Scalar>& cfg, const Objective<Scalar>& obj) {
  if (cfg.sampling == SamplingKind::uniform) return SamplingScheme::uniform();
  std::vector<double> w(static_cast<std::size_t>(obj.n()));
  for (Index i = 0; i < obj.n(); ++i) w[static_cast<std::size_t>(i)] = static_cast<double>(obj.component_smoothness(i));
  return SamplingScheme::weighted(w);
}

/// x <- x - eta (v + grad g(x))   or   x <- Prox_eta(x - eta v)
template <typename Scalar>
void take_step(Vec<Scalar>& x, const Vec<Scalar>& v, Scalar eta, UpdateRule rule, const Regularizer<Scalar>& g) {
  if (rule == UpdateRule::smooth) {
    const Scalar l2 = g.l2_weight();
    if (l2 != Scalar(0)) {
      x -= eta * (v + l2 * x);
    } else {
      x -= eta * v;
    }
    return;
  }
  const ProxSpec<Scalar> spec(g, eta);
  Vec<Scalar> y = x - eta * v;
  x = prox_apply(spec, y);
}

template <typename Scalar>
RunRecord<Scalar> start_record(const SolverConfig<Scalar>& cfg) {
  cfg.validate();
  RunRecord<Scalar> rec;
  rec.config = cfg;
  rec.seed = cfg.seed;
  return rec;
}

}  // namespace vrsgd::detail
