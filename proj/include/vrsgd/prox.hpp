#pragma once

#include "vrsgd/model.hpp"
#include "vrsgd/types.hpp"

#include <cmath>
#include <stdexcept>

namespace vrsgd {

/// Prox^g_step(y) = argmin_x { ||x - y||^2 / (2 step) + g(x) }
template <typename Scalar>
struct ProxSpec {
  Regularizer<Scalar> reg;
  Scalar step;

  ProxSpec(Regularizer<Scalar> r, Scalar eta) : reg(r), step(eta) {
    if (!(step > 0) || !std::isfinite(static_cast<double>(step))) throw std::invalid_argument("prox step must be positive and finite");
  }
};

/// sign(y) max(|y| - t, 0); |y| == t maps to exactly 0.
template <typename Scalar>
Scalar soft_threshold(Scalar y, Scalar t) {
  if (y > t) return y - t;
  if (y < -t) return y + t;
  return Scalar(0);
}

template <typename Scalar>
Scalar prox_scalar(const ProxSpec<Scalar>& spec, Scalar y) {
  const Scalar thresh = spec.reg.l1_weight() * spec.step;
  const Scalar shrink = Scalar(1) + spec.reg.l2_weight() * spec.step;
  switch (spec.reg.kind) {
    case RegKind::none: return y;
    case RegKind::l2: return y / shrink;
    case RegKind::l1: return soft_threshold(y, thresh);
    case RegKind::elastic_net: return soft_threshold(y, thresh) / shrink;
  }
  return y;
}

template <typename Scalar, typename Derived>
Vec<Scalar> prox_apply(const ProxSpec<Scalar>& spec, const Eigen::MatrixBase<Derived>& y) {
  Vec<Scalar> out(y.size());
  for (Index j = 0; j < y.size(); ++j) out(j) = prox_scalar(spec, static_cast<Scalar>(y(j)));
  return out;
}

/// Minimum-norm element of (x - y)/step + subdiff g(x); zero iff x = prox(y).
template <typename Scalar, typename DerivedY, typename DerivedX>
Scalar prox_optimality_residual(const ProxSpec<Scalar>& spec, const Eigen::MatrixBase<DerivedY>& y,
                                const Eigen::MatrixBase<DerivedX>& x) {
  const Scalar l1 = spec.reg.l1_weight();
  const Scalar l2 = spec.reg.l2_weight();
  Scalar sq(0);
  for (Index j = 0; j < x.size(); ++j) {
    const Scalar xj = x(j);
    const Scalar smooth = (xj - static_cast<Scalar>(y(j))) / spec.step + l2 * xj;
    Scalar r;
    if (xj > 0) r = smooth + l1;
    else if (xj < 0) r = smooth - l1;
    else r = soft_threshold(smooth, l1);  // pick s in [-1, 1] closest to cancelling
    sq += r * r;
  }
  return std::sqrt(sq);
}

}  // namespace vrsgd
