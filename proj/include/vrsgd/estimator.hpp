#pragma once

#include "vrsgd/model.hpp"
#include "vrsgd/types.hpp"

#include <span>
#include <stdexcept>

namespace vrsgd {

/// grad f(x) = (1/n) sum_i grad f_i(x); one effective pass.
template <typename Scalar, typename Derived>
Vec<Scalar> full_gradient(const Objective<Scalar>& obj, const Eigen::MatrixBase<Derived>& x) {
  return obj.smooth_gradient(x);
}

/// Snapshot x~, its full gradient mu~, and the per-sample link derivatives at the
/// snapshot so that grad f_i(x~) costs O(nnz(a_i)) without a second dot product.
template <typename Scalar>
struct EstimatorState {
  Vec<Scalar> snapshot;
  Vec<Scalar> anchor_grad;
  Vec<Scalar> anchor_links;

  template <typename Derived>
  static EstimatorState at(const Objective<Scalar>& obj, const Eigen::MatrixBase<Derived>& x) {
    EstimatorState s;
    s.snapshot = x;
    s.anchor_links.resize(obj.n());
    s.anchor_grad = Vec<Scalar>::Zero(obj.d());
    for (Index i = 0; i < obj.n(); ++i) {
      s.anchor_links(i) = obj.link_derivative(i, obj.margin(i, x));
      obj.data().add_scaled_row(i, s.anchor_links(i), s.anchor_grad);
    }
    s.anchor_grad /= static_cast<Scalar>(obj.n());
    if (obj.l2_folded()) s.anchor_grad.noalias() += obj.folded_l2() * s.snapshot;
    return s;
  }
};

/// psi'(a_i^T x) - psi'(a_i^T x~): the coefficient of a_i in the correction term.
template <typename Scalar, typename Derived>
Scalar svrg_link_delta(const EstimatorState<Scalar>& state, const Objective<Scalar>& obj, Index i,
                       const Eigen::MatrixBase<Derived>& x) {
  return obj.link_derivative(i, obj.margin(i, x)) - state.anchor_links(i);
}

/// grad f_i(x) - grad f_i(x~) + mu~, optionally importance-weighted by
/// 1/(n p_i) for non-uniform sampling.
template <typename Scalar, typename Derived>
Vec<Scalar> svrg_estimate(const EstimatorState<Scalar>& state, const Objective<Scalar>& obj, Index i,
                          const Eigen::MatrixBase<Derived>& x, Scalar weight = Scalar(1)) {
  Vec<Scalar> est = state.anchor_grad;
  if (obj.l2_folded()) est.noalias() += (weight * obj.folded_l2()) * (x - state.snapshot);
  obj.data().add_scaled_row(i, weight * svrg_link_delta(state, obj, i, x), est);
  return est;
}

/// (1/b) sum_{i in I} [grad f_i(x) - grad f_i(x~)] + mu~
template <typename Scalar, typename Derived>
Vec<Scalar> minibatch_estimate(const EstimatorState<Scalar>& state, const Objective<Scalar>& obj,
                               std::span<const Index> batch, const Eigen::MatrixBase<Derived>& x) {
  const auto b = static_cast<Index>(batch.size());
  if (b < 1 || b > obj.n()) throw std::invalid_argument("mini-batch size must be in [1, n]");
  Vec<Scalar> corr = Vec<Scalar>::Zero(obj.d());
  for (Index i : batch) obj.data().add_scaled_row(i, svrg_link_delta(state, obj, i, x), corr);
  Vec<Scalar> est = state.anchor_grad + corr / static_cast<Scalar>(b);
  if (obj.l2_folded()) est.noalias() += obj.folded_l2() * (x - state.snapshot);
  return est;
}

/// SAGA memory for linear models: one stored link derivative per sample plus
/// the running mean of the implied gradients. The folded ridge gradient is
/// exact at the current point and never stored.
template <typename Scalar>
struct SagaTable {
  Vec<Scalar> links;
  Vec<Scalar> average;  // (1/n) sum_i links_i a_i

  template <typename Derived>
  static SagaTable at(const Objective<Scalar>& obj, const Eigen::MatrixBase<Derived>& x) {
    SagaTable t;
    t.links.resize(obj.n());
    t.average = Vec<Scalar>::Zero(obj.d());
    for (Index i = 0; i < obj.n(); ++i) {
      t.links(i) = obj.link_derivative(i, obj.margin(i, x));
      obj.data().add_scaled_row(i, t.links(i), t.average);
    }
    t.average /= static_cast<Scalar>(obj.n());
    return t;
  }

  /// Mean of the table-implied gradients, recomputed from scratch.
  Vec<Scalar> recomputed_average(const Objective<Scalar>& obj) const {
    Vec<Scalar> avg = Vec<Scalar>::Zero(obj.d());
    for (Index i = 0; i < obj.n(); ++i) obj.data().add_scaled_row(i, links(i), avg);
    return avg / static_cast<Scalar>(obj.n());
  }
};

/// Returns grad f_i(x) - g_i + avg(g), then stores grad f_i(x) as g_i.
template <typename Scalar, typename Derived>
Vec<Scalar> saga_estimate_and_update(SagaTable<Scalar>& table, const Objective<Scalar>& obj, Index i,
                                     const Eigen::MatrixBase<Derived>& x) {
  const Scalar fresh = obj.link_derivative(i, obj.margin(i, x));
  const Scalar delta = fresh - table.links(i);
  Vec<Scalar> est = table.average;
  if (obj.l2_folded()) est.noalias() += obj.folded_l2() * x;
  obj.data().add_scaled_row(i, delta, est);
  obj.data().add_scaled_row(i, delta / static_cast<Scalar>(obj.n()), table.average);
  table.links(i) = fresh;
  return est;
}

/// delta(b) = (n - b) / ((n - 1) b), the mini-batch variance factor.
inline double delta_b(Index n, Index b) {
  if (n < 2) throw std::invalid_argument("delta_b needs n >= 2");
  if (b < 1 || b > n) throw std::invalid_argument("delta_b needs 1 <= b <= n");
  return static_cast<double>(n - b) / (static_cast<double>(n - 1) * static_cast<double>(b));
}

}  // namespace vrsgd
