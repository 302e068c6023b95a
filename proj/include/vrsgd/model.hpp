#pragma once

#include "vrsgd/data.hpp"
#include "vrsgd/types.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

namespace vrsgd {

/// Loss families for linear models; each is a scalar link psi(z, b) of the
/// margin z = a_i^T x.
enum class LossKind { logistic, squared, sigmoid, eigen_quadratic };

enum class RegKind { none, l2, l1, elastic_net };

inline std::string_view to_string(LossKind k) {
  switch (k) {
    case LossKind::logistic: return "logistic";
    case LossKind::squared: return "squared";
    case LossKind::sigmoid: return "sigmoid";
    case LossKind::eigen_quadratic: return "eigen";
  }
  return "?";
}

inline LossKind loss_from_string(std::string_view s) {
  if (s == "logistic") return LossKind::logistic;
  if (s == "squared" || s == "ridge" || s == "lasso") return LossKind::squared;
  if (s == "sigmoid") return LossKind::sigmoid;
  if (s == "eigen") return LossKind::eigen_quadratic;
  throw std::invalid_argument("unknown loss '" + std::string(s) + "'");
}

namespace loss {

// sigma(t) = 1 / (1 + exp(-t)) without overflow
template <typename Scalar>
Scalar logistic_sigma(Scalar t) {
  if (t >= Scalar(0)) return Scalar(1) / (Scalar(1) + std::exp(-t));
  const Scalar e = std::exp(t);
  return e / (Scalar(1) + e);
}

template <typename Scalar>
Scalar value(LossKind kind, Scalar z, Scalar b) {
  switch (kind) {
    case LossKind::logistic: {
      const Scalar t = b * z;
      // log(1 + exp(-t)) = max(-t, 0) + log1p(exp(-|t|))
      return std::max(-t, Scalar(0)) + std::log1p(std::exp(-std::abs(t)));
    }
    case LossKind::squared: return Scalar(0.5) * (z - b) * (z - b);
    case LossKind::sigmoid: return logistic_sigma(-b * z);
    case LossKind::eigen_quadratic: return -z * z;
  }
  return Scalar(0);
}

/// d psi / dz
template <typename Scalar>
Scalar derivative(LossKind kind, Scalar z, Scalar b) {
  switch (kind) {
    case LossKind::logistic: return -b * logistic_sigma(-b * z);
    case LossKind::squared: return z - b;
    case LossKind::sigmoid: {
      const Scalar t = b * z;
      return -b * logistic_sigma(t) * logistic_sigma(-t);
    }
    case LossKind::eigen_quadratic: return Scalar(-2) * z;
  }
  return Scalar(0);
}

/// sup_z |psi''(z, b)| for |b| = 1.
template <typename Scalar>
Scalar curvature_bound(LossKind kind) {
  switch (kind) {
    case LossKind::logistic: return Scalar(0.25);
    case LossKind::squared: return Scalar(1);
    // |sigma''| = sigma(1-sigma)|1-2 sigma| peaks at 1/(6 sqrt 3)
    case LossKind::sigmoid: return Scalar(1) / (Scalar(6) * std::sqrt(Scalar(3)));
    case LossKind::eigen_quadratic: return Scalar(2);
  }
  throw std::invalid_argument("unsupported loss kind");
}

}  // namespace loss

/// g(x) = (l2/2)||x||^2 + l1 ||x||_1, restricted by kind.
template <typename Scalar>
struct Regularizer {
  RegKind kind = RegKind::none;
  Scalar lambda1 = 0;  // l2 weight
  Scalar lambda2 = 0;  // l1 weight

  static Regularizer none() { return {}; }
  static Regularizer l2(Scalar lambda1) { return checked({RegKind::l2, lambda1, 0}); }
  static Regularizer l1(Scalar lambda2) { return checked({RegKind::l1, 0, lambda2}); }
  static Regularizer elastic_net(Scalar lambda1, Scalar lambda2) { return checked({RegKind::elastic_net, lambda1, lambda2}); }

  /// Picks the narrowest kind that represents the given weights.
  static Regularizer from_weights(Scalar lambda1, Scalar lambda2) {
    if (lambda1 > 0 && lambda2 > 0) return elastic_net(lambda1, lambda2);
    if (lambda1 > 0) return l2(lambda1);
    if (lambda2 > 0) return l1(lambda2);
    return none();
  }

  Scalar l2_weight() const { return kind == RegKind::l2 || kind == RegKind::elastic_net ? lambda1 : Scalar(0); }
  Scalar l1_weight() const { return kind == RegKind::l1 || kind == RegKind::elastic_net ? lambda2 : Scalar(0); }
  bool smooth() const { return l1_weight() == Scalar(0); }

  template <typename Derived>
  Scalar value(const Eigen::MatrixBase<Derived>& x) const {
    return Scalar(0.5) * l2_weight() * x.squaredNorm() + l1_weight() * x.template lpNorm<1>();
  }

  /// Gradient of a smooth regularizer.
  template <typename Derived>
  Vec<Scalar> gradient(const Eigen::MatrixBase<Derived>& x) const {
    if (!smooth()) throw std::logic_error("gradient requested for a non-smooth regularizer");
    return l2_weight() * x;
  }

  Regularizer without_l2() const { return from_weights(Scalar(0), l1_weight()); }

 private:
  static Regularizer checked(Regularizer r) {
    if (!(r.lambda1 >= 0) || !(r.lambda2 >= 0)) throw std::invalid_argument("regularization weights must be >= 0");
    return r;
  }
};

/// F(x) = (1/n) sum_i f_i(x) + g(x) for a linear model over a dataset.
///
/// With `fold_l2` the ridge term (lambda1/2)||x||^2 is part of every f_i and g
/// keeps only the l1 part. F itself is the same either way; what changes is
/// which piece the solvers differentiate and which piece they prox.
template <typename Scalar>
class Objective {
 public:
  Objective(const Dataset<Scalar>& data, LossKind loss, Regularizer<Scalar> reg)
      : Objective(data, loss, reg, reg.l1_weight() > 0 && reg.l2_weight() > 0) {}

  Objective(const Dataset<Scalar>& data, LossKind loss, Regularizer<Scalar> reg, bool fold_l2)
      : data_(&data), loss_(loss), reg_(reg), fold_l2_(fold_l2 && reg.l2_weight() > 0) {
    if (loss == LossKind::logistic || loss == LossKind::sigmoid) {
      for (Index i = 0; i < data.n(); ++i) {
        const Scalar b = data.label(i);
        if (b != Scalar(1) && b != Scalar(-1))
          throw std::invalid_argument("classification loss needs labels in {-1, +1}; row " + std::to_string(i) + " has " +
                                      std::to_string(static_cast<double>(b)));
      }
    }
    if (loss == LossKind::eigen_quadratic && reg.kind != RegKind::none)
      throw std::invalid_argument("eigen-quadratic objective takes no regularizer");
    g_ = fold_l2_ ? reg_.without_l2() : reg_;
  }

  // The objective refers to its dataset; it must not outlive it.
  Objective(Dataset<Scalar>&&, LossKind, Regularizer<Scalar>) = delete;
  Objective(Dataset<Scalar>&&, LossKind, Regularizer<Scalar>, bool) = delete;

  const Dataset<Scalar>& data() const noexcept { return *data_; }
  Index n() const noexcept { return data_->n(); }
  Index d() const noexcept { return data_->d(); }
  LossKind loss() const noexcept { return loss_; }
  const Regularizer<Scalar>& regularizer() const noexcept { return reg_; }
  /// The part of the regularizer not folded into the components.
  const Regularizer<Scalar>& g() const noexcept { return g_; }
  bool l2_folded() const noexcept { return fold_l2_; }
  Scalar folded_l2() const noexcept { return fold_l2_ ? reg_.l2_weight() : Scalar(0); }

  template <typename Derived>
  Scalar margin(Index i, const Eigen::MatrixBase<Derived>& x) const {
    return data_->dot(i, x);
  }

  Scalar link_derivative(Index i, Scalar z) const { return loss::derivative(loss_, z, data_->label(i)); }

  template <typename Derived>
  Scalar component_value(Index i, const Eigen::MatrixBase<Derived>& x) const {
    Scalar v = loss::value(loss_, margin(i, x), data_->label(i));
    if (fold_l2_) v += Scalar(0.5) * folded_l2() * x.squaredNorm();
    return v;
  }

  template <typename Derived>
  Vec<Scalar> component_gradient(Index i, const Eigen::MatrixBase<Derived>& x) const {
    Vec<Scalar> grad = fold_l2_ ? Vec<Scalar>(folded_l2() * x) : Vec<Scalar>::Zero(d());
    data_->add_scaled_row(i, link_derivative(i, margin(i, x)), grad);
    return grad;
  }

  /// f(x) = (1/n) sum_i f_i(x)
  template <typename Derived>
  Scalar smooth_value(const Eigen::MatrixBase<Derived>& x) const {
    Scalar acc(0);
    for (Index i = 0; i < n(); ++i) acc += loss::value(loss_, margin(i, x), data_->label(i));
    acc /= static_cast<Scalar>(n());
    if (fold_l2_) acc += Scalar(0.5) * folded_l2() * x.squaredNorm();
    return acc;
  }

  /// grad f(x); n component evaluations in fixed index order.
  template <typename Derived>
  Vec<Scalar> smooth_gradient(const Eigen::MatrixBase<Derived>& x) const {
    Vec<Scalar> grad = Vec<Scalar>::Zero(d());
    for (Index i = 0; i < n(); ++i) data_->add_scaled_row(i, link_derivative(i, margin(i, x)), grad);
    grad /= static_cast<Scalar>(n());
    if (fold_l2_) grad.noalias() += folded_l2() * x;
    return grad;
  }

  template <typename Derived>
  Scalar value(const Eigen::MatrixBase<Derived>& x) const {
    return smooth_value(x) + g_.value(x);
  }

  /// grad F for smooth g.
  template <typename Derived>
  Vec<Scalar> gradient(const Eigen::MatrixBase<Derived>& x) const {
    return smooth_gradient(x) + g_.gradient(x);
  }

  Scalar component_smoothness(Index i) const {
    const Scalar r = data_->row_norms()(i);
    return loss::curvature_bound<Scalar>(loss_) * r * r + folded_l2();
  }

  /// L = max_i L_i
  Scalar smoothness() const {
    Scalar best(0);
    for (Index i = 0; i < n(); ++i) best = std::max(best, component_smoothness(i));
    return best;
  }

  /// Strong convexity taken from the ridge term only.
  Scalar strong_convexity() const { return reg_.l2_weight(); }

 private:
  const Dataset<Scalar>* data_;
  LossKind loss_;
  Regularizer<Scalar> reg_;
  Regularizer<Scalar> g_;
  bool fold_l2_;
};

}  // namespace vrsgd
