#pragma once

#include "vrsgd/estimator.hpp"
#include "vrsgd/model.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace vrsgd {

/// Central differences, one coordinate at a time.
template <typename Scalar, typename Fn>
Vec<Scalar> finite_diff_grad(Fn&& fn, const Vec<Scalar>& x, Scalar h) {
  if (!(h > Scalar(0))) throw std::invalid_argument("finite-difference step must be positive");
  Vec<Scalar> grad(x.size());
  Vec<Scalar> probe = x;
  for (Index j = 0; j < x.size(); ++j) {
    const Scalar keep = probe(j);
    probe(j) = keep + h;
    const Scalar up = fn(probe);
    probe(j) = keep - h;
    const Scalar down = fn(probe);
    probe(j) = keep;
    grad(j) = (up - down) / (Scalar(2) * h);
  }
  return grad;
}

/// Solves (A^T A / n + lambda I) x = A^T b / n. Throws when the system is singular.
template <typename Scalar>
Vec<Scalar> ridge_closed_form(const Dataset<Scalar>& data, Scalar lambda) {
  if (lambda < Scalar(0)) throw std::invalid_argument("ridge weight must be >= 0");
  const Mat<Scalar> a = data.to_dense();
  const Scalar inv_n = Scalar(1) / static_cast<Scalar>(data.n());
  Mat<Scalar> h = inv_n * (a.transpose() * a);
  h.diagonal().array() += lambda;
  const Vec<Scalar> rhs = inv_n * (a.transpose() * data.labels());
  Eigen::FullPivLU<Mat<Scalar>> lu(h);
  if (!lu.isInvertible()) throw std::domain_error("ridge system is singular");
  Vec<Scalar> x = lu.solve(rhs);
  // one refinement step keeps the residual near machine precision
  x += lu.solve(rhs - h * x);
  return x;
}

enum class RateOption { I, II };

struct RateReport {
  double rho = 0;
  double L = 0;
  double mu = 0;
  double eta = 0;
  long long m = 0;
  double c = 0;
  RateOption option = RateOption::II;
  bool convergent = false;
};

/// Geometric per-epoch factor for strongly convex problems; option II averages
/// over m-1 iterates, option I over m.
inline RateReport theoretical_rate_sc(double L, double mu, double eta, long long m, double c,
                                      RateOption option = RateOption::II) {
  if (!(L > 0) || !(mu > 0) || !(eta > 0) || !(c > 0)) throw std::invalid_argument("L, mu, eta and c must be positive");
  if (m < 2) throw std::invalid_argument("epoch length must be >= 2");
  const double l_eta = L * eta;
  if (!(l_eta < 1.0 / 3.0)) throw std::domain_error("learning rate must be below 1/(3L)");
  const double md = static_cast<double>(m);
  const double window = option == RateOption::II ? md - 1.0 : md;
  const double denom = 1.0 - 3.0 * l_eta;
  RateReport r;
  r.rho = 2.0 * l_eta * (md + c) / (window * denom) + c * (1.0 - l_eta) / (mu * eta * window * denom);
  r.L = L;
  r.mu = mu;
  r.eta = eta;
  r.m = m;
  r.c = c;
  r.option = option;
  r.convergent = r.rho < 1.0;
  return r;
}

struct CEstimate {
  int epoch = 0;
  std::optional<double> c;          // empty once the previous snapshot is optimal
  std::optional<double> c_over_m;
};

/// c_s = [F(x^s_0) - F*] / [F(x~^{s-1}) - F*]. `start_values[k]` pairs with
/// `previous_snapshot_values[k]` for epoch k + 1.
inline std::vector<CEstimate> snapshot_constant_estimate(std::span<const double> start_values,
                                                      std::span<const double> previous_snapshot_values, double optimum,
                                                      long long m) {
  if (start_values.size() != previous_snapshot_values.size()) throw std::invalid_argument("trace lengths differ");
  if (m < 1) throw std::invalid_argument("epoch length must be >= 1");
  std::vector<CEstimate> out;
  out.reserve(start_values.size());
  for (std::size_t k = 0; k < start_values.size(); ++k) {
    CEstimate e;
    e.epoch = static_cast<int>(k) + 1;
    const double den = previous_snapshot_values[k] - optimum;
    if (den > 0) {
      e.c = (start_values[k] - optimum) / den;
      e.c_over_m = *e.c / static_cast<double>(m);
    }
    out.push_back(e);
  }
  return out;
}

template <typename Scalar>
struct VarianceReport {
  Scalar lhs = 0;
  Scalar rhs = 0;
  bool satisfied = false;
};

namespace detail {

// visits every size-b subset of {0..n-1} in lexicographic order
template <typename Fn>
void for_each_subset(Index n, Index b, Fn&& fn) {
  std::vector<Index> idx(static_cast<std::size_t>(b));
  for (Index k = 0; k < b; ++k) idx[static_cast<std::size_t>(k)] = k;
  while (true) {
    fn(std::span<const Index>(idx));
    Index k = b - 1;
    while (k >= 0 && idx[static_cast<std::size_t>(k)] == n - b + k) --k;
    if (k < 0) return;
    ++idx[static_cast<std::size_t>(k)];
    for (Index j = k + 1; j < b; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

}  // namespace detail

/// Exact E|v - grad f(x)|^2 of the size-b estimator, by enumerating every
/// batch, against 4 L delta(b) [F(x) - F* + F(x~) - F*].
template <typename Scalar>
VarianceReport<Scalar> variance_bound_report(const Objective<Scalar>& obj, const Vec<Scalar>& x, const Vec<Scalar>& anchor,
                                             const Vec<Scalar>& optimum, Index b) {
  const Index n = obj.n();
  if (b < 1 || b > n) throw std::invalid_argument("mini-batch size must be in [1, n]");
  if (b > 1 && b < n && n > 12) throw std::invalid_argument("exact enumeration needs n <= 12 when 1 < b < n");
  const auto state = EstimatorState<Scalar>::at(obj, anchor);
  const Vec<Scalar> exact = obj.smooth_gradient(x);
  Scalar total = 0;
  long long count = 0;
  if (b == 1) {
    for (Index i = 0; i < n; ++i) {
      total += (svrg_estimate(state, obj, i, x) - exact).squaredNorm();
      ++count;
    }
  } else {
    detail::for_each_subset(n, b, [&](std::span<const Index> batch) {
      total += (minibatch_estimate(state, obj, batch, x) - exact).squaredNorm();
      ++count;
    });
  }
  VarianceReport<Scalar> r;
  r.lhs = total / static_cast<Scalar>(count);
  const Scalar f_star = obj.value(optimum);
  const Scalar delta = n == 1 ? Scalar(0) : static_cast<Scalar>(delta_b(n, b));
  r.rhs = Scalar(4) * obj.smoothness() * delta * ((obj.value(x) - f_star) + (obj.value(anchor) - f_star));
  // rounding slack for the all-zero case
  const Scalar slack = Scalar(64) * std::numeric_limits<Scalar>::epsilon() * (exact.squaredNorm() + Scalar(1));
  r.satisfied = r.lhs <= r.rhs + slack;
  return r;
}

}  // namespace vrsgd
