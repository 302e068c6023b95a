#pragma once

#include "vrsgd/data.hpp"
#include "vrsgd/random.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace testing {

using vrsgd::CounterRng;
using vrsgd::Index;
using vrsgd::Mat;
using vrsgd::Vec;

inline double gaussian(CounterRng& rng) {
  const double u = 1.0 - rng.uniform01();
  const double v = rng.uniform01();
  return std::sqrt(-2.0 * std::log(u)) * std::cos(6.283185307179586 * v);
}

inline Vec<double> random_vec(CounterRng& rng, Index d, double scale = 1.0) {
  Vec<double> x(d);
  for (Index j = 0; j < d; ++j) x(j) = scale * gaussian(rng);
  return x;
}

inline Mat<double> random_mat(CounterRng& rng, Index n, Index d) {
  Mat<double> a(n, d);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < d; ++j) a(i, j) = gaussian(rng);
  return a;
}

/// Dense gaussian rows scaled to unit norm with +-1 labels from a planted model.
inline vrsgd::Dataset<double> classification(std::uint64_t seed, Index n, Index d) {
  CounterRng rng(seed);
  const Mat<double> a = random_mat(rng, n, d);
  const Vec<double> w = random_vec(rng, d);
  Vec<double> b(n);
  for (Index i = 0; i < n; ++i) b(i) = (a.row(i).dot(w) + 0.3 * gaussian(rng)) >= 0 ? 1.0 : -1.0;
  return vrsgd::normalize_rows(vrsgd::Dataset<double>::from_dense(a, b));
}

/// Unit rows with real-valued targets from a noisy linear model.
inline vrsgd::Dataset<double> regression(std::uint64_t seed, Index n, Index d) {
  CounterRng rng(seed);
  Mat<double> a = random_mat(rng, n, d);
  for (Index i = 0; i < n; ++i) a.row(i).normalize();
  const Vec<double> w = random_vec(rng, d);
  Vec<double> b = a * w;
  for (Index i = 0; i < n; ++i) b(i) += 0.1 * gaussian(rng);
  return vrsgd::Dataset<double>::from_dense(a, b);
}

}  // namespace testing

namespace testing {

/// Sparse rows with about `per_row` nonzeros each, unit norm, +-1 labels.
inline vrsgd::Dataset<double> sparse_classification(std::uint64_t seed, Index n, Index d, Index per_row) {
  CounterRng rng(seed);
  using Sparse = typename vrsgd::Dataset<double>::Sparse;
  std::vector<Eigen::Triplet<double, Index>> entries;
  Vec<double> labels(n);
  for (Index i = 0; i < n; ++i) {
    std::vector<Index> cols;
    while (static_cast<Index>(cols.size()) < per_row) {
      const auto j = static_cast<Index>(rng.below(static_cast<std::uint64_t>(d)));
      if (std::find(cols.begin(), cols.end(), j) == cols.end()) cols.push_back(j);
    }
    double dot = 0;
    for (Index j : cols) {
      const double v = gaussian(rng);
      entries.emplace_back(i, j, v);
      dot += v * (j % 2 == 0 ? 1.0 : -1.0);
    }
    labels(i) = dot >= 0 ? 1.0 : -1.0;
  }
  Sparse rows(n, d);
  rows.setFromTriplets(entries.begin(), entries.end());
  return vrsgd::normalize_rows(vrsgd::Dataset<double>(std::move(rows), labels));
}

}  // namespace testing
