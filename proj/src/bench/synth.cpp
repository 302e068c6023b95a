#include "vrsgd/bench/synth.hpp"

#include "vrsgd/random.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace vrsgd::bench {

namespace {

Mat<double> gaussian_matrix(CounterRng& rng, Index rows, Index cols) {
  std::normal_distribution<double> normal;
  Mat<double> a(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) a(i, j) = normal(rng);
  return a;
}

Vec<double> planted(CounterRng& rng, Index d) {
  std::normal_distribution<double> normal;
  Vec<double> w(d);
  for (Index j = 0; j < d; ++j) w(j) = normal(rng);
  return w;
}

Dataset<double> dense_instance(SynthKind kind, Index n, Index d, CounterRng& rng) {
  Mat<double> a = gaussian_matrix(rng, n, d);
  for (Index i = 0; i < n; ++i) {
    const double norm = a.row(i).norm();
    if (norm > 0) a.row(i) /= norm;
  }
  const Vec<double> w = planted(rng, d);
  std::normal_distribution<double> normal;
  Vec<double> b = a * w;
  for (Index i = 0; i < n; ++i) {
    if (kind == SynthKind::ridge) {
      b(i) += 0.1 * normal(rng);
      continue;
    }
    b(i) = b(i) + 0.3 * normal(rng) >= 0 ? 1.0 : -1.0;
    if (kind == SynthKind::sigmoid && rng.uniform01() < 0.1) b(i) = -b(i);
  }
  return Dataset<double>::from_dense(a, b);
}

Dataset<double> sparse_instance(Index n, Index d, double density, CounterRng& rng) {
  const Index per_row = std::clamp<Index>(static_cast<Index>(std::llround(density * static_cast<double>(d))), 1, d);
  const Vec<double> w = planted(rng, d);
  std::normal_distribution<double> normal;
  std::vector<Eigen::Triplet<double, Index>> entries;
  entries.reserve(static_cast<std::size_t>(n * per_row));
  Vec<double> labels(n);
  std::vector<Index> cols;
  for (Index i = 0; i < n; ++i) {
    cols.clear();
    while (static_cast<Index>(cols.size()) < per_row) {
      const auto j = static_cast<Index>(rng.below(static_cast<std::uint64_t>(d)));
      if (std::find(cols.begin(), cols.end(), j) == cols.end()) cols.push_back(j);
    }
    std::vector<double> vals(cols.size());
    double norm2 = 0;
    for (auto& v : vals) {
      v = normal(rng);
      norm2 += v * v;
    }
    const double scale = norm2 > 0 ? 1.0 / std::sqrt(norm2) : 1.0;
    double margin = 0;
    for (std::size_t k = 0; k < cols.size(); ++k) {
      entries.emplace_back(i, cols[k], vals[k] * scale);
      margin += vals[k] * scale * w(cols[k]);
    }
    labels(i) = margin + 0.1 * normal(rng) >= 0 ? 1.0 : -1.0;
  }
  Dataset<double>::Sparse rows(n, d);
  rows.setFromTriplets(entries.begin(), entries.end());
  return Dataset<double>(std::move(rows), labels);
}

// A = sqrt(n) U diag(s) V^T so that A^T A / n has eigenvalues s_j^2:
// 1, 0.97, then 0.36 * 0.64^(j-2).
Dataset<double> eigen_instance(Index n, Index d, CounterRng& rng) {
  if (n < d) throw std::invalid_argument("eigen instance needs n >= d");
  const Mat<double> u = Eigen::HouseholderQR<Mat<double>>(gaussian_matrix(rng, n, d)).householderQ() * Mat<double>::Identity(n, d);
  const Mat<double> v = Eigen::HouseholderQR<Mat<double>>(gaussian_matrix(rng, d, d)).householderQ() * Mat<double>::Identity(d, d);
  Vec<double> s(d);
  for (Index j = 0; j < d; ++j) s(j) = j == 0 ? 1.0 : j == 1 ? std::sqrt(0.97) : 0.6 * std::pow(0.8, static_cast<double>(j - 2));
  const Mat<double> a = std::sqrt(static_cast<double>(n)) * u * s.asDiagonal() * v.transpose();
  return Dataset<double>::from_dense(a, Vec<double>::Zero(n));
}

}  // namespace

SynthKind synth_kind_from_string(std::string_view s) {
  if (s == "ridge") return SynthKind::ridge;
  if (s == "logistic") return SynthKind::logistic;
  if (s == "sigmoid") return SynthKind::sigmoid;
  if (s == "sparse") return SynthKind::sparse;
  if (s == "eigen") return SynthKind::eigen;
  throw std::invalid_argument("unknown synthetic kind '" + std::string(s) + "'");
}

Dataset<double> generate_synthetic(SynthKind kind, Index n, Index d, std::uint64_t seed, double density) {
  if (n < 1 || d < 1) throw std::invalid_argument("synthetic instance needs n >= 1 and d >= 1");
  CounterRng rng = CounterRng(seed).split(0x5e7d);
  switch (kind) {
    case SynthKind::ridge:
    case SynthKind::logistic:
    case SynthKind::sigmoid: return dense_instance(kind, n, d, rng);
    case SynthKind::sparse:
      if (!(density > 0 && density <= 1)) throw std::invalid_argument("density must be in (0, 1]");
      return sparse_instance(n, d, density, rng);
    case SynthKind::eigen: return eigen_instance(n, d, rng);
  }
  throw std::invalid_argument("unknown synthetic kind");
}

}  // namespace vrsgd::bench
