#pragma once

#include "vrsgd/types.hpp"

#include <Eigen/SparseCore>

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace vrsgd {

/// Sample matrix with labels. Rows are kept sorted-sparse; rows denser than the
/// threshold are also materialized in a dense block for O(d) kernels.
/// Immutable after construction.
template <typename Scalar>
class Dataset {
 public:
  using Sparse = Eigen::SparseMatrix<Scalar, Eigen::RowMajor, Index>;
  using Triplet = Eigen::Triplet<Scalar, Index>;

  static constexpr double kDenseThreshold = 0.5;

  Dataset(Sparse rows, Vec<Scalar> labels) : rows_(std::move(rows)), labels_(std::move(labels)) {
    rows_.makeCompressed();
    if (rows_.rows() < 1 || rows_.cols() < 1) throw std::invalid_argument("Dataset: need n >= 1 and d >= 1");
    if (labels_.size() != rows_.rows()) throw std::invalid_argument("Dataset: label count does not match row count");
    build_views();
  }

  static Dataset from_dense(const Mat<Scalar>& a, Vec<Scalar> labels) {
    Sparse s = a.sparseView(Scalar(0), Scalar(0));
    if (s.cols() == 0) s.resize(a.rows(), 1);
    return Dataset(std::move(s), std::move(labels));
  }

  Index n() const noexcept { return rows_.rows(); }
  Index d() const noexcept { return rows_.cols(); }
  const Vec<Scalar>& labels() const noexcept { return labels_; }
  Scalar label(Index i) const { return labels_(i); }
  const Vec<Scalar>& row_norms() const noexcept { return norms_; }
  const Sparse& sparse() const noexcept { return rows_; }

  bool row_is_dense(Index i) const { return slot_[static_cast<std::size_t>(i)] >= 0; }
  Index row_nnz(Index i) const { return row_is_dense(i) ? d() : rows_.outerIndexPtr()[i + 1] - rows_.outerIndexPtr()[i]; }
  Index nnz() const { return rows_.nonZeros(); }

  template <typename Derived>
  Scalar dot(Index i, const Eigen::MatrixBase<Derived>& x) const {
    const Index slot = slot_[static_cast<std::size_t>(i)];
    if (slot >= 0) return dense_.row(slot).dot(x.transpose());
    Scalar acc(0);
    for (typename Sparse::InnerIterator it(rows_, i); it; ++it) acc += it.value() * x(it.index());
    return acc;
  }

  /// y += alpha * a_i
  template <typename Derived>
  void add_scaled_row(Index i, Scalar alpha, Eigen::MatrixBase<Derived>& y) const {
    const Index slot = slot_[static_cast<std::size_t>(i)];
    if (slot >= 0) {
      y.noalias() += alpha * dense_.row(slot).transpose();
      return;
    }
    for (typename Sparse::InnerIterator it(rows_, i); it; ++it) y(it.index()) += alpha * it.value();
  }

  /// Visits (column, value) of row i in increasing column order. Dense rows
  /// visit every column.
  template <typename Fn>
  void for_each_entry(Index i, Fn&& fn) const {
    const Index slot = slot_[static_cast<std::size_t>(i)];
    if (slot >= 0) {
      for (Index j = 0; j < d(); ++j) fn(j, dense_(slot, j));
      return;
    }
    for (typename Sparse::InnerIterator it(rows_, i); it; ++it) fn(it.index(), it.value());
  }

  Mat<Scalar> to_dense() const { return Mat<Scalar>(rows_); }

  friend bool operator==(const Dataset& a, const Dataset& b) {
    if (a.n() != b.n() || a.d() != b.d() || a.labels_ != b.labels_ || a.nnz() != b.nnz()) return false;
    for (Index i = 0; i < a.n(); ++i) {
      typename Sparse::InnerIterator ia(a.rows_, i), ib(b.rows_, i);
      for (; ia && ib; ++ia, ++ib)
        if (ia.index() != ib.index() || ia.value() != ib.value()) return false;
      if (ia || ib) return false;
    }
    return true;
  }

 private:
  void build_views() {
    norms_.resize(n());
    slot_.assign(static_cast<std::size_t>(n()), -1);
    Index dense_count = 0;
    for (Index i = 0; i < n(); ++i) {
      norms_(i) = rows_.row(i).norm();
      const Index nnz = rows_.outerIndexPtr()[i + 1] - rows_.outerIndexPtr()[i];
      if (static_cast<double>(nnz) > kDenseThreshold * static_cast<double>(d())) slot_[static_cast<std::size_t>(i)] = dense_count++;
    }
    dense_.setZero(dense_count, d());
    for (Index i = 0; i < n(); ++i) {
      const Index slot = slot_[static_cast<std::size_t>(i)];
      if (slot < 0) continue;
      for (typename Sparse::InnerIterator it(rows_, i); it; ++it) dense_(slot, it.index()) = it.value();
    }
  }

  Sparse rows_;
  Vec<Scalar> labels_;
  Vec<Scalar> norms_;
  std::vector<Index> slot_;
  RowMat<Scalar> dense_;
};

namespace detail {

inline bool parse_real(std::string_view tok, double& out) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  if (tok.empty()) return false;
  const auto* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, out);
  return ec == std::errc() && ptr == end;
}

inline bool parse_index(std::string_view tok, long long& out) {
  if (tok.empty()) return false;
  const auto* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, out);
  return ec == std::errc() && ptr == end;
}

inline std::string format_real(double v) {
  char buf[40];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, ptr);
}

}  // namespace detail

/// Parses LIBSVM text (`<label> <idx>:<val> ...`, 1-based indices). Blank lines and
/// `#` comments are skipped. The dimension is the largest index seen unless
/// `dim` is given.
template <typename Scalar = double>
Dataset<Scalar> parse_libsvm(std::string_view text, std::optional<Index> dim = std::nullopt) {
  using Triplet = typename Dataset<Scalar>::Triplet;
  std::vector<Triplet> entries;
  std::vector<Scalar> labels;
  Index max_index = 0;
  std::size_t line_no = 0;

  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

    std::vector<std::string_view> tokens;
    std::size_t pos = 0;
    while (pos < line.size()) {
      while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
      const std::size_t start = pos;
      while (pos < line.size() && !std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
      if (pos > start) tokens.push_back(line.substr(start, pos - start));
    }
    if (tokens.empty()) continue;

    double label = 0;
    if (!detail::parse_real(tokens[0], label)) throw ParseError(line_no, "bad label '" + std::string(tokens[0]) + "'");
    const auto row = static_cast<Index>(labels.size());
    labels.push_back(static_cast<Scalar>(label));

    long long previous = 0;
    for (std::size_t t = 1; t < tokens.size(); ++t) {
      const auto tok = tokens[t];
      const auto colon = tok.find(':');
      long long idx = 0;
      double value = 0;
      if (colon == std::string_view::npos || !detail::parse_index(tok.substr(0, colon), idx) ||
          !detail::parse_real(tok.substr(colon + 1), value))
        throw ParseError(line_no, "malformed feature '" + std::string(tok) + "'");
      if (idx < 1) throw ParseError(line_no, "feature index must be >= 1");
      if (idx <= previous) throw StructuralError(line_no, "feature indices must be strictly increasing");
      previous = idx;
      max_index = std::max<Index>(max_index, static_cast<Index>(idx));
      entries.emplace_back(row, static_cast<Index>(idx - 1), static_cast<Scalar>(value));
    }
  }
  if (labels.empty()) throw ParseError(line_no, "no samples");

  Index d = std::max<Index>(max_index, 1);
  if (dim) {
    if (*dim < max_index) throw std::invalid_argument("dimension override smaller than largest feature index");
    d = std::max<Index>(*dim, 1);
  }
  typename Dataset<Scalar>::Sparse rows(static_cast<Index>(labels.size()), d);
  rows.setFromTriplets(entries.begin(), entries.end());
  return Dataset<Scalar>(std::move(rows), Eigen::Map<const Vec<Scalar>>(labels.data(), static_cast<Index>(labels.size())));
}

template <typename Scalar = double>
Dataset<Scalar> load_libsvm(const std::string& path, std::optional<Index> dim = std::nullopt) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_libsvm<Scalar>(ss.str(), dim);
}

/// Inverse of parse_libsvm; values are written with 17 significant digits so the
/// text re-parses to identical doubles.
template <typename Scalar>
std::string serialize_libsvm(const Dataset<Scalar>& ds) {
  std::string out;
  for (Index i = 0; i < ds.n(); ++i) {
    out += detail::format_real(static_cast<double>(ds.label(i)));
    for (typename Dataset<Scalar>::Sparse::InnerIterator it(ds.sparse(), i); it; ++it) {
      out += ' ';
      out += std::to_string(it.index() + 1);
      out += ':';
      out += detail::format_real(static_cast<double>(it.value()));
    }
    out += '\n';
  }
  return out;
}

/// Scales every nonzero row to unit Euclidean length; zero rows are left alone.
template <typename Scalar>
Dataset<Scalar> normalize_rows(const Dataset<Scalar>& ds) {
  typename Dataset<Scalar>::Sparse rows = ds.sparse();
  for (Index i = 0; i < rows.rows(); ++i) {
    const Scalar norm = ds.row_norms()(i);
    if (norm == Scalar(0)) continue;
    for (typename Dataset<Scalar>::Sparse::InnerIterator it(rows, i); it; ++it) it.valueRef() /= norm;
  }
  return Dataset<Scalar>(std::move(rows), ds.labels());
}

}  // namespace vrsgd
