#pragma once

#include "vrsgd/model.hpp"
#include "vrsgd/solver/config.hpp"
#include "vrsgd/types.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace vrsgd {

/// max{alpha, 2/(s+1)}: the momentum weight and the learning-rate divisor.
template <typename Scalar>
Scalar momentum_weight(int s, Scalar alpha) {
  if (s < 1) throw std::invalid_argument("epoch index starts at 1");
  return std::max(alpha, Scalar(2) / static_cast<Scalar>(s + 1));
}

/// eta_s = eta0 / max{alpha, 2/(s+1)}
template <typename Scalar>
Scalar learning_rate(int s, Scalar eta0, Scalar alpha) {
  return eta0 / momentum_weight(s, alpha);
}

template <typename Scalar>
Scalar step_size(const SolverConfig<Scalar>& cfg, int s) {
  return cfg.lr_mode == LrMode::fixed ? cfg.eta0 : learning_rate(s, cfg.eta0, cfg.alpha);
}

/// Running form of the snapshot rules: feed x_1..x_m, then ask for the pair.
template <typename Scalar>
class SnapshotAccumulator {
 public:
  explicit SnapshotAccumulator(Index d) : sum_(Vec<Scalar>::Zero(d)) {}

  void reset() {
    sum_.setZero();
    count_ = 0;
  }

  template <typename Derived>
  void push(const Eigen::MatrixBase<Derived>& x) {
    sum_ += x;
    ++count_;
  }

  /// Replaces the running sum directly (used by the lazy path).
  void set_sum(Vec<Scalar> sum, Index count) {
    sum_ = std::move(sum);
    count_ = count;
  }

  Index count() const { return count_; }

  /// (snapshot, next start) given the last iterate x_m.
  std::pair<Vec<Scalar>, Vec<Scalar>> finish(SnapshotOption option, AverageWindow window, const Vec<Scalar>& last) const {
    if (count_ < 1) throw std::logic_error("snapshot of an empty epoch");
    Vec<Scalar> avg;
    if (window == AverageWindow::exclude_last) {
      if (count_ < 2) throw std::invalid_argument("averaging x_1..x_{m-1} needs m >= 2");
      avg = (sum_ - last) / static_cast<Scalar>(count_ - 1);
    } else {
      avg = sum_ / static_cast<Scalar>(count_);
    }
    switch (option) {
      case SnapshotOption::last: return {last, last};
      case SnapshotOption::average_all: return {avg, avg};
      case SnapshotOption::average_then_last: return {avg, last};
    }
    return {avg, last};
  }

 private:
  Vec<Scalar> sum_;
  Index count_ = 0;
};

/// Snapshot and next starting point from an epoch's iterates x_1..x_m.
template <typename Scalar>
std::pair<Vec<Scalar>, Vec<Scalar>> snapshot_update(SnapshotOption option, std::span<const Vec<Scalar>> iterates,
                                                     AverageWindow window = AverageWindow::all) {
  if (iterates.empty()) throw std::invalid_argument("snapshot_update needs at least one iterate");
  SnapshotAccumulator<Scalar> acc(iterates.front().size());
  for (const auto& x : iterates) acc.push(x);
  return acc.finish(option, window, iterates.back());
}

/// x~^S if F(x~^S) <= F(mean of x~^1..x~^S), else the mean.
template <typename Scalar>
Vec<Scalar> final_output_select(const Vec<Scalar>& last_snapshot, const Vec<Scalar>& mean_snapshot,
                                const Objective<Scalar>& obj) {
  return obj.value(last_snapshot) <= obj.value(mean_snapshot) ? last_snapshot : mean_snapshot;
}

/// m_1, m_2, ...: grows by floor(rho m_s) while below m, capped at m. A length
/// that floor() would leave unchanged grows by one instead.
inline std::vector<Index> growing_epoch_lengths(Index m1, Index m, double rho, int epochs) {
  if (m1 < 1 || m < 1) throw std::invalid_argument("epoch lengths must be >= 1");
  if (!(rho > 1)) throw std::invalid_argument("rho must be > 1");
  std::vector<Index> out;
  out.reserve(static_cast<std::size_t>(std::max(epochs, 0)));
  Index cur = m1;
  for (int s = 0; s < epochs; ++s) {
    out.push_back(cur);
    if (cur < m) {
      const auto next = static_cast<Index>(std::floor(rho * static_cast<double>(cur)));
      cur = std::min<Index>(std::max<Index>(next, cur + 1), m);
    }
  }
  return out;
}

}  // namespace vrsgd
