#pragma once

#include "vrsgd/types.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

namespace vrsgd {

// Counter-based generator: the k-th output is a pure function of (key, k), so a
// stream can be replayed or split without carrying mutable engine state around.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : seed_(seed), key_(mix(seed ^ mix(stream + 0x9E3779B97F4A7C15ULL))) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return at(counter_++); }

  /// Output at an absolute position, independent of how many draws were made.
  result_type at(std::uint64_t position) const {
    return mix(key_ + 0x9E3779B97F4A7C15ULL * (position + 1));
  }

  /// Independent child stream; same (seed, id) always gives the same child.
  CounterRng split(std::uint64_t id) const { return CounterRng(mix(key_ ^ mix(id)), id); }

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t draws() const noexcept { return counter_; }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Unbiased integer in [0, n) (multiply-shift with rejection).
  std::uint64_t below(std::uint64_t n) {
    if (n <= 1) return 0;
    unsigned __int128 product = static_cast<unsigned __int128>((*this)()) * n;
    auto low = static_cast<std::uint64_t>(product);
    if (low < n) {
      const std::uint64_t threshold = (0 - n) % n;
      while (low < threshold) {
        product = static_cast<unsigned __int128>((*this)()) * n;
        low = static_cast<std::uint64_t>(product);
      }
    }
    return static_cast<std::uint64_t>(product >> 64);
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    z = z ^ (z >> 31);
    // second round decorrelates nearby counters further
    z = (z ^ (z >> 32)) * 0xD6E8FEB86659FD93ULL;
    return z ^ (z >> 32);
  }

  std::uint64_t seed_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

enum class SamplingKind { uniform, lipschitz_weighted };

/// How component indices are drawn. Weighted schemes carry the cumulative table.
struct SamplingScheme {
  SamplingKind kind = SamplingKind::uniform;
  std::vector<double> weights;     // p_i, empty for uniform
  std::vector<double> cumulative;  // running sums of p_i

  static SamplingScheme uniform() { return {}; }

  /// Probabilities proportional to the given positive values.
  static SamplingScheme weighted(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("weighted sampling needs at least one weight");
    SamplingScheme scheme;
    scheme.kind = SamplingKind::lipschitz_weighted;
    const double total = std::accumulate(values.begin(), values.end(), 0.0);
    scheme.weights.reserve(values.size());
    for (double v : values) {
      if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument("sampling weights must be positive and finite");
      scheme.weights.push_back(v / total);
    }
    scheme.cumulative.resize(values.size());
    std::partial_sum(scheme.weights.begin(), scheme.weights.end(), scheme.cumulative.begin());
    scheme.cumulative.back() = 1.0;
    return scheme;
  }

  double probability(Index i, Index n) const {
    return kind == SamplingKind::uniform ? 1.0 / static_cast<double>(n) : weights[static_cast<std::size_t>(i)];
  }
};

inline Index sample_index(CounterRng& rng, const SamplingScheme& scheme, Index n) {
  if (n < 1) throw std::invalid_argument("sample_index: n must be >= 1");
  if (scheme.kind == SamplingKind::uniform || n == 1) {
    if (n == 1) {
      rng();  // keep stream positions aligned across schemes
      return 0;
    }
    return static_cast<Index>(rng.below(static_cast<std::uint64_t>(n)));
  }
  const double u = rng.uniform01();
  const auto it = std::upper_bound(scheme.cumulative.begin(), scheme.cumulative.end(), u);
  const auto pos = static_cast<Index>(it - scheme.cumulative.begin());
  return std::min(pos, n - 1);
}

/// b distinct indices from [0, n) by partial Fisher-Yates, returned sorted so the
/// reduction order does not depend on the draw order.
inline std::vector<Index> sample_batch(CounterRng& rng, Index n, Index b) {
  if (b < 1 || b > n) throw std::invalid_argument("sample_batch: batch size out of range");
  std::vector<Index> pool(static_cast<std::size_t>(n));
  std::iota(pool.begin(), pool.end(), Index{0});
  for (Index k = 0; k < b; ++k) {
    const auto j = k + static_cast<Index>(rng.below(static_cast<std::uint64_t>(n - k)));
    std::swap(pool[static_cast<std::size_t>(k)], pool[static_cast<std::size_t>(j)]);
  }
  pool.resize(static_cast<std::size_t>(b));
  std::sort(pool.begin(), pool.end());
  return pool;
}

}  // namespace vrsgd
