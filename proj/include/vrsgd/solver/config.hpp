#pragma once

#include "vrsgd/random.hpp"
#include "vrsgd/types.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace vrsgd {

enum class Algorithm {
  vr_sgd,           // snapshot = epoch average, start = last iterate
  momentum_vr_sgd,  // convex-combination momentum variant
  vr_sgd_pp,        // growing epoch lengths
  svrg,             // snapshot = start = last iterate
  prox_svrg,        // snapshot = start = epoch average, proximal steps
  saga,
  katyusha,
  sgd,
  gd,
  agd,
  apg,
  power,
  vr_pca,
  eigen_vr_sgd,
};

/// Snapshot / next-start pairs: I = (last, last), II = (avg, avg), III = (avg, last).
enum class SnapshotOption { last, average_all, average_then_last };

/// Which iterates the epoch average runs over: x_1..x_m, or x_1..x_{m-1}.
enum class AverageWindow { all, exclude_last };

enum class LrMode { fixed, varying };
enum class UpdateRule { smooth, proximal };
enum class MomentumOption { I, II };
enum class KatyushaVariant { I, II };

inline std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::vr_sgd: return "vr_sgd";
    case Algorithm::momentum_vr_sgd: return "momentum_vr_sgd";
    case Algorithm::vr_sgd_pp: return "vr_sgd_pp";
    case Algorithm::svrg: return "svrg";
    case Algorithm::prox_svrg: return "prox_svrg";
    case Algorithm::saga: return "saga";
    case Algorithm::katyusha: return "katyusha";
    case Algorithm::sgd: return "sgd";
    case Algorithm::gd: return "gd";
    case Algorithm::agd: return "agd";
    case Algorithm::apg: return "apg";
    case Algorithm::power: return "power";
    case Algorithm::vr_pca: return "vr_pca";
    case Algorithm::eigen_vr_sgd: return "eigen_vr_sgd";
  }
  return "?";
}

inline Algorithm algorithm_from_string(std::string_view s) {
  for (int k = 0; k <= static_cast<int>(Algorithm::eigen_vr_sgd); ++k) {
    const auto a = static_cast<Algorithm>(k);
    if (to_string(a) == s) return a;
  }
  throw std::invalid_argument("unknown algorithm '" + std::string(s) + "'");
}

inline bool is_eigen_algorithm(Algorithm a) {
  return a == Algorithm::power || a == Algorithm::vr_pca || a == Algorithm::eigen_vr_sgd;
}

template <typename Scalar>
struct GrowthSettings {
  Scalar rho = Scalar(1.75);
  Index m1 = 0;  // 0: floor(n/4)
};

template <typename Scalar>
struct KatyushaSettings {
  std::optional<Scalar> w1;  // unset: chosen per epoch from (m, mu, L)
  Scalar w2 = Scalar(0.5);
  KatyushaVariant variant = KatyushaVariant::II;
};

template <typename Scalar>
struct SolverConfig {
  Algorithm algorithm = Algorithm::vr_sgd;
  int epochs = 10;
  Index epoch_length = 0;  // 0: algorithm default (2n; n for SAGA and eigen solvers)
  Scalar eta0 = Scalar(0.1);
  Scalar alpha = Scalar(0.2);
  LrMode lr_mode = LrMode::fixed;
  std::optional<SnapshotOption> snapshot;  // unset: the algorithm's own policy
  AverageWindow average_window = AverageWindow::all;
  UpdateRule update_rule = UpdateRule::smooth;
  Index batch_size = 1;
  std::uint64_t seed = 1;
  SamplingKind sampling = SamplingKind::uniform;
  GrowthSettings<Scalar> growth;
  KatyushaSettings<Scalar> katyusha;
  MomentumOption momentum_option = MomentumOption::I;
  bool lazy = false;
  std::optional<Vec<Scalar>> x0;       // default: zero (unit random vector for eigen solvers)
  std::optional<Scalar> optimum;       // F*, enables the gap column
  bool track_start_objective = false;  // record F(x^s_0) per epoch
  Scalar divergence_factor = Scalar(1e12);

  Index resolved_epoch_length(Index n) const {
    if (epoch_length > 0) return epoch_length;
    if (algorithm == Algorithm::saga || is_eigen_algorithm(algorithm)) return n;
    return 2 * n;
  }

  void validate() const {
    if (epochs < 0) throw std::invalid_argument("epochs must be >= 0");
    if (epoch_length < 0) throw std::invalid_argument("epoch length must be >= 0");
    if (average_window == AverageWindow::exclude_last && epoch_length == 1)
      throw std::invalid_argument("averaging x_1..x_{m-1} needs m >= 2");
    if (!(alpha > 0 && alpha <= 1)) throw std::invalid_argument("alpha must be in (0, 1]");
    if (!(eta0 > 0)) throw std::invalid_argument("eta0 must be positive");
    if (batch_size < 1) throw std::invalid_argument("batch size must be >= 1");
    if (!(growth.rho > 1)) throw std::invalid_argument("rho must be > 1");
    if (katyusha.w1 && !(*katyusha.w1 > 0 && *katyusha.w1 <= 1)) throw std::invalid_argument("w1 must be in (0, 1]");
    if (!(katyusha.w2 >= 0)) throw std::invalid_argument("w2 must be >= 0");
    if (katyusha.w1 && *katyusha.w1 + katyusha.w2 > 1 + 1e-12) throw std::invalid_argument("w1 + w2 must be <= 1");
    if (!(divergence_factor > 1)) throw std::invalid_argument("divergence factor must be > 1");
  }
};

}  // namespace vrsgd
