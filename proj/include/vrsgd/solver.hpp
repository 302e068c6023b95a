#pragma once

#include "vrsgd/solver/config.hpp"
#include "vrsgd/solver/deterministic.hpp"
#include "vrsgd/solver/eigen.hpp"
#include "vrsgd/solver/katyusha.hpp"
#include "vrsgd/solver/momentum.hpp"
#include "vrsgd/solver/record.hpp"
#include "vrsgd/solver/saga.hpp"
#include "vrsgd/solver/schedule.hpp"
#include "vrsgd/solver/svrg_family.hpp"

namespace vrsgd {

/// Runs `cfg.algorithm` on `obj`.
template <typename Scalar>
RunRecord<Scalar> run(const SolverConfig<Scalar>& cfg, const Objective<Scalar>& obj, const RunHooks<Scalar>& hooks = {}) {
  switch (cfg.algorithm) {
    case Algorithm::vr_sgd: return run_vr_sgd(cfg, obj, hooks);
    case Algorithm::momentum_vr_sgd: return run_momentum_vr_sgd(cfg, obj, hooks);
    case Algorithm::vr_sgd_pp: return run_vr_sgd_pp(cfg, obj, hooks);
    case Algorithm::svrg: return run_svrg(cfg, obj, hooks);
    case Algorithm::prox_svrg: return run_prox_svrg(cfg, obj, hooks);
    case Algorithm::saga: return run_saga(cfg, obj, hooks);
    case Algorithm::katyusha: return run_katyusha(cfg, obj, hooks);
    case Algorithm::sgd: return run_sgd(cfg, obj, hooks);
    case Algorithm::gd: return run_gd(cfg, obj, hooks);
    case Algorithm::agd: return run_agd(cfg, obj, hooks);
    case Algorithm::apg: return run_apg(cfg, obj, hooks);
    case Algorithm::power:
    case Algorithm::vr_pca:
    case Algorithm::eigen_vr_sgd: return run_eigen(cfg, obj, hooks);
  }
  throw std::invalid_argument("unknown algorithm");
}

}  // namespace vrsgd
