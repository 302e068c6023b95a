#pragma once

#include "vrsgd/solver/config.hpp"
#include "vrsgd/types.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace vrsgd {

enum class RunStatus { ok, diverged, degenerate };

inline std::string_view to_string(RunStatus s) {
  switch (s) {
    case RunStatus::ok: return "ok";
    case RunStatus::diverged: return "diverged";
    case RunStatus::degenerate: return "degenerate";
  }
  return "?";
}

template <typename Scalar>
struct EpochEntry {
  int epoch = 0;
  double effective_passes = 0;
  double wall_seconds = 0;
  Scalar objective = 0;                    // F at the epoch's snapshot (or iterate)
  std::optional<Scalar> gap;               // objective - F*
  std::optional<Scalar> start_objective;   // F(x^s_0), when tracked
  Index epoch_length = 0;
};

template <typename Scalar>
struct RunRecord {
  SolverConfig<Scalar> config;
  std::uint64_t seed = 0;
  RunStatus status = RunStatus::ok;
  Scalar initial_objective = 0;
  std::vector<EpochEntry<Scalar>> epochs;
  std::vector<Vec<Scalar>> snapshots;  // x~^1 .. x~^S
  Vec<Scalar> x_hat;
  Vec<Scalar> last_iterate;
  std::uint64_t coordinate_updates = 0;
};

/// Optional observers; not part of the configuration echo.
template <typename Scalar>
struct RunHooks {
  // called after every inner update with (epoch, k + 1, x^s_{k+1})
  std::function<void(int, Index, const Vec<Scalar>&)> on_iterate;
};

namespace detail {

/// Accumulates passes and wall time and appends trace rows. Objective
/// evaluation for the trace is excluded from the clock.
template <typename Scalar>
class EpochTracer {
 public:
  EpochTracer(RunRecord<Scalar>& record, Scalar initial_objective)
      : record_(record), start_(Clock::now()) {
    record_.initial_objective = initial_objective;
    const Scalar base = std::abs(initial_objective);
    threshold_ = record_.config.divergence_factor * (base > Scalar(0) ? base : Scalar(1));
  }

  void add_passes(double p) { passes_ += p; }
  double passes() const { return passes_; }

  void pause() { elapsed_ += Clock::now() - start_; }
  void resume() { start_ = Clock::now(); }

  /// Appends a row; returns false once the run has diverged.
  bool record(int epoch, Scalar objective, Index epoch_length, std::optional<Scalar> start_objective = std::nullopt) {
    pause();
    EpochEntry<Scalar> e;
    e.epoch = epoch;
    e.effective_passes = passes_;
    e.wall_seconds = std::chrono::duration<double>(elapsed_).count();
    e.objective = objective;
    e.start_objective = start_objective;
    e.epoch_length = epoch_length;
    if (record_.config.optimum) e.gap = objective - *record_.config.optimum;
    record_.epochs.push_back(e);
    const bool ok = std::isfinite(static_cast<double>(objective)) && objective <= threshold_;
    if (!ok) record_.status = RunStatus::diverged;
    resume();
    return ok;
  }

 private:
  using Clock = std::chrono::steady_clock;
  RunRecord<Scalar>& record_;
  Clock::time_point start_;
  Clock::duration elapsed_{};
  double passes_ = 0;
  Scalar threshold_;
};

}  // namespace detail

}  // namespace vrsgd
