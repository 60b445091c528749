#pragma once

#include <utility>

#include "cfsec/channel.hpp"
#include "cfsec/secrecy.hpp"

namespace cfsec {

/// Deterministic grid search over per-user transmit powers.
struct GridSpec {
  double coarse_step;     ///< Watt
  int refine_levels = 0;  ///< each level re-grids +-step around the best with step/10
  double min_power;       ///< grid floor, > 0

  static GridSpec defaults(double max_power) {
    return GridSpec{max_power / 10.0, 1, max_power / 10.0};
  }
};

/// What the grid search maximizes.
///
/// secrecy_rate is the per-user secrecy objective
///   L R_CF(H~) - 1/2 log2 det(I + H~ H~^T).
/// computation_rate maximizes R_CF(H~) alone, which also maximizes the
/// lower bound on the secrecy objective obtained by bounding the MAC term
/// at full power (the MAC term only shrinks when powers shrink); this is
/// the variant consistent with the published optimal allocations.
enum class PowerObjective { secrecy_rate, computation_rate };

/// Best allocation over the grid {min_power, min_power+step, ..., P}^L
/// (the full-power point is always included), refined refine_levels times.
/// Ties: larger total power, then lexicographically smaller allocation.
/// Throws when a grid level would exceed 1e7 points or L > 4.
std::pair<PowerAllocation, RateReport> optimize_power(
    const ChannelMatrix& H, const PowerBudget& budget, const GridSpec& grid,
    PowerObjective objective = PowerObjective::secrecy_rate);

}  // namespace cfsec
