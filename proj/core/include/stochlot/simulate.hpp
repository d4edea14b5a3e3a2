#pragma once

#include <cstdint>

#include "stochlot/demand.hpp"
#include "stochlot/sdp.hpp"
#include "stochlot/solver.hpp"

namespace stochlot {

struct SimResult {
  double mean_cost = 0.0;
  double half_width_95 = 0.0;  // 1.96 * sample sd / sqrt(n)
  long replications = 0;
  CostBreakdown components;  // per-replication means, summing to mean_cost
  std::uint64_t seed = 0;
  bool capped = false;  // stopped by the replication cap, not the precision rule
};

struct SimOptions {
  long replications = 100000;
  std::uint64_t seed = 0;
  /// Charge K at a review period even when the order quantity comes out
  /// zero (inventory already above S). Off by default: the ordering cost
  /// definition charges K only on positive quantities.
  bool charge_fixed_on_zero_order = false;
};

/// Rolls out an (R,S) policy: at each review period order up to its level
/// (never a negative quantity), then charge holding/penalty on the closing
/// inventory. Replication r draws substream r of the seed, so results are
/// reproducible and independent of scheduling.
SimResult simulate_rs(const RsPolicy& policy, const PathSampler& sampler,
                      const CostParams& params, const SimOptions& opts);

/// Rolls out the SDP greedy policy with states snapped to the solution grids.
SimResult simulate_sdp(const SdpSolution& sol, const PathSampler& sampler,
                       const CostParams& params, const SimOptions& opts);

struct RhcOptions {
  std::uint64_t seed = 0;
  double rel_precision = 0.0003;  // stop when half-width <= this * mean
  long max_replications = 1000000;
  long min_replications = 200;
  long batch = 256;
  bool charge_fixed_on_zero_order = false;
};

/// Receding horizon control: per period, condition the remaining horizon on
/// the demands observed so far, re-solve the (R,S) model from the current
/// inventory, and execute only the first decision. Replications accrue in
/// fixed-index batches until the 95% half-width meets rel_precision or the
/// cap is hit (flagged in the result).
SimResult simulate_rhc(const MVNHorizon& mvn, const CostParams& params,
                       const PiecewiseLoss& pw, LossMode mode, const RhcOptions& opts,
                       UnitCostVariant variant = UnitCostVariant::expected_closing);

}  // namespace stochlot
