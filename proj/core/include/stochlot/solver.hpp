#pragma once

#include <optional>
#include <vector>

#include "stochlot/demand.hpp"
#include "stochlot/loss.hpp"

namespace stochlot {

struct CostParams {
  double fixed = 0.0;              // K, per order placed
  double unit = 0.0;               // c, per unit ordered
  double holding = 0.0;            // h, per unit carried per period
  double penalty = 0.0;            // b, per unit short per period
  double initial_inventory = 0.0;  // I0

  /// K, c, h >= 0 and b > 0 (b == 0 leaves order-up-to levels unbounded).
  void validate() const;
};

struct ReplenishmentPlan {
  std::vector<int> order_periods;  // strictly increasing, possibly empty
};

struct CostBreakdown {
  double fixed = 0.0;
  double unit = 0.0;
  double holding = 0.0;
  double penalty = 0.0;

  double total() const { return fixed + unit + holding + penalty; }
};

/// How the expected proportional ordering cost enters the objective:
/// `expected_closing` uses the exact identity c*sum(Q) = c*E[I_T] + c*sum(d)
/// - c*I0; `complementary` substitutes the expected on-hand stock for E[I_T],
/// reproducing the printed objective it stems from.
enum class UnitCostVariant { expected_closing, complementary };

struct RsPolicy {
  ReplenishmentPlan plan;
  std::vector<double> order_up_to;  // aligned with plan.order_periods
  double planned_cost = 0.0;
  CostBreakdown breakdown;

  /// Order-up-to level of a review period, or nullopt when none is scheduled.
  std::optional<double> level_at(int period) const;
};

/// Expected holding + penalty cost of a single replenishment cycle covering
/// periods i..j, served by one order up to S at period i. When `terminal`
/// (j == T) the cycle also carries the proportional-ordering term of the
/// chosen variant. Fixed costs and the plan-level unit-cost constants are
/// added by the caller.
double cycle_cost(const MVNHorizon& mvn, int i, int j, double S,
                  const CostParams& params, const PiecewiseLoss& pw, LossMode mode,
                  bool terminal,
                  UnitCostVariant variant = UnitCostVariant::expected_closing);

/// Holding + penalty cost of periods 1..j when no order has been placed yet,
/// i.e. the loss terms evaluated at the initial inventory.
double no_order_segment_cost(const MVNHorizon& mvn, int j, const CostParams& params,
                             const PiecewiseLoss& pw, LossMode mode);

struct CycleOptimum {
  double level = 0.0;
  double cost = 0.0;
};

/// Minimizes cycle_cost over S >= 0. Piecewise mode scans the kinks of the
/// piecewise-linear objective for the subgradient sign change; exact mode
/// bisects the derivative to |dS| < 1e-8 (1 + |S|). Flat minima resolve to
/// the smallest minimizing S.
CycleOptimum optimal_cycle(const MVNHorizon& mvn, int i, int j,
                           const CostParams& params, const PiecewiseLoss& pw,
                           LossMode mode, bool terminal,
                           UnitCostVariant variant = UnitCostVariant::expected_closing);

/// Optimal (R,S) policy via the replenishment-cycle shortest path: nodes
/// 0..T, an order arc (k, j) for an order at k+1 covering k+1..j, plus
/// no-order prefix arcs out of node 0. Equal-cost plans tie-break to fewest
/// orders, then the lexicographically earliest period set.
RsPolicy solve_rs(const MVNHorizon& mvn, const CostParams& params,
                  const PiecewiseLoss& pw, LossMode mode,
                  UnitCostVariant variant = UnitCostVariant::expected_closing);

/// Exhaustive 2^T plan enumeration with the same arc costs and tie-break
/// rule; verification oracle for solve_rs. Requires T <= 20.
RsPolicy enumerate_oracle(const MVNHorizon& mvn, const CostParams& params,
                          const PiecewiseLoss& pw, LossMode mode,
                          UnitCostVariant variant = UnitCostVariant::expected_closing);

}  // namespace stochlot
