#pragma once

#include <cstdint>
#include <vector>

#include "stochlot/demand.hpp"
#include "stochlot/solver.hpp"

namespace stochlot {

/// Discretization of the stochastic dynamic program: an inventory lattice and
/// the number of equal-probability demand cells per period.
struct SdpConfig {
  double inventory_min = 0.0;
  double inventory_max = 0.0;
  double inventory_step = 1.0;
  int demand_cells = 25;

  void validate() const;

  /// Default grid: N=25 cells, step = min sd / 5, lattice spanning
  /// [-3 sd(total), total mean + 4 max sd], shifted so the initial inventory
  /// sits exactly on the lattice.
  static SdpConfig defaults_for(const MVNHorizon& mvn, const CostParams& params);
};

struct DemandCell {
  double probability = 0.0;
  double value = 0.0;  // conditional mean of the normal within the cell
};

/// Equal-probability partition of N(mean, sd^2) into `cells` cells; the
/// probability-weighted values reproduce the mean exactly.
std::vector<DemandCell> discretize_demand(double mean, double sd, int cells);

/// Backward-induction solution tables over (period, inventory index,
/// previous-demand cell). Correlation is carried by conditioning each
/// period's demand on the previous period's representative value, the
/// sufficient lag-1 statistic for tridiagonal covariance.
class SdpSolution {
 public:
  struct Action {
    bool order = false;
    double order_up_to = 0.0;
  };

  double expected_total_cost() const { return expected_total_cost_; }
  int horizon() const { return T_; }
  /// Set when the lattice does not cover [I0 - 6 sd, max cum. mean + 6 sd]
  /// and truncation may bias the value.
  bool truncation_warning() const { return truncation_warning_; }
  const SdpConfig& config() const { return config_; }

  /// Greedy action at (t, inventory, previous demand), arguments snapped to
  /// the nearest lattice point / demand cell. prev_demand is ignored at t=1.
  Action action(int t, double inventory, double prev_demand) const;

  double value(int t, double inventory, double prev_demand) const;

 private:
  friend SdpSolution solve_sdp(const MVNHorizon&, const CostParams&, const SdpConfig&);

  int inventory_index(double inventory) const;
  int cell_index(int period, double demand) const;

  SdpConfig config_;
  int T_ = 0;
  int levels_ = 0;
  double expected_total_cost_ = 0.0;
  bool truncation_warning_ = false;
  std::vector<double> grid_;                       // inventory lattice
  std::vector<std::vector<double>> marginal_reps_; // per period, cell values
  std::vector<std::vector<double>> value_;         // [t-1][i*N + c]
  std::vector<std::vector<std::int32_t>> action_;  // -1 = no order, else lattice index
};

/// Optimal-policy benchmark for lag-1 MVN demand. Requires a tridiagonal
/// covariance; period-1 demand uses the unconditional marginal.
SdpSolution solve_sdp(const MVNHorizon& mvn, const CostParams& params,
                      const SdpConfig& config);

inline SdpSolution::Action sdp_policy_action(const SdpSolution& sol, int t,
                                             double inventory, double prev_demand) {
  return sol.action(t, inventory, prev_demand);
}

}  // namespace stochlot
