#include "stochlot/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "stochlot/math.hpp"

namespace stochlot {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

void SdpConfig::validate() const {
  require(inventory_min < inventory_max, "SdpConfig: empty inventory range");
  require(inventory_step > 0.0, "SdpConfig: inventory step must be positive");
  require(demand_cells >= 1, "SdpConfig: need at least one demand cell");
}

SdpConfig SdpConfig::defaults_for(const MVNHorizon& mvn, const CostParams& params) {
  SdpConfig cfg;
  const int T = mvn.horizon();
  double min_sd = 0.0;
  double max_sd = 0.0;
  for (int t = 1; t <= T; ++t) {
    const double s = mvn.sd(t);
    max_sd = std::max(max_sd, s);
    if (s > 0.0 && (min_sd == 0.0 || s < min_sd)) min_sd = s;
  }
  cfg.inventory_step =
      min_sd > 0.0 ? min_sd / 5.0 : std::max(mvn.total_mean(), 1.0) / 200.0;
  const double raw_lo = -3.0 * mvn.total_sd();
  // shift so that I0 lies exactly on the lattice
  const double n_lo =
      std::ceil((params.initial_inventory - raw_lo) / cfg.inventory_step);
  cfg.inventory_min = params.initial_inventory - n_lo * cfg.inventory_step;
  cfg.inventory_max =
      std::max(mvn.total_mean() + 4.0 * max_sd, cfg.inventory_min + cfg.inventory_step);
  cfg.demand_cells = 25;
  return cfg;
}

std::vector<DemandCell> discretize_demand(double mean, double sd, int cells) {
  require(sd >= 0.0, "discretize_demand: negative sd");
  require(cells >= 1, "discretize_demand: need at least one cell");
  std::vector<DemandCell> out(static_cast<std::size_t>(cells));
  const double p = 1.0 / cells;
  double prev_pdf = 0.0;
  for (int i = 0; i < cells; ++i) {
    const double pdf = i + 1 < cells ? norm_pdf(norm_quantile(p * (i + 1))) : 0.0;
    out[static_cast<std::size_t>(i)] =
        DemandCell{p, mean + sd * (prev_pdf - pdf) / p};
    prev_pdf = pdf;
  }
  return out;
}

int SdpSolution::inventory_index(double inventory) const {
  const double idx = (inventory - config_.inventory_min) / config_.inventory_step;
  const long snapped = std::lround(idx);
  return static_cast<int>(std::clamp<long>(snapped, 0, levels_ - 1));
}

int SdpSolution::cell_index(int period, double demand) const {
  const auto& reps = marginal_reps_[static_cast<std::size_t>(period - 1)];
  const auto it = std::lower_bound(reps.begin(), reps.end(), demand);
  if (it == reps.begin()) return 0;
  if (it == reps.end()) return static_cast<int>(reps.size()) - 1;
  const auto hi = static_cast<int>(it - reps.begin());
  return demand - reps[static_cast<std::size_t>(hi - 1)] <=
                 reps[static_cast<std::size_t>(hi)] - demand
             ? hi - 1
             : hi;
}

SdpSolution::Action SdpSolution::action(int t, double inventory, double prev_demand) const {
  require(t >= 1 && t <= T_, "SdpSolution::action: period out of range");
  const int cell = t == 1 ? 0 : cell_index(t - 1, prev_demand);
  const int inv = inventory_index(inventory);
  const int N = config_.demand_cells;
  const std::int32_t a =
      action_[static_cast<std::size_t>(t - 1)]
             [static_cast<std::size_t>(inv) * static_cast<std::size_t>(N) +
              static_cast<std::size_t>(cell)];
  if (a < 0) return Action{false, 0.0};
  return Action{true, grid_[static_cast<std::size_t>(a)]};
}

double SdpSolution::value(int t, double inventory, double prev_demand) const {
  require(t >= 1 && t <= T_, "SdpSolution::value: period out of range");
  const int cell = t == 1 ? 0 : cell_index(t - 1, prev_demand);
  const int inv = inventory_index(inventory);
  const int N = config_.demand_cells;
  return value_[static_cast<std::size_t>(t - 1)]
               [static_cast<std::size_t>(inv) * static_cast<std::size_t>(N) +
                static_cast<std::size_t>(cell)];
}

SdpSolution solve_sdp(const MVNHorizon& mvn, const CostParams& params,
                      const SdpConfig& config) {
  params.validate();
  config.validate();
  require(mvn.is_lag1(), "solve_sdp: covariance must be tridiagonal (lag-1)");

  const int T = mvn.horizon();
  const int N = config.demand_cells;
  const double h = params.holding;
  const double b = params.penalty;
  const double c = params.unit;
  const double K = params.fixed;

  SdpSolution sol;
  sol.config_ = config;
  sol.T_ = T;
  const int L =
      static_cast<int>(std::ceil((config.inventory_max - config.inventory_min) /
                                 config.inventory_step)) +
      1;
  sol.levels_ = L;
  sol.grid_.resize(static_cast<std::size_t>(L));
  for (int i = 0; i < L; ++i) {
    sol.grid_[static_cast<std::size_t>(i)] = config.inventory_min + i * config.inventory_step;
  }
  const auto& grid = sol.grid_;
  const double step = config.inventory_step;

  // lattice coverage check against the +-6 sd rule
  {
    double cum_mean = 0.0, max_cum_mean = 0.0;
    for (int t = 1; t <= T; ++t) {
      cum_mean += mvn.mean(t);
      max_cum_mean = std::max(max_cum_mean, cum_mean);
    }
    const double want_lo = params.initial_inventory - 6.0 * mvn.total_sd();
    const double want_hi = max_cum_mean + 6.0 * mvn.total_sd();
    sol.truncation_warning_ = config.inventory_min > want_lo || config.inventory_max < want_hi;
  }

  sol.marginal_reps_.resize(static_cast<std::size_t>(T));
  for (int t = 1; t <= T; ++t) {
    auto cells = discretize_demand(mvn.mean(t), mvn.sd(t), N);
    auto& reps = sol.marginal_reps_[static_cast<std::size_t>(t - 1)];
    reps.reserve(cells.size());
    for (const auto& cell : cells) reps.push_back(cell.value);
  }

  sol.value_.assign(static_cast<std::size_t>(T),
                    std::vector<double>(static_cast<std::size_t>(L) * N, 0.0));
  sol.action_.assign(static_cast<std::size_t>(T),
                     std::vector<std::int32_t>(static_cast<std::size_t>(L) * N, -1));

  std::vector<double> G(static_cast<std::size_t>(L));
  for (int t = T; t >= 1; --t) {
    auto& value_t = sol.value_[static_cast<std::size_t>(t - 1)];
    auto& action_t = sol.action_[static_cast<std::size_t>(t - 1)];
    const int cells_prev = t == 1 ? 1 : N;
    for (int cp = 0; cp < cells_prev; ++cp) {
      // conditional demand of period t given the previous representative
      double cmean, csd;
      if (t == 1) {
        cmean = mvn.mean(1);
        csd = mvn.sd(1);
      } else {
        const double cov = mvn.covariance(t - 1, t);
        const double var_prev = mvn.covariance(t - 1, t - 1);
        const double rep = sol.marginal_reps_[static_cast<std::size_t>(t - 2)]
                                             [static_cast<std::size_t>(cp)];
        if (var_prev > 0.0) {
          cmean = mvn.mean(t) + cov / var_prev * (rep - mvn.mean(t - 1));
          csd = std::sqrt(
              std::max(mvn.covariance(t, t) - cov * cov / var_prev, 0.0));
        } else {
          cmean = mvn.mean(t);
          csd = mvn.sd(t);
        }
      }
      const auto cells = discretize_demand(cmean, csd, N);

      // expected stage cost + future value as a function of post-order level
      std::fill(G.begin(), G.end(), 0.0);
      for (const auto& cell : cells) {
        const double d = cell.value;
        const double shift = d / step;
        const int next_cell = t < T ? sol.cell_index(t, d) : 0;
        const auto* vnext =
            t < T ? sol.value_[static_cast<std::size_t>(t)].data() : nullptr;
        for (int y = 0; y < L; ++y) {
          const double end_inv = grid[static_cast<std::size_t>(y)] - d;
          double v = h * std::max(end_inv, 0.0) + b * std::max(-end_inv, 0.0);
          if (vnext != nullptr) {
            const long snapped = std::lround(static_cast<double>(y) - shift);
            const int idx = static_cast<int>(std::clamp<long>(snapped, 0, L - 1));
            v += vnext[static_cast<std::size_t>(idx) * N + static_cast<std::size_t>(next_cell)];
          }
          G[static_cast<std::size_t>(y)] += cell.probability * v;
        }
      }

      // order decision via suffix minimum of c*y + G(y)
      double best = std::numeric_limits<double>::infinity();
      int best_idx = L - 1;
      std::vector<double> suffix_min(static_cast<std::size_t>(L));
      std::vector<std::int32_t> suffix_arg(static_cast<std::size_t>(L));
      for (int y = L - 1; y >= 0; --y) {
        const double cand = c * grid[static_cast<std::size_t>(y)] + G[static_cast<std::size_t>(y)];
        if (cand < best) {
          best = cand;
          best_idx = y;
        }
        suffix_min[static_cast<std::size_t>(y)] = best;
        suffix_arg[static_cast<std::size_t>(y)] = best_idx;
      }
      for (int i = 0; i < L; ++i) {
        const double no_order = G[static_cast<std::size_t>(i)];
        const double order = K - c * grid[static_cast<std::size_t>(i)] +
                             suffix_min[static_cast<std::size_t>(i)];
        const std::size_t at = static_cast<std::size_t>(i) * N + static_cast<std::size_t>(cp);
        if (no_order <= order) {
          value_t[at] = no_order;
          action_t[at] = -1;
        } else {
          value_t[at] = order;
          action_t[at] = suffix_arg[static_cast<std::size_t>(i)];
        }
      }
    }
    if (t == 1) {
      // the period-1 state has no previous-demand axis; replicate cell 0
      for (int i = 0; i < L; ++i) {
        const std::size_t row = static_cast<std::size_t>(i) * N;
        for (int cpad = 1; cpad < N; ++cpad) {
          value_t[row + static_cast<std::size_t>(cpad)] = value_t[row];
          action_t[row + static_cast<std::size_t>(cpad)] = action_t[row];
        }
      }
    }
  }

  sol.expected_total_cost_ = sol.value(1, params.initial_inventory, 0.0);
  return sol;
}

}  // namespace stochlot
