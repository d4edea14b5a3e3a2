#include "stochlot/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "stochlot/math.hpp"

namespace stochlot {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

constexpr int kMaxSolveHorizon = 64;
constexpr int kMaxEnumerateHorizon = 20;

}  // namespace

void CostParams::validate() const {
  require(fixed >= 0.0, "CostParams: fixed ordering cost must be non-negative");
  require(unit >= 0.0, "CostParams: unit ordering cost must be non-negative");
  require(holding >= 0.0, "CostParams: holding cost must be non-negative");
  require(penalty > 0.0, "CostParams: penalty cost must be positive");
  require(std::isfinite(initial_inventory), "CostParams: initial inventory must be finite");
}

std::optional<double> RsPolicy::level_at(int period) const {
  for (std::size_t k = 0; k < plan.order_periods.size(); ++k) {
    if (plan.order_periods[k] == period) return order_up_to[k];
  }
  return std::nullopt;
}

namespace {

// One loss term of a cycle objective: the convolution moments it is
// evaluated against and the holding/penalty weights applied to it.
struct LossTerm {
  double mean;
  double sd;
  double w_comp;  // weight of Lhat
  double w_loss;  // weight of L
};

std::vector<LossTerm> cycle_terms(const MVNHorizon& mvn, int i, int j,
                                  const CostParams& params, bool terminal,
                                  UnitCostVariant variant) {
  std::vector<LossTerm> terms;
  terms.reserve(static_cast<std::size_t>(j - i + 1) + 1);
  for (int t = i; t <= j; ++t) {
    const auto cm = convolution_moments(mvn, i, t);
    terms.push_back({cm.mean, cm.sd, params.holding, params.penalty});
  }
  if (terminal && variant == UnitCostVariant::complementary && params.unit != 0.0) {
    const auto cm = convolution_moments(mvn, i, j);
    terms.push_back({cm.mean, cm.sd, params.unit, 0.0});
  }
  return terms;
}

double eval_terms(const std::vector<LossTerm>& terms, double S,
                  const PiecewiseLoss& pw, LossMode mode) {
  double total = 0.0;
  for (const auto& term : terms) {
    const LossPair lp = general_loss(S, term.mean, term.sd, pw, mode);
    total += term.w_comp * lp.comp + term.w_loss * lp.loss;
  }
  return total;
}

// Right-hand subgradient of the summed loss terms at S.
double terms_slope(const std::vector<LossTerm>& terms, double S,
                   const PiecewiseLoss& pw, LossMode mode) {
  double slope = 0.0;
  for (const auto& term : terms) {
    double frac;  // d Lhat / dS for this term
    if (term.sd == 0.0) {
      frac = S >= term.mean ? 1.0 : 0.0;
    } else if (mode == LossMode::exact) {
      frac = norm_cdf((S - term.mean) / term.sd);
    } else {
      const double z = (S - term.mean) / term.sd;
      // active piece index: number of conditional means <= z
      const auto& E = pw.cond_means;
      const auto it = std::upper_bound(E.begin(), E.end(), z);
      const auto idx = static_cast<std::size_t>(it - E.begin());
      frac = idx == 0 ? 0.0 : pw.cum_mass[idx - 1];
    }
    slope += term.w_comp * frac + term.w_loss * (frac - 1.0);
  }
  return slope;
}

}  // namespace

double cycle_cost(const MVNHorizon& mvn, int i, int j, double S,
                  const CostParams& params, const PiecewiseLoss& pw, LossMode mode,
                  bool terminal, UnitCostVariant variant) {
  require(1 <= i && i <= j && j <= mvn.horizon(), "cycle_cost: need 1 <= i <= j <= T");
  const auto terms = cycle_terms(mvn, i, j, params, terminal, variant);
  double total = eval_terms(terms, S, pw, mode);
  if (terminal && variant == UnitCostVariant::expected_closing) {
    total += params.unit * (S - convolution_moments(mvn, i, j).mean);
  }
  return total;
}

double no_order_segment_cost(const MVNHorizon& mvn, int j, const CostParams& params,
                             const PiecewiseLoss& pw, LossMode mode) {
  require(1 <= j && j <= mvn.horizon(), "no_order_segment_cost: period out of range");
  double total = 0.0;
  for (int t = 1; t <= j; ++t) {
    const auto cm = convolution_moments(mvn, 1, t);
    const LossPair lp = general_loss(params.initial_inventory, cm.mean, cm.sd, pw, mode);
    total += params.holding * lp.comp + params.penalty * lp.loss;
  }
  return total;
}

CycleOptimum optimal_cycle(const MVNHorizon& mvn, int i, int j,
                           const CostParams& params, const PiecewiseLoss& pw,
                           LossMode mode, bool terminal, UnitCostVariant variant) {
  require(1 <= i && i <= j && j <= mvn.horizon(), "optimal_cycle: need 1 <= i <= j <= T");
  params.validate();
  const auto terms = cycle_terms(mvn, i, j, params, terminal, variant);
  const double const_slope =
      (terminal && variant == UnitCostVariant::expected_closing) ? params.unit : 0.0;

  double level;
  if (mode == LossMode::piecewise) {
    std::vector<double> kinks;
    kinks.reserve(terms.size() * pw.masses.size());
    for (const auto& term : terms) {
      if (term.sd == 0.0) {
        kinks.push_back(term.mean);
      } else {
        for (double e : pw.cond_means) kinks.push_back(term.mean + term.sd * e);
      }
    }
    std::sort(kinks.begin(), kinks.end());
    level = kinks.back();
    if (terms_slope(terms, kinks.front() - 1.0, pw, mode) + const_slope >= 0.0) {
      // non-decreasing everywhere: smallest feasible level
      level = 0.0;
    } else {
      for (double k : kinks) {
        if (terms_slope(terms, k, pw, mode) + const_slope >= 0.0) {
          level = k;
          break;
        }
      }
    }
  } else {
    auto deriv = [&](double S) { return terms_slope(terms, S, pw, mode) + const_slope; };
    double lo = terms.front().mean, hi = terms.front().mean;
    for (const auto& term : terms) {
      lo = std::min(lo, term.mean - 12.0 * term.sd - 1.0);
      hi = std::max(hi, term.mean + 12.0 * term.sd + 1.0);
    }
    if (deriv(lo) >= 0.0) {
      level = 0.0;
    } else {
      double width = hi - lo;
      while (deriv(hi) < 0.0) {
        hi += width;
        width *= 2.0;
      }
      while (hi - lo > 1e-8 * (1.0 + std::abs(hi))) {
        const double mid = 0.5 * (lo + hi);
        if (deriv(mid) < 0.0) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      level = 0.5 * (lo + hi);
    }
  }
  level = std::max(level, 0.0);
  return CycleOptimum{level, cycle_cost(mvn, i, j, level, params, pw, mode, terminal, variant)};
}

namespace {

// Cached arc costs shared by the shortest-path solver and the enumeration
// oracle, so the two can only differ in plan selection.
class ArcCosts {
 public:
  ArcCosts(const MVNHorizon& mvn, const CostParams& params, const PiecewiseLoss& pw,
           LossMode mode, UnitCostVariant variant)
      : mvn_(mvn), params_(params), pw_(pw), mode_(mode), variant_(variant),
        T_(mvn.horizon()) {
    order_cost_.assign(static_cast<std::size_t>(T_) * T_, 0.0);
    order_level_.assign(static_cast<std::size_t>(T_) * T_, 0.0);
    for (int start = 1; start <= T_; ++start) {
      for (int end = start; end <= T_; ++end) {
        const auto opt =
            optimal_cycle(mvn, start, end, params, pw, mode, end == T_, variant);
        order_cost_[idx(start, end)] = params.fixed + opt.cost;
        order_level_[idx(start, end)] = opt.level;
      }
    }
    prefix_cost_.assign(static_cast<std::size_t>(T_) + 1, 0.0);
    double acc = 0.0;
    for (int j = 1; j <= T_; ++j) {
      const auto cm = convolution_moments(mvn, 1, j);
      const LossPair lp =
          general_loss(params.initial_inventory, cm.mean, cm.sd, pw, mode);
      acc += params.holding * lp.comp + params.penalty * lp.loss;
      prefix_cost_[static_cast<std::size_t>(j)] = acc;
      if (j == T_) {
        // terminal proportional-ordering term of the never-order plan
        if (variant_ == UnitCostVariant::expected_closing) {
          prefix_cost_[static_cast<std::size_t>(j)] +=
              params.unit * (params.initial_inventory - cm.mean);
        } else {
          prefix_cost_[static_cast<std::size_t>(j)] += params.unit * lp.comp;
        }
      }
    }
  }

  double order_cost(int start, int end) const { return order_cost_[idx(start, end)]; }
  double order_level(int start, int end) const { return order_level_[idx(start, end)]; }
  double prefix_cost(int end) const { return prefix_cost_[static_cast<std::size_t>(end)]; }
  double plan_constant() const {
    return params_.unit * (mvn_.total_mean() - params_.initial_inventory);
  }

  // Arc-cost sum of a plan (order periods ascending). Excludes the
  // plan-level unit-cost constant, which is common to every plan, so that
  // the enumeration oracle and the shortest path compare identical numbers.
  double plan_cost(const std::vector<int>& plan) const {
    if (plan.empty()) return prefix_cost(T_);
    double total = plan.front() > 1 ? prefix_cost(plan.front() - 1) : 0.0;
    for (std::size_t k = 0; k < plan.size(); ++k) {
      const int start = plan[k];
      const int end = k + 1 < plan.size() ? plan[k + 1] - 1 : T_;
      total += order_cost(start, end);
    }
    return total;
  }

  RsPolicy finalize(const std::vector<int>& plan) const {
    RsPolicy policy;
    policy.plan.order_periods = plan;
    CostBreakdown bd;
    bd.unit = plan_constant();
    if (plan.empty()) {
      accumulate_segment_losses(1, T_, params_.initial_inventory, bd);
      const auto cm = convolution_moments(mvn_, 1, T_);
      if (variant_ == UnitCostVariant::expected_closing) {
        bd.unit += params_.unit * (params_.initial_inventory - cm.mean);
      } else {
        bd.unit += params_.unit *
                   general_loss(params_.initial_inventory, cm.mean, cm.sd, pw_, mode_).comp;
      }
    } else {
      bd.fixed = params_.fixed * static_cast<double>(plan.size());
      if (plan.front() > 1) {
        accumulate_segment_losses(1, plan.front() - 1, params_.initial_inventory, bd);
      }
      for (std::size_t k = 0; k < plan.size(); ++k) {
        const int start = plan[k];
        const int end = k + 1 < plan.size() ? plan[k + 1] - 1 : T_;
        const double S = order_level(start, end);
        policy.order_up_to.push_back(S);
        for (int t = start; t <= end; ++t) {
          const auto cm = convolution_moments(mvn_, start, t);
          const LossPair lp = general_loss(S, cm.mean, cm.sd, pw_, mode_);
          bd.holding += params_.holding * lp.comp;
          bd.penalty += params_.penalty * lp.loss;
        }
        if (end == T_) {
          const auto cm = convolution_moments(mvn_, start, T_);
          if (variant_ == UnitCostVariant::expected_closing) {
            bd.unit += params_.unit * (S - cm.mean);
          } else {
            bd.unit += params_.unit * general_loss(S, cm.mean, cm.sd, pw_, mode_).comp;
          }
        }
      }
    }
    policy.breakdown = bd;
    policy.planned_cost = bd.total();
    return policy;
  }

  int horizon() const { return T_; }

 private:
  std::size_t idx(int start, int end) const {
    return static_cast<std::size_t>(start - 1) * T_ + static_cast<std::size_t>(end - 1);
  }

  void accumulate_segment_losses(int from, int to, double x, CostBreakdown& bd) const {
    for (int t = from; t <= to; ++t) {
      const auto cm = convolution_moments(mvn_, 1, t);
      const LossPair lp = general_loss(x, cm.mean, cm.sd, pw_, mode_);
      bd.holding += params_.holding * lp.comp;
      bd.penalty += params_.penalty * lp.loss;
    }
  }

  const MVNHorizon& mvn_;
  const CostParams& params_;
  const PiecewiseLoss& pw_;
  LossMode mode_;
  UnitCostVariant variant_;
  int T_;
  std::vector<double> order_cost_;
  std::vector<double> order_level_;
  std::vector<double> prefix_cost_;
};

// Deterministic plan preference: lower cost (relative tolerance 1e-12), then
// fewer orders, then lexicographically earlier periods.
bool plan_better(double cost_a, const std::vector<int>& plan_a, double cost_b,
                 const std::vector<int>& plan_b) {
  const double tol = 1e-12 * (1.0 + std::min(std::abs(cost_a), std::abs(cost_b)));
  if (cost_a < cost_b - tol) return true;
  if (cost_b < cost_a - tol) return false;
  if (plan_a.size() != plan_b.size()) return plan_a.size() < plan_b.size();
  return plan_a < plan_b;
}

}  // namespace

RsPolicy solve_rs(const MVNHorizon& mvn, const CostParams& params,
                  const PiecewiseLoss& pw, LossMode mode, UnitCostVariant variant) {
  params.validate();
  pw.validate();
  const int T = mvn.horizon();
  require(T <= kMaxSolveHorizon, "solve_rs: horizon exceeds the supported bound");
  const ArcCosts arcs(mvn, params, pw, mode, variant);

  struct Node {
    double cost = 0.0;
    std::vector<int> plan;
    bool reachable = false;
  };
  std::vector<Node> nodes(static_cast<std::size_t>(T) + 1);
  nodes[0].reachable = true;
  for (int j = 1; j <= T; ++j) {
    Node best;
    // no-order prefix arc 0 -> j
    best.cost = arcs.prefix_cost(j);
    best.plan = {};
    best.reachable = true;
    for (int k = 0; k < j; ++k) {
      if (!nodes[static_cast<std::size_t>(k)].reachable) continue;
      const auto& from = nodes[static_cast<std::size_t>(k)];
      const double cand_cost = from.cost + arcs.order_cost(k + 1, j);
      std::vector<int> cand_plan = from.plan;
      cand_plan.push_back(k + 1);
      if (plan_better(cand_cost, cand_plan, best.cost, best.plan)) {
        best.cost = cand_cost;
        best.plan = std::move(cand_plan);
      }
    }
    nodes[static_cast<std::size_t>(j)] = std::move(best);
  }
  return arcs.finalize(nodes[static_cast<std::size_t>(T)].plan);
}

RsPolicy enumerate_oracle(const MVNHorizon& mvn, const CostParams& params,
                          const PiecewiseLoss& pw, LossMode mode,
                          UnitCostVariant variant) {
  params.validate();
  pw.validate();
  const int T = mvn.horizon();
  require(T <= kMaxEnumerateHorizon, "enumerate_oracle: horizon exceeds 20 periods");
  const ArcCosts arcs(mvn, params, pw, mode, variant);

  std::vector<int> best_plan;
  double best_cost = arcs.plan_cost(best_plan);
  std::vector<int> plan;
  for (std::uint64_t mask = 1; mask < (1ULL << T); ++mask) {
    plan.clear();
    for (int t = 0; t < T; ++t) {
      if (mask & (1ULL << t)) plan.push_back(t + 1);
    }
    const double cost = arcs.plan_cost(plan);
    if (plan_better(cost, plan, best_cost, best_plan)) {
      best_cost = cost;
      best_plan = plan;
    }
  }
  return arcs.finalize(best_plan);
}

}  // namespace stochlot
