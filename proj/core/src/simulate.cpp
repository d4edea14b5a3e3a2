#include "stochlot/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "stochlot/math.hpp"

namespace stochlot {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

struct Ledger {
  double fixed = 0.0;
  double unit = 0.0;
  double holding = 0.0;
  double penalty = 0.0;

  double total() const { return fixed + unit + holding + penalty; }
};

// Applies one ordering decision followed by the period's demand.
void step(Ledger& led, double& inventory, bool order, double level, double demand,
          const CostParams& params, bool charge_fixed_on_zero_order) {
  if (order) {
    const double q = std::max(level - inventory, 0.0);
    if (q > 0.0 || charge_fixed_on_zero_order) led.fixed += params.fixed;
    led.unit += params.unit * q;
    inventory += q;
  }
  inventory -= demand;
  led.holding += params.holding * std::max(inventory, 0.0);
  led.penalty += params.penalty * std::max(-inventory, 0.0);
}

struct Accumulator {
  std::vector<double> totals;
  std::vector<double> fixed, unit, holding, penalty;

  void reserve(long n) {
    totals.reserve(static_cast<std::size_t>(n));
    fixed.reserve(static_cast<std::size_t>(n));
    unit.reserve(static_cast<std::size_t>(n));
    holding.reserve(static_cast<std::size_t>(n));
    penalty.reserve(static_cast<std::size_t>(n));
  }

  void push(const Ledger& led) {
    totals.push_back(led.total());
    fixed.push_back(led.fixed);
    unit.push_back(led.unit);
    holding.push_back(led.holding);
    penalty.push_back(led.penalty);
  }

  SimResult result(std::uint64_t seed) const {
    const auto n = static_cast<long>(totals.size());
    require(n >= 2, "simulation: need at least two replications");
    SimResult res;
    res.replications = n;
    res.seed = seed;
    res.components.fixed = pairwise_sum(fixed) / n;
    res.components.unit = pairwise_sum(unit) / n;
    res.components.holding = pairwise_sum(holding) / n;
    res.components.penalty = pairwise_sum(penalty) / n;
    res.mean_cost = pairwise_sum(totals) / n;
    double ss = 0.0;
    for (double v : totals) {
      const double d = v - res.mean_cost;
      ss += d * d;
    }
    res.half_width_95 = 1.96 * std::sqrt(ss / (n - 1)) / std::sqrt(static_cast<double>(n));
    return res;
  }
};

}  // namespace

SimResult simulate_rs(const RsPolicy& policy, const PathSampler& sampler,
                      const CostParams& params, const SimOptions& opts) {
  params.validate();
  const int T = sampler.horizon();
  require(opts.replications >= 2, "simulate_rs: need at least two replications");
  for (int period : policy.plan.order_periods) {
    require(period >= 1 && period <= T, "simulate_rs: policy period outside horizon");
  }

  // review levels by period, NaN = no review
  std::vector<double> level(static_cast<std::size_t>(T),
                            std::numeric_limits<double>::quiet_NaN());
  for (std::size_t k = 0; k < policy.plan.order_periods.size(); ++k) {
    level[static_cast<std::size_t>(policy.plan.order_periods[k] - 1)] =
        policy.order_up_to[k];
  }

  Accumulator acc;
  acc.reserve(opts.replications);
  std::vector<double> path(static_cast<std::size_t>(T));
  for (long r = 0; r < opts.replications; ++r) {
    sampler.sample(substream_seed(opts.seed, static_cast<std::uint64_t>(r)), path);
    Ledger led;
    double inv = params.initial_inventory;
    for (int t = 0; t < T; ++t) {
      const bool review = !std::isnan(level[static_cast<std::size_t>(t)]);
      step(led, inv, review, review ? level[static_cast<std::size_t>(t)] : 0.0,
           path[static_cast<std::size_t>(t)], params, opts.charge_fixed_on_zero_order);
    }
    acc.push(led);
  }
  return acc.result(opts.seed);
}

SimResult simulate_sdp(const SdpSolution& sol, const PathSampler& sampler,
                       const CostParams& params, const SimOptions& opts) {
  params.validate();
  const int T = sampler.horizon();
  require(T == sol.horizon(), "simulate_sdp: model horizon does not match the solution");
  require(opts.replications >= 2, "simulate_sdp: need at least two replications");

  Accumulator acc;
  acc.reserve(opts.replications);
  std::vector<double> path(static_cast<std::size_t>(T));
  for (long r = 0; r < opts.replications; ++r) {
    sampler.sample(substream_seed(opts.seed, static_cast<std::uint64_t>(r)), path);
    Ledger led;
    double inv = params.initial_inventory;
    double prev_demand = 0.0;
    for (int t = 1; t <= T; ++t) {
      const auto act = sol.action(t, inv, prev_demand);
      step(led, inv, act.order, act.order_up_to, path[static_cast<std::size_t>(t - 1)],
           params, opts.charge_fixed_on_zero_order);
      prev_demand = path[static_cast<std::size_t>(t - 1)];
    }
    acc.push(led);
  }
  return acc.result(opts.seed);
}

SimResult simulate_rhc(const MVNHorizon& mvn, const CostParams& params,
                       const PiecewiseLoss& pw, LossMode mode, const RhcOptions& opts,
                       UnitCostVariant variant) {
  params.validate();
  const int T = mvn.horizon();
  require(opts.max_replications >= 2, "simulate_rhc: need at least two replications");

  const PathSampler sampler(mvn);
  Accumulator acc;
  std::vector<double> path(static_cast<std::size_t>(T));
  std::vector<double> observed;
  observed.reserve(static_cast<std::size_t>(T));

  bool reached_precision = false;
  long n = 0;
  while (n < opts.max_replications && !reached_precision) {
    const long upto = std::min(opts.max_replications, n + opts.batch);
    for (; n < upto; ++n) {
      sampler.sample(substream_seed(opts.seed, static_cast<std::uint64_t>(n)), path);
      Ledger led;
      double inv = params.initial_inventory;
      observed.clear();
      for (int t = 1; t <= T; ++t) {
        CostParams stage_params = params;
        stage_params.initial_inventory = inv;
        RsPolicy pol;
        if (t == 1) {
          pol = solve_rs(mvn, stage_params, pw, mode, variant);
        } else {
          const auto cond = condition_on_prefix(mvn, observed);
          pol = solve_rs(cond.dist, stage_params, pw, mode, variant);
        }
        // execute only the first decision of the re-solved plan
        const auto first = pol.level_at(1);
        step(led, inv, first.has_value(), first.value_or(0.0),
             path[static_cast<std::size_t>(t - 1)], params,
             opts.charge_fixed_on_zero_order);
        observed.push_back(path[static_cast<std::size_t>(t - 1)]);
      }
      acc.push(led);
    }
    if (n >= std::max<long>(opts.min_replications, 2)) {
      const SimResult partial = acc.result(opts.seed);
      if (partial.mean_cost != 0.0 &&
          partial.half_width_95 <= opts.rel_precision * std::abs(partial.mean_cost)) {
        reached_precision = true;
      }
    }
  }
  SimResult res = acc.result(opts.seed);
  res.capped = !reached_precision;
  return res;
}

}  // namespace stochlot
