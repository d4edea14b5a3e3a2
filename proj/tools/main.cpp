// Command-line front end: solve single instances, run the SDP benchmark,
// simulate policies, and reproduce the 8-period / 15-period study beds.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "stochlot/experiment.hpp"
#include "stochlot/sdp.hpp"

namespace {

using namespace stochlot;

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("instance", "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return instance_from_json(buf.str());
}

struct CommonSolveFlags {
  int segments = 11;
  std::string mode = "piecewise";
  std::string variant = "expected";

  void attach(CLI::App* cmd) {
    cmd->add_option("--segments", segments, "piecewise segments W")->check(CLI::Range(2, 512));
    cmd->add_option("--mode", mode, "loss evaluation mode")
        ->check(CLI::IsMember({"exact", "piecewise"}));
    cmd->add_option("--unit-cost-variant", variant, "proportional-cost reformulation")
        ->check(CLI::IsMember({"expected", "complementary"}));
  }

  void apply(Instance& inst) const {
    inst.solver.segments = segments;
    inst.solver.mode = mode == "exact" ? LossMode::exact : LossMode::piecewise;
    inst.solver.variant = variant == "expected" ? UnitCostVariant::expected_closing
                                                : UnitCostVariant::complementary;
  }
};

void print_policy(const RsPolicy& policy) {
  std::printf("review periods:");
  if (policy.plan.order_periods.empty()) std::printf(" (none)");
  for (int t : policy.plan.order_periods) std::printf(" %d", t);
  std::printf("\norder-up-to levels:");
  for (double s : policy.order_up_to) std::printf(" %.4f", s);
  std::printf("\nplanned cost: %.4f\n", policy.planned_cost);
  std::printf("  fixed %.4f | unit %.4f | holding %.4f | penalty %.4f\n",
              policy.breakdown.fixed, policy.breakdown.unit, policy.breakdown.holding,
              policy.breakdown.penalty);
}

int write_rows(const std::string& out_path, const std::vector<ResultRow>& rows) {
  if (out_path.empty()) {
    write_csv(std::cout, rows);
    std::cout << "\n" << pivot_summary(rows);
    return 0;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::fprintf(stderr, "cannot write %s\n", out_path.c_str());
    return 1;
  }
  write_csv(out, rows);
  std::ofstream summary(out_path + ".summary", std::ios::binary);
  summary << pivot_summary(rows);
  std::printf("wrote %zu rows to %s (+ %s.summary)\n", rows.size(), out_path.c_str(),
              out_path.c_str());
  return 0;
}

std::set<Method> parse_methods(const std::string& csv) {
  std::set<Method> methods;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "rs") methods.insert(Method::rs);
    else if (item == "sdp") methods.insert(Method::sdp);
    else if (item == "rhc") methods.insert(Method::rhc);
    else if (item == "simulate") methods.insert(Method::simulate);
    else throw CLI::ValidationError("methods", "unknown method " + item);
  }
  if (methods.empty()) throw CLI::ValidationError("methods", "no methods selected");
  return methods;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stochlot: non-stationary (R,S) inventory policies under correlated demand"};
  app.require_subcommand(1);

  // ---- solve ----------------------------------------------------------
  auto* solve_cmd = app.add_subcommand("solve", "solve an instance for its (R,S) policy");
  std::string solve_file;
  CommonSolveFlags solve_flags;
  solve_cmd->add_option("instance", solve_file, "instance JSON file")->required();
  solve_flags.attach(solve_cmd);

  // ---- sdp ------------------------------------------------------------
  auto* sdp_cmd = app.add_subcommand("sdp", "stochastic dynamic programming benchmark");
  std::string sdp_file;
  int sdp_cells = 25;
  sdp_cmd->add_option("instance", sdp_file, "instance JSON file")->required();
  sdp_cmd->add_option("--cells", sdp_cells, "demand cells per period")->check(CLI::Range(1, 512));

  // ---- simulate -------------------------------------------------------
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo evaluation of a policy");
  std::string sim_file, sim_method = "rs";
  long sim_reps = 100000;
  std::uint64_t sim_seed = 20240901;
  CommonSolveFlags sim_flags;
  sim_cmd->add_option("instance", sim_file, "instance JSON file")->required();
  sim_cmd->add_option("--method", sim_method, "policy to simulate")
      ->check(CLI::IsMember({"rs", "sdp"}));
  sim_cmd->add_option("--reps", sim_reps, "replications")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--seed", sim_seed, "master seed");
  sim_flags.attach(sim_cmd);

  // ---- rhc ------------------------------------------------------------
  auto* rhc_cmd = app.add_subcommand("rhc", "receding horizon control simulation");
  std::string rhc_file;
  std::uint64_t rhc_seed = 20240901;
  double rhc_precision = 0.0003;
  long rhc_cap = 1000000;
  CommonSolveFlags rhc_flags;
  rhc_cmd->add_option("instance", rhc_file, "instance JSON file")->required();
  rhc_cmd->add_option("--seed", rhc_seed, "master seed");
  rhc_cmd->add_option("--rel-precision", rhc_precision, "stop at this relative half-width");
  rhc_cmd->add_option("--reps", rhc_cap, "replication cap");
  rhc_flags.attach(rhc_cmd);

  // ---- beds -----------------------------------------------------------
  auto add_bed_options = [](CLI::App* cmd, std::string& out, std::string& methods,
                            long& reps, std::uint64_t& seed, int& parallel,
                            std::string& k_levels, bool& no_timings, int& segments,
                            std::string& mode) {
    cmd->add_option("--out", out, "output CSV path (stdout when omitted)");
    cmd->add_option("--methods", methods, "comma list of rs,sdp,rhc,simulate");
    cmd->add_option("--reps", reps, "simulation replications")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", seed, "master seed");
    cmd->add_option("--parallel", parallel, "worker threads")->check(CLI::Range(1, 256));
    cmd->add_option("--k-levels", k_levels, "fixed-cost levels: tables {200,300} or prose {200,400}")
        ->check(CLI::IsMember({"tables", "prose"}));
    cmd->add_flag("--no-timings", no_timings, "omit wall-clock columns (byte-stable output)");
    cmd->add_option("--segments", segments, "piecewise segments W")->check(CLI::Range(2, 512));
    cmd->add_option("--mode", mode, "loss evaluation mode")
        ->check(CLI::IsMember({"exact", "piecewise"}));
  };

  auto* mvn_cmd = app.add_subcommand("bench-mvn", "run the 320-instance 8-period bed");
  std::string mvn_out, mvn_methods = "rs,simulate", mvn_k = "tables", mvn_mode = "piecewise";
  std::string mvn_patterns;
  long mvn_reps = 100000;
  std::uint64_t mvn_seed = 20240901;
  int mvn_parallel = 1, mvn_segments = 11;
  bool mvn_no_timings = false;
  double mvn_rhc_precision = 0.0003;
  add_bed_options(mvn_cmd, mvn_out, mvn_methods, mvn_reps, mvn_seed, mvn_parallel, mvn_k,
                  mvn_no_timings, mvn_segments, mvn_mode);
  mvn_cmd->add_option("--patterns", mvn_patterns,
                      "comma list restricting demand patterns (e.g. STA,RAND)");
  mvn_cmd->add_option("--rhc-rel-precision", mvn_rhc_precision,
                      "RHC stopping precision (relative half-width)");

  auto* ts_cmd = app.add_subcommand("bench-ts", "run the 112-instance 15-period bed");
  std::string ts_out, ts_methods = "rs,simulate", ts_k = "tables", ts_mode = "piecewise";
  long ts_reps = 100000;
  std::uint64_t ts_seed = 20240901;
  int ts_parallel = 1, ts_segments = 11;
  bool ts_no_timings = false;
  add_bed_options(ts_cmd, ts_out, ts_methods, ts_reps, ts_seed, ts_parallel, ts_k,
                  ts_no_timings, ts_segments, ts_mode);

  // ---- example --------------------------------------------------------
  auto* ex_cmd = app.add_subcommand("example-4period",
                                    "worked 4-period example with all methods");
  long ex_reps = 100000;
  std::uint64_t ex_seed = 20240901;
  ex_cmd->add_option("--reps", ex_reps, "replications")->check(CLI::PositiveNumber);
  ex_cmd->add_option("--seed", ex_seed, "master seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve_cmd) {
      Instance inst = load_instance(solve_file);
      solve_flags.apply(inst);
      const PiecewiseLoss pw = build_partition(inst.solver.segments);
      const RsPolicy policy =
          solve_rs(inst.demand_mvn(), inst.costs, pw, inst.solver.mode, inst.solver.variant);
      print_policy(policy);
      return 0;
    }

    if (*sdp_cmd) {
      Instance inst = load_instance(sdp_file);
      const MVNHorizon mvn = inst.demand_mvn();
      SdpConfig cfg = SdpConfig::defaults_for(mvn, inst.costs);
      cfg.demand_cells = sdp_cells;
      const SdpSolution sol = solve_sdp(mvn, inst.costs, cfg);
      std::printf("sdp expected total cost: %.4f\n", sol.expected_total_cost());
      if (sol.truncation_warning()) {
        std::printf("note: inventory lattice does not span the +-6 sd range; "
                    "value may carry truncation bias\n");
      }
      return 0;
    }

    if (*sim_cmd) {
      Instance inst = load_instance(sim_file);
      sim_flags.apply(inst);
      const PathSampler sampler = inst.make_sampler();
      SimOptions opts;
      opts.replications = sim_reps;
      opts.seed = sim_seed;
      if (sim_method == "rs") {
        const PiecewiseLoss pw = build_partition(inst.solver.segments);
        const RsPolicy policy = solve_rs(inst.demand_mvn(), inst.costs, pw,
                                         inst.solver.mode, inst.solver.variant);
        print_policy(policy);
        const SimResult res = simulate_rs(policy, sampler, inst.costs, opts);
        std::printf("simulated cost: %.4f +- %.4f (n=%ld)\n", res.mean_cost,
                    res.half_width_95, res.replications);
      } else {
        const MVNHorizon mvn = inst.demand_mvn();
        const SdpSolution sol =
            solve_sdp(mvn, inst.costs, SdpConfig::defaults_for(mvn, inst.costs));
        std::printf("sdp expected total cost: %.4f\n", sol.expected_total_cost());
        const SimResult res = simulate_sdp(sol, sampler, inst.costs, opts);
        std::printf("simulated cost: %.4f +- %.4f (n=%ld)\n", res.mean_cost,
                    res.half_width_95, res.replications);
      }
      return 0;
    }

    if (*rhc_cmd) {
      Instance inst = load_instance(rhc_file);
      rhc_flags.apply(inst);
      const PiecewiseLoss pw = build_partition(inst.solver.segments);
      RhcOptions opts;
      opts.seed = rhc_seed;
      opts.rel_precision = rhc_precision;
      opts.max_replications = rhc_cap;
      const SimResult res = simulate_rhc(inst.demand_mvn(), inst.costs, pw,
                                         inst.solver.mode, opts, inst.solver.variant);
      std::printf("rhc simulated cost: %.4f +- %.4f (n=%ld%s)\n", res.mean_cost,
                  res.half_width_95, res.replications,
                  res.capped ? ", capped before reaching precision" : "");
      return 0;
    }

    auto run_bed = [&](std::vector<Instance> instances, const std::string& methods,
                       long reps, std::uint64_t seed, int parallel, bool no_timings,
                       int segments, const std::string& mode, const std::string& out,
                       double rhc_precision) {
      for (auto& inst : instances) {
        inst.solver.segments = segments;
        inst.solver.mode = mode == "exact" ? LossMode::exact : LossMode::piecewise;
      }
      RunOptions options;
      options.methods = parse_methods(methods);
      options.replications = reps;
      options.seed = seed;
      options.parallelism = parallel;
      options.timings = !no_timings;
      options.rhc_rel_precision = rhc_precision;
      return write_rows(out, run(instances, options));
    };

    if (*mvn_cmd) {
      auto instances =
          generate_mvn_bed(mvn_k == "tables" ? KLevels::tables : KLevels::prose);
      if (!mvn_patterns.empty()) {
        std::set<std::string> keep;
        std::stringstream ss(mvn_patterns);
        std::string item;
        while (std::getline(ss, item, ',')) keep.insert(item);
        std::erase_if(instances, [&](const Instance& inst) {
          return !keep.contains(std::get<MvnPatternSpec>(inst.demand).pattern_name);
        });
      }
      return run_bed(std::move(instances), mvn_methods, mvn_reps, mvn_seed, mvn_parallel,
                     mvn_no_timings, mvn_segments, mvn_mode, mvn_out, mvn_rhc_precision);
    }

    if (*ts_cmd) {
      return run_bed(generate_ts_bed(ts_k == "tables" ? KLevels::tables : KLevels::prose),
                     ts_methods, ts_reps, ts_seed, ts_parallel, ts_no_timings, ts_segments,
                     ts_mode, ts_out, 0.0003);
    }

    if (*ex_cmd) {
      const Instance inst = example_4period();
      const MVNHorizon mvn = inst.demand_mvn();
      const PiecewiseLoss pw = build_partition(11);

      std::printf("=== worked 4-period example ===\n");
      const double single =
          inst.costs.fixed + cycle_cost(mvn, 1, 4, 160.0, inst.costs, pw,
                                        LossMode::piecewise, true);
      std::printf("single cycle, S=160:            %.2f\n", single);
      const double two = 2 * inst.costs.fixed +
                         cycle_cost(mvn, 1, 2, 60.0, inst.costs, pw, LossMode::piecewise, false) +
                         cycle_cost(mvn, 3, 4, 100.0, inst.costs, pw, LossMode::piecewise, true);
      std::printf("two cycles, S=60@1 / S=100@3:   %.2f\n", two);

      const RsPolicy exact = solve_rs(mvn, inst.costs, pw, LossMode::exact);
      std::printf("\n-- solve (exact loss) --\n");
      print_policy(exact);
      const RsPolicy approx = solve_rs(mvn, inst.costs, pw, LossMode::piecewise);
      std::printf("\n-- solve (piecewise W=11) --\n");
      print_policy(approx);

      const PathSampler sampler(mvn);
      SimOptions sim_opts;
      sim_opts.replications = ex_reps;
      sim_opts.seed = ex_seed;
      const SimResult sim = simulate_rs(exact, sampler, inst.costs, sim_opts);
      std::printf("\nsimulated (R,S) cost:  %.4f +- %.4f\n", sim.mean_cost, sim.half_width_95);

      const SdpSolution sdp =
          solve_sdp(mvn, inst.costs, SdpConfig::defaults_for(mvn, inst.costs));
      std::printf("sdp expected cost:     %.4f\n", sdp.expected_total_cost());
      sim_opts.seed = ex_seed + 1;
      const SimResult sdp_sim = simulate_sdp(sdp, sampler, inst.costs, sim_opts);
      std::printf("sdp simulated cost:    %.4f +- %.4f\n", sdp_sim.mean_cost,
                  sdp_sim.half_width_95);

      RhcOptions rhc_opts;
      rhc_opts.seed = ex_seed + 2;
      rhc_opts.rel_precision = 0.002;
      rhc_opts.max_replications = 20000;
      const SimResult rhc = simulate_rhc(mvn, inst.costs, pw, LossMode::piecewise, rhc_opts);
      std::printf("rhc simulated cost:    %.4f +- %.4f (n=%ld)\n", rhc.mean_cost,
                  rhc.half_width_95, rhc.replications);
      return 0;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
