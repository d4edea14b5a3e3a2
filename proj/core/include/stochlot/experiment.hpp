#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "stochlot/demand.hpp"
#include "stochlot/loss.hpp"
#include "stochlot/simulate.hpp"
#include "stochlot/solver.hpp"

namespace stochlot {

/// Demand model of a test instance: either a lag-1 MVN pattern or a
/// time-series process.
struct MvnPatternSpec {
  std::string pattern_name;
  std::vector<double> pattern;
  double cv = 0.0;
  double rho = 0.0;
};

struct TsInstanceSpec {
  std::string process_name;
  TimeSeriesSpec spec;
  std::optional<double> cv;  // empty for ARCH-driven processes
};

using InstanceDemand = std::variant<MvnPatternSpec, TsInstanceSpec>;

struct SolverSettings {
  int segments = 11;
  LossMode mode = LossMode::piecewise;
  UnitCostVariant variant = UnitCostVariant::expected_closing;
};

struct Instance {
  std::string id;
  int horizon = 0;
  InstanceDemand demand;
  CostParams costs;
  SolverSettings solver;
  std::optional<std::uint64_t> seed;  // overrides the run-level substream

  bool is_mvn() const { return std::holds_alternative<MvnPatternSpec>(demand); }
  MVNHorizon demand_mvn() const;  // planning distribution (Gaussian for ARCH)
  PathSampler make_sampler() const;
};

/// Fixed ordering cost levels: Table-2/3 values {200,300} or the prose
/// variant {200,400}.
enum class KLevels { tables, prose };

/// The 8-period bed: 10 demand patterns x rho{0.25,0.5} x K x c{0,1} x
/// b{10,20} x cv{0.15,0.3} = 320 instances, h=1 throughout.
std::vector<Instance> generate_mvn_bed(KLevels k_levels = KLevels::tables);

/// The 15-period time-series bed: six cv-sensitive processes over the
/// {cv,K,c,b} factorial plus two AR-ARCH processes over {K,c,b} = 112
/// instances.
std::vector<Instance> generate_ts_bed(KLevels k_levels = KLevels::tables);

enum class Method { rs, sdp, rhc, simulate };

struct ResultRow {
  std::string instance_id;
  std::string pattern;
  std::optional<double> rho;
  std::optional<double> cv;
  double K = 0.0;
  double c = 0.0;
  double b = 0.0;
  std::optional<double> planned_cost;
  std::optional<double> sim_cost;
  std::optional<double> sim_ci95;
  std::optional<double> sdp_cost;
  std::optional<double> rhc_cost;
  std::optional<double> milp_gap_pct;   // (sim_rs - sim_sdp)/sim_sdp * 100
  std::optional<double> accuracy_pct;   // |planned - sim_rs|/sim_rs * 100
  std::optional<double> rhc_gap_pct;    // (rhc - sim_sdp)/sim_sdp * 100
  std::optional<double> t_solve_s;
  std::optional<double> t_sdp_s;
  std::string error;  // per-row failure (e.g. sdp on a time-series instance)

  bool operator==(const ResultRow&) const = default;
};

struct RunOptions {
  std::set<Method> methods = {Method::rs, Method::simulate};
  long replications = 100000;
  std::uint64_t seed = 20240901;
  int parallelism = 1;
  bool timings = true;  // wall-clock columns break byte determinism; turn off to compare runs
  double rhc_rel_precision = 0.0003;
  long rhc_max_replications = 1000000;
  /// sim_cost for the SDP method uses this many replications as well.
  std::optional<int> sdp_demand_cells;  // override the default grid
};

/// Runs the selected methods on every instance; rows come back ordered by
/// instance id and depend only on (instances, options.seed), not on
/// parallelism.
std::vector<ResultRow> run(const std::vector<Instance>& instances,
                           const RunOptions& options);

std::string csv_header();
std::string to_csv_line(const ResultRow& row);
ResultRow parse_csv_line(const std::string& line);
void write_csv(std::ostream& out, const std::vector<ResultRow>& rows);
std::vector<ResultRow> read_csv(std::istream& in);

/// Mean gap/accuracy per factor level, one block per factor, mirroring the
/// pivot layout of the study tables.
std::string pivot_summary(const std::vector<ResultRow>& rows);

/// Instance (de)serialization; schema: top-level horizon, demand
/// (tagged union mvn/timeseries), costs {K,c,h,b,I0}, solver
/// {segments, mode}, optional id and seed.
std::string instance_to_json(const Instance& inst);
Instance instance_from_json(const std::string& text);

/// The worked 4-period example (means 20,40,60,40; cv 0.25; rho 0.5;
/// K=100, h=1, b=10, c=0, I0=0).
Instance example_4period();

}  // namespace stochlot
