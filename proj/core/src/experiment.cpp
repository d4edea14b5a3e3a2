#include "stochlot/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "stochlot/math.hpp"
#include "stochlot/sdp.hpp"

namespace stochlot {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string format_opt(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

std::optional<double> parse_opt(std::string_view field) {
  if (field.empty()) return std::nullopt;
  double v = 0.0;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
  require(res.ec == std::errc() && res.ptr == field.data() + field.size(),
          "CSV: malformed numeric field '" + std::string(field) + "'");
  return v;
}

std::string trim_number(double v) {
  // factor levels in ids: integral values print without a decimal point
  if (v == std::floor(v) && std::abs(v) < 1e9) {
    return std::to_string(static_cast<long long>(v));
  }
  return format_double(v);
}

}  // namespace

MVNHorizon Instance::demand_mvn() const {
  if (const auto* mvn = std::get_if<MvnPatternSpec>(&demand)) {
    require(static_cast<int>(mvn->pattern.size()) == horizon,
            "Instance: pattern length must equal the horizon");
    return build_lag1_mvn(mvn->pattern, mvn->cv, mvn->rho);
  }
  return ts_horizon_mvn(std::get<TsInstanceSpec>(demand).spec, horizon);
}

PathSampler Instance::make_sampler() const {
  if (is_mvn()) return PathSampler(demand_mvn());
  return PathSampler(std::get<TsInstanceSpec>(demand).spec, horizon);
}

namespace {

struct PatternDef {
  const char* name;
  std::vector<double> demand;
};

const std::vector<PatternDef>& mvn_patterns() {
  static const std::vector<PatternDef> defs = {
      {"LCY1", {15, 16, 15, 14, 11, 7, 6, 3}},
      {"LCY2", {3, 6, 7, 11, 14, 15, 16, 15}},
      {"SIN1", {15, 4, 4, 10, 18, 4, 4, 10}},
      {"SIN2", {12, 7, 7, 10, 13, 7, 7, 12}},
      {"STA", {10, 10, 10, 10, 10, 10, 10, 10}},
      {"RAND", {2, 4, 7, 3, 10, 10, 3, 3}},
      {"EMP1", {5, 15, 26, 44, 24, 15, 22, 10}},
      {"EMP2", {4, 23, 28, 50, 39, 26, 19, 32}},
      {"EMP3", {11, 14, 7, 11, 16, 31, 11, 48}},
      {"EMP4", {18, 6, 22, 22, 51, 54, 22, 21}},
  };
  return defs;
}

std::vector<double> k_values(KLevels levels) {
  return levels == KLevels::tables ? std::vector<double>{200, 300}
                                   : std::vector<double>{200, 400};
}

}  // namespace

std::vector<Instance> generate_mvn_bed(KLevels k_levels) {
  std::vector<Instance> out;
  out.reserve(320);
  for (const auto& pat : mvn_patterns()) {
    for (double rho : {0.25, 0.5}) {
      for (double cv : {0.15, 0.3}) {
        for (double K : k_values(k_levels)) {
          for (double c : {0.0, 1.0}) {
            for (double b : {10.0, 20.0}) {
              Instance inst;
              inst.horizon = static_cast<int>(pat.demand.size());
              inst.demand = MvnPatternSpec{pat.name, pat.demand, cv, rho};
              inst.costs = CostParams{K, c, 1.0, b, 0.0};
              inst.id = std::string("mvn-") + pat.name + "-rho" + trim_number(rho) +
                        "-cv" + trim_number(cv) + "-K" + trim_number(K) + "-c" +
                        trim_number(c) + "-b" + trim_number(b);
              out.push_back(std::move(inst));
            }
          }
        }
      }
    }
  }
  return out;
}

namespace {

struct TsProcessDef {
  const char* name;
  TsKind kind;
  double intercept;
  std::vector<double> ar;
  std::vector<double> ma;
  std::vector<double> arch;
};

const std::vector<TsProcessDef>& ts_processes() {
  static const std::vector<TsProcessDef> defs = {
      {"AR1", TsKind::ar, 25.0, {0.75}, {}, {}},
      {"AR3", TsKind::ar, 25.0, {0.5, 0.2, 0.1}, {}, {}},
      {"MA1", TsKind::ma, 100.0, {}, {0.75}, {}},
      {"MA3", TsKind::ma, 100.0, {}, {0.5, 0.2, 0.1}, {}},
      {"ARMA11", TsKind::arma, 25.0, {0.75}, {0.75}, {}},
      {"ARMA33", TsKind::arma, 25.0, {0.5, 0.2, 0.1}, {0.5, 0.2, 0.1}, {}},
      {"AR1ARCH1", TsKind::ar_arch, 25.0, {0.75}, {}, {100.0, 0.75}},
      {"AR3ARCH3", TsKind::ar_arch, 25.0, {0.5, 0.2, 0.1}, {}, {1.0, 0.3, 0.2, 0.1}},
  };
  return defs;
}

TimeSeriesSpec make_ts_spec(const TsProcessDef& def, std::optional<double> cv) {
  TimeSeriesSpec spec;
  spec.kind = def.kind;
  spec.intercept = def.intercept;
  spec.ar_coeffs = def.ar;
  spec.ma_coeffs = def.ma;
  spec.arch_coeffs = def.arch;
  if (def.kind != TsKind::ar_arch) {
    // innovation sd = cv times the (constant) process mean path
    spec.innovation_sd = {cv.value() * spec.stationary_mean()};
  }
  return spec;
}

}  // namespace

std::vector<Instance> generate_ts_bed(KLevels k_levels) {
  std::vector<Instance> out;
  out.reserve(112);
  constexpr int kHorizon = 15;
  for (const auto& def : ts_processes()) {
    const bool arch = def.kind == TsKind::ar_arch;
    const std::vector<std::optional<double>> cvs =
        arch ? std::vector<std::optional<double>>{std::nullopt}
             : std::vector<std::optional<double>>{0.15, 0.3};
    for (const auto& cv : cvs) {
      for (double K : k_values(k_levels)) {
        for (double c : {0.0, 1.0}) {
          for (double b : {10.0, 20.0}) {
            Instance inst;
            inst.horizon = kHorizon;
            inst.demand = TsInstanceSpec{def.name, make_ts_spec(def, cv), cv};
            inst.costs = CostParams{K, c, 1.0, b, 0.0};
            inst.id = std::string("ts-") + def.name +
                      (cv ? "-cv" + trim_number(*cv) : std::string()) + "-K" +
                      trim_number(K) + "-c" + trim_number(c) + "-b" + trim_number(b);
            out.push_back(std::move(inst));
          }
        }
      }
    }
  }
  return out;
}

Instance example_4period() {
  Instance inst;
  inst.id = "example-4period";
  inst.horizon = 4;
  inst.demand = MvnPatternSpec{"EX4", {20, 40, 60, 40}, 0.25, 0.5};
  inst.costs = CostParams{100.0, 0.0, 1.0, 10.0, 0.0};
  return inst;
}

namespace {

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

ResultRow run_one(const Instance& inst, const RunOptions& opt) {
  ResultRow row;
  row.instance_id = inst.id;
  row.K = inst.costs.fixed;
  row.c = inst.costs.unit;
  row.b = inst.costs.penalty;
  if (const auto* mvn = std::get_if<MvnPatternSpec>(&inst.demand)) {
    row.pattern = mvn->pattern_name;
    row.rho = mvn->rho;
    row.cv = mvn->cv;
  } else {
    const auto& ts = std::get<TsInstanceSpec>(inst.demand);
    row.pattern = ts.process_name;
    row.cv = ts.cv;
  }

  const std::uint64_t instance_seed =
      inst.seed ? *inst.seed : substream_seed(opt.seed, fnv1a(inst.id));

  try {
    const PiecewiseLoss pw = build_partition(inst.solver.segments);
    const MVNHorizon planning = inst.demand_mvn();

    const bool want_rs = opt.methods.contains(Method::rs) ||
                         opt.methods.contains(Method::simulate);
    std::optional<RsPolicy> policy;
    if (want_rs) {
      Timer timer;
      policy = solve_rs(planning, inst.costs, pw, inst.solver.mode, inst.solver.variant);
      if (opt.timings) row.t_solve_s = timer.seconds();
      row.planned_cost = policy->planned_cost;
    }

    std::optional<double> sim_rs;
    if (opt.methods.contains(Method::simulate)) {
      const PathSampler sampler = inst.make_sampler();
      SimOptions sim_opts;
      sim_opts.replications = opt.replications;
      sim_opts.seed = substream_seed(instance_seed, 1);
      const SimResult res = simulate_rs(*policy, sampler, inst.costs, sim_opts);
      sim_rs = res.mean_cost;
      row.sim_cost = res.mean_cost;
      row.sim_ci95 = res.half_width_95;
    }

    std::optional<double> sim_sdp;
    if (opt.methods.contains(Method::sdp)) {
      if (!inst.is_mvn()) {
        row.error = "sdp requires a lag-1 MVN instance";
      } else {
        SdpConfig cfg = SdpConfig::defaults_for(planning, inst.costs);
        if (opt.sdp_demand_cells) cfg.demand_cells = *opt.sdp_demand_cells;
        Timer timer;
        const SdpSolution sol = solve_sdp(planning, inst.costs, cfg);
        if (opt.timings) row.t_sdp_s = timer.seconds();
        if (opt.methods.contains(Method::simulate)) {
          const PathSampler sampler = inst.make_sampler();
          SimOptions sim_opts;
          sim_opts.replications = opt.replications;
          sim_opts.seed = substream_seed(instance_seed, 2);
          const SimResult res = simulate_sdp(sol, sampler, inst.costs, sim_opts);
          sim_sdp = res.mean_cost;
          row.sdp_cost = res.mean_cost;
        } else {
          row.sdp_cost = sol.expected_total_cost();
        }
      }
    }

    if (opt.methods.contains(Method::rhc)) {
      if (!inst.is_mvn()) {
        if (row.error.empty()) row.error = "rhc requires an MVN instance";
      } else {
        RhcOptions rhc_opts;
        rhc_opts.seed = substream_seed(instance_seed, 3);
        rhc_opts.rel_precision = opt.rhc_rel_precision;
        rhc_opts.max_replications = opt.rhc_max_replications;
        const SimResult res =
            simulate_rhc(planning, inst.costs, pw, inst.solver.mode, rhc_opts,
                         inst.solver.variant);
        row.rhc_cost = res.mean_cost;
      }
    }

    if (sim_rs && sim_sdp && *sim_sdp != 0.0) {
      row.milp_gap_pct = (*sim_rs - *sim_sdp) / *sim_sdp * 100.0;
    }
    if (row.planned_cost && sim_rs && *sim_rs != 0.0) {
      row.accuracy_pct = std::abs(*row.planned_cost - *sim_rs) / *sim_rs * 100.0;
    }
    if (row.rhc_cost && sim_sdp && *sim_sdp != 0.0) {
      row.rhc_gap_pct = (*row.rhc_cost - *sim_sdp) / *sim_sdp * 100.0;
    }
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

}  // namespace

std::vector<ResultRow> run(const std::vector<Instance>& instances,
                           const RunOptions& options) {
  require(!options.methods.empty(), "run: no methods selected");
  {
    std::set<std::string> seen;
    for (const auto& inst : instances) {
      require(seen.insert(inst.id).second, "run: duplicate instance id " + inst.id);
    }
  }
  std::vector<ResultRow> rows(instances.size());
  const int workers =
      std::max(1, std::min<int>(options.parallelism, static_cast<int>(instances.size())));
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= instances.size()) break;
      rows[i] = run_one(instances[i], options);
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  std::sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
    return a.instance_id < b.instance_id;
  });
  return rows;
}

std::string csv_header() {
  return "instance_id,pattern,rho,cv,K,c,b,planned_cost,sim_cost,sim_ci95,sdp_cost,"
         "rhc_cost,milp_gap_pct,accuracy_pct,rhc_gap_pct,t_solve_s,t_sdp_s,error";
}

std::string to_csv_line(const ResultRow& row) {
  std::string out;
  out.reserve(192);
  out += row.instance_id;
  out += ',';
  out += row.pattern;
  out += ',';
  out += format_opt(row.rho);
  out += ',';
  out += format_opt(row.cv);
  out += ',';
  out += format_double(row.K);
  out += ',';
  out += format_double(row.c);
  out += ',';
  out += format_double(row.b);
  out += ',';
  out += format_opt(row.planned_cost);
  out += ',';
  out += format_opt(row.sim_cost);
  out += ',';
  out += format_opt(row.sim_ci95);
  out += ',';
  out += format_opt(row.sdp_cost);
  out += ',';
  out += format_opt(row.rhc_cost);
  out += ',';
  out += format_opt(row.milp_gap_pct);
  out += ',';
  out += format_opt(row.accuracy_pct);
  out += ',';
  out += format_opt(row.rhc_gap_pct);
  out += ',';
  out += format_opt(row.t_solve_s);
  out += ',';
  out += format_opt(row.t_sdp_s);
  out += ',';
  out += row.error;
  return out;
}

ResultRow parse_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  fields.push_back(cur);
  require(fields.size() == 18, "CSV: expected 18 fields, got " +
                                   std::to_string(fields.size()));
  ResultRow row;
  row.instance_id = fields[0];
  row.pattern = fields[1];
  row.rho = parse_opt(fields[2]);
  row.cv = parse_opt(fields[3]);
  row.K = parse_opt(fields[4]).value();
  row.c = parse_opt(fields[5]).value();
  row.b = parse_opt(fields[6]).value();
  row.planned_cost = parse_opt(fields[7]);
  row.sim_cost = parse_opt(fields[8]);
  row.sim_ci95 = parse_opt(fields[9]);
  row.sdp_cost = parse_opt(fields[10]);
  row.rhc_cost = parse_opt(fields[11]);
  row.milp_gap_pct = parse_opt(fields[12]);
  row.accuracy_pct = parse_opt(fields[13]);
  row.rhc_gap_pct = parse_opt(fields[14]);
  row.t_solve_s = parse_opt(fields[15]);
  row.t_sdp_s = parse_opt(fields[16]);
  row.error = fields[17];
  return row;
}

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << csv_header() << '\n';
  for (const auto& row : rows) out << to_csv_line(row) << '\n';
}

std::vector<ResultRow> read_csv(std::istream& in) {
  std::vector<ResultRow> rows;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (first) {
      require(line == csv_header(), "CSV: unexpected header");
      first = false;
      continue;
    }
    rows.push_back(parse_csv_line(line));
  }
  return rows;
}

namespace {

struct PivotStat {
  int n = 0;
  double milp_gap = 0.0;
  int n_milp = 0;
  double accuracy = 0.0;
  int n_accuracy = 0;
  double rhc_gap = 0.0;
  int n_rhc = 0;
};

void pivot_block(std::string& out, const std::string& factor,
                 const std::map<std::string, PivotStat>& stats) {
  for (const auto& [level, st] : stats) {
    out += factor;
    out += ',';
    out += level;
    out += ',';
    out += std::to_string(st.n);
    out += ',';
    out += st.n_milp ? format_double(st.milp_gap / st.n_milp) : std::string();
    out += ',';
    out += st.n_accuracy ? format_double(st.accuracy / st.n_accuracy) : std::string();
    out += ',';
    out += st.n_rhc ? format_double(st.rhc_gap / st.n_rhc) : std::string();
    out += '\n';
  }
}

}  // namespace

std::string pivot_summary(const std::vector<ResultRow>& rows) {
  std::string out = "factor,level,n,mean_milp_gap_pct,mean_accuracy_pct,mean_rhc_gap_pct\n";
  const std::vector<std::string> factors = {"pattern", "K", "c", "b", "cv", "rho"};
  for (const auto& factor : factors) {
    std::map<std::string, PivotStat> stats;
    for (const auto& row : rows) {
      std::optional<std::string> level;
      if (factor == "pattern") level = row.pattern;
      if (factor == "K") level = trim_number(row.K);
      if (factor == "c") level = trim_number(row.c);
      if (factor == "b") level = trim_number(row.b);
      if (factor == "cv" && row.cv) level = format_double(*row.cv);
      if (factor == "rho" && row.rho) level = format_double(*row.rho);
      if (!level) continue;
      auto& st = stats[*level];
      st.n += 1;
      if (row.milp_gap_pct) {
        st.milp_gap += *row.milp_gap_pct;
        st.n_milp += 1;
      }
      if (row.accuracy_pct) {
        st.accuracy += *row.accuracy_pct;
        st.n_accuracy += 1;
      }
      if (row.rhc_gap_pct) {
        st.rhc_gap += *row.rhc_gap_pct;
        st.n_rhc += 1;
      }
    }
    pivot_block(out, factor, stats);
  }
  return out;
}

namespace {

using nlohmann::json;

json ts_to_json(const TsInstanceSpec& ts) {
  json j;
  j["type"] = "timeseries";
  j["kind"] = to_string(ts.spec.kind);
  j["name"] = ts.process_name;
  j["intercept"] = ts.spec.intercept;
  j["ar"] = ts.spec.ar_coeffs;
  j["ma"] = ts.spec.ma_coeffs;
  if (ts.spec.kind == TsKind::ar_arch) {
    j["arch"] = ts.spec.arch_coeffs;
  } else if (ts.spec.innovation_sd.size() == 1) {
    j["sigma"] = ts.spec.innovation_sd[0];
  } else {
    j["sigma_schedule"] = ts.spec.innovation_sd;
  }
  if (!ts.spec.init_demands.empty()) j["init_demands"] = ts.spec.init_demands;
  if (!ts.spec.init_shocks.empty()) j["init_shocks"] = ts.spec.init_shocks;
  if (ts.cv) j["cv"] = *ts.cv;
  return j;
}

TsKind kind_from_string(const std::string& s) {
  if (s == "AR") return TsKind::ar;
  if (s == "MA") return TsKind::ma;
  if (s == "ARMA") return TsKind::arma;
  if (s == "AR_ARCH") return TsKind::ar_arch;
  throw std::invalid_argument("instance JSON: unknown time-series kind " + s);
}

}  // namespace

std::string instance_to_json(const Instance& inst) {
  json j;
  j["id"] = inst.id;
  j["horizon"] = inst.horizon;
  if (const auto* mvn = std::get_if<MvnPatternSpec>(&inst.demand)) {
    json d;
    d["type"] = "mvn";
    d["name"] = mvn->pattern_name;
    d["pattern"] = mvn->pattern;
    d["cv"] = mvn->cv;
    d["rho"] = mvn->rho;
    j["demand"] = d;
  } else {
    j["demand"] = ts_to_json(std::get<TsInstanceSpec>(inst.demand));
  }
  j["costs"] = {{"K", inst.costs.fixed},
                {"c", inst.costs.unit},
                {"h", inst.costs.holding},
                {"b", inst.costs.penalty},
                {"I0", inst.costs.initial_inventory}};
  j["solver"] = {
      {"segments", inst.solver.segments},
      {"mode", inst.solver.mode == LossMode::exact ? "exact" : "piecewise"}};
  if (inst.solver.variant == UnitCostVariant::complementary) {
    j["solver"]["unit_cost_variant"] = "complementary";
  }
  if (inst.seed) j["seed"] = *inst.seed;
  return j.dump(2);
}

Instance instance_from_json(const std::string& text) {
  const json j = json::parse(text);
  Instance inst;
  inst.id = j.value("id", "instance");
  inst.horizon = j.at("horizon").get<int>();
  const json& d = j.at("demand");
  const std::string type = d.at("type").get<std::string>();
  if (type == "mvn") {
    MvnPatternSpec mvn;
    mvn.pattern_name = d.value("name", "custom");
    mvn.pattern = d.at("pattern").get<std::vector<double>>();
    mvn.cv = d.at("cv").get<double>();
    mvn.rho = d.at("rho").get<double>();
    inst.demand = std::move(mvn);
  } else if (type == "timeseries") {
    TsInstanceSpec ts;
    ts.process_name = d.value("name", "custom");
    ts.spec.kind = kind_from_string(d.at("kind").get<std::string>());
    ts.spec.intercept = d.at("intercept").get<double>();
    ts.spec.ar_coeffs = d.value("ar", std::vector<double>{});
    ts.spec.ma_coeffs = d.value("ma", std::vector<double>{});
    ts.spec.arch_coeffs = d.value("arch", std::vector<double>{});
    if (d.contains("sigma")) {
      ts.spec.innovation_sd = {d.at("sigma").get<double>()};
    } else if (d.contains("sigma_schedule")) {
      ts.spec.innovation_sd = d.at("sigma_schedule").get<std::vector<double>>();
    }
    ts.spec.init_demands = d.value("init_demands", std::vector<double>{});
    ts.spec.init_shocks = d.value("init_shocks", std::vector<double>{});
    if (d.contains("cv")) ts.cv = d.at("cv").get<double>();
    ts.spec.validate();
    inst.demand = std::move(ts);
  } else {
    throw std::invalid_argument("instance JSON: unknown demand type " + type);
  }
  const json& c = j.at("costs");
  inst.costs = CostParams{c.at("K").get<double>(), c.at("c").get<double>(),
                          c.at("h").get<double>(), c.at("b").get<double>(),
                          c.value("I0", 0.0)};
  if (j.contains("solver")) {
    const json& s = j.at("solver");
    inst.solver.segments = s.value("segments", 11);
    const std::string mode = s.value("mode", "piecewise");
    require(mode == "exact" || mode == "piecewise",
            "instance JSON: mode must be exact or piecewise");
    inst.solver.mode = mode == "exact" ? LossMode::exact : LossMode::piecewise;
    const std::string variant = s.value("unit_cost_variant", "expected");
    require(variant == "expected" || variant == "complementary",
            "instance JSON: unit_cost_variant must be expected or complementary");
    inst.solver.variant = variant == "expected" ? UnitCostVariant::expected_closing
                                                : UnitCostVariant::complementary;
  }
  if (j.contains("seed")) inst.seed = j.at("seed").get<std::uint64_t>();
  return inst;
}

}  // namespace stochlot
