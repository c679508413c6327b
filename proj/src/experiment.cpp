#include "nsp/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <set>

#include <nlohmann/json.hpp>

#include "nsp/rng.hpp"

namespace nsp {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError("config: " + path + ": " + what);
}

const json* jfind(const json& j, const std::string& key) {
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

void check_keys(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) fail(path, "expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : allowed)
      if (it.key() == k) known = true;
    if (!known) fail(path + "." + it.key(), "unknown field");
  }
}

template <typename T>
T jget(const json& j, const std::string& path) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    fail(path, "wrong type");
  }
}

template <typename T>
void read_field(const json& j, const std::string& parent, const char* key, T& out) {
  if (const json* v = jfind(j, key)) out = jget<T>(*v, parent + "." + key);
}

void read_range(const json& j, const std::string& parent, const char* key, Range& out) {
  if (const json* v = jfind(j, key)) {
    const std::string path = parent + "." + key;
    if (!v->is_array() || v->size() != 2) fail(path, "expected [lo, hi]");
    out.lo = jget<int64_t>((*v)[0], path);
    out.hi = jget<int64_t>((*v)[1], path);
  }
}

void read_tier(const json& j, const std::string& parent, const char* key, TierServerSpec& out) {
  if (const json* v = jfind(j, key)) {
    const std::string path = parent + "." + key;
    check_keys(*v, path, {"cpu_cap", "ram_cap", "cpu_weight", "ram_weight"});
    read_field(*v, path, "cpu_cap", out.cpu_cap);
    read_field(*v, path, "ram_cap", out.ram_cap);
    read_field(*v, path, "cpu_weight", out.cpu_weight);
    read_field(*v, path, "ram_weight", out.ram_weight);
  }
}

void read_link(const json& j, const std::string& parent, const char* key, LinkSpec& out) {
  if (const json* v = jfind(j, key)) {
    const std::string path = parent + "." + key;
    check_keys(*v, path, {"bw", "latency"});
    read_field(*v, path, "bw", out.bw);
    read_field(*v, path, "latency", out.latency);
  }
}

void read_psn(const json& j, PsnConfig& out) {
  check_keys(j, "psn",
             {"n_edc", "n_cdc", "n_ccp", "servers_per_edc", "servers_per_cdc", "servers_per_ccp",
              "edc", "cdc", "ccp", "intra_dc", "edc_cdc", "cdc_cdc", "cdc_ccp", "edc_ccp",
              "edc_edc", "ccp_ccp", "seed"});
  read_field(j, "psn", "n_edc", out.n_edc);
  read_field(j, "psn", "n_cdc", out.n_cdc);
  read_field(j, "psn", "n_ccp", out.n_ccp);
  read_field(j, "psn", "servers_per_edc", out.servers_per_edc);
  read_field(j, "psn", "servers_per_cdc", out.servers_per_cdc);
  read_field(j, "psn", "servers_per_ccp", out.servers_per_ccp);
  read_tier(j, "psn", "edc", out.edc);
  read_tier(j, "psn", "cdc", out.cdc);
  read_tier(j, "psn", "ccp", out.ccp);
  read_link(j, "psn", "intra_dc", out.intra_dc);
  read_link(j, "psn", "edc_cdc", out.edc_cdc);
  read_link(j, "psn", "cdc_cdc", out.cdc_cdc);
  read_link(j, "psn", "cdc_ccp", out.cdc_ccp);
  read_link(j, "psn", "edc_ccp", out.edc_ccp);
  read_link(j, "psn", "edc_edc", out.edc_edc);
  read_link(j, "psn", "ccp_ccp", out.ccp_ccp);
  read_field(j, "psn", "seed", out.seed);
}

void read_nspr(const json& j, NsprParams& out) {
  check_keys(j, "nspr",
             {"chain_len", "vnf_cpu", "vnf_ram", "vlink_bw", "vlink_lat", "e2e_lat",
              "holding_mean"});
  read_range(j, "nspr", "chain_len", out.chain_len);
  read_range(j, "nspr", "vnf_cpu", out.vnf_cpu);
  read_range(j, "nspr", "vnf_ram", out.vnf_ram);
  read_range(j, "nspr", "vlink_bw", out.vlink_bw);
  read_range(j, "nspr", "vlink_lat", out.vlink_lat);
  read_range(j, "nspr", "e2e_lat", out.e2e_lat);
  read_field(j, "nspr", "holding_mean", out.holding_mean);
}

void read_sim(const json& j, SimConfig& out) {
  check_keys(j, "sim",
             {"algo", "seed", "sample_interval", "timing", "coherence_every", "p2c", "exact"});
  if (const json* v = jfind(j, "algo")) {
    auto a = algo_from_string(jget<std::string>(*v, "sim.algo"));
    if (!a) fail("sim.algo", "expected one of exact, p2c, both");
    out.algo = *a;
  }
  read_field(j, "sim", "seed", out.seed);
  read_field(j, "sim", "sample_interval", out.sample_interval);
  read_field(j, "sim", "timing", out.timing);
  read_field(j, "sim", "coherence_every", out.coherence_every);
  if (const json* v = jfind(j, "p2c")) {
    check_keys(*v, "sim.p2c", {"resample_attempts", "backtrack_budget", "sample_choices"});
    read_field(*v, "sim.p2c", "resample_attempts", out.p2c.resample_attempts);
    read_field(*v, "sim.p2c", "backtrack_budget", out.p2c.backtrack_budget);
    read_field(*v, "sim.p2c", "sample_choices", out.p2c.sample_choices);
  }
  if (const json* v = jfind(j, "exact")) {
    check_keys(*v, "sim.exact", {"hop_bound", "time_budget_ms"});
    if (const json* h = jfind(*v, "hop_bound"); h && !h->is_null())
      out.exact.hop_bound = jget<int32_t>(*h, "sim.exact.hop_bound");
    if (const json* t = jfind(*v, "time_budget_ms"); t && !t->is_null())
      out.exact.time_budget_ms = jget<int64_t>(*t, "sim.exact.time_budget_ms");
  }
}

}  // namespace

void ExperimentConfig::validate() const {
  try {
    psn.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: psn: ") + e.what());
  }
  try {
    nspr.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: nspr: ") + e.what());
  }
  if (arrival_rate < 0) fail("arrival_rate", "must be >= 0");
  if (!(horizon > 0)) fail("horizon", "must be > 0");
  if (sim.sample_interval < 0) fail("sim.sample_interval", "must be >= 0");
  try {
    sim.p2c.validate();
    sim.exact.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: sim: ") + e.what());
  }
  if (out_dir.empty()) fail("out", "must not be empty");
  if (exact_server_limit < 1) fail("exact_server_limit", "must be >= 1");
  if (sweep) {
    if (sweep->values.empty()) fail("sweep.values", "must not be empty");
    if (sweep->seeds.empty()) fail("sweep.seeds", "must not be empty");
    if (std::set<uint64_t>(sweep->seeds.begin(), sweep->seeds.end()).size() != sweep->seeds.size())
      fail("sweep.seeds", "seeds must be distinct");
    apply_sweep_value(*this, sweep->param, sweep->values.front());  // validates the name
  }
  if (sim.algo != Algo::P2c && psn.total_servers() > exact_server_limit)
    throw ConfigError(
        "config: sim.algo: the exact solver is limited to substrates with <= " +
        std::to_string(exact_server_limit) + " servers (got " +
        std::to_string(psn.total_servers()) + "); raise exact_server_limit or use algo=p2c");
}

ExperimentConfig config_from_json(const json& j) {
  ExperimentConfig cfg;
  check_keys(j, "(root)",
             {"psn", "nspr", "arrival_rate", "horizon", "sim", "out", "exact_server_limit",
              "sweep"});
  if (const json* v = jfind(j, "psn")) read_psn(*v, cfg.psn);
  if (const json* v = jfind(j, "nspr")) read_nspr(*v, cfg.nspr);
  read_field(j, "(root)", "arrival_rate", cfg.arrival_rate);
  read_field(j, "(root)", "horizon", cfg.horizon);
  if (const json* v = jfind(j, "sim")) read_sim(*v, cfg.sim);
  read_field(j, "(root)", "out", cfg.out_dir);
  read_field(j, "(root)", "exact_server_limit", cfg.exact_server_limit);
  if (const json* v = jfind(j, "sweep")) {
    check_keys(*v, "sweep", {"param", "values", "seeds"});
    SweepSpec sweep;
    read_field(*v, "sweep", "param", sweep.param);
    read_field(*v, "sweep", "values", sweep.values);
    read_field(*v, "sweep", "seeds", sweep.seeds);
    cfg.sweep = std::move(sweep);
  }
  cfg.validate();
  return cfg;
}

namespace {

json tier_json(const TierServerSpec& t) {
  return {{"cpu_cap", t.cpu_cap},
          {"ram_cap", t.ram_cap},
          {"cpu_weight", t.cpu_weight},
          {"ram_weight", t.ram_weight}};
}

json link_json(const LinkSpec& l) { return {{"bw", l.bw}, {"latency", l.latency}}; }

json range_json(const Range& r) { return json::array({r.lo, r.hi}); }

}  // namespace

json to_json(const ExperimentConfig& cfg) {
  json j;
  j["psn"] = {{"n_edc", cfg.psn.n_edc},
              {"n_cdc", cfg.psn.n_cdc},
              {"n_ccp", cfg.psn.n_ccp},
              {"servers_per_edc", cfg.psn.servers_per_edc},
              {"servers_per_cdc", cfg.psn.servers_per_cdc},
              {"servers_per_ccp", cfg.psn.servers_per_ccp},
              {"edc", tier_json(cfg.psn.edc)},
              {"cdc", tier_json(cfg.psn.cdc)},
              {"ccp", tier_json(cfg.psn.ccp)},
              {"intra_dc", link_json(cfg.psn.intra_dc)},
              {"edc_cdc", link_json(cfg.psn.edc_cdc)},
              {"cdc_cdc", link_json(cfg.psn.cdc_cdc)},
              {"cdc_ccp", link_json(cfg.psn.cdc_ccp)},
              {"edc_ccp", link_json(cfg.psn.edc_ccp)},
              {"edc_edc", link_json(cfg.psn.edc_edc)},
              {"ccp_ccp", link_json(cfg.psn.ccp_ccp)},
              {"seed", cfg.psn.seed}};
  j["nspr"] = {{"chain_len", range_json(cfg.nspr.chain_len)},
               {"vnf_cpu", range_json(cfg.nspr.vnf_cpu)},
               {"vnf_ram", range_json(cfg.nspr.vnf_ram)},
               {"vlink_bw", range_json(cfg.nspr.vlink_bw)},
               {"vlink_lat", range_json(cfg.nspr.vlink_lat)},
               {"e2e_lat", range_json(cfg.nspr.e2e_lat)},
               {"holding_mean", cfg.nspr.holding_mean}};
  j["arrival_rate"] = cfg.arrival_rate;
  j["horizon"] = cfg.horizon;
  json sim{{"algo", to_string(cfg.sim.algo)},
           {"seed", cfg.sim.seed},
           {"sample_interval", cfg.sim.sample_interval},
           {"timing", cfg.sim.timing},
           {"coherence_every", cfg.sim.coherence_every},
           {"p2c",
            {{"resample_attempts", cfg.sim.p2c.resample_attempts},
             {"backtrack_budget", cfg.sim.p2c.backtrack_budget},
             {"sample_choices", cfg.sim.p2c.sample_choices}}},
           {"exact",
            {{"hop_bound", cfg.sim.exact.hop_bound ? json(*cfg.sim.exact.hop_bound) : json()},
             {"time_budget_ms",
              cfg.sim.exact.time_budget_ms ? json(*cfg.sim.exact.time_budget_ms) : json()}}}};
  j["sim"] = std::move(sim);
  j["out"] = cfg.out_dir;
  j["exact_server_limit"] = cfg.exact_server_limit;
  if (cfg.sweep)
    j["sweep"] = {{"param", cfg.sweep->param},
                  {"values", cfg.sweep->values},
                  {"seeds", cfg.sweep->seeds}};
  return j;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot read " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config: " + path + ": " + e.what());
  }
  return config_from_json(j);
}

std::string config_hash(const ExperimentConfig& cfg) {
  json j = to_json(cfg);
  j.erase("out");  // the destination path is not part of the experiment identity
  return hex64(fnv1a64(j.dump()));
}

namespace {

Range scale_range(Range r, double f, int64_t min_hi) {
  Range out;
  out.lo = std::max<int64_t>(0, std::llround(static_cast<double>(r.lo) * f));
  out.hi = std::max<int64_t>(std::max(out.lo, min_hi),
                             std::llround(static_cast<double>(r.hi) * f));
  return out;
}

void scale_tier(TierServerSpec& t, double f) {
  t.cpu_cap = std::max<int64_t>(1, std::llround(static_cast<double>(t.cpu_cap) * f));
  t.ram_cap = std::max<int64_t>(1, std::llround(static_cast<double>(t.ram_cap) * f));
}

}  // namespace

ExperimentConfig apply_sweep_value(const ExperimentConfig& base, const std::string& param,
                                   double value) {
  ExperimentConfig cfg = base;
  cfg.sweep.reset();
  if (param == "arrival_rate") {
    cfg.arrival_rate = value;
  } else if (param == "capacity_scale") {
    if (!(value > 0)) fail("sweep.values", "capacity_scale must be > 0");
    scale_tier(cfg.psn.edc, value);
    scale_tier(cfg.psn.cdc, value);
    scale_tier(cfg.psn.ccp, value);
  } else if (param == "cpu_scale") {
    cfg.nspr.vnf_cpu = scale_range(base.nspr.vnf_cpu, value, 1);
  } else if (param == "ram_scale") {
    cfg.nspr.vnf_ram = scale_range(base.nspr.vnf_ram, value, 1);
  } else if (param == "e2e_scale") {
    cfg.nspr.e2e_lat = scale_range(base.nspr.e2e_lat, value, 0);
  } else if (param == "chain_len") {
    const auto n = static_cast<int64_t>(value);
    if (n < 1) fail("sweep.values", "chain_len must be >= 1");
    cfg.nspr.chain_len = {n, n};
  } else {
    fail("sweep.param",
         "unknown parameter '" + param +
             "' (valid: arrival_rate, capacity_scale, cpu_scale, ram_scale, e2e_scale, "
             "chain_len)");
  }
  return cfg;
}

const char* const kSummaryCsvHeader =
    "param,value,algo,seed,arrivals,accepts,acceptance_ratio,"
    "mean_util_cpu,mean_util_ram,mean_util_bw,mean_decision_us";

void write_summary_csv(const std::vector<SummaryRow>& rows, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << kSummaryCsvHeader << "\n";
  for (const SummaryRow& r : rows) {
    out << r.param << ',' << format_double(r.value) << ',' << r.algo << ',' << r.seed << ','
        << r.arrivals << ',' << r.accepts << ',';
    if (r.acceptance) out << format_double(*r.acceptance);
    out << ',' << format_double(r.mean_util_cpu) << ',' << format_double(r.mean_util_ram) << ','
        << format_double(r.mean_util_bw) << ',' << format_double(r.mean_decision_us) << "\n";
  }
}

namespace {

SummaryRow summarize(const SimResult& res, const std::string& param, double value,
                     uint64_t seed) {
  SummaryRow row;
  row.param = param;
  row.value = value;
  row.algo = res.series.algo;
  row.seed = seed;
  row.arrivals = res.state.arrivals;
  row.accepts = res.state.accepts;
  if (auto ratio = acceptance_ratio(res.state.accepts, res.state.arrivals))
    row.acceptance = ratio->value();
  const size_t all = static_cast<size_t>(Group::All);
  double cpu = 0, ram = 0, bw = 0;
  for (const MetricsSample& s : res.series.samples) {
    cpu += s.util.cpu[all].value();
    ram += s.util.ram[all].value();
    bw += s.util.bw[all].value();
  }
  const double n = res.series.samples.empty() ? 1.0 : double(res.series.samples.size());
  row.mean_util_cpu = cpu / n;
  row.mean_util_ram = ram / n;
  row.mean_util_bw = bw / n;
  double us = 0;
  for (const DecisionRecord& d : res.decisions) us += double(d.decision_us);
  row.mean_decision_us = res.decisions.empty() ? 0.0 : us / double(res.decisions.size());
  return row;
}

void write_final_state(const SimState& st, const std::string& path) {
  json actives = json::array();
  for (const auto& [id, slice] : st.active) actives.push_back(id);
  json j{{"clock", st.clock},     {"arrivals", st.arrivals}, {"accepts", st.accepts},
         {"rejects", st.rejects}, {"active", actives},       {"psn", to_json(st.psn)}};
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << j.dump(2) << "\n";
}

void write_compare_log(const CompareResult& cmp, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  auto entry = [](const DecisionRecord& d) {
    return json{{"accepted", d.accepted},
                {"cost", d.cost ? json(d.cost->total()) : json()},
                {"placement", d.placement ? to_json(*d.placement, d.cost) : json()},
                {"decision_us", d.decision_us}};
  };
  for (size_t i = 0; i < cmp.exact.decisions.size() && i < cmp.p2c.decisions.size(); ++i) {
    const DecisionRecord& e = cmp.exact.decisions[i];
    out << json{{"t", e.t}, {"nspr", e.nspr_id}, {"exact", entry(e)},
                {"p2c", entry(cmp.p2c.decisions[i])}}
               .dump()
        << "\n";
  }
}

void emit_result(const SimResult& res, const std::string& dir, const RunOptions& opts,
                 std::ostream& log) {
  const std::string algo = res.series.algo;
  export_csv(res.series, dir + "/metrics_" + algo + ".csv");
  export_jsonl(res.series, dir + "/metrics_" + algo + ".jsonl");
  if (opts.write_decisions) write_decision_log(res.decisions, dir + "/decisions_" + algo + ".jsonl");
  if (opts.write_final_state) write_final_state(res.state, dir + "/final_state_" + algo + ".json");
  const auto ratio = acceptance_ratio(res.state.accepts, res.state.arrivals);
  double us = 0;
  for (const DecisionRecord& d : res.decisions) us += double(d.decision_us);
  log << "[" << algo << "] arrivals=" << res.state.arrivals << " accepts=" << res.state.accepts
      << " rejects=" << res.state.rejects << " acceptance="
      << (ratio ? format_double(ratio->value()) : "n/a") << " mean_decision_us="
      << format_double(res.decisions.empty() ? 0.0 : us / double(res.decisions.size())) << "\n";
}

}  // namespace

std::vector<SummaryRow> run_experiment(const ExperimentConfig& cfg, std::ostream& log,
                                       const RunOptions& opts) {
  cfg.validate();
  fs::create_directories(cfg.out_dir);

  Psn psn = build_psn(cfg.psn);
  log << "psn: " << psn.dc_index.size() << " DCs, " << psn.servers.size() << " servers, "
      << psn.switches.size() << " switches, " << psn.links.size() << " links\n";

  EventTrace trace =
      generate_trace(cfg.nspr, cfg.arrival_rate, cfg.horizon, psn, derive_seed(cfg.sim.seed, 1));

  const std::string hash = config_hash(cfg);
  if (opts.write_inputs) {
    std::ofstream cj(cfg.out_dir + "/config.json", std::ios::binary);
    if (!cj) throw IoError("cannot write " + cfg.out_dir + "/config.json");
    cj << to_json(cfg).dump(2) << "\n";
    save_psn(psn, cfg.out_dir + "/psn.json");
    save_trace(trace, cfg.out_dir + "/trace.jsonl");
  }

  std::vector<SummaryRow> rows;
  const std::string param = cfg.sweep ? cfg.sweep->param : "-";
  if (cfg.sim.algo == Algo::Both) {
    CompareResult cmp = replay_compare(psn, trace, cfg.sim);
    cmp.exact.series.config_hash = hash;
    cmp.p2c.series.config_hash = hash;
    emit_result(cmp.exact, cfg.out_dir, opts, log);
    emit_result(cmp.p2c, cfg.out_dir, opts, log);
    if (opts.write_decisions) write_compare_log(cmp, cfg.out_dir + "/compare_decisions.jsonl");
    rows.push_back(summarize(cmp.exact, param, 0, cfg.sim.seed));
    rows.push_back(summarize(cmp.p2c, param, 0, cfg.sim.seed));
  } else {
    SimResult res = run_simulation(psn, trace, cfg.sim);
    res.series.config_hash = hash;
    emit_result(res, cfg.out_dir, opts, log);
    rows.push_back(summarize(res, param, 0, cfg.sim.seed));
  }
  return rows;
}

std::vector<SummaryRow> run_sweep(const ExperimentConfig& base, const SweepSpec& sweep,
                                  std::ostream& log) {
  std::vector<SummaryRow> rows;
  RunOptions opts;
  opts.write_inputs = false;
  opts.write_decisions = false;
  opts.write_final_state = false;
  for (double value : sweep.values) {
    for (uint64_t seed : sweep.seeds) {
      ExperimentConfig cfg = apply_sweep_value(base, sweep.param, value);
      cfg.sim.seed = seed;
      cfg.out_dir = base.out_dir + "/" + sweep.param + "_" + format_double(value) + "_s" +
                    std::to_string(seed);
      log << "sweep " << sweep.param << "=" << format_double(value) << " seed=" << seed << "\n";
      for (SummaryRow row : run_experiment(cfg, log, opts)) {
        row.param = sweep.param;
        row.value = value;
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"requirements", "critical-load", "node-capacity",
                                              "nspr-size"};
  return names;
}

ExperimentConfig desk_base_config() {
  ExperimentConfig cfg;
  cfg.psn.n_edc = 2;
  cfg.psn.n_cdc = 1;
  cfg.psn.n_ccp = 1;
  cfg.psn.servers_per_edc = 2;
  cfg.psn.servers_per_cdc = 4;
  cfg.psn.servers_per_ccp = 6;
  cfg.psn.edc = {8, 16, 1, 1};
  cfg.psn.cdc = {16, 32, 1, 1};
  cfg.psn.ccp = {32, 64, 1, 1};
  cfg.psn.intra_dc = {200, 1};
  cfg.psn.edc_cdc = {100, 10};
  cfg.psn.cdc_cdc = {200, 20};
  cfg.psn.cdc_ccp = {200, 20};
  cfg.psn.edc_ccp = {100, 30};
  cfg.psn.edc_edc = {100, 10};
  cfg.psn.ccp_ccp = {200, 20};
  cfg.nspr.chain_len = {1, 3};
  cfg.nspr.vnf_cpu = {1, 4};
  cfg.nspr.vnf_ram = {1, 8};
  cfg.nspr.vlink_bw = {1, 10};
  cfg.nspr.vlink_lat = {20, 80};
  cfg.nspr.e2e_lat = {40, 160};
  cfg.nspr.holding_mean = 10.0;
  cfg.arrival_rate = 1.5;
  cfg.horizon = 50.0;
  cfg.sim.algo = Algo::Both;
  cfg.sim.sample_interval = 5.0;
  cfg.sim.timing = true;
  return cfg;
}

ExperimentConfig demo_base_config() {
  ExperimentConfig cfg;  // PsnConfig defaults are the demo substrate
  cfg.nspr.chain_len = {2, 5};
  cfg.nspr.vnf_cpu = {1, 8};
  cfg.nspr.vnf_ram = {2, 16};
  cfg.nspr.vlink_bw = {5, 50};
  cfg.nspr.vlink_lat = {30, 200};
  cfg.nspr.e2e_lat = {100, 500};
  cfg.nspr.holding_mean = 10.0;
  cfg.arrival_rate = 300.0;
  cfg.horizon = 15.0;
  cfg.sim.algo = Algo::P2c;
  cfg.sim.sample_interval = 1.0;
  cfg.sim.timing = true;
  return cfg;
}

namespace {

std::vector<SweepSpec> preset_sweeps(const std::string& name, bool demo, uint64_t base_seed) {
  std::vector<uint64_t> seeds;
  for (uint64_t i = 0; i < (demo ? 2u : 5u); ++i) seeds.push_back(base_seed + i + 1);
  std::vector<SweepSpec> sweeps;
  if (name == "requirements") {
    sweeps.push_back({"cpu_scale", {0.5, 1.0, 1.5, 2.0}, seeds});
    sweeps.push_back({"ram_scale", {0.5, 1.0, 1.5, 2.0}, seeds});
    sweeps.push_back({"e2e_scale", {0.5, 0.75, 1.0, 1.5}, seeds});
  } else if (name == "critical-load") {
    sweeps.push_back({"arrival_rate",
                      demo ? std::vector<double>{150, 300, 600, 900}
                           : std::vector<double>{0.5, 1, 2, 4, 8},
                      seeds});
  } else if (name == "node-capacity") {
    sweeps.push_back({"capacity_scale", {0.5, 0.75, 1.0, 1.5, 2.0}, seeds});
  } else if (name == "nspr-size") {
    sweeps.push_back({"chain_len", {1, 2, 3, 4, 5, 6}, seeds});
  }
  return sweeps;
}

}  // namespace

int cmd_run(const ExperimentConfig& cfg, std::ostream& log) {
  if (cfg.sweep) {
    SweepSpec sweep = *cfg.sweep;
    std::vector<SummaryRow> rows = run_sweep(cfg, sweep, log);
    fs::create_directories(cfg.out_dir);
    write_summary_csv(rows, cfg.out_dir + "/summary.csv");
    log << "summary: " << cfg.out_dir << "/summary.csv (" << rows.size() << " rows)\n";
  } else {
    run_experiment(cfg, log);
  }
  return 0;
}

int cmd_compare(const ExperimentConfig& cfg, std::ostream& log) {
  ExperimentConfig c = cfg;
  c.sim.algo = Algo::Both;
  c.sweep.reset();
  run_experiment(c, log);
  return 0;
}

int cmd_preset(const std::string& name, const std::string& scale, const std::string& out_dir,
               uint64_t base_seed, std::ostream& log) {
  const auto& names = preset_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    std::string valid;
    for (const std::string& n : names) valid += (valid.empty() ? "" : ", ") + n;
    throw ConfigError("preset: unknown name '" + name + "' (valid: " + valid + ")");
  }
  if (scale != "desk" && scale != "demo" && scale != "both")
    throw ConfigError("preset: scale must be desk, demo or both");

  for (const char* sc : {"desk", "demo"}) {
    if (scale != "both" && scale != sc) continue;
    const bool demo = std::string(sc) == "demo";
    ExperimentConfig base = demo ? demo_base_config() : desk_base_config();
    base.out_dir = out_dir + "/" + name + "/" + sc;
    log << "preset " << name << " @ " << sc << " -> " << base.out_dir << "\n";
    std::vector<SummaryRow> rows;
    for (const SweepSpec& sweep : preset_sweeps(name, demo, base_seed)) {
      auto part = run_sweep(base, sweep, log);
      rows.insert(rows.end(), part.begin(), part.end());
    }
    fs::create_directories(base.out_dir);
    write_summary_csv(rows, base.out_dir + "/summary.csv");
    log << "summary: " << base.out_dir << "/summary.csv (" << rows.size() << " rows)\n";
  }
  return 0;
}

int cmd_export(const ExperimentConfig& cfg, const std::string& what, const std::string& format,
               std::ostream& log) {
  cfg.validate();
  fs::create_directories(cfg.out_dir);
  Psn psn = build_psn(cfg.psn);
  auto out_path = [&](const char* stem, const std::string& ext) {
    return cfg.out_dir + "/" + stem + "." + ext;
  };
  if (what == "psn") {
    if (format == "json")
      save_psn(psn, out_path("psn", "json"));
    else if (format == "dot")
      export_dot(psn, out_path("psn", "dot"));
    else
      throw ConfigError("export: psn supports formats json, dot");
  } else if (what == "trace") {
    if (format != "jsonl") throw ConfigError("export: trace supports format jsonl");
    EventTrace trace =
        generate_trace(cfg.nspr, cfg.arrival_rate, cfg.horizon, psn, derive_seed(cfg.sim.seed, 1));
    save_trace(trace, out_path("trace", "jsonl"));
  } else if (what == "nspr") {
    std::mt19937_64 rng(derive_seed(cfg.sim.seed, 3));
    Nspr nspr = generate_nspr(cfg.nspr, psn, rng);
    if (format == "json") {
      std::ofstream out(out_path("nspr", "json"), std::ios::binary);
      if (!out) throw IoError("cannot write nspr.json");
      out << to_json(nspr).dump(2) << "\n";
    } else if (format == "dot") {
      export_dot(nspr, out_path("nspr", "dot"));
    } else {
      throw ConfigError("export: nspr supports formats json, dot");
    }
  } else {
    throw ConfigError("export: unknown target '" + what + "' (valid: psn, trace, nspr)");
  }
  log << "exported " << what << " as " << format << " into " << cfg.out_dir << "\n";
  return 0;
}

}  // namespace nsp
