#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "nsp/experiment.hpp"

using namespace nsp;
namespace fs = std::filesystem;

namespace {

ExperimentConfig tiny_config(const std::string& out) {
  ExperimentConfig cfg = desk_base_config();
  cfg.horizon = 10.0;
  cfg.arrival_rate = 1.0;
  cfg.sim.timing = false;
  cfg.out_dir = out;
  return cfg;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("config parsing: defaults, overrides and field-path errors") {
  using nlohmann::json;
  ExperimentConfig cfg = config_from_json(json::object());
  CHECK(cfg.psn.n_edc == 15);  // demo substrate by default

  json j{{"psn", {{"n_edc", 2}, {"n_cdc", 1}, {"n_ccp", 1}}},
         {"nspr", {{"chain_len", json::array({2, 4})}}},
         {"arrival_rate", 2.5},
         {"sim", {{"algo", "p2c"}, {"seed", 7}}}};
  cfg = config_from_json(j);
  CHECK(cfg.psn.n_edc == 2);
  CHECK(cfg.nspr.chain_len.lo == 2);
  CHECK(cfg.nspr.chain_len.hi == 4);
  CHECK(cfg.arrival_rate == 2.5);
  CHECK(cfg.sim.algo == Algo::P2c);
  CHECK(cfg.sim.seed == 7);

  auto expect_error = [](const json& bad, const char* needle) {
    try {
      config_from_json(bad);
      FAIL_CHECK("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };
  expect_error(json{{"psn", {{"n_edc", "many"}}}}, "psn.n_edc");
  expect_error(json{{"psn", {{"bogus", 1}}}}, "psn.bogus");
  expect_error(json{{"sim", {{"algo", "magic"}}}}, "sim.algo");
  expect_error(json{{"nspr", {{"chain_len", json::array({3})}}}}, "nspr.chain_len");
  expect_error(json{{"sweep", {{"param", "nope"}, {"values", {1.0}}, {"seeds", {1}}}}},
               "sweep.param");
  expect_error(json{{"arrival_rate", -1.0}}, "arrival_rate");
}

TEST_CASE("exact solver guardrail on large substrates") {
  using nlohmann::json;
  json j{{"sim", {{"algo", "exact"}}}};  // default psn has 1008 servers
  CHECK_THROWS_AS(config_from_json(j), ConfigError);
  j["exact_server_limit"] = 2000;
  CHECK_NOTHROW(config_from_json(j));
}

TEST_CASE("config json round trip and stable hash") {
  ExperimentConfig cfg = desk_base_config();
  cfg.sweep = SweepSpec{"arrival_rate", {1.0, 2.0}, {1, 2, 3}};
  ExperimentConfig back = config_from_json(to_json(cfg));
  CHECK(to_json(back).dump() == to_json(cfg).dump());
  CHECK(config_hash(cfg) == config_hash(back));
  back.arrival_rate += 1;
  CHECK(config_hash(cfg) != config_hash(back));
}

TEST_CASE("sweep values apply to the right knobs") {
  ExperimentConfig base = desk_base_config();
  CHECK(apply_sweep_value(base, "arrival_rate", 4.0).arrival_rate == 4.0);
  auto cap = apply_sweep_value(base, "capacity_scale", 2.0);
  CHECK(cap.psn.edc.cpu_cap == 2 * base.psn.edc.cpu_cap);
  auto chain = apply_sweep_value(base, "chain_len", 5.0);
  CHECK(chain.nspr.chain_len.lo == 5);
  CHECK(chain.nspr.chain_len.hi == 5);
  auto cpu = apply_sweep_value(base, "cpu_scale", 2.0);
  CHECK(cpu.nspr.vnf_cpu.hi == 2 * base.nspr.vnf_cpu.hi);
  CHECK_THROWS_AS(apply_sweep_value(base, "warp", 1.0), ConfigError);
}

TEST_CASE("run_experiment writes the expected files deterministically") {
  fs::remove_all("exp_a");
  fs::remove_all("exp_b");
  ExperimentConfig cfg = tiny_config("exp_a");
  cfg.sim.algo = Algo::Both;
  std::ostringstream log;
  run_experiment(cfg, log);
  for (const char* f :
       {"config.json", "psn.json", "trace.jsonl", "metrics_exact.csv", "metrics_p2c.csv",
        "metrics_exact.jsonl", "metrics_p2c.jsonl", "decisions_exact.jsonl",
        "decisions_p2c.jsonl", "final_state_exact.json", "final_state_p2c.json",
        "compare_decisions.jsonl"}) {
    CHECK(fs::exists(fs::path("exp_a") / f));
  }
  CHECK(log.str().find("psn: 4 DCs") != std::string::npos);

  cfg.out_dir = "exp_b";
  std::ostringstream log2;
  run_experiment(cfg, log2);
  for (const char* f : {"metrics_exact.csv", "metrics_p2c.csv", "trace.jsonl",
                        "decisions_exact.jsonl", "decisions_p2c.jsonl"}) {
    CHECK(slurp(std::string("exp_a/") + f) == slurp(std::string("exp_b/") + f));
  }
}

TEST_CASE("demo preset summary line reports the full substrate") {
  ExperimentConfig cfg;  // demo psn
  cfg.out_dir = "exp_demo";
  cfg.arrival_rate = 0.2;
  cfg.horizon = 5.0;
  cfg.sim.algo = Algo::P2c;
  fs::remove_all("exp_demo");
  std::ostringstream log;
  run_experiment(cfg, log);
  CHECK(log.str().find("psn: 21 DCs, 1008 servers") != std::string::npos);
}

TEST_CASE("sweep runner emits a summary csv") {
  fs::remove_all("exp_sweep");
  ExperimentConfig cfg = tiny_config("exp_sweep");
  cfg.sim.algo = Algo::P2c;
  cfg.sweep = SweepSpec{"arrival_rate", {0.5, 1.0}, {1, 2}};
  std::ostringstream log;
  cmd_run(cfg, log);
  REQUIRE(fs::exists("exp_sweep/summary.csv"));
  std::istringstream lines(slurp("exp_sweep/summary.csv"));
  std::string line;
  std::getline(lines, line);
  CHECK(line == kSummaryCsvHeader);
  size_t rows = 0;
  while (std::getline(lines, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 4);  // 2 values x 2 seeds, one algo
}

TEST_CASE("rate zero leaves the acceptance cell empty") {
  fs::remove_all("exp_zero");
  ExperimentConfig cfg = tiny_config("exp_zero");
  cfg.sim.algo = Algo::P2c;
  cfg.sweep = SweepSpec{"arrival_rate", {0.0}, {1}};
  std::ostringstream log;
  cmd_run(cfg, log);
  std::istringstream lines(slurp("exp_zero/summary.csv"));
  std::string header, row;
  std::getline(lines, header);
  REQUIRE(std::getline(lines, row));
  // param,value,algo,seed,arrivals,accepts,acceptance_ratio,...
  std::vector<std::string> cells;
  std::stringstream ss(row);
  for (std::string c; std::getline(ss, c, ',');) cells.push_back(c);
  CHECK(cells[4] == "0");
  CHECK(cells[6].empty());
}

TEST_CASE("preset registry matches the four demonstration aspects") {
  const auto& names = preset_names();
  REQUIRE(names.size() == 4);
  CHECK(names[0] == "requirements");
  CHECK(names[1] == "critical-load");
  CHECK(names[2] == "node-capacity");
  CHECK(names[3] == "nspr-size");
  std::ostringstream log;
  CHECK_THROWS_AS(cmd_preset("warp-speed", "desk", "exp_p", 1, log), ConfigError);
  try {
    cmd_preset("warp-speed", "desk", "exp_p", 1, log);
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("critical-load") != std::string::npos);
  }
  CHECK_THROWS_AS(cmd_preset("requirements", "galaxy", "exp_p", 1, log), ConfigError);
}

TEST_CASE("export subcommand produces parseable artifacts") {
  fs::remove_all("exp_export");
  ExperimentConfig cfg = tiny_config("exp_export");
  std::ostringstream log;
  cmd_export(cfg, "psn", "dot", log);
  cmd_export(cfg, "psn", "json", log);
  cmd_export(cfg, "nspr", "dot", log);
  cmd_export(cfg, "trace", "jsonl", log);
  CHECK_THROWS_AS(cmd_export(cfg, "psn", "yaml", log), ConfigError);
  CHECK_THROWS_AS(cmd_export(cfg, "flux", "json", log), ConfigError);

  // parse-back: dot node/edge counts match the substrate
  Psn psn = build_psn(cfg.psn);
  const std::string dot = slurp("exp_export/psn.dot");
  size_t nodes = 0, edges = 0, pos = 0;
  while ((pos = dot.find("shape=", pos)) != std::string::npos) {
    ++nodes;
    pos += 6;
  }
  pos = 0;
  while ((pos = dot.find(" -- ", pos)) != std::string::npos) {
    ++edges;
    pos += 4;
  }
  CHECK(nodes == psn.servers.size() + psn.switches.size());
  CHECK(edges == psn.links.size());

  Psn loaded = load_psn("exp_export/psn.json");
  CHECK(to_json(loaded).dump() == to_json(psn).dump());
}
