#pragma once

// Experiment configuration, the run pipeline behind the CLI subcommands,
// parameter sweeps, and the built-in scenario presets.

#include <iosfwd>

#include <nlohmann/json_fwd.hpp>

#include "nsp/exports.hpp"
#include "nsp/sim.hpp"

namespace nsp {

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct SweepSpec {
  std::string param;            // arrival_rate | capacity_scale | cpu_scale | ram_scale |
                                // e2e_scale | chain_len
  std::vector<double> values;
  std::vector<uint64_t> seeds;  // one replication per seed, distinct
};

struct ExperimentConfig {
  PsnConfig psn;
  NsprParams nspr;
  double arrival_rate = 1.0;  // requests per time unit
  double horizon = 100.0;     // time units
  SimConfig sim;
  std::string out_dir = "out";
  int32_t exact_server_limit = 64;  // guardrail: refuse the exact solver above this size
  std::optional<SweepSpec> sweep;

  void validate() const;  // throws ConfigError with a field path
};

ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ExperimentConfig& cfg);
ExperimentConfig load_config_file(const std::string& path);
std::string config_hash(const ExperimentConfig& cfg);

// Applies one sweep parameter; throws ConfigError on an unknown name.
ExperimentConfig apply_sweep_value(const ExperimentConfig& base, const std::string& param,
                                   double value);

struct SummaryRow {
  std::string param;  // "-" outside sweeps
  double value = 0;
  std::string algo;
  uint64_t seed = 0;
  uint64_t arrivals = 0, accepts = 0;
  std::optional<double> acceptance;
  double mean_util_cpu = 0, mean_util_ram = 0, mean_util_bw = 0;
  double mean_decision_us = 0;
};

extern const char* const kSummaryCsvHeader;
void write_summary_csv(const std::vector<SummaryRow>& rows, const std::string& path);

struct RunOptions {
  bool write_inputs = true;       // psn.json, trace.jsonl, config.json
  bool write_decisions = true;    // decisions_<algo>.jsonl (+ compare log for both)
  bool write_final_state = true;  // final_state_<algo>.json
};

// One experiment at one configuration: builds the substrate, generates the
// trace, runs the selected algorithm(s), writes outputs into cfg.out_dir.
std::vector<SummaryRow> run_experiment(const ExperimentConfig& cfg, std::ostream& log,
                                       const RunOptions& opts = {});

// Sweep runner shared by cmd_run and the presets; returns one row per
// (value, seed, algo) and writes summary.csv under cfg.out_dir.
std::vector<SummaryRow> run_sweep(const ExperimentConfig& base, const SweepSpec& sweep,
                                  std::ostream& log);

// Scenario presets (desk scale runs both algorithms; demo scale runs p2c):
//   requirements  - scales request CPU/RAM demands and the E2E budget
//   critical-load - sweeps the arrival rate
//   node-capacity - scales hosting-node capacities
//   nspr-size     - sweeps the chain length
const std::vector<std::string>& preset_names();
ExperimentConfig desk_base_config();
ExperimentConfig demo_base_config();

int cmd_run(const ExperimentConfig& cfg, std::ostream& log);
int cmd_compare(const ExperimentConfig& cfg, std::ostream& log);
int cmd_preset(const std::string& name, const std::string& scale, const std::string& out_dir,
               uint64_t base_seed, std::ostream& log);
int cmd_export(const ExperimentConfig& cfg, const std::string& what, const std::string& format,
               std::ostream& log);

}  // namespace nsp
