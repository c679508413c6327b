// slicesim: online network-slice placement simulator.
//
// Subcommands: run, compare, preset, export. Exit codes: 0 success,
// 1 configuration error, 2 runtime invariant failure.

#include <iostream>

#include <CLI11.hpp>

#include "nsp/experiment.hpp"

namespace {

struct CommonFlags {
  std::string config_path;
  std::string algo;
  std::string out;
  int64_t seed = -1;
};

nsp::ExperimentConfig resolve_config(const CommonFlags& flags) {
  nsp::ExperimentConfig cfg =
      flags.config_path.empty() ? nsp::desk_base_config() : nsp::load_config_file(flags.config_path);
  if (!flags.algo.empty()) {
    auto a = nsp::algo_from_string(flags.algo);
    if (!a) throw nsp::ConfigError("config: --algo: expected one of exact, p2c, both");
    cfg.sim.algo = *a;
  }
  if (!flags.out.empty()) cfg.out_dir = flags.out;
  if (flags.seed >= 0) cfg.sim.seed = static_cast<uint64_t>(flags.seed);
  cfg.validate();
  return cfg;
}

void add_common(CLI::App* cmd, CommonFlags& flags, bool with_algo = true) {
  cmd->add_option("--config", flags.config_path, "experiment config file (JSON)");
  if (with_algo) cmd->add_option("--algo", flags.algo, "placement algorithm: exact, p2c or both");
  cmd->add_option("--out", flags.out, "output directory");
  cmd->add_option("--seed", flags.seed, "master seed override");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"online network-slice placement simulator"};
  app.require_subcommand(1);

  CommonFlags run_flags, compare_flags, export_flags;
  std::string preset_name, preset_scale = "both", preset_out = "out", export_what = "psn",
              export_format = "json";
  int64_t preset_seed = 0;

  CLI::App* run = app.add_subcommand("run", "run one experiment (or the config's sweep)");
  add_common(run, run_flags);

  CLI::App* compare = app.add_subcommand("compare", "run both algorithms on the identical trace");
  add_common(compare, compare_flags, false);

  CLI::App* preset = app.add_subcommand("preset", "run a built-in scenario sweep");
  preset->add_option("name", preset_name, "one of: requirements, critical-load, node-capacity, nspr-size")
      ->required();
  preset->add_option("--scale", preset_scale, "desk, demo or both (default both)");
  preset->add_option("--out", preset_out, "output directory");
  preset->add_option("--seed", preset_seed, "base seed for replications");

  CLI::App* exp = app.add_subcommand("export", "export substrate/trace/request views");
  add_common(exp, export_flags, false);
  exp->add_option("--what", export_what, "psn, trace or nspr");
  exp->add_option("--format", export_format, "json, jsonl or dot");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return nsp::cmd_run(resolve_config(run_flags), std::cout);
    if (compare->parsed()) return nsp::cmd_compare(resolve_config(compare_flags), std::cout);
    if (preset->parsed())
      return nsp::cmd_preset(preset_name, preset_scale, preset_out,
                             static_cast<uint64_t>(preset_seed), std::cout);
    if (exp->parsed())
      return nsp::cmd_export(resolve_config(export_flags), export_what, export_format, std::cout);
  } catch (const nsp::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const nsp::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "invariant failure: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
