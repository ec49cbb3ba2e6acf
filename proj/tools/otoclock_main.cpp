#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "otoclock/acceptance.hpp"
#include "otoclock/config.hpp"
#include "otoclock/presets.hpp"
#include "otoclock/runner.hpp"

namespace {

int cmd_run(const std::string& preset, const std::string& config_path,
            const std::string& experiment, long long seed, const std::string& out,
            const std::string& format, int threads, int chain_l) {
  otoclock::ExperimentConfig cfg;
  if (!config_path.empty())
    cfg = otoclock::load_config_file(config_path);
  else if (!preset.empty())
    cfg = otoclock::preset_config(preset);
  else {
    std::fprintf(stderr, "run: choose a base with --preset or --config\n");
    return 2;
  }

  if (!experiment.empty()) cfg.experiment = otoclock::experiment_from_string(experiment);
  if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
  if (!out.empty()) cfg.out = out;
  if (!format.empty()) cfg.format = format;
  if (threads > 0) cfg.threads = threads;
  if (chain_l > 0) {
    // resize the spin chain and keep the probes at the same relative spots
    cfg.heisenberg_l = chain_l;
    cfg.o1 = "sigma_z@1";
    cfg.o2 = "sigma_z@" + std::to_string(chain_l - 2);
  }

  const std::string written = otoclock::run_and_write(cfg);
  if (!written.empty()) std::fprintf(stderr, "wrote %s\n", written.c_str());
  return 0;
}

int cmd_verify(int chain_l, long long seed) {
  otoclock::acceptance::SuiteOptions opt;
  if (chain_l > 0) opt.chain_l = chain_l;
  if (seed >= 0) opt.seed = static_cast<std::uint64_t>(seed);

  const auto results = otoclock::acceptance::run_all(opt);
  int failed = 0;
  for (const auto& r : results) {
    std::printf("[%s] %-55s %7.2fs  %s\n", r.pass ? "PASS" : "FAIL",
                r.name.c_str(), r.seconds, r.detail.c_str());
    if (!r.pass) ++failed;
  }
  std::printf("%zu/%zu criteria passed\n", results.size() - failed, results.size());
  return failed == 0 ? 0 : 1;
}

int cmd_presets() {
  for (const auto& p : otoclock::preset_list())
    std::printf("%-8s %s\n", p.name.c_str(), p.summary.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"clock-interferometer OTOC toolkit"};
  app.require_subcommand(1);

  std::string preset, config_path, experiment, out, format;
  long long seed = -1;
  int threads = 0, chain_l = 0;

  auto* run = app.add_subcommand("run", "run one experiment from a preset or config file");
  auto* opt_preset = run->add_option("--preset", preset, "named preset (see `presets`)");
  run->add_option("--config", config_path, "JSON config file")->excludes(opt_preset);
  run->add_option("--experiment", experiment,
                  "override the experiment kind (oracle, protocol, switch_sweep, "
                  "pulse_sweep, spectra, ring_check, loschmidt)");
  run->add_option("--seed", seed, "override the RNG seed");
  run->add_option("--out", out, "output file (default: stdout)");
  run->add_option("--format", format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  run->add_option("--threads", threads, "OpenMP thread cap (0 = library default)");
  run->add_option("--L", chain_l, "spin-chain length; repositions the probe operators")
      ->check(CLI::Range(4, 14));

  int v_chain_l = 0;
  long long v_seed = -1;
  auto* verify = app.add_subcommand("verify", "run the acceptance checks");
  verify->add_option("--L", v_chain_l, "chain length for the switch-error check")
      ->check(CLI::Range(4, 14));
  verify->add_option("--seed", v_seed, "suite RNG seed");

  auto* presets = app.add_subcommand("presets", "list the built-in presets");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed())
      return cmd_run(preset, config_path, experiment, seed, out, format, threads, chain_l);
    if (verify->parsed()) return cmd_verify(v_chain_l, v_seed);
    if (presets->parsed()) return cmd_presets();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
