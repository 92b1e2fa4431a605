// Command-line front end: subcommands simulate, verify-theorem, verify-lemma,
// verify-scaling, and mms over a shared INI configuration.

#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>

#include "CLI11.hpp"
#include "clayer/config.hpp"
#include "clayer/driver.hpp"
#include "clayer/integrator.hpp"

namespace {

struct CommonOpts {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  bool quiet = false;
};

void attach(CLI::App* sub, CommonOpts* opts) {
  sub->add_option("--config", opts->config_path, "INI configuration file")
      ->check(CLI::ExistingFile);
  sub->add_option("--seed", opts->seed, "override [run] seed");
  sub->add_option("--out", opts->out_dir, "override [run] output_dir");
  sub->add_flag("--quiet", opts->quiet, "suppress progress output");
}

clayer::RunConfig resolve(const CommonOpts& opts) {
  clayer::RunConfig cfg;
  if (!opts.config_path.empty()) {
    cfg = clayer::parse_config_file(opts.config_path);
  } else {
    clayer::validate_config(cfg);
  }
  if (opts.seed) cfg.seed = *opts.seed;
  if (opts.out_dir) cfg.output_dir = *opts.out_dir;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pseudo-spectral channel solver and verification harness for a "
               "relativistic magnetohydrodynamic boundary layer"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::string regime_choice = "both";

  CLI::App* sub_simulate = app.add_subcommand("simulate", "time-march and write reports");
  CLI::App* sub_theorem = app.add_subcommand(
      "verify-theorem", "time-march and gate on smallness, master inequality, and decay");
  CLI::App* sub_lemma = app.add_subcommand(
      "verify-lemma", "check the weighted product law and companion inequalities");
  CLI::App* sub_scaling = app.add_subcommand(
      "verify-scaling", "check the boundary-layer rescaling term orders and maps");
  CLI::App* sub_mms = app.add_subcommand(
      "mms", "manufactured-solution temporal and spatial convergence studies");

  for (CLI::App* sub : {sub_simulate, sub_theorem, sub_lemma, sub_scaling, sub_mms}) {
    attach(sub, &opts);
  }
  sub_scaling->add_option("--regime", regime_choice, "prandtl, hartmann, or both")
      ->check(CLI::IsMember({"prandtl", "hartmann", "both"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return clayer::kExitConfig;
  }

  std::ostream null_stream(nullptr);

  try {
    clayer::RunConfig cfg = resolve(opts);
    std::ostream& log = opts.quiet ? null_stream : std::cout;
    if (sub_simulate->parsed()) return clayer::run_simulate(cfg, log);
    if (sub_theorem->parsed()) return clayer::run_verify_theorem(cfg, log);
    if (sub_lemma->parsed()) return clayer::run_verify_lemma(cfg, log);
    if (sub_scaling->parsed()) return clayer::run_verify_scaling(cfg, log, regime_choice);
    if (sub_mms->parsed()) return clayer::run_mms(cfg, log);
    std::cerr << "error: no subcommand selected\n";
    return clayer::kExitConfig;
  } catch (const clayer::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return clayer::kExitConfig;
  } catch (const clayer::DivergenceError& e) {
    std::cerr << "divergence: " << e.what() << "\n";
    return clayer::kExitDiverged;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return clayer::kExitConfig;
  }
}
