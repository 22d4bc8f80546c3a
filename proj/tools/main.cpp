#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "ringgyro/errors.hpp"
#include "ringgyro/experiment_config.hpp"
#include "ringgyro/experiments.hpp"

namespace {

constexpr int kConfigExit = 2;
constexpr int kBlowUpExit = 3;
constexpr int kRuntimeExit = 1;

struct Options {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::optional<unsigned> threads;
  bool print_config = false;
};

int run(ringgyro::Experiment experiment, const Options& opt) {
  using namespace ringgyro;
  ExperimentConfig cfg = opt.config.empty() ? ExperimentConfig::defaults(experiment)
                                            : load_experiment_config(opt.config, experiment);
  if (opt.seed) cfg.master_seed = *opt.seed;
  if (opt.threads) cfg.threads = *opt.threads;
  const auto out_dir = resolve_out_dir(opt.out, cfg);
  cfg.out_dir = out_dir.string();
  cfg.validate();
  if (opt.print_config) {
    std::cout << cfg.echo_text();
    return 0;
  }
  const RunSummary s = run_experiment(cfg, out_dir);
  for (const auto& w : s.warnings) std::cerr << "warning: " << w << '\n';
  for (const auto& p : s.outputs) std::cout << p.string() << '\n';
  std::cerr << to_string(experiment) << " finished in " << s.wall_time_seconds << " s\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Matter-wave ring gyroscope simulations"};
  app.require_subcommand(1);
  Options opt;
  std::optional<ringgyro::Experiment> chosen;

  const ringgyro::Experiment all[] = {
      ringgyro::Experiment::barrier_fisher,  ringgyro::Experiment::ring_sweep, ringgyro::Experiment::pretwist_sweep,
      ringgyro::Experiment::two_mode_curves, ringgyro::Experiment::quasiprob,  ringgyro::Experiment::theta_opt,
      ringgyro::Experiment::barrier_tune,
  };
  const char* help[] = {
      "Fisher information of two packets colliding on a barrier",
      "Single-loop (or barrier-split) sensitivity over a g0 list",
      "Double-loop pre-twist sensitivity over a g0 list",
      "Two-mode closed form and two-mode TW pre-twist curves over chi T",
      "Two-mode quasi-probability clouds and moment table",
      "Numerical optimisation of the pre-twist angle",
      "Barrier height for 50% reflection",
  };
  for (std::size_t i = 0; i < std::size(all); ++i) {
    auto* sub = app.add_subcommand(ringgyro::to_string(all[i]), help[i]);
    sub->add_option("--config", opt.config, "Flat key = value config file")->check(CLI::ExistingFile);
    sub->add_option("--seed", opt.seed, "Master seed (overrides the config)");
    sub->add_option("--out", opt.out, "Output directory");
    sub->add_option("--threads", opt.threads, "Worker threads, 0 = all cores");
    sub->add_flag("--print-config", opt.print_config, "Print the resolved config and exit");
    const auto e = all[i];
    sub->callback([&chosen, e] { chosen = e; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigExit;
  }

  try {
    return run(*chosen, opt);
  } catch (const ringgyro::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigExit;
  } catch (const ringgyro::NumericalBlowUp& e) {
    std::cerr << "numerical blow-up: " << e.what() << '\n';
    return kBlowUpExit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntimeExit;
  }
}
