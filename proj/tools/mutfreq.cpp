#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mutfreq/cli_app.hpp"

namespace {

mutfreq::Config load_config(const std::string& path,
                            const std::vector<std::string>& overrides) {
  mutfreq::Config cfg = path.empty() ? mutfreq::Config::from_text("")
                                     : mutfreq::Config::from_file(path);
  for (const auto& assignment : overrides) cfg.set(assignment);
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-type birth-death mutation model: simulators and "
               "analytic distributions"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  std::int64_t reps = -1;
  std::int64_t seed = -1;
  int threads = -1;

  auto add_config_options = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "sectioned key=value file");
    cmd->add_option("--set", overrides,
                    "override a config value, section.key=value");
  };

  CLI::App* simulate = app.add_subcommand(
      "simulate", "run replicate simulations and write CSV results");
  add_config_options(simulate);
  simulate->add_option("--reps", reps, "override run.reps");
  simulate->add_option("--seed", seed, "override run.seed");
  simulate->add_option("--threads", threads, "override run.threads");

  CLI::App* dist = app.add_subcommand(
      "dist", "evaluate an analytic distribution and write CSV + summary");
  add_config_options(dist);

  mutfreq::cli::CompareArgs cmp;
  CLI::App* compare = app.add_subcommand(
      "compare", "compare an empirical CSV against a theory CSV");
  compare->add_option("--empirical", cmp.empirical_path)->required();
  compare->add_option("--theory", cmp.theory_path)->required();
  compare->add_option("--kmin", cmp.kmin)->required();
  compare->add_option("--kmax", cmp.kmax)->required();
  compare->add_option("--se-mult", cmp.se_multiplier);
  compare->add_option("--report", cmp.report_path);
  compare->add_option("--plot", cmp.plot_path);

  mutfreq::ModelParams limit_params;
  CLI::App* limits =
      app.add_subcommand("limits", "print the fitness-regime table");
  limits->add_option("--alpha-a", limit_params.alpha_a)->required();
  limits->add_option("--beta-a", limit_params.beta_a);
  limits->add_option("--nu", limit_params.nu)->required();
  limits->add_option("--alpha-b", limit_params.alpha_b)->required();
  limits->add_option("--beta-b", limit_params.beta_b);
  limits->add_option("--a0", limit_params.a0);

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) {
      mutfreq::Config cfg = load_config(config_path, overrides);
      if (reps >= 0) cfg.set("run.reps=" + std::to_string(reps));
      if (seed >= 0) cfg.set("run.seed=" + std::to_string(seed));
      if (threads >= 0) cfg.set("run.threads=" + std::to_string(threads));
      return mutfreq::cli::cmd_simulate(std::move(cfg), std::cout);
    }
    if (dist->parsed()) {
      return mutfreq::cli::cmd_dist(load_config(config_path, overrides),
                                    std::cout);
    }
    if (compare->parsed()) return mutfreq::cli::cmd_compare(cmp, std::cout);
    if (limits->parsed())
      return mutfreq::cli::cmd_limits(limit_params, std::cout);
  } catch (const mutfreq::config_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return mutfreq::cli::kExitConfigError;
  } catch (const mutfreq::degenerate_run_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return mutfreq::cli::kExitDegenerate;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
