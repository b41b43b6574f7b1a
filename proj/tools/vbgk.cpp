#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "vbgk/app.hpp"
#include "vbgk/config.hpp"
#include "vbgk/errors.hpp"

int main(int argc, char** argv) {
  CLI::App cli{"Five-velocity vector-BGK solver for 2D incompressible Navier-Stokes"};
  cli.require_subcommand(1);

  std::string config;
  std::string out_dir;
  std::string epsilons;
  bool synthetic = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config, "Run configuration file")->required();
    sub->add_option("--out", out_dir, "Output directory (overrides output_dir)");
  };
  CLI::App* validate = cli.add_subcommand("validate", "Check parameters and print the stability report");
  add_common(validate);
  CLI::App* run = cli.add_subcommand("run", "Run one simulation and write records.csv");
  add_common(run);
  CLI::App* sweep = cli.add_subcommand("sweep", "Run an epsilon sweep and fit convergence rates");
  add_common(sweep);
  sweep->add_option("--epsilons", epsilons, "Comma-separated epsilons, e.g. 0.2,0.1,0.05");
  sweep->add_flag("--synthetic", synthetic, "Inject errors 2 eps^0.5 instead of simulating");
  CLI::App* reference = cli.add_subcommand("reference", "Write Navier-Stokes reference snapshots");
  add_common(reference);

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = cli.exit(e);
    return code == 0 ? 0 : vbgk::app::kParseFailure;
  }

  const std::optional<std::string> out =
      out_dir.empty() ? std::nullopt : std::optional<std::string>(out_dir);
  if (*validate) return vbgk::app::cmd_validate(config, std::cout, std::cerr);
  if (*run) return vbgk::app::cmd_run(config, out, std::cout, std::cerr);
  if (*reference) return vbgk::app::cmd_reference(config, out, std::cout, std::cerr);

  std::optional<std::vector<double>> eps;
  if (!epsilons.empty()) {
    try {
      eps = vbgk::parse_real_list(epsilons);
    } catch (const vbgk::ParseError& e) {
      std::cerr << "parse error: --epsilons: " << e.what() << '\n';
      return vbgk::app::kParseFailure;
    }
  }
  return vbgk::app::cmd_sweep(config, eps, out, vbgk::app::threads_from_env(),
                              synthetic, std::cout, std::cerr);
}
