#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "vbgk/kinetic_solver.hpp"
#include "vbgk/model.hpp"

namespace vbgk {

enum class InitialData { taylor_green, zero, file };
enum class SubcharacteristicMode { report, enforce };

/// Everything a run needs. Parsed from a `key = value` text file.
struct RunConfig {
  double epsilon = 0.1;
  double tau = 1.0;
  double lambda = 2.0;
  double nu = 0.01;
  double rho_bar = 1.0;
  int n = 64;

  SolverConfig solver{};

  InitialData initial_data = InitialData::taylor_green;
  std::string initial_file;

  double s = 3.5;
  double s_prime = 2.0;
  std::string output_dir = "out";

  /// Defaults to default_state_box() when unset.
  std::optional<double> box_rho_min, box_rho_max, box_u_max;
  SubcharacteristicMode subcharacteristic = SubcharacteristicMode::report;
  /// Threshold of the boundedness report; defaults to 4 rho_bar ||u0||_{s+1}.
  std::optional<double> bound_M;
  /// Internal step cap of the numerical Navier-Stokes reference.
  double ns_max_dt = 1e-3;
  std::vector<double> epsilons;

  ModelParams params() const {
    return ModelParams::make(epsilon, tau, lambda, nu, rho_bar);
  }
};

/// Parses the config format. Throws ParseError carrying the 1-based line.
RunConfig parse_config(std::istream& in);
RunConfig load_config(const std::string& path);

/// Comma-separated list of reals, e.g. "0.2,0.1,0.05".
std::vector<double> parse_real_list(const std::string& text);

/// Shortest text that round-trips: 17 significant digits, %g style.
std::string format_real(double v);

}  // namespace vbgk
