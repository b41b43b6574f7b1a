#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "vbgk/config.hpp"
#include "vbgk/diagnostics.hpp"
#include "vbgk/ns_reference.hpp"

namespace vbgk::app {

enum ExitCode : int {
  kOk = 0,
  kParseFailure = 1,
  kConstraintViolation = 2,
  kBlowup = 3,
};

/// A config resolved against one value of epsilon: parameters, initial
/// velocity, reference trajectory and the checks that gate a run.
struct PreparedRun {
  RunConfig cfg;
  ModelParams params;
  Grid grid;
  ScalarField u1, u2;
  StateBox box;
  SubcharacteristicReport subcharacteristic;
  double bound_M;

  std::unique_ptr<ReferenceTrajectory> make_reference() const;
};

/// Throws ParseError (bad initial file), NonPositiveInput/ConstraintViolation
/// (parameters) and NotDivergenceFree.
PreparedRun prepare(const RunConfig& cfg, double epsilon);

inline constexpr const char* kRecordsHeader =
    "t,e0,es,dev_k,dev_h,dev_m,dev_xi,eta_surrogate,rho_min,rho_max,"
    "sup_bound_functional";

struct SimulationOutcome {
  std::vector<DiagnosticsRecord> records;
  bool completed = true;
  std::string failure;
  double last_good_time = 0.0;
};

/// Runs the kinetic solver with diagnostics. When out_dir is non-empty,
/// streams records.csv there (flushed per row) and writes snapshots at the
/// configured times. Never throws SimulationAborted; failures are reported
/// in the outcome.
SimulationOutcome simulate(const PreparedRun& run, const std::string& out_dir);

struct SweepMember {
  double epsilon = 0.0;
  bool completed = false;
  std::string failure;
  double sup_e0 = 0.0, sup_es = 0.0;
  double sup_dev_k = 0.0, sup_dev_h = 0.0, sup_dev_m = 0.0, sup_dev_xi = 0.0;
  double sup_bound = 0.0;
  std::array<double, 3> pairing{};
  std::array<double, 3> reference_pairing{};
};

struct RateLine {
  std::string quantity;
  ConvergenceStudyResult fit;
  double theory = 0.0;
  /// Second theoretical reading where one exists (es), NaN otherwise.
  double theory_alt = 0.0;
};

struct SweepResult {
  std::vector<SweepMember> members;
  bool completed = false;
  std::vector<RateLine> rates;
};

/// Runs one simulation per epsilon on up to `threads` workers. Members are
/// independent, results are stored by position, so output does not depend
/// on scheduling. With synthetic = true no simulation runs and every error
/// column is 2 eps^0.5.
SweepResult run_sweep(const RunConfig& cfg, std::vector<double> epsilons,
                      const std::string& out_dir, int threads, bool synthetic);

/// Pressure-pairing convergence: errors |<p_eps, phi> - <p_ref, phi>| over
/// the sweep must not increase more than `allowed_violations` times.
/// Errors below 1e-12 count as converged.
bool pairings_converge(const std::vector<SweepMember>& members, int test_index,
                       int allowed_violations = 1);

/// Worker count from VBGK_THREADS (defaults to hardware concurrency).
int threads_from_env();

int cmd_validate(const std::string& config_path, std::ostream& out,
                 std::ostream& err);
int cmd_run(const std::string& config_path,
            const std::optional<std::string>& out_dir, std::ostream& out,
            std::ostream& err);
int cmd_sweep(const std::string& config_path,
              const std::optional<std::vector<double>>& epsilons,
              const std::optional<std::string>& out_dir, int threads,
              bool synthetic, std::ostream& out, std::ostream& err);
int cmd_reference(const std::string& config_path,
                  const std::optional<std::string>& out_dir, std::ostream& out,
                  std::ostream& err);

}  // namespace vbgk::app
