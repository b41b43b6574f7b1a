#pragma once

#include <functional>
#include <vector>

#include "vbgk/model.hpp"

namespace vbgk {

enum class TransportMode { spectral, upwind };
enum class DtPolicy { automatic, fixed };

struct SolverConfig {
  DtPolicy dt_policy = DtPolicy::automatic;
  double fixed_dt = 0.0;
  /// Multiplier on the relaxation time tau eps^2.
  double c_relax = 1.0;
  /// Multiplier on the transport time eps dx / lambda.
  double c_transp = 0.5;
  TransportMode transport_mode = TransportMode::spectral;
  double t_end = 0.0;
  int record_every = 1;
  /// Times the integrator must land on exactly (snapshot instants).
  std::vector<double> checkpoints;

  /// Throws InvalidArgument on non-positive multipliers, negative t_end, ...
  void validate() const;
};

struct StepReport {
  double t = 0.0;
  double dt = 0.0;
  double min_density = 0.0;
  double max_abs_f = 0.0;
  bool nan_flag = false;
};

/// Free streaming: f_i is translated by lambda_i dt / eps; f_5 is unchanged.
/// Upwind mode throws CflViolation when lambda dt / (eps dx) > 1.
KineticState transport_step(const KineticState& f, double dt,
                            TransportMode mode = TransportMode::spectral);

/// Closed-form relaxation f_i <- M_i(w) + exp(-dt/(tau eps^2)) (f_i - M_i(w))
/// with w = sum_i f_i held fixed.
KineticState relaxation_step(const KineticState& f, double dt);

/// Relaxation(dt/2), transport(dt), relaxation(dt/2).
KineticState strang_step(const KineticState& f, double dt,
                         TransportMode mode = TransportMode::spectral);

/// Nominal step under the configured policy:
/// min(c_relax tau eps^2, c_transp eps dx / lambda) or the fixed value.
double nominal_dt(const SolverConfig& cfg, const ModelParams& params,
                  const Grid& grid);

/// Every time level visited by run(), starting with 0 and ending at t_end.
std::vector<double> time_levels(const SolverConfig& cfg,
                                const ModelParams& params, const Grid& grid);

/// True when run() invokes the record callback at the given level index.
bool is_record_level(const SolverConfig& cfg,
                     const std::vector<double>& levels, std::size_t index);

struct RecordEvent {
  std::size_t step;
  double t;
  const KineticState& state;
  bool checkpoint;
};

struct RunResult {
  KineticState state;
  std::vector<StepReport> reports;
};

using RecordCallback = std::function<void(const RecordEvent&)>;

/// Integrates from t = 0 to cfg.t_end. The callback fires at t = 0, every
/// record_every steps, at checkpoints and at the final time. Throws
/// BlowupDetected on non-finite values and DensityCollapse when rho <= 0,
/// both carrying the last good time.
RunResult run(const KineticState& f0, const SolverConfig& cfg,
              const RecordCallback& on_record = {});

}  // namespace vbgk
