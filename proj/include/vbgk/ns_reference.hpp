#pragma once

#include <memory>

#include "vbgk/grid.hpp"

namespace vbgk {

/// Divergence-free velocity of the incompressible Navier-Stokes reference.
struct NsState {
  ScalarField u1, u2;
  double t = 0.0;
  double nu = 0.0;

  const Grid& grid() const { return u1.grid; }
};

/// Mean-zero pressure.
struct NsPressure {
  ScalarField p;
};

struct TaylorGreen {
  NsState state;
  NsPressure pressure;
};

/// u = (-cos x sin y, sin x cos y) exp(-2 nu t),
/// p = -(cos 2x + cos 2y) exp(-4 nu t) / 4.
TaylorGreen taylor_green(double t, double nu, const Grid& grid);

/// Kinetic energy ||u||_0^2 under the normalized measure.
double kinetic_energy(const NsState& s);

/// One step of the vorticity/streamfunction pseudo-spectral scheme:
/// integrating-factor RK4, 2/3-rule dealiasing, divergence-free output.
/// Throws CflViolation if max|u| dt / dx > 1.
NsState ns_step(const NsState& state, double dt);

/// Solves -lap p = div div (u (x) u) spectrally; mean-zero result.
NsPressure pressure_from_velocity(const NsState& state);

/// Residual of the momentum equation, evaluated spectrally, for a state whose
/// time derivative is supplied separately.
double momentum_residual(const NsState& state, const ScalarField& du1_dt,
                         const ScalarField& du2_dt, const NsPressure& p);

/// Source of reference velocities at increasing times.
class ReferenceTrajectory {
 public:
  virtual ~ReferenceTrajectory() = default;
  /// Queries must be non-decreasing in t for stateful implementations.
  virtual NsState at(double t) = 0;
  virtual NsPressure pressure_at(double t) = 0;
};

class TaylorGreenTrajectory final : public ReferenceTrajectory {
 public:
  TaylorGreenTrajectory(double nu, const Grid& grid) : nu_(nu), grid_(grid) {}
  NsState at(double t) override;
  NsPressure pressure_at(double t) override;

 private:
  double nu_;
  Grid grid_;
};

/// Advances ns_step from an initial state, landing exactly on each queried
/// time. Internal step is capped by max_dt and by CFL 0.5.
class NumericalTrajectory final : public ReferenceTrajectory {
 public:
  NumericalTrajectory(NsState initial, double max_dt);
  NsState at(double t) override;
  NsPressure pressure_at(double t) override;

 private:
  NsState state_;
  double max_dt_;
};

}  // namespace vbgk
