#include "vbgk/kinetic_solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "vbgk/errors.hpp"

namespace vbgk {

void SolverConfig::validate() const {
  if (!(c_relax > 0.0) || !(c_transp > 0.0))
    throw InvalidArgument("dt multipliers must be positive");
  if (dt_policy == DtPolicy::fixed && !(fixed_dt > 0.0))
    throw InvalidArgument("fixed dt must be positive");
  if (!(t_end >= 0.0) || !std::isfinite(t_end))
    throw InvalidArgument("t_end must be finite and non-negative");
  if (record_every < 1) throw InvalidArgument("record_every must be >= 1");
  for (double t : checkpoints)
    if (!(t >= 0.0) || !std::isfinite(t))
      throw InvalidArgument("checkpoint times must be finite and >= 0");
}

namespace {

ScalarField shift_spectral(const ScalarField& f, Axis axis, double s) {
  SpectralField F = to_spectral(f);
  const Grid& g = f.grid;
  const int n = g.n();
  std::vector<std::complex<double>> phase(n);
  for (int i = 0; i < n; ++i) phase[i] = std::polar(1.0, -g.wavenumber(i) * s);
  for (int ix = 0; ix < n; ++ix)
    for (int iy = 0; iy < n; ++iy)
      F.coeffs[g.index(ix, iy)] *= phase[axis == Axis::x ? ix : iy];
  return from_spectral(F);
}

// First-order upwind for speed sign(dir) * c along the axis, c = courant.
ScalarField shift_upwind(const ScalarField& f, Axis axis, int dir,
                         double courant) {
  const Grid& g = f.grid;
  const int n = g.n();
  ScalarField out(g);
  for (int ix = 0; ix < n; ++ix) {
    for (int iy = 0; iy < n; ++iy) {
      int jx = ix, jy = iy;
      if (axis == Axis::x)
        jx = (ix - dir + n) % n;
      else
        jy = (iy - dir + n) % n;
      out(ix, iy) = (1.0 - courant) * f(ix, iy) + courant * f(jx, jy);
    }
  }
  return out;
}

}  // namespace

KineticState transport_step(const KineticState& f, double dt,
                            TransportMode mode) {
  if (dt == 0.0) return f;
  const ModelParams& p = f.params();
  const double distance = p.lambda() * dt / p.epsilon();
  const double courant = distance / f.grid().dx();
  if (mode == TransportMode::upwind && courant > 1.0) {
    std::ostringstream msg;
    msg << "upwind transport needs lambda dt/(eps dx) <= 1, got " << courant;
    throw CflViolation(msg.str());
  }

  KineticState out = f;
  for (int i = 0; i < 4; ++i) {
    const auto [ex, ey] = kVelocityDir[i];
    const Axis axis = ex != 0 ? Axis::x : Axis::y;
    const int dir = ex != 0 ? ex : ey;
    for (int c = 0; c < 3; ++c) {
      out.field(i, c) =
          mode == TransportMode::spectral
              ? shift_spectral(f.field(i, c), axis, dir * distance)
              : shift_upwind(f.field(i, c), axis, dir, courant);
    }
  }
  return out;
}

KineticState relaxation_step(const KineticState& f, double dt) {
  const ModelParams& p = f.params();
  const double decay =
      std::exp(-dt / (p.tau() * p.epsilon() * p.epsilon()));
  KineticState out = f;
  const std::size_t size = f.grid().size();
  for (std::size_t pt = 0; pt < size; ++pt) {
    Vec3 w{0.0, 0.0, 0.0};
    for (int i = 0; i < 5; ++i) {
      const Vec3 fi = f.f_at(i, pt);
      for (int c = 0; c < 3; ++c) w[c] += fi[c];
    }
    const auto M = maxwellians(w, p);
    for (int i = 0; i < 5; ++i) {
      const Vec3 fi = f.f_at(i, pt);
      Vec3 v;
      for (int c = 0; c < 3; ++c) v[c] = M[i][c] + decay * (fi[c] - M[i][c]);
      out.set_at(i, pt, v);
    }
  }
  return out;
}

KineticState strang_step(const KineticState& f, double dt, TransportMode mode) {
  return relaxation_step(
      transport_step(relaxation_step(f, 0.5 * dt), dt, mode), 0.5 * dt);
}

double nominal_dt(const SolverConfig& cfg, const ModelParams& params,
                  const Grid& grid) {
  if (cfg.dt_policy == DtPolicy::fixed) return cfg.fixed_dt;
  const double eps = params.epsilon();
  const double relax = cfg.c_relax * params.tau() * eps * eps;
  const double transp = cfg.c_transp * eps * grid.dx() / params.lambda();
  return std::min(relax, transp);
}

std::vector<double> time_levels(const SolverConfig& cfg,
                                const ModelParams& params, const Grid& grid) {
  cfg.validate();
  std::vector<double> levels{0.0};
  if (cfg.t_end == 0.0) return levels;

  std::vector<double> stops;
  for (double t : cfg.checkpoints)
    if (t > 0.0 && t < cfg.t_end) stops.push_back(t);
  std::sort(stops.begin(), stops.end());
  stops.erase(std::unique(stops.begin(), stops.end()), stops.end());
  stops.push_back(cfg.t_end);

  const double dt = nominal_dt(cfg, params, grid);
  double start = 0.0;
  for (double stop : stops) {
    const double span = stop - start;
    // Tolerance keeps a span that is an exact multiple of dt from
    // producing a round-off sized extra step.
    const auto steps = static_cast<long>(
        std::max(1.0, std::ceil(span / dt * (1.0 - 1e-12))));
    for (long k = 1; k < steps; ++k) levels.push_back(start + k * dt);
    levels.push_back(stop);
    start = stop;
  }
  return levels;
}

bool is_record_level(const SolverConfig& cfg,
                     const std::vector<double>& levels, std::size_t index) {
  if (index == 0 || index + 1 == levels.size()) return true;
  if (index % static_cast<std::size_t>(cfg.record_every) == 0) return true;
  return std::find(cfg.checkpoints.begin(), cfg.checkpoints.end(),
                   levels[index]) != cfg.checkpoints.end();
}

namespace {

StepReport inspect(const KineticState& f, double t, double dt) {
  StepReport r;
  r.t = t;
  r.dt = dt;
  for (const auto& field : f.fields()) {
    for (double v : field.values) {
      if (!std::isfinite(v)) r.nan_flag = true;
      r.max_abs_f = std::max(r.max_abs_f, std::abs(v));
    }
  }
  r.min_density = r.nan_flag ? std::nan("") : min_value(f.project().rho);
  return r;
}

}  // namespace

RunResult run(const KineticState& f0, const SolverConfig& cfg,
              const RecordCallback& on_record) {
  const auto levels = time_levels(cfg, f0.params(), f0.grid());
  const auto is_checkpoint = [&](double t) {
    return std::find(cfg.checkpoints.begin(), cfg.checkpoints.end(), t) !=
           cfg.checkpoints.end();
  };

  RunResult result{f0, {}};
  result.reports.reserve(levels.size());
  result.reports.push_back(inspect(f0, 0.0, 0.0));
  if (result.reports.back().nan_flag)
    throw BlowupDetected("non-finite initial state", 0.0);
  if (on_record) on_record({0, 0.0, result.state, is_checkpoint(0.0)});

  for (std::size_t k = 1; k < levels.size(); ++k) {
    const double t_prev = levels[k - 1];
    const double dt = levels[k] - t_prev;
    try {
      KineticState half = relaxation_step(result.state, 0.5 * dt);
      half = transport_step(half, dt, cfg.transport_mode);
      if (inspect(half, levels[k], dt).nan_flag) {
        std::ostringstream msg;
        msg << "non-finite state at t = " << levels[k];
        throw BlowupDetected(msg.str(), t_prev);
      }
      result.state = relaxation_step(half, 0.5 * dt);
    } catch (const NonPositiveDensity& e) {
      throw DensityCollapse(e.what(), t_prev);
    }
    const StepReport report = inspect(result.state, levels[k], dt);
    if (report.nan_flag) {
      std::ostringstream msg;
      msg << "non-finite state at t = " << levels[k];
      throw BlowupDetected(msg.str(), t_prev);
    }
    if (!(report.min_density > 0.0)) {
      std::ostringstream msg;
      msg << "density " << report.min_density << " at t = " << levels[k];
      throw DensityCollapse(msg.str(), t_prev);
    }
    result.reports.push_back(report);
    if (on_record && is_record_level(cfg, levels, k))
      on_record({k, levels[k], result.state, is_checkpoint(levels[k])});
  }
  return result;
}

}  // namespace vbgk
