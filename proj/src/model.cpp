#include "vbgk/model.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "vbgk/errors.hpp"

namespace vbgk {

ModelParams ModelParams::make(double epsilon, double tau, double lambda,
                              double nu, double rho_bar) {
  const auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(epsilon) || !positive(tau) || !positive(lambda) ||
      !positive(nu) || !positive(rho_bar))
    throw NonPositiveInput(
        "epsilon, tau, lambda, nu and rho_bar must all be positive");
  if (epsilon > 1.0) throw NonPositiveInput("epsilon must not exceed 1");

  ModelParams p;
  p.epsilon_ = epsilon;
  p.tau_ = tau;
  p.lambda_ = lambda;
  p.nu_ = nu;
  p.rho_bar_ = rho_bar;
  p.a_ = nu / (2.0 * lambda * lambda * tau);
  if (!(p.a_ > 0.0 && p.a_ < 0.25)) {
    std::ostringstream msg;
    msg << "a = nu/(2 lambda^2 tau) = " << p.a_ << " is outside (0, 1/4)";
    throw ConstraintViolation(msg.str());
  }
  return p;
}

namespace {

void require_positive_density(double rho) {
  if (!(rho > 0.0)) {
    std::ostringstream msg;
    msg << "non-positive density " << rho;
    throw NonPositiveDensity(msg.str());
  }
}

}  // namespace

double pressure(double rho, const ModelParams& params) {
  require_positive_density(rho);
  const double rb = params.rho_bar();
  return (rho * rho - rb * rb) / (2.0 * rb);
}

Vec3 flux_A(int j, const Vec3& w, const ModelParams& params) {
  const double rho = w[0], q1 = w[1], q2 = w[2];
  const double p = pressure(rho, params);
  if (j == 1) return {q1, q1 * q1 / rho + p, q1 * q2 / rho};
  if (j == 2) return {q2, q1 * q2 / rho, q2 * q2 / rho + p};
  throw InvalidArgument("flux index must be 1 or 2");
}

std::array<Vec3, 5> maxwellians(const Vec3& w, const ModelParams& params) {
  const Vec3 A1 = flux_A(1, w, params);
  const Vec3 A2 = flux_A(2, w, params);
  const double a = params.a();
  const double inv2l = 1.0 / (2.0 * params.lambda());
  std::array<Vec3, 5> M{};
  for (int c = 0; c < 3; ++c) {
    const double aw = a * w[c];
    M[0][c] = aw + A1[c] * inv2l;
    M[1][c] = aw + A2[c] * inv2l;
    M[2][c] = aw - A1[c] * inv2l;
    M[3][c] = aw - A2[c] * inv2l;
    M[4][c] = (1.0 - 4.0 * a) * w[c];
  }
  return M;
}

KineticState::KineticState(const Grid& g, const ModelParams& params)
    : fields_(15, ScalarField(g)), params_(params) {}

MacroState KineticState::project() const {
  MacroState w(grid());
  for (int c = 0; c < 3; ++c) {
    auto& out = w.component(c).values;
    for (int i = 0; i < 5; ++i) {
      const auto& f = field(i, c).values;
      for (std::size_t p = 0; p < out.size(); ++p) out[p] += f[p];
    }
  }
  return w;
}

KineticState maxwellian_state(const MacroState& w, const ModelParams& params) {
  KineticState out(w.grid(), params);
  const std::size_t size = w.grid().size();
  for (std::size_t p = 0; p < size; ++p) {
    const auto M = maxwellians(w.at(p), params);
    for (int i = 0; i < 5; ++i) out.set_at(i, p, M[i]);
  }
  return out;
}

KineticState perturbed_maxwellians(const MacroState& w,
                                   const ModelParams& params) {
  KineticState out = maxwellian_state(w, params);
  const double coef =
      params.a() * params.epsilon() * params.lambda() * params.tau();
  for (int c = 0; c < 3; ++c) {
    const ScalarField dx = spectral_derivative(w.component(c), Axis::x);
    const ScalarField dy = spectral_derivative(w.component(c), Axis::y);
    for (std::size_t p = 0; p < dx.values.size(); ++p) {
      out.field(0, c).values[p] -= coef * dx.values[p];
      out.field(2, c).values[p] += coef * dx.values[p];
      out.field(1, c).values[p] -= coef * dy.values[p];
      out.field(3, c).values[p] += coef * dy.values[p];
    }
  }
  return out;
}

KineticState initial_kinetic_state(const ScalarField& u1, const ScalarField& u2,
                                   const ModelParams& params) {
  const double div = linf_norm(divergence(u1, u2));
  if (!(div <= kDivergenceTolerance)) {
    std::ostringstream msg;
    msg << "initial velocity is not divergence-free (max |div u0| = " << div
        << ")";
    throw NotDivergenceFree(msg.str());
  }
  const double scale = params.epsilon() * params.rho_bar();
  MacroState w0(ScalarField(u1.grid, params.rho_bar()), u1 * scale,
                u2 * scale);
  return perturbed_maxwellians(w0, params);
}

double entropy_density(const Vec3& w, const ModelParams& params) {
  require_positive_density(w[0]);
  const double q2 = w[1] * w[1] + w[2] * w[2];
  return 0.5 * q2 / w[0] + params.entropy_k() * w[0] * w[0];
}

Vec3 entropy_gradient(const Vec3& w, const ModelParams& params) {
  require_positive_density(w[0]);
  const double rho = w[0];
  const double q2 = w[1] * w[1] + w[2] * w[2];
  return {-0.5 * q2 / (rho * rho) + 2.0 * params.entropy_k() * rho,
          w[1] / rho, w[2] / rho};
}

double entropy_eta(const MacroState& w, const ModelParams& params) {
  const std::size_t size = w.grid().size();
  double sum = 0.0;
  for (std::size_t p = 0; p < size; ++p) sum += entropy_density(w.at(p), params);
  return sum / static_cast<double>(size);
}

double relative_entropy_surrogate(const MacroState& w, const MacroState& wbar,
                                  const ModelParams& params) {
  if (!(w.grid() == wbar.grid()))
    throw DimensionMismatch("relative entropy: grid mismatch");
  const std::size_t size = w.grid().size();
  double sum = 0.0;
  for (std::size_t p = 0; p < size; ++p) {
    const Vec3 x = w.at(p);
    const Vec3 y = wbar.at(p);
    const Vec3 g = entropy_gradient(y, params);
    double lin = 0.0;
    for (int c = 0; c < 3; ++c) lin += g[c] * (x[c] - y[c]);
    sum += entropy_density(x, params) - entropy_density(y, params) - lin;
  }
  return sum / static_cast<double>(size);
}

StateBox default_state_box(const ModelParams& params, double max_abs_u0) {
  const double rb = params.rho_bar();
  const double eps = params.epsilon();
  const double umax = 2.0 * max_abs_u0;
  return {rb * (1.0 - 0.5 * eps), rb * (1.0 + 0.5 * eps), -umax, umax,
          -umax, umax};
}

std::array<std::array<double, 3>, 3> flux_jacobian(int j, const Vec3& w,
                                                   const ModelParams& params) {
  const double rho = w[0], q1 = w[1], q2 = w[2];
  require_positive_density(rho);
  const double dp = rho / params.rho_bar();
  const double r2 = rho * rho;
  if (j == 1)
    return {{{0.0, 1.0, 0.0},
             {-q1 * q1 / r2 + dp, 2.0 * q1 / rho, 0.0},
             {-q1 * q2 / r2, q2 / rho, q1 / rho}}};
  if (j == 2)
    return {{{0.0, 0.0, 1.0},
             {-q1 * q2 / r2, q2 / rho, q1 / rho},
             {-q2 * q2 / r2 + dp, 0.0, 2.0 * q2 / rho}}};
  throw InvalidArgument("flux index must be 1 or 2");
}

SubcharacteristicReport check_subcharacteristic(const ModelParams& params,
                                                const StateBox& box,
                                                int samples_per_axis) {
  if (samples_per_axis < 1)
    throw InvalidArgument("need at least one sample per axis");
  if (!(box.rho_min > 0.0) || box.rho_max < box.rho_min ||
      box.u1_max < box.u1_min || box.u2_max < box.u2_min)
    throw InvalidArgument("state box must be ordered with positive density");

  const auto lattice = [&](double lo, double hi, int i) {
    if (samples_per_axis == 1) return 0.5 * (lo + hi);
    return lo + (hi - lo) * i / (samples_per_axis - 1);
  };

  SubcharacteristicReport report;
  report.samples_per_axis = samples_per_axis;
  report.min_real_part = 1.0 - 4.0 * params.a();
  report.worst_maxwellian = 4;
  report.worst_state = {box.rho_min, box.u1_min, box.u2_min};

  const double a = params.a();
  const double inv2l = 1.0 / (2.0 * params.lambda());
  const double eps = params.epsilon();
  for (int ir = 0; ir < samples_per_axis; ++ir) {
    const double rho = lattice(box.rho_min, box.rho_max, ir);
    for (int i1 = 0; i1 < samples_per_axis; ++i1) {
      const double u1 = lattice(box.u1_min, box.u1_max, i1);
      for (int i2 = 0; i2 < samples_per_axis; ++i2) {
        const double u2 = lattice(box.u2_min, box.u2_max, i2);
        const Vec3 w{rho, eps * rho * u1, eps * rho * u2};
        for (int j = 1; j <= 2; ++j) {
          const auto J = flux_jacobian(j, w, params);
          for (int sign : {+1, -1}) {
            Eigen::Matrix3d m;
            for (int r = 0; r < 3; ++r)
              for (int c = 0; c < 3; ++c)
                m(r, c) = (r == c ? a : 0.0) + sign * inv2l * J[r][c];
            const Eigen::EigenSolver<Eigen::Matrix3d> solver(m, false);
            const double lo = solver.eigenvalues().real().minCoeff();
            if (lo < report.min_real_part) {
              report.min_real_part = lo;
              report.worst_state = {rho, u1, u2};
              // M1/M3 pair with A1, M2/M4 with A2.
              report.worst_maxwellian = (j - 1) + (sign > 0 ? 0 : 2);
            }
          }
        }
      }
    }
  }
  report.pass = report.min_real_part > 0.0;
  return report;
}

}  // namespace vbgk
