#include "vbgk/ns_reference.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "vbgk/errors.hpp"

namespace vbgk {

TaylorGreen taylor_green(double t, double nu, const Grid& grid) {
  if (!(t >= 0.0)) throw InvalidArgument("Taylor-Green time must be >= 0");
  const double decay = std::exp(-2.0 * nu * t);
  const double pdecay = std::exp(-4.0 * nu * t);
  auto u1 = ScalarField::sample(grid, [&](double x, double y) {
    return -std::cos(x) * std::sin(y) * decay;
  });
  auto u2 = ScalarField::sample(grid, [&](double x, double y) {
    return std::sin(x) * std::cos(y) * decay;
  });
  auto p = ScalarField::sample(grid, [&](double x, double y) {
    return -0.25 * (std::cos(2.0 * x) + std::cos(2.0 * y)) * pdecay;
  });
  return {NsState{std::move(u1), std::move(u2), t, nu}, NsPressure{std::move(p)}};
}

double kinetic_energy(const NsState& s) {
  const double a = l2_norm(s.u1);
  const double b = l2_norm(s.u2);
  return a * a + b * b;
}

namespace {

using Coeffs = std::vector<std::complex<double>>;

struct Wavenumbers {
  std::vector<double> kx, ky, k2;
  std::vector<double> dealias;  // 1 inside the 2/3 band, 0 outside

  explicit Wavenumbers(const Grid& g) {
    const int n = g.n();
    kx.resize(g.size());
    ky.resize(g.size());
    k2.resize(g.size());
    dealias.resize(g.size());
    const int cutoff = n / 3;
    for (int ix = 0; ix < n; ++ix) {
      for (int iy = 0; iy < n; ++iy) {
        const std::size_t p = g.index(ix, iy);
        const int a = g.wavenumber(ix), b = g.wavenumber(iy);
        // Odd derivatives vanish on the Nyquist line.
        kx[p] = a == n / 2 ? 0.0 : a;
        ky[p] = b == n / 2 ? 0.0 : b;
        k2[p] = static_cast<double>(a) * a + static_cast<double>(b) * b;
        dealias[p] = (std::abs(a) <= cutoff && std::abs(b) <= cutoff) ? 1.0 : 0.0;
      }
    }
  }
};

constexpr std::complex<double> kI{0.0, 1.0};

ScalarField physical(const Grid& g, const Coeffs& c) {
  SpectralField F(g);
  F.coeffs = c;
  return from_spectral(F);
}

// Velocity from vorticity: psi = omega / |k|^2, u = (d_y psi, -d_x psi).
std::pair<Coeffs, Coeffs> velocity_from_vorticity(const Wavenumbers& k,
                                                  const Coeffs& omega,
                                                  std::complex<double> mean1,
                                                  std::complex<double> mean2) {
  Coeffs u1(omega.size()), u2(omega.size());
  for (std::size_t p = 0; p < omega.size(); ++p) {
    if (k.k2[p] == 0.0) continue;
    const auto psi = omega[p] / k.k2[p];
    u1[p] = kI * k.ky[p] * psi;
    u2[p] = -kI * k.kx[p] * psi;
  }
  u1[0] = mean1;
  u2[0] = mean2;
  return {std::move(u1), std::move(u2)};
}

// -FFT(u . grad omega), truncated to the 2/3 band.
Coeffs advection(const Grid& g, const Wavenumbers& k, const Coeffs& omega,
                 std::complex<double> mean1, std::complex<double> mean2) {
  auto [u1h, u2h] = velocity_from_vorticity(k, omega, mean1, mean2);
  Coeffs wx(omega.size()), wy(omega.size());
  for (std::size_t p = 0; p < omega.size(); ++p) {
    wx[p] = kI * k.kx[p] * omega[p];
    wy[p] = kI * k.ky[p] * omega[p];
  }
  const ScalarField u1 = physical(g, u1h), u2 = physical(g, u2h);
  const ScalarField ox = physical(g, wx), oy = physical(g, wy);
  ScalarField prod(g);
  for (std::size_t p = 0; p < prod.values.size(); ++p)
    prod.values[p] = u1.values[p] * ox.values[p] + u2.values[p] * oy.values[p];
  SpectralField N = to_spectral(prod);
  for (std::size_t p = 0; p < N.coeffs.size(); ++p)
    N.coeffs[p] *= -k.dealias[p];
  return std::move(N.coeffs);
}

}  // namespace

NsState ns_step(const NsState& state, double dt) {
  const Grid& g = state.grid();
  const double umax = std::max(linf_norm(state.u1), linf_norm(state.u2));
  if (umax * dt / g.dx() > 1.0) {
    std::ostringstream msg;
    msg << "Navier-Stokes step violates CFL: max|u| dt/dx = "
        << umax * dt / g.dx();
    throw CflViolation(msg.str());
  }
  const Wavenumbers k(g);
  const SpectralField U1 = to_spectral(state.u1);
  const SpectralField U2 = to_spectral(state.u2);
  const auto mean1 = U1.coeffs[0], mean2 = U2.coeffs[0];

  const std::size_t size = g.size();
  Coeffs omega(size);
  for (std::size_t p = 0; p < size; ++p)
    omega[p] = kI * k.kx[p] * U2.coeffs[p] - kI * k.ky[p] * U1.coeffs[p];

  std::vector<double> E(size), E2(size);
  for (std::size_t p = 0; p < size; ++p) {
    E[p] = std::exp(-state.nu * k.k2[p] * dt);
    E2[p] = std::exp(-0.5 * state.nu * k.k2[p] * dt);
  }

  const auto N = [&](const Coeffs& w) {
    return advection(g, k, w, mean1, mean2);
  };
  Coeffs tmp(size);

  Coeffs a = N(omega);
  for (std::size_t p = 0; p < size; ++p)
    tmp[p] = E2[p] * (omega[p] + 0.5 * dt * a[p]);
  Coeffs b = N(tmp);
  for (std::size_t p = 0; p < size; ++p)
    tmp[p] = E2[p] * omega[p] + 0.5 * dt * b[p];
  Coeffs c = N(tmp);
  for (std::size_t p = 0; p < size; ++p)
    tmp[p] = E[p] * omega[p] + E2[p] * dt * c[p];
  Coeffs d = N(tmp);

  Coeffs next(size);
  for (std::size_t p = 0; p < size; ++p)
    next[p] = E[p] * omega[p] +
              dt / 6.0 * (E[p] * a[p] + 2.0 * E2[p] * (b[p] + c[p]) + d[p]);

  auto [u1h, u2h] = velocity_from_vorticity(k, next, mean1, mean2);
  return NsState{physical(g, u1h), physical(g, u2h), state.t + dt, state.nu};
}

NsPressure pressure_from_velocity(const NsState& state) {
  const Grid& g = state.grid();
  const Wavenumbers k(g);
  const SpectralField s11 = to_spectral(hadamard(state.u1, state.u1));
  const SpectralField s12 = to_spectral(hadamard(state.u1, state.u2));
  const SpectralField s22 = to_spectral(hadamard(state.u2, state.u2));
  SpectralField P(g);
  for (std::size_t p = 0; p < g.size(); ++p) {
    if (k.k2[p] == 0.0) continue;
    const auto rhs = k.kx[p] * k.kx[p] * s11.coeffs[p] +
                     2.0 * k.kx[p] * k.ky[p] * s12.coeffs[p] +
                     k.ky[p] * k.ky[p] * s22.coeffs[p];
    P.coeffs[p] = -rhs / k.k2[p];
  }
  return NsPressure{from_spectral(P)};
}

double momentum_residual(const NsState& state, const ScalarField& du1_dt,
                         const ScalarField& du2_dt, const NsPressure& p) {
  const auto& u1 = state.u1;
  const auto& u2 = state.u2;
  const ScalarField u11 = hadamard(u1, u1), u12 = hadamard(u1, u2),
                    u22 = hadamard(u2, u2);
  const auto lap = [](const ScalarField& f) {
    return spectral_derivative(f, Axis::x, 2) + spectral_derivative(f, Axis::y, 2);
  };
  const ScalarField r1 = du1_dt + spectral_derivative(u11, Axis::x) +
                         spectral_derivative(u12, Axis::y) +
                         spectral_derivative(p.p, Axis::x) - state.nu * lap(u1);
  const ScalarField r2 = du2_dt + spectral_derivative(u12, Axis::x) +
                         spectral_derivative(u22, Axis::y) +
                         spectral_derivative(p.p, Axis::y) - state.nu * lap(u2);
  return std::max(linf_norm(r1), linf_norm(r2));
}

NsState TaylorGreenTrajectory::at(double t) {
  return taylor_green(t, nu_, grid_).state;
}

NsPressure TaylorGreenTrajectory::pressure_at(double t) {
  return taylor_green(t, nu_, grid_).pressure;
}

NumericalTrajectory::NumericalTrajectory(NsState initial, double max_dt)
    : state_(std::move(initial)), max_dt_(max_dt) {
  if (!(max_dt_ > 0.0)) throw InvalidArgument("max_dt must be positive");
  const double div = linf_norm(divergence(state_.u1, state_.u2));
  if (!(div <= 1e-10))
    throw NotDivergenceFree("reference initial velocity is not divergence-free");
}

NsState NumericalTrajectory::at(double t) {
  if (t < state_.t)
    throw InvalidArgument("numerical reference queried backwards in time");
  const double dx = state_.grid().dx();
  while (state_.t < t) {
    const double umax = std::max(linf_norm(state_.u1), linf_norm(state_.u2));
    double dt = max_dt_;
    if (umax > 0.0) dt = std::min(dt, 0.5 * dx / umax);
    const double remaining = t - state_.t;
    const auto steps = std::ceil(remaining / dt * (1.0 - 1e-12));
    dt = remaining / std::max(1.0, steps);
    state_ = ns_step(state_, dt);
    if (steps <= 1.0) state_.t = t;
  }
  return state_;
}

NsPressure NumericalTrajectory::pressure_at(double t) {
  return pressure_from_velocity(at(t));
}

}  // namespace vbgk
