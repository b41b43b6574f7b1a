#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "vbgk/diagnostics.hpp"
#include "vbgk/errors.hpp"
#include "vbgk/ns_reference.hpp"

using namespace vbgk;

namespace {

// Divergence-free field from a random low-mode streamfunction.
NsState random_flow(int n, double nu, unsigned seed, double amplitude = 0.5,
                    int K = 4) {
  const Grid g(n);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> N(0.0, 1.0);
  struct M { int kx, ky; double c, s; };
  std::vector<M> modes;
  for (int kx = 0; kx <= K; ++kx)
    for (int ky = -K; ky <= K; ++ky)
      if (kx > 0 || ky > 0) {
        const double decay = amplitude / (1.0 + kx * kx + ky * ky);
        modes.push_back({kx, ky, decay * N(rng), decay * N(rng)});
      }
  // psi = sum c cos(k.x) + s sin(k.x); u = (d_y psi, -d_x psi).
  auto u1 = ScalarField::sample(g, [&](double x, double y) {
    double v = 0.0;
    for (const auto& m : modes) {
      const double ph = m.kx * x + m.ky * y;
      v += m.ky * (-m.c * std::sin(ph) + m.s * std::cos(ph));
    }
    return v;
  });
  auto u2 = ScalarField::sample(g, [&](double x, double y) {
    double v = 0.0;
    for (const auto& m : modes) {
      const double ph = m.kx * x + m.ky * y;
      v -= m.kx * (-m.c * std::sin(ph) + m.s * std::cos(ph));
    }
    return v;
  });
  return NsState{std::move(u1), std::move(u2), 0.0, nu};
}

NsState advance(NsState s, double dt, int steps) {
  for (int k = 0; k < steps; ++k) s = ns_step(s, dt);
  return s;
}

double velocity_error(const NsState& a, const NsState& b) {
  return std::max(linf_norm(a.u1 - b.u1), linf_norm(a.u2 - b.u2));
}

}  // namespace

TEST(TaylorGreen, VanishesAtOrigin) {
  const auto tg = taylor_green(0.0, 0.01, Grid(16));
  EXPECT_EQ(tg.state.u1(0, 0), 0.0);
  EXPECT_EQ(tg.state.u2(0, 0), 0.0);
  EXPECT_NEAR(tg.pressure.p(0, 0), -0.5, 1e-15);
}

TEST(TaylorGreen, EnergyDecaysExponentially) {
  const Grid g(32);
  EXPECT_NEAR(kinetic_energy(taylor_green(0.0, 0.01, g).state), 0.5, 1e-15);
  for (double t : {0.1, 1.0, 3.7})
    EXPECT_NEAR(kinetic_energy(taylor_green(t, 0.01, g).state), 0.5 * std::exp(-0.04 * t),
                1e-15);
}

TEST(TaylorGreen, SatisfiesMomentumEquation) {
  const Grid g(32);
  for (auto [t, nu] : {std::pair{0.3, 0.01}, {0.0, 0.1}, {2.0, 0.05}}) {
    const auto tg = taylor_green(t, nu, g);
    const ScalarField du1 = -2.0 * nu * tg.state.u1;
    const ScalarField du2 = -2.0 * nu * tg.state.u2;
    EXPECT_LE(momentum_residual(tg.state, du1, du2, tg.pressure), 1e-10);
  }
}

TEST(TaylorGreen, DivergenceFreeAndMeanZeroPressure) {
  const auto tg = taylor_green(0.7, 0.02, Grid(32));
  EXPECT_LE(linf_norm(divergence(tg.state.u1, tg.state.u2)), 1e-12);
  EXPECT_NEAR(mean(tg.pressure.p), 0.0, 1e-16);
}

TEST(NsStep, ZeroVelocityStaysZero) {
  const Grid g(16);
  NsState s{ScalarField(g), ScalarField(g), 0.0, 0.01};
  s = advance(s, 0.01, 100);
  EXPECT_EQ(linf_norm(s.u1), 0.0);
  EXPECT_EQ(linf_norm(s.u2), 0.0);
  EXPECT_NEAR(s.t, 1.0, 1e-12);
}

TEST(NsStep, TaylorGreenToUnitTime) {
  const Grid g(64);
  const NsState s = advance(taylor_green(0.0, 0.01, g).state, 1e-3, 1000);
  EXPECT_LE(velocity_error(s, taylor_green(1.0, 0.01, g).state), 1e-8);
}

TEST(NsStep, EnergyNeverIncreases) {
  NsState s = random_flow(32, 0.01, 1);
  double e = std::sqrt(kinetic_energy(s));
  for (int k = 0; k < 200; ++k) {
    s = ns_step(s, 5e-3);
    const double next = std::sqrt(kinetic_energy(s));
    ASSERT_LE(next, e * (1.0 + 1e-12)) << "step " << k;
    e = next;
  }
}

TEST(NsStep, StaysDivergenceFree) {
  NsState s = random_flow(32, 0.01, 2);
  for (int k = 0; k < 50; ++k) s = ns_step(s, 5e-3);
  EXPECT_LE(linf_norm(divergence(s.u1, s.u2)), 1e-10);
}

TEST(NsStep, FourthOrderSelfConvergence) {
  const NsState s0 = random_flow(32, 0.01, 3, 2.0);
  const double T = 0.4;
  const NsState ref = advance(s0, T / 1280, 1280);
  std::vector<double> dts, errs;
  for (int steps : {40, 80, 160}) {
    dts.push_back(T / steps);
    errs.push_back(velocity_error(advance(s0, T / steps, steps), ref));
  }
  const ConvergenceStudyResult fit = fit_rate(dts, errs);
  EXPECT_GE(fit.slope, 3.5);
  EXPECT_LE(fit.slope, 4.5);
  EXPECT_NEAR(errs[0] / errs[1], 16.0, 4.0);
}

TEST(NsStep, CflViolationRejected) {
  const auto tg = taylor_green(0.0, 0.01, Grid(32));
  const double dx = tg.state.grid().dx();
  EXPECT_NO_THROW(ns_step(tg.state, 0.9 * dx));
  EXPECT_THROW(ns_step(tg.state, 1.1 * dx), CflViolation);
}

TEST(Pressure, TaylorGreenOracle) {
  const Grid g(32);
  const auto tg = taylor_green(0.0, 0.01, g);
  const NsPressure p = pressure_from_velocity(tg.state);
  const auto exact = ScalarField::sample(
      g, [](double x, double y) { return -0.25 * (std::cos(2 * x) + std::cos(2 * y)); });
  EXPECT_LE(linf_norm(p.p - exact), 1e-10);
}

TEST(Pressure, ZeroVelocityGivesZeroPressure) {
  const Grid g(16);
  const NsPressure p = pressure_from_velocity({ScalarField(g), ScalarField(g), 0.0, 0.01});
  EXPECT_EQ(linf_norm(p.p), 0.0);
}

TEST(Pressure, MeanZeroOnRandomFlow) {
  const NsPressure p = pressure_from_velocity(random_flow(32, 0.01, 4));
  EXPECT_NEAR(mean(p.p), 0.0, 1e-15);
}

TEST(Pressure, MomentumResidualSmallForNumericalFlow) {
  // Central difference in time of the scheme's trajectory checks the
  // pressure against the momentum equation on a non-trivial flow. Modes up
  // to 3 keep the quadratic term inside the dealiased band.
  const NsState s0 = random_flow(32, 0.05, 5, 0.5, 3);
  const double h = 1e-4;
  const NsState s1 = ns_step(s0, h);
  const NsState s2 = ns_step(s1, h);
  const ScalarField du1 = (1.0 / (2 * h)) * (s2.u1 - s0.u1);
  const ScalarField du2 = (1.0 / (2 * h)) * (s2.u2 - s0.u2);
  EXPECT_LE(momentum_residual(s1, du1, du2, pressure_from_velocity(s1)), 1e-6);
  const NsPressure wrong{2.0 * pressure_from_velocity(s1).p};
  EXPECT_GT(momentum_residual(s1, du1, du2, wrong), 1e-3);
}

TEST(Trajectory, NumericalMatchesTaylorGreen) {
  const Grid g(32);
  NumericalTrajectory num(taylor_green(0.0, 0.02, g).state, 1e-3);
  TaylorGreenTrajectory exact(0.02, g);
  for (double t : {0.0, 0.01234, 0.3, 0.5}) {
    EXPECT_LE(velocity_error(num.at(t), exact.at(t)), 1e-9) << "t = " << t;
    EXPECT_LE(linf_norm(num.pressure_at(t).p - exact.pressure_at(t).p), 1e-9);
  }
  EXPECT_EQ(num.at(0.5).t, 0.5);
  EXPECT_THROW(num.at(0.1), InvalidArgument);
}

TEST(Trajectory, RejectsCompressibleInitialData) {
  const Grid g(16);
  const auto u1 = ScalarField::sample(g, [](double x, double) { return std::sin(x); });
  EXPECT_THROW(NumericalTrajectory({u1, ScalarField(g), 0.0, 0.01}, 1e-3), NotDivergenceFree);
}
