#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "vbgk/errors.hpp"
#include "vbgk/grid.hpp"
#include "vbgk/model.hpp"
#include "vbgk/ns_reference.hpp"

using namespace vbgk;

namespace {

ModelParams tg_params(double eps = 0.1) { return ModelParams::make(eps, 1.0, 2.0, 0.01, 1.0); }

Vec3 random_state(std::mt19937_64& rng, double rho_bar) {
  std::uniform_real_distribution<double> R(0.5 * rho_bar, 1.5 * rho_bar);
  std::uniform_real_distribution<double> Q(-0.5, 0.5);
  return {R(rng), Q(rng), Q(rng)};
}

double velocity_x(int i) { return kVelocityDir[i][0]; }
double velocity_y(int i) { return kVelocityDir[i][1]; }

}  // namespace

TEST(ModelParams, HandValueOfA) {
  const ModelParams p = tg_params();
  EXPECT_DOUBLE_EQ(p.a(), 0.01 / 8.0);
  EXPECT_DOUBLE_EQ(p.a(), p.nu() / (2.0 * p.lambda() * p.lambda() * p.tau()));
}

TEST(ModelParams, SmallLambdaViolatesWeightBound) {
  EXPECT_THROW(ModelParams::make(0.1, 1.0, 0.1, 0.01, 1.0), ConstraintViolation);
  EXPECT_THROW(ModelParams::make(0.1, 1.0, std::sqrt(0.02), 0.01, 1.0), ConstraintViolation);
}

TEST(ModelParams, NonPositiveInputsRejected) {
  EXPECT_THROW(ModelParams::make(0.0, 1.0, 2.0, 0.01, 1.0), NonPositiveInput);
  EXPECT_THROW(ModelParams::make(0.1, -1.0, 2.0, 0.01, 1.0), NonPositiveInput);
  EXPECT_THROW(ModelParams::make(0.1, 1.0, 0.0, 0.01, 1.0), NonPositiveInput);
  EXPECT_THROW(ModelParams::make(0.1, 1.0, 2.0, 0.0, 1.0), NonPositiveInput);
  EXPECT_THROW(ModelParams::make(0.1, 1.0, 2.0, 0.01, -2.0), NonPositiveInput);
  EXPECT_THROW(ModelParams::make(1.5, 1.0, 2.0, 0.01, 1.0), NonPositiveInput);
}

TEST(ModelParams, IdentityHoldsForRandomAcceptedParams) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> U(0.05, 3.0);
  int accepted = 0;
  for (int i = 0; i < 200; ++i) {
    const double tau = U(rng), lambda = U(rng), nu = U(rng);
    try {
      const ModelParams p = ModelParams::make(0.5, tau, lambda, nu, 1.0);
      EXPECT_DOUBLE_EQ(p.a(), nu / (2 * lambda * lambda * tau));
      EXPECT_GT(p.a(), 0.0);
      EXPECT_LT(p.a(), 0.25);
      ++accepted;
    } catch (const ConstraintViolation&) {
      EXPECT_GE(nu / (2 * lambda * lambda * tau), 0.25);
    }
  }
  EXPECT_GT(accepted, 0);
}

TEST(Pressure, HandValues) {
  EXPECT_EQ(pressure(1.0, tg_params()), 0.0);
  EXPECT_NEAR(pressure(1.2, tg_params()), 0.22, 1e-15);
  const ModelParams p2 = ModelParams::make(0.1, 1.0, 2.0, 0.01, 2.0);
  EXPECT_NEAR(pressure(1.0, p2), -0.75, 1e-15);
  EXPECT_EQ(pressure(2.0, p2), 0.0);
}

TEST(Pressure, NonPositiveDensityRejected) {
  EXPECT_THROW(pressure(0.0, tg_params()), NonPositiveDensity);
  EXPECT_THROW(pressure(-0.1, tg_params()), NonPositiveDensity);
}

TEST(Pressure, StrictlyIncreasing) {
  const ModelParams p = tg_params();
  double prev = pressure(1e-6, p);
  for (double r = 0.01; r < 5.0; r += 0.01) {
    const double v = pressure(r, p);
    EXPECT_GT(v, prev);
    prev = v;
  }
}

TEST(Flux, RestStateHasZeroFlux) {
  const ModelParams p = tg_params();
  for (int j : {1, 2})
    for (double v : flux_A(j, {1.0, 0.0, 0.0}, p)) EXPECT_EQ(v, 0.0);
}

TEST(Flux, HandValues) {
  const ModelParams p = tg_params();
  const Vec3 A1 = flux_A(1, {1.0, 0.1, 0.2}, p);
  const Vec3 A2 = flux_A(2, {1.0, 0.1, 0.2}, p);
  EXPECT_NEAR(A1[0], 0.1, 1e-15);
  EXPECT_NEAR(A1[1], 0.01, 1e-15);
  EXPECT_NEAR(A1[2], 0.02, 1e-15);
  EXPECT_NEAR(A2[0], 0.2, 1e-15);
  EXPECT_NEAR(A2[1], 0.02, 1e-15);
  EXPECT_NEAR(A2[2], 0.04, 1e-15);
}

TEST(Flux, SwapSymmetry) {
  const ModelParams p = tg_params();
  std::mt19937_64 rng(2);
  for (int i = 0; i < 100; ++i) {
    const Vec3 w = random_state(rng, 1.0);
    const Vec3 A1 = flux_A(1, w, p);
    const Vec3 B2 = flux_A(2, {w[0], w[2], w[1]}, p);
    EXPECT_NEAR(A1[0], B2[0], 1e-15);
    EXPECT_NEAR(A1[1], B2[2], 1e-15);
    EXPECT_NEAR(A1[2], B2[1], 1e-15);
  }
}

TEST(Flux, NonPositiveDensityRejected) {
  EXPECT_THROW(flux_A(1, {0.0, 0.1, 0.1}, tg_params()), NonPositiveDensity);
  EXPECT_THROW(maxwellians({-1.0, 0.0, 0.0}, tg_params()), NonPositiveDensity);
}

TEST(Flux, JacobianMatchesFiniteDifferences) {
  const ModelParams p = tg_params();
  std::mt19937_64 rng(3);
  const double h = 1e-6;
  for (int trial = 0; trial < 20; ++trial) {
    const Vec3 w = random_state(rng, 1.0);
    for (int j : {1, 2}) {
      const auto J = flux_jacobian(j, w, p);
      for (int c = 0; c < 3; ++c) {
        Vec3 wp = w, wm = w;
        wp[c] += h;
        wm[c] -= h;
        const Vec3 Ap = flux_A(j, wp, p), Am = flux_A(j, wm, p);
        for (int r = 0; r < 3; ++r)
          EXPECT_NEAR(J[r][c], (Ap[r] - Am[r]) / (2 * h), 1e-7);
      }
    }
  }
}

TEST(Maxwellians, RestStateHandValues) {
  const auto M = maxwellians({1.0, 0.0, 0.0}, tg_params());
  for (int i = 0; i < 4; ++i) {
    EXPECT_NEAR(M[i][0], 0.00125, 1e-16);
    EXPECT_EQ(M[i][1], 0.0);
    EXPECT_EQ(M[i][2], 0.0);
  }
  EXPECT_NEAR(M[4][0], 0.995, 1e-15);
}

TEST(Maxwellians, CompatibilityIdentitiesOnRandomStates) {
  const ModelParams p = ModelParams::make(0.3, 0.7, 1.5, 0.2, 1.3);
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 10000; ++trial) {
    const Vec3 w = random_state(rng, 1.3);
    const auto M = maxwellians(w, p);
    const Vec3 A1 = flux_A(1, w, p), A2 = flux_A(2, w, p);
    for (int c = 0; c < 3; ++c) {
      double sum = 0.0, m1 = 0.0, m2 = 0.0;
      for (int i = 0; i < 5; ++i) {
        sum += M[i][c];
        m1 += p.lambda() * velocity_x(i) * M[i][c];
        m2 += p.lambda() * velocity_y(i) * M[i][c];
      }
      ASSERT_NEAR(sum, w[c], 1e-12);
      ASSERT_NEAR(m1, A1[c], 1e-12);
      ASSERT_NEAR(m2, A2[c], 1e-12);
    }
  }
}

TEST(Maxwellians, RestMaxwellianIsExactlyLinear) {
  const ModelParams p = tg_params();
  const Vec3 w{1.1, 0.3, -0.2};
  const auto M = maxwellians(w, p);
  const auto M2 = maxwellians({2.5 * w[0], 2.5 * w[1], 2.5 * w[2]}, p);
  for (int c = 0; c < 3; ++c) EXPECT_NEAR(M2[4][c], 2.5 * M[4][c], 1e-15);
}

TEST(PerturbedMaxwellians, ConstantStateEqualsMaxwellians) {
  const Grid g(16);
  const ModelParams p = tg_params();
  const MacroState w(ScalarField(g, 1.05), ScalarField(g, 0.02), ScalarField(g, -0.01));
  const KineticState a = perturbed_maxwellians(w, p);
  const KineticState b = maxwellian_state(w, p);
  for (std::size_t k = 0; k < a.fields().size(); ++k)
    EXPECT_LE(linf_norm(a.fields()[k] - b.fields()[k]), 1e-15);
}

TEST(PerturbedMaxwellians, PreserveProjection) {
  const Grid g(32);
  const ModelParams p = tg_params();
  const MacroState w(
      ScalarField::sample(g, [](double x, double y) { return 1.0 + 0.1 * std::sin(x + 2 * y); }),
      ScalarField::sample(g, [](double x, double y) { return 0.05 * std::cos(x) * std::sin(y); }),
      ScalarField::sample(g, [](double x, double) { return 0.03 * std::sin(3 * x); }));
  const MacroState back = perturbed_maxwellians(w, p).project();
  for (int c = 0; c < 3; ++c) EXPECT_LE(linf_norm(back.component(c) - w.component(c)), 1e-12);
}

TEST(PerturbedMaxwellians, CorrectionIsLinearInEpsilon) {
  const Grid g(32);
  const MacroState w(
      ScalarField::sample(g, [](double x, double y) { return 1.0 + 0.1 * std::sin(x) * std::cos(y); }),
      ScalarField::sample(g, [](double, double y) { return 0.05 * std::sin(y); }),
      ScalarField::sample(g, [](double x, double) { return 0.05 * std::cos(x); }));
  double prev = 0.0;
  for (double eps : {0.4, 0.2, 0.1, 0.05}) {
    const ModelParams p = tg_params(eps);
    const KineticState a = perturbed_maxwellians(w, p);
    const KineticState b = maxwellian_state(w, p);
    double diff = 0.0;
    for (std::size_t k = 0; k < a.fields().size(); ++k)
      diff = std::max(diff, linf_norm(a.fields()[k] - b.fields()[k]));
    if (prev > 0.0) {
      EXPECT_NEAR(prev / diff, 2.0, 1e-10);
    }
    prev = diff;
  }
}

TEST(InitialState, ZeroVelocityGivesConstantEquilibrium) {
  const Grid g(16);
  const ModelParams p = tg_params();
  const KineticState f = initial_kinetic_state(ScalarField(g), ScalarField(g), p);
  for (int i = 0; i < 5; ++i)
    for (int c = 0; c < 3; ++c) {
      const double expected = c == 0 ? (i == 4 ? 1.0 - 4.0 * p.a() : p.a()) : 0.0;
      EXPECT_LE(linf_norm(f.field(i, c) - ScalarField(g, expected)), 1e-16);
    }
}

TEST(InitialState, TaylorGreenProjectionIsExact) {
  const Grid g(32);
  const ModelParams p = ModelParams::make(0.1, 1.0, 2.0, 0.01, 1.3);
  const auto tg = taylor_green(0.0, 0.01, g);
  const MacroState w = initial_kinetic_state(tg.state.u1, tg.state.u2, p).project();
  EXPECT_LE(linf_norm(w.rho - ScalarField(g, 1.3)), 1e-14);
  EXPECT_LE(linf_norm(w.q1 - 0.1 * 1.3 * tg.state.u1), 1e-14);
  EXPECT_LE(linf_norm(w.q2 - 0.1 * 1.3 * tg.state.u2), 1e-14);
}

TEST(InitialState, GradientFieldRejected) {
  const Grid g(16);
  const auto phi = ScalarField::sample(g, [](double x, double y) { return std::sin(x) * std::cos(2 * y); });
  EXPECT_THROW(initial_kinetic_state(spectral_derivative(phi, Axis::x),
                                     spectral_derivative(phi, Axis::y), tg_params()),
               NotDivergenceFree);
}

TEST(Entropy, RestStateHandValue) {
  const Grid g(8);
  const ModelParams p = ModelParams::make(0.1, 1.0, 2.0, 0.01, 2.0);
  const MacroState w(ScalarField(g, 2.0), ScalarField(g), ScalarField(g));
  EXPECT_NEAR(entropy_eta(w, p), 1.0, 1e-15);
  EXPECT_NEAR(entropy_density({2.0, 0.0, 0.0}, p), 1.0, 1e-15);
}

TEST(Entropy, KineticPartIsQuadraticInMomentum) {
  const ModelParams p = tg_params();
  const Vec3 w{1.2, 0.3, -0.4};
  const double potential = entropy_density({1.2, 0.0, 0.0}, p);
  const double kin1 = entropy_density(w, p) - potential;
  const double kin2 = entropy_density({1.2, 0.6, -0.8}, p) - potential;
  EXPECT_NEAR(kin2, 4.0 * kin1, 1e-14);
  EXPECT_NEAR(kin1, 0.5 * (0.09 + 0.16) / 1.2, 1e-15);
}

TEST(Entropy, ConvexAlongRandomSegments) {
  const ModelParams p = tg_params();
  std::mt19937_64 rng(5);
  const double h = 1e-3;
  for (int trial = 0; trial < 500; ++trial) {
    const Vec3 a = random_state(rng, 1.0), b = random_state(rng, 1.0);
    std::uniform_real_distribution<double> T(h, 1.0 - h);
    const double t = T(rng);
    auto at = [&](double s) {
      return entropy_density({a[0] + s * (b[0] - a[0]), a[1] + s * (b[1] - a[1]),
                              a[2] + s * (b[2] - a[2])},
                             p);
    };
    EXPECT_GT(at(t + h) - 2 * at(t) + at(t - h), 0.0);
  }
}

TEST(Entropy, GradientMatchesFiniteDifferences) {
  const ModelParams p = tg_params();
  const Vec3 w{1.1, 0.2, -0.3};
  const Vec3 g = entropy_gradient(w, p);
  for (int c = 0; c < 3; ++c) {
    Vec3 wp = w, wm = w;
    wp[c] += 1e-6;
    wm[c] -= 1e-6;
    EXPECT_NEAR(g[c], (entropy_density(wp, p) - entropy_density(wm, p)) / 2e-6, 1e-8);
  }
}

TEST(Entropy, RelativeSurrogateVanishesOnItselfAndIsPositive) {
  const Grid g(16);
  const ModelParams p = tg_params();
  const MacroState a(ScalarField(g, 1.0), ScalarField(g, 0.1), ScalarField(g, 0.0));
  const MacroState b(ScalarField(g, 1.1), ScalarField(g, 0.0), ScalarField(g, 0.2));
  EXPECT_NEAR(relative_entropy_surrogate(a, a, p), 0.0, 1e-16);
  EXPECT_GT(relative_entropy_surrogate(b, a, p), 0.0);
}

// Eigenvalues of A_j'(w) for the quadratic pressure law are v, v +- c with
// v = q_j / rho and c = sqrt(P'(rho)) = sqrt(rho / rho_bar).
TEST(Subcharacteristic, MatchesClosedFormEulerEigenvalues) {
  for (auto [tau, lambda, nu] : {std::tuple{1.0, 2.0, 0.01}, {0.02, 4.0, 0.1}, {0.5, 1.0, 0.2}}) {
    const ModelParams p = ModelParams::make(0.1, tau, lambda, nu, 1.0);
    const StateBox box{0.95, 1.05, -1.0, 1.0, -0.5, 0.5};
    const SubcharacteristicReport r = check_subcharacteristic(p, box, 11);
    const double vmax = p.epsilon() * 1.0;
    const double cmax = std::sqrt(box.rho_max / p.rho_bar());
    const double oracle = std::min(1.0 - 4.0 * p.a(), p.a() - (vmax + cmax) / (2.0 * lambda));
    EXPECT_NEAR(r.min_real_part, oracle, 1e-12) << "tau=" << tau << " lambda=" << lambda;
    EXPECT_EQ(r.pass, oracle > 0.0);
    EXPECT_EQ(r.samples_per_axis, 11);
  }
}

TEST(Subcharacteristic, AcousticBranchFailsAtTaylorGreenParameters) {
  const ModelParams p = tg_params();
  const StateBox box{0.999, 1.001, -1e-3, 1e-3, -1e-3, 1e-3};
  const SubcharacteristicReport r = check_subcharacteristic(p, box);
  EXPECT_FALSE(r.pass);
  EXPECT_NEAR(r.min_real_part, p.a() - (1e-4 + std::sqrt(1.001)) / 4.0, 1e-12);
}

TEST(Subcharacteristic, PassesWhenRelaxationWeightDominates) {
  const ModelParams p = ModelParams::make(0.1, 0.02, 4.0, 0.1, 1.0);
  const SubcharacteristicReport r = check_subcharacteristic(p, {0.95, 1.05, -1.0, 1.0, -1.0, 1.0});
  EXPECT_TRUE(r.pass);
  EXPECT_GT(r.min_real_part, 0.0);
}

TEST(Subcharacteristic, RestBranchIsOneMinusFourA) {
  // With the flux branches far from binding the minimum comes from M5.
  const ModelParams p = ModelParams::make(0.01, 0.001, 40.0, 0.79, 1.0);
  ASSERT_GT(p.a(), 0.24);
  const SubcharacteristicReport r =
      check_subcharacteristic(p, {0.99, 1.01, -0.1, 0.1, -0.1, 0.1});
  EXPECT_NEAR(r.min_real_part, 1.0 - 4.0 * p.a(), 1e-12);
  EXPECT_EQ(r.worst_maxwellian, 4);
}

TEST(Subcharacteristic, DefaultBoxFollowsEpsilonAndVelocity) {
  const ModelParams p = ModelParams::make(0.2, 1.0, 2.0, 0.01, 2.0);
  const StateBox b = default_state_box(p, 1.5);
  EXPECT_NEAR(b.rho_min, 2.0 * 0.9, 1e-15);
  EXPECT_NEAR(b.rho_max, 2.0 * 1.1, 1e-15);
  EXPECT_EQ(b.u1_max, 3.0);
  EXPECT_EQ(b.u2_min, -3.0);
}
