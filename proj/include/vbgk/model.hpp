#pragma once

#include <array>
#include <vector>

#include "vbgk/grid.hpp"

namespace vbgk {

using Vec3 = std::array<double, 3>;

/// Model constants. The Maxwellian weight a = nu / (2 lambda^2 tau) is always
/// derived, never set directly.
class ModelParams {
 public:
  /// Throws NonPositiveInput if any input is <= 0 or epsilon > 1, and
  /// ConstraintViolation unless 0 < a < 1/4.
  static ModelParams make(double epsilon, double tau, double lambda, double nu,
                          double rho_bar);

  double epsilon() const { return epsilon_; }
  double tau() const { return tau_; }
  double lambda() const { return lambda_; }
  double nu() const { return nu_; }
  double a() const { return a_; }
  double rho_bar() const { return rho_bar_; }

  /// Coefficient of the entropy's potential part k_e rho^2; chosen as
  /// 1/(2 rho_bar) so that rho^2 e'(rho) reproduces the pressure law.
  double entropy_k() const { return 0.5 / rho_bar_; }

  ModelParams with_epsilon(double epsilon) const {
    return make(epsilon, tau_, lambda_, nu_, rho_bar_);
  }

 private:
  ModelParams() = default;
  double epsilon_ = 0, tau_ = 0, lambda_ = 0, nu_ = 0, a_ = 0, rho_bar_ = 0;
};

/// Discrete velocity directions: lambda_i = lambda * kVelocityDir[i].
inline constexpr std::array<std::array<int, 2>, 5> kVelocityDir{
    {{1, 0}, {0, 1}, {-1, 0}, {0, -1}, {0, 0}}};

/// P(rho) = (rho^2 - rho_bar^2) / (2 rho_bar).
double pressure(double rho, const ModelParams& params);

/// Flux A_1 (j = 1) or A_2 (j = 2) at w = (rho, q1, q2).
Vec3 flux_A(int j, const Vec3& w, const ModelParams& params);

/// M_1..M_5 at w.
std::array<Vec3, 5> maxwellians(const Vec3& w, const ModelParams& params);

/// w = (rho, q1, q2) with q = epsilon rho u.
struct MacroState {
  ScalarField rho, q1, q2;

  explicit MacroState(const Grid& g) : rho(g), q1(g), q2(g) {}
  MacroState(ScalarField r, ScalarField a, ScalarField b)
      : rho(std::move(r)), q1(std::move(a)), q2(std::move(b)) {}

  const Grid& grid() const { return rho.grid; }
  ScalarField& component(int c) { return c == 0 ? rho : (c == 1 ? q1 : q2); }
  const ScalarField& component(int c) const {
    return c == 0 ? rho : (c == 1 ? q1 : q2);
  }
  Vec3 at(std::size_t p) const {
    return {rho.values[p], q1.values[p], q2.values[p]};
  }
};

/// Fifteen scalar fields f_i^c, velocity i in [0, 5), component c in [0, 3).
class KineticState {
 public:
  KineticState(const Grid& g, const ModelParams& params);

  const Grid& grid() const { return fields_.front().grid; }
  const ModelParams& params() const { return params_; }

  ScalarField& field(int i, int c) { return fields_[i * 3 + c]; }
  const ScalarField& field(int i, int c) const { return fields_[i * 3 + c]; }
  std::vector<ScalarField>& fields() { return fields_; }
  const std::vector<ScalarField>& fields() const { return fields_; }

  Vec3 f_at(int i, std::size_t p) const {
    return {field(i, 0).values[p], field(i, 1).values[p],
            field(i, 2).values[p]};
  }
  void set_at(int i, std::size_t p, const Vec3& v) {
    for (int c = 0; c < 3; ++c) field(i, c).values[p] = v[c];
  }

  /// Projection w = sum_i f_i.
  MacroState project() const;

 private:
  std::vector<ScalarField> fields_;
  ModelParams params_;
};

/// Pointwise Maxwellians of a macroscopic state.
KineticState maxwellian_state(const MacroState& w, const ModelParams& params);

/// Maxwellians corrected by -/+ a eps lambda tau (spectral gradient of w)
/// on the pairs (1,3) and (2,4).
KineticState perturbed_maxwellians(const MacroState& w,
                                   const ModelParams& params);

/// Well-prepared data f_i(0) = perturbed_maxwellians(rho_bar, eps rho_bar u0).
/// Throws NotDivergenceFree if the spectral divergence of u0 exceeds 1e-10.
KineticState initial_kinetic_state(const ScalarField& u1, const ScalarField& u2,
                                   const ModelParams& params);

inline constexpr double kDivergenceTolerance = 1e-10;

/// Entropy density 1/2 |q|^2 / rho + k_e rho^2 at one point.
double entropy_density(const Vec3& w, const ModelParams& params);
/// Gradient of the entropy density with respect to w.
Vec3 entropy_gradient(const Vec3& w, const ModelParams& params);
/// Normalized-measure integral of the entropy density.
double entropy_eta(const MacroState& w, const ModelParams& params);
/// Integral of eta(w) - eta(wbar) - grad eta(wbar).(w - wbar).
double relative_entropy_surrogate(const MacroState& w, const MacroState& wbar,
                                  const ModelParams& params);

struct StateBox {
  double rho_min, rho_max;
  double u1_min, u1_max;
  double u2_min, u2_max;
};

/// rho in [rho_bar(1 - eps/2), rho_bar(1 + eps/2)], |u_i| <= 2 max|u0|.
StateBox default_state_box(const ModelParams& params, double max_abs_u0);

struct SubcharacteristicReport {
  double min_real_part = 0.0;
  bool pass = false;
  /// State (rho, u1, u2) where the minimum was attained.
  Vec3 worst_state{};
  /// Maxwellian index (0-based) of the worst Jacobian.
  int worst_maxwellian = -1;
  int samples_per_axis = 0;
};

/// Jacobian dA_j/dw at w.
std::array<std::array<double, 3>, 3> flux_jacobian(int j, const Vec3& w,
                                                   const ModelParams& params);

/// Samples the box on a lattice and checks that every Maxwellian Jacobian
/// a I +- A_j'(w)/(2 lambda), (1 - 4a) I has eigenvalues with positive
/// real part.
SubcharacteristicReport check_subcharacteristic(const ModelParams& params,
                                                const StateBox& box,
                                                int samples_per_axis = 11);

}  // namespace vbgk
