#pragma once

#include <array>
#include <optional>
#include <vector>

#include "vbgk/model.hpp"
#include "vbgk/ns_reference.hpp"

namespace vbgk {

/// A field with three components (the components of w).
using Field3 = std::array<ScalarField, 3>;

/// w = sum f_i, m = (lambda/eps)(f1 - f3), xi = (lambda/eps)(f2 - f4),
/// k = f1 + f3, h = f2 + f4.
struct RelaxationVars {
  Field3 w, m, xi, k, h;
};

RelaxationVars to_relaxation_vars(const KineticState& f);
/// Inverse map; f5 = w - k - h.
KineticState from_relaxation_vars(const RelaxationVars& rv,
                                  const ModelParams& params);

struct MacroFields {
  ScalarField rho, u1, u2;
};

/// rho = w_1, u = (w_2, w_3) / (eps rho). Throws NonPositiveDensity.
MacroFields macro_fields(const KineticState& f);

struct ErrorFunctionals {
  /// ||rho - rho_bar||_0 / eps + ||rho u - rho_bar u_ref||_0
  double e0 = 0.0;
  /// ||rho - rho_bar||_{s'} / eps + ||u - u_ref||_{s'}
  double es = 0.0;
};

ErrorFunctionals error_functionals(const KineticState& f, const NsState& ref,
                                   double s_prime);

struct DeviationNorms {
  double dev_k = 0.0, dev_h = 0.0, dev_m = 0.0, dev_xi = 0.0;
};

/// L2 norms of k - 2aw, h - 2aw, m - A1(w)/eps + tau lambda^2 d_x k and
/// xi - A2(w)/eps + tau lambda^2 d_y h.
DeviationNorms deviation_norms(const RelaxationVars& rv,
                               const ModelParams& params);

/// Mean-zero field (rho^2 - rho_bar^2) / (2 rho_bar eps^2).
ScalarField pressure_recovery(const KineticState& f);

/// Test functions for the weak-* pressure proxy: cos 2x, cos 2y, sin x sin y.
std::array<ScalarField, 3> pressure_test_functions(const Grid& grid);
inline constexpr std::array<const char*, 3> kPressureTestNames{
    "cos2x", "cos2y", "sinx_siny"};

struct DiagnosticsRecord {
  double t = 0.0;
  double e0 = 0.0;
  double es = 0.0;
  double dev_k = 0.0, dev_h = 0.0, dev_m = 0.0, dev_xi = 0.0;
  /// eta(w) integrated.
  double eta = 0.0;
  /// Quadratic relative entropy of w against wbar = (rho_bar, eps rho_bar u_ref).
  double eta_surrogate = 0.0;
  double rho_min = 0.0, rho_max = 0.0;
  /// |rho - rho_bar|_inf / eps + |rho u|_inf
  double bound_functional = 0.0;
  /// <recovered pressure, phi> and <reference pressure, phi>.
  std::array<double, 3> pressure_pairing{};
  std::array<double, 3> reference_pairing{};
};

DiagnosticsRecord record_diagnostics(double t, const KineticState& f,
                                     const NsState& ref,
                                     const NsPressure& ref_pressure,
                                     double s_prime);

struct ConvergenceStudyResult {
  std::vector<double> epsilons;
  std::vector<double> errors;
  double slope = 0.0;
  double intercept = 0.0;
  /// Max |log e - (slope log eps + intercept)|.
  double residual = 0.0;
};

/// Least-squares line through (log eps, log error). Requires >= 3 points,
/// strictly decreasing epsilons and positive errors.
ConvergenceStudyResult fit_rate(const std::vector<double>& epsilons,
                                const std::vector<double>& errors);

struct BoundednessReport {
  std::vector<double> times;
  std::vector<double> values;
  double supremum = 0.0;
  std::optional<double> first_crossing;
};

/// Time series of the bound functional against the threshold M.
BoundednessReport boundedness_report(
    const std::vector<DiagnosticsRecord>& records, double M);

/// 4 rho_bar ||u0||_{s+1} (rss over components).
double default_bound_M(const ScalarField& u1, const ScalarField& u2,
                       double rho_bar, double s);

/// Weight psi(t) = 1 - cos(2 pi t / T) used to pair the recovered pressure
/// against a smooth test function in time as well as in space.
double time_weight(double t, double t_end);

/// Trapezoid time average of the weighted pairings over the record series:
/// sum psi(t) <g(t), phi> dt / sum psi(t) dt.
std::array<double, 3> weighted_pairings(
    const std::vector<DiagnosticsRecord>& records, bool reference);

}  // namespace vbgk
