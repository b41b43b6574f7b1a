#include "vbgk/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "vbgk/errors.hpp"

namespace vbgk {

RelaxationVars to_relaxation_vars(const KineticState& f) {
  const Grid& g = f.grid();
  const ModelParams& p = f.params();
  const double scale = p.lambda() / p.epsilon();
  const MacroState w = f.project();
  auto zero = [&] {
    return Field3{ScalarField(g), ScalarField(g), ScalarField(g)};
  };
  RelaxationVars rv{zero(), zero(), zero(), zero(), zero()};
  for (int c = 0; c < 3; ++c) {
    rv.w[c] = w.component(c);
    rv.m[c] = (f.field(0, c) - f.field(2, c)) * scale;
    rv.xi[c] = (f.field(1, c) - f.field(3, c)) * scale;
    rv.k[c] = f.field(0, c) + f.field(2, c);
    rv.h[c] = f.field(1, c) + f.field(3, c);
  }
  return rv;
}

KineticState from_relaxation_vars(const RelaxationVars& rv,
                                  const ModelParams& params) {
  KineticState f(rv.w[0].grid, params);
  const double half_inv = params.epsilon() / (2.0 * params.lambda());
  for (int c = 0; c < 3; ++c) {
    f.field(0, c) = rv.k[c] * 0.5 + rv.m[c] * half_inv;
    f.field(2, c) = rv.k[c] * 0.5 - rv.m[c] * half_inv;
    f.field(1, c) = rv.h[c] * 0.5 + rv.xi[c] * half_inv;
    f.field(3, c) = rv.h[c] * 0.5 - rv.xi[c] * half_inv;
    f.field(4, c) = rv.w[c] - rv.k[c] - rv.h[c];
  }
  return f;
}

namespace {

void require_positive(const ScalarField& rho) {
  const double lo = min_value(rho);
  if (!(lo > 0.0)) {
    std::ostringstream msg;
    msg << "non-positive density " << lo;
    throw NonPositiveDensity(msg.str());
  }
}

}  // namespace

MacroFields macro_fields(const KineticState& f) {
  const MacroState w = f.project();
  require_positive(w.rho);
  const double eps = f.params().epsilon();
  MacroFields out{w.rho, ScalarField(f.grid()), ScalarField(f.grid())};
  for (std::size_t p = 0; p < w.rho.values.size(); ++p) {
    const double denom = eps * w.rho.values[p];
    out.u1.values[p] = w.q1.values[p] / denom;
    out.u2.values[p] = w.q2.values[p] / denom;
  }
  return out;
}

ErrorFunctionals error_functionals(const KineticState& f, const NsState& ref,
                                   double s_prime) {
  if (!(f.grid() == ref.grid()))
    throw DimensionMismatch("error functionals: grid mismatch");
  const ModelParams& p = f.params();
  const double eps = p.epsilon();
  const double rb = p.rho_bar();
  const MacroFields mf = macro_fields(f);
  const MacroState w = f.project();

  ScalarField drho = mf.rho;
  for (auto& v : drho.values) v -= rb;

  // rho u = q / eps
  const std::array<ScalarField, 2> dmom{w.q1 * (1.0 / eps) - ref.u1 * rb,
                                        w.q2 * (1.0 / eps) - ref.u2 * rb};
  const std::array<ScalarField, 2> du{mf.u1 - ref.u1, mf.u2 - ref.u2};

  ErrorFunctionals out;
  out.e0 = l2_norm(drho) / eps + l2_norm(std::span<const ScalarField>(dmom));
  out.es = sobolev_norm(drho, s_prime) / eps +
           sobolev_norm(std::span<const ScalarField>(du), s_prime);
  return out;
}

DeviationNorms deviation_norms(const RelaxationVars& rv,
                               const ModelParams& params) {
  const Grid& g = rv.w[0].grid;
  require_positive(rv.w[0]);
  const double a = params.a();
  const double eps = params.epsilon();
  const double tl2 = params.tau() * params.lambda() * params.lambda();

  Field3 dk{ScalarField(g), ScalarField(g), ScalarField(g)};
  Field3 dh = dk, dm = dk, dxi = dk;
  const std::size_t size = g.size();
  for (int c = 0; c < 3; ++c) {
    dk[c] = rv.k[c] - rv.w[c] * (2.0 * a);
    dh[c] = rv.h[c] - rv.w[c] * (2.0 * a);
    dm[c] = rv.m[c] + spectral_derivative(rv.k[c], Axis::x) * tl2;
    dxi[c] = rv.xi[c] + spectral_derivative(rv.h[c], Axis::y) * tl2;
  }
  for (std::size_t p = 0; p < size; ++p) {
    const Vec3 w{rv.w[0].values[p], rv.w[1].values[p], rv.w[2].values[p]};
    const Vec3 A1 = flux_A(1, w, params);
    const Vec3 A2 = flux_A(2, w, params);
    for (int c = 0; c < 3; ++c) {
      dm[c].values[p] -= A1[c] / eps;
      dxi[c].values[p] -= A2[c] / eps;
    }
  }
  return {l2_norm(std::span<const ScalarField>(dk)),
          l2_norm(std::span<const ScalarField>(dh)),
          l2_norm(std::span<const ScalarField>(dm)),
          l2_norm(std::span<const ScalarField>(dxi))};
}

ScalarField pressure_recovery(const KineticState& f) {
  const ModelParams& p = f.params();
  const double rb = p.rho_bar();
  const double eps = p.epsilon();
  ScalarField rho = f.project().rho;
  require_positive(rho);
  for (auto& v : rho.values) v = (v * v - rb * rb) / (2.0 * rb * eps * eps);
  const double m = mean(rho);
  for (auto& v : rho.values) v -= m;
  return rho;
}

std::array<ScalarField, 3> pressure_test_functions(const Grid& grid) {
  return {ScalarField::sample(grid,
                              [](double x, double) { return std::cos(2.0 * x); }),
          ScalarField::sample(grid,
                              [](double, double y) { return std::cos(2.0 * y); }),
          ScalarField::sample(grid, [](double x, double y) {
            return std::sin(x) * std::sin(y);
          })};
}

DiagnosticsRecord record_diagnostics(double t, const KineticState& f,
                                     const NsState& ref,
                                     const NsPressure& ref_pressure,
                                     double s_prime) {
  const ModelParams& p = f.params();
  const double eps = p.epsilon();
  const double rb = p.rho_bar();

  DiagnosticsRecord r;
  r.t = t;
  const auto err = error_functionals(f, ref, s_prime);
  r.e0 = err.e0;
  r.es = err.es;
  const auto dev = deviation_norms(to_relaxation_vars(f), p);
  r.dev_k = dev.dev_k;
  r.dev_h = dev.dev_h;
  r.dev_m = dev.dev_m;
  r.dev_xi = dev.dev_xi;

  const MacroState w = f.project();
  r.eta = entropy_eta(w, p);
  const MacroState wbar(ScalarField(f.grid(), rb), ref.u1 * (eps * rb),
                        ref.u2 * (eps * rb));
  r.eta_surrogate = relative_entropy_surrogate(w, wbar, p);
  r.rho_min = min_value(w.rho);
  r.rho_max = max_value(w.rho);

  double drho = 0.0;
  for (double v : w.rho.values) drho = std::max(drho, std::abs(v - rb));
  const std::array<ScalarField, 2> mom{w.q1 * (1.0 / eps), w.q2 * (1.0 / eps)};
  r.bound_functional =
      drho / eps + linf_norm(std::span<const ScalarField>(mom));

  const ScalarField recovered = pressure_recovery(f);
  const auto phis = pressure_test_functions(f.grid());
  for (std::size_t i = 0; i < phis.size(); ++i) {
    r.pressure_pairing[i] = pairing(recovered, phis[i]);
    r.reference_pairing[i] = pairing(ref_pressure.p, phis[i]);
  }
  return r;
}

ConvergenceStudyResult fit_rate(const std::vector<double>& epsilons,
                                const std::vector<double>& errors) {
  if (epsilons.size() != errors.size())
    throw InvalidArgument("fit_rate: epsilons and errors differ in length");
  if (epsilons.size() < 3)
    throw TooFewPoints("fit_rate needs at least 3 points");
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    if (!(epsilons[i] > 0.0))
      throw InvalidArgument("fit_rate: epsilons must be positive");
    if (i > 0 && !(epsilons[i] < epsilons[i - 1]))
      throw InvalidArgument("fit_rate: epsilons must be strictly decreasing");
    if (!(errors[i] > 0.0) || !std::isfinite(errors[i]))
      throw NonPositiveError("fit_rate: errors must be positive and finite");
  }
  const std::size_t n = epsilons.size();
  std::vector<double> x(n), y(n);
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = std::log(epsilons[i]);
    y[i] = std::log(errors[i]);
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  ConvergenceStudyResult out;
  out.epsilons = epsilons;
  out.errors = errors;
  out.slope = sxy / sxx;
  out.intercept = my - out.slope * mx;
  for (std::size_t i = 0; i < n; ++i)
    out.residual = std::max(
        out.residual, std::abs(y[i] - (out.slope * x[i] + out.intercept)));
  return out;
}

BoundednessReport boundedness_report(
    const std::vector<DiagnosticsRecord>& records, double M) {
  if (records.empty()) throw InvalidArgument("boundedness report needs records");
  BoundednessReport out;
  for (const auto& r : records) {
    out.times.push_back(r.t);
    out.values.push_back(r.bound_functional);
    out.supremum = std::max(out.supremum, r.bound_functional);
    if (!out.first_crossing && r.bound_functional > M) out.first_crossing = r.t;
  }
  return out;
}

double default_bound_M(const ScalarField& u1, const ScalarField& u2,
                       double rho_bar, double s) {
  const std::array<ScalarField, 2> u{u1, u2};
  return 4.0 * rho_bar * sobolev_norm(std::span<const ScalarField>(u), s + 1.0);
}

double time_weight(double t, double t_end) {
  if (!(t_end > 0.0)) return 1.0;
  return 1.0 - std::cos(2.0 * std::numbers::pi * t / t_end);
}

std::array<double, 3> weighted_pairings(
    const std::vector<DiagnosticsRecord>& records, bool reference) {
  std::array<double, 3> out{};
  if (records.empty()) return out;
  if (records.size() == 1)
    return reference ? records[0].reference_pairing : records[0].pressure_pairing;
  const double t_end = records.back().t;
  std::array<double, 3> num{};
  double den = 0.0;
  for (std::size_t k = 1; k < records.size(); ++k) {
    const auto& a = records[k - 1];
    const auto& b = records[k];
    const double dt = b.t - a.t;
    const double wa = time_weight(a.t, t_end), wb = time_weight(b.t, t_end);
    const auto& pa = reference ? a.reference_pairing : a.pressure_pairing;
    const auto& pb = reference ? b.reference_pairing : b.pressure_pairing;
    for (int i = 0; i < 3; ++i) num[i] += 0.5 * dt * (wa * pa[i] + wb * pb[i]);
    den += 0.5 * dt * (wa + wb);
  }
  for (int i = 0; i < 3; ++i) out[i] = den > 0.0 ? num[i] / den : 0.0;
  return out;
}

}  // namespace vbgk
