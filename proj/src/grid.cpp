#include "vbgk/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fft.hpp"
#include "vbgk/errors.hpp"

namespace vbgk {

Grid::Grid(int n) : n_(n), dx_(0.0) {
  if (n < 8 || n % 2 != 0)
    throw InvalidArgument("grid size must be an even integer >= 8, got " +
                          std::to_string(n));
  dx_ = 2.0 * std::numbers::pi / n;
}

namespace {

void require_same_grid(const Grid& a, const Grid& b) {
  if (!(a == b))
    throw DimensionMismatch("grid mismatch: " + std::to_string(a.n()) +
                            " vs " + std::to_string(b.n()));
}

void require_consistent(const ScalarField& f) {
  if (f.values.size() != f.grid.size())
    throw DimensionMismatch("field holds " + std::to_string(f.values.size()) +
                            " values, grid expects " +
                            std::to_string(f.grid.size()));
}

}  // namespace

ScalarField::ScalarField(const Grid& g, std::vector<double> v)
    : grid(g), values(std::move(v)) {
  require_consistent(*this);
}

ScalarField& ScalarField::operator+=(const ScalarField& o) {
  require_same_grid(grid, o.grid);
  for (std::size_t i = 0; i < values.size(); ++i) values[i] += o.values[i];
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& o) {
  require_same_grid(grid, o.grid);
  for (std::size_t i = 0; i < values.size(); ++i) values[i] -= o.values[i];
  return *this;
}

ScalarField& ScalarField::operator*=(double s) {
  for (auto& v : values) v *= s;
  return *this;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(ScalarField a, double s) { return a *= s; }
ScalarField operator*(double s, ScalarField a) { return a *= s; }

ScalarField hadamard(const ScalarField& a, const ScalarField& b) {
  require_same_grid(a.grid, b.grid);
  ScalarField out(a.grid);
  for (std::size_t i = 0; i < out.values.size(); ++i)
    out.values[i] = a.values[i] * b.values[i];
  return out;
}

std::complex<double>& SpectralField::at(int kx, int ky) {
  const int n = grid.n();
  return coeffs[grid.index((kx + n) % n, (ky + n) % n)];
}

std::complex<double> SpectralField::at(int kx, int ky) const {
  const int n = grid.n();
  return coeffs[grid.index((kx + n) % n, (ky + n) % n)];
}

SpectralField to_spectral(const ScalarField& f) {
  require_consistent(f);
  SpectralField F(f.grid);
  std::copy(f.values.begin(), f.values.end(), F.coeffs.begin());
  detail::fft2d_forward(f.grid.n(), F.coeffs);
  const double scale = 1.0 / static_cast<double>(f.grid.size());
  for (auto& c : F.coeffs) c *= scale;
  return F;
}

ScalarField from_spectral(const SpectralField& F) {
  if (F.coeffs.size() != F.grid.size())
    throw DimensionMismatch("spectral field size does not match its grid");
  auto work = F.coeffs;
  detail::fft2d_backward(F.grid.n(), work);
  ScalarField out(F.grid);
  for (std::size_t i = 0; i < work.size(); ++i) out.values[i] = work[i].real();
  return out;
}

SpectralField spectral_derivative(const SpectralField& F, Axis axis, int order) {
  if (order < 1) throw InvalidArgument("derivative order must be positive");
  const Grid& g = F.grid;
  const int n = g.n();
  SpectralField out(g);
  for (int ix = 0; ix < n; ++ix) {
    for (int iy = 0; iy < n; ++iy) {
      const int slot = axis == Axis::x ? ix : iy;
      const int k = g.wavenumber(slot);
      if (order % 2 == 1 && k == n / 2) {
        out.coeffs[g.index(ix, iy)] = 0.0;
        continue;
      }
      std::complex<double> factor = 1.0;
      const std::complex<double> ik(0.0, static_cast<double>(k));
      for (int p = 0; p < order; ++p) factor *= ik;
      out.coeffs[g.index(ix, iy)] = factor * F.coeffs[g.index(ix, iy)];
    }
  }
  return out;
}

ScalarField spectral_derivative(const ScalarField& f, Axis axis, int order) {
  return from_spectral(spectral_derivative(to_spectral(f), axis, order));
}

ScalarField translate(const ScalarField& f, double sx, double sy) {
  if (sx == 0.0 && sy == 0.0) return f;
  SpectralField F = to_spectral(f);
  const Grid& g = f.grid;
  const int n = g.n();
  std::vector<std::complex<double>> phase_x(n), phase_y(n);
  for (int i = 0; i < n; ++i) {
    const double k = g.wavenumber(i);
    phase_x[i] = std::polar(1.0, -k * sx);
    phase_y[i] = std::polar(1.0, -k * sy);
  }
  for (int ix = 0; ix < n; ++ix)
    for (int iy = 0; iy < n; ++iy)
      F.coeffs[g.index(ix, iy)] *= phase_x[ix] * phase_y[iy];
  return from_spectral(F);
}

double sobolev_norm(const SpectralField& F, double s) {
  if (!(s >= 0.0)) throw InvalidArgument("Sobolev index must be >= 0");
  const Grid& g = F.grid;
  const int n = g.n();
  double sum = 0.0;
  for (int ix = 0; ix < n; ++ix) {
    const double kx = g.wavenumber(ix);
    for (int iy = 0; iy < n; ++iy) {
      const double ky = g.wavenumber(iy);
      const double w = s == 0.0 ? 1.0 : std::pow(1.0 + kx * kx + ky * ky, s);
      sum += w * std::norm(F.coeffs[g.index(ix, iy)]);
    }
  }
  return std::sqrt(sum);
}

double sobolev_norm(const ScalarField& f, double s) {
  if (!(s >= 0.0)) throw InvalidArgument("Sobolev index must be >= 0");
  return sobolev_norm(to_spectral(f), s);
}

double l2_norm(const ScalarField& f) { return sobolev_norm(f, 0.0); }

double linf_norm(const ScalarField& f) {
  double m = 0.0;
  for (double v : f.values) m = std::max(m, std::abs(v));
  return m;
}

double l2_norm(std::span<const ScalarField> components) {
  return sobolev_norm(components, 0.0);
}

double sobolev_norm(std::span<const ScalarField> components, double s) {
  double sum = 0.0;
  for (const auto& c : components) {
    const double v = sobolev_norm(c, s);
    sum += v * v;
  }
  return std::sqrt(sum);
}

double linf_norm(std::span<const ScalarField> components) {
  if (components.empty()) return 0.0;
  const std::size_t size = components.front().values.size();
  double m = 0.0;
  for (std::size_t i = 0; i < size; ++i) {
    double sq = 0.0;
    for (const auto& c : components) sq += c.values[i] * c.values[i];
    m = std::max(m, std::sqrt(sq));
  }
  return m;
}

double mean(const ScalarField& f) {
  double sum = 0.0;
  for (double v : f.values) sum += v;
  return sum / static_cast<double>(f.values.size());
}

double pairing(const ScalarField& f, const ScalarField& g) {
  require_same_grid(f.grid, g.grid);
  double sum = 0.0;
  for (std::size_t i = 0; i < f.values.size(); ++i)
    sum += f.values[i] * g.values[i];
  return sum / static_cast<double>(f.values.size());
}

double min_value(const ScalarField& f) {
  return *std::min_element(f.values.begin(), f.values.end());
}

double max_value(const ScalarField& f) {
  return *std::max_element(f.values.begin(), f.values.end());
}

bool all_finite(const ScalarField& f) {
  return std::all_of(f.values.begin(), f.values.end(),
                     [](double v) { return std::isfinite(v); });
}

ScalarField divergence(const ScalarField& u1, const ScalarField& u2) {
  require_same_grid(u1.grid, u2.grid);
  return spectral_derivative(u1, Axis::x) + spectral_derivative(u2, Axis::y);
}

}  // namespace vbgk
