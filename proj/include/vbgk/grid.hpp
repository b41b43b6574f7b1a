#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace vbgk {

/// Uniform periodic grid on [0, 2pi)^2 with n points per axis.
class Grid {
 public:
  /// Throws InvalidArgument unless n >= 8 and n is even.
  explicit Grid(int n);

  int n() const { return n_; }
  double dx() const { return dx_; }
  std::size_t size() const { return static_cast<std::size_t>(n_) * n_; }
  std::size_t index(int ix, int iy) const {
    return static_cast<std::size_t>(ix) * n_ + iy;
  }
  double coord(int i) const { return i * dx_; }
  /// Signed wavenumber of FFT slot i, in {-n/2+1, ..., n/2}.
  int wavenumber(int i) const { return i <= n_ / 2 ? i : i - n_; }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  int n_;
  double dx_;
};

enum class Axis { x, y };

/// Real field sampled on the grid, row-major: values[ix * n + iy] is the
/// sample at (ix * dx, iy * dx).
struct ScalarField {
  Grid grid;
  std::vector<double> values;

  explicit ScalarField(const Grid& g, double fill = 0.0)
      : grid(g), values(g.size(), fill) {}
  ScalarField(const Grid& g, std::vector<double> v);

  template <typename F>
  static ScalarField sample(const Grid& g, F&& fn) {
    ScalarField out(g);
    for (int ix = 0; ix < g.n(); ++ix)
      for (int iy = 0; iy < g.n(); ++iy)
        out.values[g.index(ix, iy)] = fn(g.coord(ix), g.coord(iy));
    return out;
  }

  double& operator()(int ix, int iy) { return values[grid.index(ix, iy)]; }
  double operator()(int ix, int iy) const { return values[grid.index(ix, iy)]; }

  ScalarField& operator+=(const ScalarField& o);
  ScalarField& operator-=(const ScalarField& o);
  ScalarField& operator*=(double s);
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(ScalarField a, double s);
ScalarField operator*(double s, ScalarField a);
/// Pointwise product.
ScalarField hadamard(const ScalarField& a, const ScalarField& b);

/// Fourier coefficients under f_k = (1/n^2) sum_j f(x_j) exp(-i k.x_j),
/// stored in FFT slot order (see Grid::wavenumber).
struct SpectralField {
  Grid grid;
  std::vector<std::complex<double>> coeffs;

  explicit SpectralField(const Grid& g) : grid(g), coeffs(g.size()) {}

  std::complex<double>& at(int kx, int ky);
  std::complex<double> at(int kx, int ky) const;
};

SpectralField to_spectral(const ScalarField& f);
/// Real part of the inverse transform.
ScalarField from_spectral(const SpectralField& F);

/// Multiplies each coefficient by (i k_axis)^order. The Nyquist mode is
/// zeroed for odd orders.
ScalarField spectral_derivative(const ScalarField& f, Axis axis, int order = 1);
SpectralField spectral_derivative(const SpectralField& F, Axis axis, int order = 1);

/// g(x, y) = f(x - sx, y - sy), exact for band-limited fields.
ScalarField translate(const ScalarField& f, double sx, double sy);

double l2_norm(const ScalarField& f);
double linf_norm(const ScalarField& f);
/// sqrt(sum_k (1 + |k|^2)^s |f_k|^2). Throws InvalidArgument for s < 0.
double sobolev_norm(const ScalarField& f, double s);
double sobolev_norm(const SpectralField& F, double s);

/// Root-sum-of-squares over components.
double l2_norm(std::span<const ScalarField> components);
double sobolev_norm(std::span<const ScalarField> components, double s);
double linf_norm(std::span<const ScalarField> components);

/// Mean of f over the torus under the normalized measure.
double mean(const ScalarField& f);
/// <f, g> = mean(f g).
double pairing(const ScalarField& f, const ScalarField& g);
double min_value(const ScalarField& f);
double max_value(const ScalarField& f);
bool all_finite(const ScalarField& f);

/// Spectral divergence d/dx u1 + d/dy u2.
ScalarField divergence(const ScalarField& u1, const ScalarField& u2);

}  // namespace vbgk
