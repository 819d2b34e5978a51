#pragma once

// Uniform grids on the torus R/Z, real signals sampled on them, and their
// Fourier coefficients.

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace itreg {

/// Uniform grid x_i = i/n, i = 0..n-1, on the unit torus. n is even and >= 4.
class TorusGrid {
public:
  explicit TorusGrid(std::size_t n);

  std::size_t size() const noexcept { return n_; }
  double spacing() const noexcept { return 1.0 / static_cast<double>(n_); }
  double point(std::size_t i) const noexcept { return static_cast<double>(i) * spacing(); }

  /// Modes run over -n/2 .. n/2-1.
  int min_mode() const noexcept { return -static_cast<int>(n_ / 2); }
  int max_mode() const noexcept { return static_cast<int>(n_ / 2) - 1; }

  /// Storage index (FFT order) of a mode and back.
  std::size_t index_of(int mode) const;
  int mode_at(std::size_t index) const noexcept {
    return index < n_ / 2 ? static_cast<int>(index)
                          : static_cast<int>(index) - static_cast<int>(n_);
  }

  friend bool operator==(const TorusGrid&, const TorusGrid&) = default;

private:
  std::size_t n_;
};

void require_same_grid(const TorusGrid& a, const TorusGrid& b);

/// Real samples of a function on a TorusGrid.
class Signal {
public:
  explicit Signal(TorusGrid grid);
  Signal(TorusGrid grid, std::vector<double> values);

  static Signal constant(TorusGrid grid, double value);
  static Signal sample(TorusGrid grid, const std::function<double(double)>& f);
  /// sin(2*pi*k*x) sampled on the grid.
  static Signal sinusoid(TorusGrid grid, int k);
  /// Unit L2-norm real mode: sqrt(2)*cos(2*pi*k*x), or the constant 1 for k = 0.
  static Signal unit_mode(TorusGrid grid, int k);

  const TorusGrid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }
  const std::vector<double>& vector() const noexcept { return values_; }

  double operator[](std::size_t i) const noexcept { return values_[i]; }
  double& operator[](std::size_t i) noexcept { return values_[i]; }

  double min() const;
  double max() const;
  bool all_finite() const;

  Signal& operator+=(const Signal& other);
  Signal& operator-=(const Signal& other);
  Signal& operator*=(double s);

private:
  TorusGrid grid_;
  std::vector<double> values_;
};

Signal operator+(Signal a, const Signal& b);
Signal operator-(Signal a, const Signal& b);
Signal operator*(double s, Signal a);
Signal operator-(Signal a);

/// Complex Fourier coefficients c_j, j = -n/2..n/2-1, stored in FFT order.
class Spectrum {
public:
  explicit Spectrum(TorusGrid grid);

  const TorusGrid& grid() const noexcept { return grid_; }
  std::complex<double>& operator()(int mode) { return coeffs_[grid_.index_of(mode)]; }
  const std::complex<double>& operator()(int mode) const { return coeffs_[grid_.index_of(mode)]; }

  std::span<std::complex<double>> coefficients() noexcept { return coeffs_; }
  std::span<const std::complex<double>> coefficients() const noexcept { return coeffs_; }

private:
  TorusGrid grid_;
  std::vector<std::complex<double>> coeffs_;
};

/// c_j = (1/n) sum_i f(x_i) exp(-2 pi i j x_i), so spectra equal continuous
/// Fourier coefficients.
Spectrum to_spectrum(const Signal& f);

/// Inverse of to_spectrum. Throws SpectrumNotReal when c_{-j} != conj(c_j)
/// beyond 1e-10 relative to the largest coefficient.
Signal from_spectrum(const Spectrum& c);

/// Cardinal B-spline of the given degree supported on [0, degree+1].
double cardinal_bspline(double t, int degree);

/// f = 1 + B where B is the cardinal B-spline of the given degree (4 or 5)
/// rescaled to supp B = [0, 1].
Signal bspline_truth(const TorusGrid& grid, int degree = 5);

/// Quadrature norms with weight 1/n.
double norm_l1(const Signal& f);
double norm_l2(const Signal& f);
double inner(const Signal& f, const Signal& g);

}  // namespace itreg
