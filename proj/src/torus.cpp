#include "itreg/torus.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>

#include "itreg/error.hpp"

namespace itreg {

namespace {

// FFTW planning is not thread safe; plans are created once per size under a
// lock and then executed through the new-array interface, which is.
struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
  ~PlanPair() {
    if (forward) fftw_destroy_plan(forward);
    if (backward) fftw_destroy_plan(backward);
  }
};

const PlanPair& plans_for(std::size_t n) {
  static std::mutex mutex;
  static std::map<std::size_t, std::unique_ptr<PlanPair>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) {
    slot = std::make_unique<PlanPair>();
    std::vector<double> real(n);
    std::vector<std::complex<double>> half(n / 2 + 1);
    const int size = static_cast<int>(n);
    auto* cplx = reinterpret_cast<fftw_complex*>(half.data());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    slot->forward = fftw_plan_dft_r2c_1d(size, real.data(), cplx, flags);
    slot->backward = fftw_plan_dft_c2r_1d(size, cplx, real.data(), flags | FFTW_DESTROY_INPUT);
  }
  return *slot;
}

}  // namespace

TorusGrid::TorusGrid(std::size_t n) : n_(n) {
  if (n < 4 || n % 2 != 0) {
    throw ConfigError("torus grid size must be even and >= 4, got " + std::to_string(n));
  }
}

std::size_t TorusGrid::index_of(int mode) const {
  if (mode < min_mode() || mode > max_mode()) {
    throw DomainError("mode " + std::to_string(mode) + " outside grid range");
  }
  return mode >= 0 ? static_cast<std::size_t>(mode)
                   : static_cast<std::size_t>(mode + static_cast<int>(n_));
}

void require_same_grid(const TorusGrid& a, const TorusGrid& b) {
  if (!(a == b)) throw GridMismatch(a.size(), b.size());
}

// ---------------------------------------------------------------------------
// Signal

Signal::Signal(TorusGrid grid) : grid_(grid), values_(grid.size(), 0.0) {}

Signal::Signal(TorusGrid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) throw GridMismatch(grid_.size(), values_.size());
  if (!all_finite()) throw DomainError("signal contains non-finite samples");
}

Signal Signal::constant(TorusGrid grid, double value) {
  return Signal(grid, std::vector<double>(grid.size(), value));
}

Signal Signal::sample(TorusGrid grid, const std::function<double(double)>& f) {
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(grid.point(i));
  return Signal(grid, std::move(v));
}

Signal Signal::sinusoid(TorusGrid grid, int k) {
  // Reduce k*i modulo n before scaling so samples stay exact for large k.
  const auto n = static_cast<long long>(grid.size());
  std::vector<double> v(grid.size());
  for (long long i = 0; i < n; ++i) {
    const long long r = (static_cast<long long>(k) * i) % n;
    v[static_cast<std::size_t>(i)] =
        std::sin(2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(n));
  }
  return Signal(grid, std::move(v));
}

Signal Signal::unit_mode(TorusGrid grid, int k) {
  if (k == 0) return constant(grid, 1.0);
  const auto n = static_cast<long long>(grid.size());
  std::vector<double> v(grid.size());
  for (long long i = 0; i < n; ++i) {
    const long long r = (static_cast<long long>(k) * i) % n;
    v[static_cast<std::size_t>(i)] =
        std::numbers::sqrt2 *
        std::cos(2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(n));
  }
  return Signal(grid, std::move(v));
}

double Signal::min() const { return *std::min_element(values_.begin(), values_.end()); }
double Signal::max() const { return *std::max_element(values_.begin(), values_.end()); }

bool Signal::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

Signal& Signal::operator+=(const Signal& other) {
  require_same_grid(grid_, other.grid_);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

Signal& Signal::operator-=(const Signal& other) {
  require_same_grid(grid_, other.grid_);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

Signal& Signal::operator*=(double s) {
  for (double& v : values_) v *= s;
  return *this;
}

Signal operator+(Signal a, const Signal& b) { return a += b; }
Signal operator-(Signal a, const Signal& b) { return a -= b; }
Signal operator*(double s, Signal a) { return a *= s; }
Signal operator-(Signal a) { return a *= -1.0; }

// ---------------------------------------------------------------------------
// Spectrum

Spectrum::Spectrum(TorusGrid grid) : grid_(grid), coeffs_(grid.size()) {}

Spectrum to_spectrum(const Signal& f) {
  const std::size_t n = f.size();
  const PlanPair& plans = plans_for(n);
  std::vector<double> in(f.values().begin(), f.values().end());
  std::vector<std::complex<double>> half(n / 2 + 1);
  fftw_execute_dft_r2c(plans.forward, in.data(), reinterpret_cast<fftw_complex*>(half.data()));

  Spectrum out(f.grid());
  auto c = out.coefficients();
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t k = 0; k <= n / 2; ++k) c[k] = half[k] * scale;
  for (std::size_t k = n / 2 + 1; k < n; ++k) c[k] = std::conj(c[n - k]);
  return out;
}

Signal from_spectrum(const Spectrum& spec) {
  const TorusGrid& grid = spec.grid();
  const std::size_t n = grid.size();
  auto c = spec.coefficients();

  double scale = 0.0;
  for (const auto& v : c) scale = std::max(scale, std::abs(v));
  const double tol = 1e-10 * std::max(scale, 1e-300);
  for (std::size_t k = 0; k <= n / 2; ++k) {
    const std::size_t mirror = (n - k) % n;
    const double defect = std::abs(c[mirror] - std::conj(c[k]));
    if (defect > tol) throw SpectrumNotReal(grid.mode_at(k), defect);
  }

  const PlanPair& plans = plans_for(n);
  std::vector<std::complex<double>> half(c.begin(), c.begin() + static_cast<long>(n / 2 + 1));
  std::vector<double> out(n);
  fftw_execute_dft_c2r(plans.backward, reinterpret_cast<fftw_complex*>(half.data()), out.data());
  return Signal(grid, std::move(out));
}

// ---------------------------------------------------------------------------
// B-splines

double cardinal_bspline(double t, int degree) {
  if (degree < 0) throw DomainError("negative B-spline degree");
  const double width = degree + 1;
  if (t <= 0.0 || t >= width) return 0.0;
  // Evaluate on the left half only; the spline is symmetric about width/2.
  t = std::min(t, width - t);
  // Truncated power form: B(t) = 1/k! sum_i (-1)^i C(k+1, i) (t - i)_+^k.
  double sum = 0.0;
  double binom = 1.0;
  for (int i = 0; i <= degree + 1 && i < t; ++i) {
    const double sign = (i % 2 == 0) ? 1.0 : -1.0;
    sum += sign * binom * std::pow(t - i, degree);
    binom = binom * (degree + 1 - i) / (i + 1);
  }
  double factorial = 1.0;
  for (int k = 2; k <= degree; ++k) factorial *= k;
  return std::max(0.0, sum / factorial);
}

Signal bspline_truth(const TorusGrid& grid, int degree) {
  if (degree != 4 && degree != 5) {
    throw ConfigError("B-spline truth supports degree 4 or 5, got " + std::to_string(degree));
  }
  const std::size_t min_n = 8 * static_cast<std::size_t>(degree + 1);
  if (grid.size() < min_n) {
    throw ConfigError("B-spline truth of degree " + std::to_string(degree) + " needs n >= " +
                      std::to_string(min_n));
  }
  const double width = degree + 1;
  // Sample via integer arithmetic so knots land exactly on grid points when
  // n is a multiple of degree+1.
  const double n = static_cast<double>(grid.size());
  return Signal::sample(grid, [&](double x) {
    const double t = std::round(x * n) * width / n;
    return 1.0 + cardinal_bspline(t, degree);
  });
}

// ---------------------------------------------------------------------------
// Quadrature

double norm_l1(const Signal& f) {
  double s = 0.0;
  for (double v : f.values()) s += std::abs(v);
  return s / static_cast<double>(f.size());
}

double norm_l2(const Signal& f) { return std::sqrt(inner(f, f)); }

double inner(const Signal& f, const Signal& g) {
  require_same_grid(f.grid(), g.grid());
  const auto a = f.values();
  const auto b = g.values();
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0) / static_cast<double>(f.size());
}

}  // namespace itreg
