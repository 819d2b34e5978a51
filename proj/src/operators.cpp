#include "itreg/operators.hpp"

#include <cmath>
#include <numbers>

#include "itreg/error.hpp"

namespace itreg {

namespace {
constexpr double kOverflowThreshold = 1e300;
}

FourierMultiplierOperator::FourierMultiplierOperator(TorusGrid grid, std::vector<double> symbol,
                                                     double smoothing_order)
    : grid_(grid), symbol_(std::move(symbol)), smoothing_order_(smoothing_order) {
  if (symbol_.size() != grid_.size()) throw GridMismatch(grid_.size(), symbol_.size());
  if (smoothing_order_ < 0.0) throw ConfigError("smoothing order must be non-negative");
  const std::size_t n = grid_.size();
  for (std::size_t k = 0; k < n; ++k) {
    if (!(symbol_[k] > 0.0) || !std::isfinite(symbol_[k])) {
      throw ConfigError("multiplier symbol must be positive and finite at mode " +
                        std::to_string(grid_.mode_at(k)));
    }
  }
  for (std::size_t k = 1; k < n / 2; ++k) {
    if (symbol_[k] != symbol_[n - k]) {
      throw ConfigError("multiplier symbol must be even in j (mode " + std::to_string(k) + ")");
    }
    if (symbol_[k] > symbol_[k - 1]) {
      throw ConfigError("multiplier symbol must be non-increasing in |j| (mode " +
                        std::to_string(k) + ")");
    }
  }
  if (symbol_[n / 2] > symbol_[n / 2 - 1]) {
    throw ConfigError("multiplier symbol must be non-increasing in |j| (Nyquist mode)");
  }
}

FourierMultiplierOperator FourierMultiplierOperator::radial(TorusGrid grid,
                                                            const std::function<double(int)>& mu,
                                                            double smoothing_order) {
  std::vector<double> symbol(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) symbol[k] = mu(std::abs(grid.mode_at(k)));
  return FourierMultiplierOperator(grid, std::move(symbol), smoothing_order);
}

void FourierMultiplierOperator::scale_spectrum(Spectrum& c, double power) const {
  require_same_grid(grid_, c.grid());
  auto coeffs = c.coefficients();
  if (power == 1.0) {
    for (std::size_t k = 0; k < coeffs.size(); ++k) coeffs[k] *= symbol_[k];
  } else {
    for (std::size_t k = 0; k < coeffs.size(); ++k) coeffs[k] *= std::pow(symbol_[k], power);
  }
}

FourierMultiplierOperator make_inverse_helmholtz(const TorusGrid& grid) {
  constexpr double four_pi_sq = 4.0 * std::numbers::pi * std::numbers::pi;
  return FourierMultiplierOperator::radial(
      grid, [](int j) { return 1.0 / (four_pi_sq * j * j + 0.25); }, 2.0);
}

FourierMultiplierOperator make_exponential_smoothing(const TorusGrid& grid, double rate) {
  if (!(rate > 0.0)) throw ConfigError("exponential smoothing rate must be positive");
  // Exponential decay is infinitely smoothing; the metadata order is nominal.
  return FourierMultiplierOperator::radial(
      grid, [rate](int j) { return std::exp(-rate * j); }, 0.0);
}

double helmholtz_kernel(double x) {
  const double frac = x - std::floor(x);
  return std::cosh((2.0 * frac - 1.0) / 4.0) / std::sinh(0.25);
}

Signal kernel_signal(const TorusGrid& grid) { return Signal::sample(grid, helmholtz_kernel); }

Signal apply(const FourierMultiplierOperator& op, const Signal& f) {
  require_same_grid(op.grid(), f.grid());
  Spectrum c = to_spectrum(f);
  op.scale_spectrum(c, 1.0);
  return from_spectrum(c);
}

Signal power_apply(const FourierMultiplierOperator& op, double s, const Signal& f) {
  require_same_grid(op.grid(), f.grid());
  if (s == 0.0) return f;
  Spectrum c = to_spectrum(f);
  auto coeffs = c.coefficients();
  const auto& symbol = op.symbol_fft_order();
  const double log_limit = std::log(kOverflowThreshold);
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    const double magnitude = std::abs(coeffs[k]);
    if (magnitude == 0.0) continue;
    const double log_scale = 2.0 * s * std::log(symbol[k]);
    if (s < 0.0 && std::log(magnitude) + log_scale > log_limit) {
      throw SourceDivisionError(op.grid().mode_at(k));
    }
    coeffs[k] *= std::exp(log_scale);
  }
  return from_spectrum(c);
}

Signal spectral_projection(const FourierMultiplierOperator& op, double lambda, const Signal& f) {
  require_same_grid(op.grid(), f.grid());
  if (!(lambda > 0.0)) throw DomainError("spectral projection needs lambda > 0");
  Spectrum c = to_spectrum(f);
  auto coeffs = c.coefficients();
  const auto& symbol = op.symbol_fft_order();
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (symbol[k] * symbol[k] >= lambda) coeffs[k] = 0.0;
  }
  return from_spectrum(c);
}

}  // namespace itreg
