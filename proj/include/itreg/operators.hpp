#pragma once

#include <functional>
#include <vector>

#include "itreg/torus.hpp"

namespace itreg {

/// Positive self-adjoint operator diagonal in the Fourier basis: (Tf)^_j = mu_j c_j.
///
/// The symbol is stored in FFT order and must be positive, even in j and
/// non-increasing in |j|. Since T = T*, the normal operator T*T has symbol mu_j^2.
class FourierMultiplierOperator {
public:
  FourierMultiplierOperator(TorusGrid grid, std::vector<double> symbol, double smoothing_order);

  /// Builds the symbol from a function of |j|.
  static FourierMultiplierOperator radial(TorusGrid grid, const std::function<double(int)>& mu,
                                          double smoothing_order);

  const TorusGrid& grid() const noexcept { return grid_; }
  double smoothing_order() const noexcept { return smoothing_order_; }
  double symbol(int mode) const { return symbol_[grid_.index_of(mode)]; }
  const std::vector<double>& symbol_fft_order() const noexcept { return symbol_; }

  /// Multiplies a spectrum in place by mu_j^power.
  void scale_spectrum(Spectrum& c, double power) const;

private:
  TorusGrid grid_;
  std::vector<double> symbol_;
  double smoothing_order_;
};

/// T = (-d^2/dx^2 + 1/4)^{-1}, mu_j = 1 / (4 pi^2 j^2 + 1/4).
FourierMultiplierOperator make_inverse_helmholtz(const TorusGrid& grid);

/// Diagonal test operator with geometrically decaying symbol mu_j = exp(-rate |j|).
FourierMultiplierOperator make_exponential_smoothing(const TorusGrid& grid, double rate);

/// Periodic Green's function of -d^2/dx^2 + 1/4: cosh((2x - 2 floor(x) - 1)/4) / sinh(1/4).
double helmholtz_kernel(double x);
Signal kernel_signal(const TorusGrid& grid);

Signal apply(const FourierMultiplierOperator& op, const Signal& f);

/// Applies (T*T)^s, i.e. the multiplier mu_j^{2s}. For s < 0 a coefficient
/// whose magnitude would exceed 1e300 raises SourceDivisionError.
Signal power_apply(const FourierMultiplierOperator& op, double s, const Signal& f);

/// E_lambda f = 1_{[0, lambda)}(T*T) f: keeps modes with mu_j^2 < lambda.
Signal spectral_projection(const FourierMultiplierOperator& op, double lambda, const Signal& f);

}  // namespace itreg
