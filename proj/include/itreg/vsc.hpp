#pragma once

// Higher-order variational source conditions in the Hilbert setting
// (R = 1/2||.||^2, S = 1/2||.||^2): index functions, source elements, decay
// space norms, rate predictions and a randomized falsifier.

#include <cstdint>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "itreg/operators.hpp"

namespace itreg {

/// Phi(t) = A t^theta. Concave for theta <= 1.
struct HoelderIndex {
  double A = 1.0;
  double theta = 0.5;
};

/// kappa(t) = (-ln t)^{-p} for 0 < t < 1. Only the decay space norm accepts it.
struct LogarithmicIndex {
  double p = 1.0;
};

using IndexFunction = std::variant<HoelderIndex, LogarithmicIndex>;

IndexFunction hoelder(double A, double theta);
double evaluate(const IndexFunction& phi, double t);

struct SourceDecomposition {
  int order = 1;
  /// omega^{(n-1)} for odd order 2n-1.
  std::optional<Signal> omega;
  /// pbar^{(n)} for even order 2n.
  std::optional<Signal> pbar;
  /// omega^{(j)} = (T*T)^{-j} f, j = 1..n-1.
  std::vector<Signal> intermediate_omegas;
  /// pbar^{(j)} = (T*)^{-1} (T*T)^{-(j-1)} f, j = 1..n-1.
  std::vector<Signal> intermediate_pbars;

  const Signal& leading() const { return omega ? *omega : *pbar; }
  /// (T*T)^{leading_power()} leading() reproduces the true solution.
  double leading_power() const { return 0.5 * (order - 1); }
};

struct RatePrediction {
  /// alpha ~ delta^alpha_exponent.
  double alpha_exponent = 0.0;
  /// error ~ delta^error_exponent (norm error for the Hilbert predictor, KL for entropy).
  double error_exponent = 0.0;
  /// Exact-data error ~ alpha^approx_exponent, in the same error measure.
  double approx_exponent = 0.0;
  /// (delta, alpha) -> delta^2/alpha + alpha^{l-1} psi(-1/alpha), up to constants.
  std::function<double(double, double)> envelope;
};

SourceDecomposition construct_source(const FourierMultiplierOperator& op, const Signal& f_true,
                                     int order);

/// sup_{lambda > 0} ||E_lambda f|| / kappa(lambda), evaluated exactly as the
/// right limits at the distinct eigenvalues of T*T.
double decay_space_norm(const FourierMultiplierOperator& op, const Signal& f,
                        const IndexFunction& kappa);

/// Theta_kappa(lambda) = sqrt(lambda) kappa(lambda) and its inverse.
double theta_kappa(const IndexFunction& kappa, double lambda);
double theta_kappa_inverse(const IndexFunction& kappa, double s);

/// Phi_kappa(t) = kappa(Theta^{-1}(sqrt t))^2; Hoelder kappa only.
IndexFunction rate_function(const IndexFunction& kappa);

/// psi(s) = sup_{t >= 0} [s t + Phi(t)] for s < 0 (conjugate of -Phi).
double fenchel_psi(const IndexFunction& phi, double s);

RatePrediction predict_rate_hoelder(int order, double nu);

/// Entropy regularisation with a-smoothing operator and truth smoothness s.
/// With n Bregman steps the attainable smoothness saturates at (n+1) a.
RatePrediction predict_rate_entropy(double s, double a, int bregman_steps = 2);

struct ViolationSearchOptions {
  int trials = 64;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

/// Randomized falsifier for <omega, f> <= 1/2||f||^2 + Phi(||T f||^2).
/// Returns the largest value of the left minus right side found among single
/// Fourier modes, scaled copies of omega and Gaussian random signals, each at
/// amplitudes on a log grid. A non-positive result does not prove the
/// inequality.
double vsc_violation_search(const FourierMultiplierOperator& op, const Signal& omega,
                            const IndexFunction& phi, const ViolationSearchOptions& opts = {});

struct VscConstant {
  double A = 0.0;
  double max_residual = 0.0;
  int doublings = 0;
};

/// Doubles A from A0 until the violation search for A t^theta reports a
/// residual <= tol. Throws DomainError if max_doublings is exhausted.
VscConstant find_vsc_constant(const FourierMultiplierOperator& op, const Signal& omega,
                              double theta, const ViolationSearchOptions& opts = {},
                              double A0 = 1e-3, int max_doublings = 200, double tol = 1e-9);

}  // namespace itreg
