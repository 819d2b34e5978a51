#pragma once

#include <optional>

#include "itreg/functionals.hpp"
#include "itreg/operators.hpp"

namespace itreg {

struct SolverConfig {
  /// Douglas-Rachford step. Unset means the curvature scale of the penalty at
  /// its prior (1 for quadratic, mean prior value for entropy).
  std::optional<double> gamma;
  double relax = 1.0;
  int max_iter = 20000;
  double tol = 1e-10;

  void validate() const;
};

struct SolveReport {
  Signal minimizer;
  int iterations = 0;
  double final_residual = 0.0;
  double objective = 0.0;
  /// Some sample lies within 1e-9 of a box bound (entropy penalty only).
  bool bound_active = false;
};

/// (1/alpha) 1/2 ||T f - g||^2 + R(f).
double tikhonov_objective(const FourierMultiplierOperator& op, const Signal& g_obs, double alpha,
                          const Penalty& r, const Signal& f);

/// Exact minimiser of (1/alpha) 1/2 ||T f - g||^2 + 1/2 ||f - prior||^2:
/// f_j = (mu_j g_j + alpha prior_j) / (mu_j^2 + alpha).
Signal solve_quadratic_spectral(const FourierMultiplierOperator& op, const Signal& g_obs,
                                double alpha, const Signal& prior);

/// Douglas-Rachford splitting of F1 = (1/alpha) S(T f - g_obs) and F2 = R.
/// Stops when ||z_{k+1} - z_k|| / max(1, ||z_k||) <= tol; throws NonConvergence
/// after max_iter iterations.
SolveReport solve_generalized_dr(const FourierMultiplierOperator& op, const Signal& g_obs,
                                 double alpha, const Penalty& r, const SolverConfig& cfg = {});

double default_gamma(const Penalty& r);

}  // namespace itreg
