#pragma once

// Bregman iterated Tikhonov regularisation
//
//   f_n in argmin_f (1/alpha) S(T f - g_obs) + D_R(f, f_{n-1}),   n >= 2,
//
// with f_1 the ordinary generalised Tikhonov minimiser. The step-n dual
// variable follows from the extremal relation p_n = (g_obs - T f_n) / alpha,
// and the subgradient used in the next Bregman distance is the accumulated
// sum f*_n = sum_{k <= n} T* p_k.

#include <utility>
#include <vector>

#include "itreg/solvers.hpp"

namespace itreg {

struct BregmanState {
  int step = 1;
  Signal iterate;
  Signal dual;
  Signal accumulated_subgradient;
  SolveReport report;
  /// The previous iterate came within 1e-9 of a box bound, so the
  /// Bregman step may really need a normal-cone element.
  bool interiority_warning = false;
};

enum class StepMethod {
  douglas_rachford,
  /// Closed-form spectral solve; quadratic penalties only.
  spectral,
};

std::vector<BregmanState> bregman_iterate(const FourierMultiplierOperator& op,
                                          const Signal& g_obs, double alpha, const Penalty& r,
                                          int n_steps, const SolverConfig& cfg = {},
                                          StepMethod method = StepMethod::douglas_rachford);

/// p = (g_obs - T f_n) / alpha.
Signal dual_variable(const FourierMultiplierOperator& op, const Signal& f_n, const Signal& g_obs,
                     double alpha);

/// Penalty used at step states.size() + 1 expressed through R and the dual
/// bookkeeping: R(f) - R(f_prev) - <f*_prev, f - f_prev>.
double step_penalty_value(const Penalty& r, const std::vector<BregmanState>& states,
                          const Signal& f);

/// (Bregman distance of the step penalty, Bregman distance of R) between f
/// and base. Both must agree since the penalties differ by an affine term.
std::pair<double, double> bregman_distance_invariance_check(
    const Penalty& r, const FourierMultiplierOperator& op, const std::vector<BregmanState>& states,
    const Signal& f, const Signal& base);

}  // namespace itreg
