#include "itreg/bregman.hpp"

#include <variant>

#include "itreg/error.hpp"

namespace itreg {

namespace {

bool near_box(const Penalty& r, const Signal& f) {
  const auto* p = std::get_if<EntropyPenalty>(&r);
  if (p == nullptr) return false;
  for (double v : f.values()) {
    if (v - p->box_lo <= 1e-9 || p->box_hi - v <= 1e-9) return true;
  }
  return false;
}

SolveReport solve_step(const FourierMultiplierOperator& op, const Signal& g_obs, double alpha,
                       const Penalty& r, const SolverConfig& cfg, StepMethod method) {
  if (method == StepMethod::spectral) {
    const auto* q = std::get_if<QuadraticPenalty>(&r);
    if (q == nullptr) throw Unsupported("spectral step requires a quadratic penalty");
    SolveReport report{solve_quadratic_spectral(op, g_obs, alpha, q->prior), 0, 0.0, 0.0, false};
    report.objective = tikhonov_objective(op, g_obs, alpha, r, report.minimizer);
    return report;
  }
  return solve_generalized_dr(op, g_obs, alpha, r, cfg);
}

}  // namespace

Signal dual_variable(const FourierMultiplierOperator& op, const Signal& f_n, const Signal& g_obs,
                     double alpha) {
  if (!(alpha > 0.0)) throw DomainError("alpha must be positive");
  return (1.0 / alpha) * (g_obs - apply(op, f_n));
}

std::vector<BregmanState> bregman_iterate(const FourierMultiplierOperator& op,
                                          const Signal& g_obs, double alpha, const Penalty& r,
                                          int n_steps, const SolverConfig& cfg,
                                          StepMethod method) {
  if (n_steps < 1) throw DomainError("bregman_iterate needs n_steps >= 1");
  require_same_grid(op.grid(), g_obs.grid());

  std::vector<BregmanState> states;
  states.reserve(static_cast<std::size_t>(n_steps));
  Penalty step_penalty = r;
  Signal accumulated(op.grid());
  bool warn = false;
  for (int n = 1; n <= n_steps; ++n) {
    if (n >= 2) {
      const Signal& previous = states.back().iterate;
      warn = near_box(r, previous);
      if (std::holds_alternative<EntropyPenalty>(r) && !(previous.min() > 0.0)) {
        throw SubgradientUndefined("previous iterate touches zero; KL Bregman step undefined");
      }
      // Under interiority D_R(., f_{n-1}) is the same penalty with prior f_{n-1}.
      step_penalty = with_prior(r, previous);
    }
    SolveReport report = solve_step(op, g_obs, alpha, step_penalty, cfg, method);
    Signal dual = dual_variable(op, report.minimizer, g_obs, alpha);
    accumulated += apply(op, dual);
    states.push_back(BregmanState{n, report.minimizer, std::move(dual), accumulated,
                                  std::move(report), warn});
  }
  return states;
}

double step_penalty_value(const Penalty& r, const std::vector<BregmanState>& states,
                          const Signal& f) {
  if (states.empty()) return penalty_value(r, f);
  const BregmanState& prev = states.back();
  return penalty_value(r, f) - penalty_value(r, prev.iterate) -
         inner(prev.accumulated_subgradient, f - prev.iterate);
}

std::pair<double, double> bregman_distance_invariance_check(
    const Penalty& r, const FourierMultiplierOperator& op, const std::vector<BregmanState>& states,
    const Signal& f, const Signal& base) {
  require_same_grid(op.grid(), f.grid());
  require_same_grid(op.grid(), base.grid());
  // Subgradient of the step penalty at base: dR(base) shifted by -f*_prev.
  Signal step_sub = subgradient(r, base);
  if (!states.empty()) step_sub -= states.back().accumulated_subgradient;
  const double lhs = step_penalty_value(r, states, f) - step_penalty_value(r, states, base) -
                     inner(step_sub, f - base);
  const double rhs = bregman_distance(r, f, base);
  return {lhs, rhs};
}

}  // namespace itreg
