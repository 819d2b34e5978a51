#include "itreg/solvers.hpp"

#include <cmath>
#include <numeric>
#include <variant>

#include "itreg/error.hpp"

namespace itreg {

namespace {

double l2_norm_raw(const std::vector<double>& v) {
  const double ss = std::inner_product(v.begin(), v.end(), v.begin(), 0.0);
  return std::sqrt(ss / static_cast<double>(v.size()));
}

bool touches_box(const Penalty& r, const Signal& f) {
  const auto* p = std::get_if<EntropyPenalty>(&r);
  if (p == nullptr) return false;
  for (double v : f.values()) {
    if (v - p->box_lo <= 1e-9 || p->box_hi - v <= 1e-9) return true;
  }
  return false;
}

}  // namespace

void SolverConfig::validate() const {
  if (gamma && !(*gamma > 0.0)) throw ConfigError("solver gamma must be positive");
  if (!(relax > 0.0 && relax <= 2.0)) throw ConfigError("solver relax must lie in (0, 2]");
  if (max_iter < 1) throw ConfigError("solver max_iter must be positive");
  if (!(tol > 0.0)) throw ConfigError("solver tol must be positive");
}

double default_gamma(const Penalty& r) {
  if (std::holds_alternative<QuadraticPenalty>(r)) return 1.0;
  const Signal& prior = penalty_prior(r);
  return std::accumulate(prior.values().begin(), prior.values().end(), 0.0) /
         static_cast<double>(prior.size());
}

double tikhonov_objective(const FourierMultiplierOperator& op, const Signal& g_obs, double alpha,
                          const Penalty& r, const Signal& f) {
  const Signal residual = apply(op, f) - g_obs;
  return 0.5 * inner(residual, residual) / alpha + penalty_value(r, f);
}

Signal solve_quadratic_spectral(const FourierMultiplierOperator& op, const Signal& g_obs,
                                double alpha, const Signal& prior) {
  require_same_grid(op.grid(), g_obs.grid());
  require_same_grid(op.grid(), prior.grid());
  if (!(alpha > 0.0)) throw DomainError("alpha must be positive");
  const Spectrum gc = to_spectrum(g_obs);
  Spectrum fc = to_spectrum(prior);
  auto fs = fc.coefficients();
  const auto gs = gc.coefficients();
  const auto& mu = op.symbol_fft_order();
  for (std::size_t k = 0; k < fs.size(); ++k) {
    fs[k] = (mu[k] * gs[k] + alpha * fs[k]) / (mu[k] * mu[k] + alpha);
  }
  return from_spectrum(fc);
}

SolveReport solve_generalized_dr(const FourierMultiplierOperator& op, const Signal& g_obs,
                                 double alpha, const Penalty& r, const SolverConfig& cfg) {
  cfg.validate();
  require_same_grid(op.grid(), g_obs.grid());
  if (!(alpha > 0.0)) throw DomainError("alpha must be positive");
  const TorusGrid grid = op.grid();
  const double gamma = cfg.gamma.value_or(default_gamma(r));
  const double ratio = gamma / alpha;

  // Spectral prox of gamma F1 with the data term folded into a constant.
  const auto& mu = op.symbol_fft_order();
  const Spectrum gc = to_spectrum(g_obs);
  std::vector<std::complex<double>> data_term(grid.size());
  std::vector<double> denom(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    data_term[k] = ratio * mu[k] * gc.coefficients()[k];
    denom[k] = 1.0 + ratio * mu[k] * mu[k];
  }
  auto prox_f1 = [&](const Signal& x) {
    Spectrum xc = to_spectrum(x);
    auto xs = xc.coefficients();
    for (std::size_t k = 0; k < xs.size(); ++k) xs[k] = (xs[k] + data_term[k]) / denom[k];
    return from_spectrum(xc);
  };

  Signal z = penalty_prior(r);
  std::vector<double> step(grid.size());
  double residual = INFINITY;
  int iterations = 0;
  while (iterations < cfg.max_iter) {
    ++iterations;
    const Signal u = prox_penalty(r, z, gamma);
    const Signal v = prox_f1(2.0 * u - z);
    for (std::size_t i = 0; i < step.size(); ++i) step[i] = cfg.relax * (v[i] - u[i]);
    const double z_norm = norm_l2(z);
    for (std::size_t i = 0; i < step.size(); ++i) z[i] += step[i];
    residual = l2_norm_raw(step) / std::max(1.0, z_norm);
    if (residual <= cfg.tol) break;
  }
  if (residual > cfg.tol) throw NonConvergence(iterations, residual);

  SolveReport report{prox_penalty(r, z, gamma), iterations, residual, 0.0, false};
  report.objective = tikhonov_objective(op, g_obs, alpha, r, report.minimizer);
  report.bound_active = touches_box(r, report.minimizer);
  return report;
}

}  // namespace itreg
