#include "itreg/harness.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <random>

#include "itreg/error.hpp"
#include "itreg/parallel.hpp"

namespace itreg {

namespace {

FourierMultiplierOperator build_operator(const ProblemSpec& spec) {
  const TorusGrid grid(spec.grid);
  switch (spec.op) {
    case OperatorKind::inverse_helmholtz:
      return make_inverse_helmholtz(grid);
    case OperatorKind::exponential:
      return make_exponential_smoothing(grid, spec.operator_rate);
  }
  throw ConfigError("unknown operator");
}

// One Bregman run for given data, reduced to what a sweep row needs.
std::vector<SweepRow> run_rows(const Experiment& ex, const Signal& g_obs, double delta,
                               double alpha, int k_worst) {
  const Problem& pb = ex.problem;
  const auto states = bregman_iterate(pb.op, g_obs, alpha, pb.penalty, ex.config.sweep.bregman_steps,
                                      ex.config.solver, ex.config.method);
  std::vector<SweepRow> rows;
  for (const auto& st : states) {
    const auto err = reconstruction_errors(pb.penalty, st.iterate, pb.truth);
    rows.push_back(SweepRow{delta, alpha, k_worst, st.step, err.kl, err.l1,
                            norm_l2(apply(pb.op, st.iterate) - g_obs), st.report.iterations});
  }
  return rows;
}

double column_scale(ErrorMetric metric) { return metric == ErrorMetric::kl ? 1.0 : 0.5; }

}  // namespace

Signal random_bounded_spectrum(const TorusGrid& grid, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> modulus(0.5, 1.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  std::bernoulli_distribution sign;
  Spectrum c(grid);
  c(0) = modulus(rng) * (sign(rng) ? 1.0 : -1.0);
  c(grid.min_mode()) = modulus(rng) * (sign(rng) ? 1.0 : -1.0);
  for (int k = 1; k <= grid.max_mode(); ++k) {
    c(k) = std::polar(modulus(rng), phase(rng));
    c(-k) = std::conj(c(k));
  }
  return from_spectrum(c);
}

Problem build_problem(const ProblemSpec& spec) {
  FourierMultiplierOperator op = build_operator(spec);
  const TorusGrid grid = op.grid();
  Signal truth = spec.truth == TruthKind::bspline
                     ? bspline_truth(grid, spec.bspline_degree)
                     : power_apply(op, 0.5 * spec.source_exponent,
                                   random_bounded_spectrum(grid, spec.source_seed));
  Signal prior = Signal::constant(grid, spec.prior);
  Penalty penalty = spec.penalty == PenaltyKind::entropy
                        ? make_entropy(prior, spec.box_lo, spec.box_hi)
                        : make_quadratic(prior);
  Signal g_true = apply(op, truth);
  return Problem{std::move(op), std::move(truth), std::move(g_true), std::move(penalty)};
}

Experiment make_experiment(const ExperimentConfig& config) {
  config.validate();
  return Experiment{config, build_problem(config.problem)};
}

ReconstructionErrors reconstruction_errors(const Penalty& r, const Signal& f, const Signal& truth) {
  ReconstructionErrors out;
  const Signal diff = f - truth;
  out.l1 = norm_l1(diff);
  if (std::holds_alternative<EntropyPenalty>(r)) {
    out.kl = kl_divergence(f, truth);
  } else {
    out.kl = 0.5 * inner(diff, diff);
  }
  return out;
}

double metric_value(const ReconstructionErrors& e, ErrorMetric metric) {
  return metric == ErrorMetric::kl ? e.kl : e.l1;
}

WorstCase worst_case_noise(const Signal& g_true, double delta, int k_max,
                           const Evaluator& evaluator, ErrorMetric metric, unsigned threads) {
  const TorusGrid& grid = g_true.grid();
  if (!(delta >= 0.0)) throw DomainError("noise level must be non-negative");
  if (k_max < 1 || k_max > grid.max_mode()) {
    throw DomainError("k_max must lie in [1, n/2 - 1]");
  }
  std::vector<double> errors(static_cast<std::size_t>(k_max));
  parallel_for(errors.size(), threads, [&](std::size_t i) {
    const int k = static_cast<int>(i) + 1;
    try {
      errors[i] = metric_value(evaluator(g_true + delta * Signal::sinusoid(grid, k)), metric);
    } catch (const std::exception& e) {
      std::throw_with_nested(CandidateFailure(k, e.what()));
    }
  });
  std::size_t best = 0;
  for (std::size_t i = 1; i < errors.size(); ++i) {
    if (errors[i] > errors[best]) best = i;
  }
  const int k = static_cast<int>(best) + 1;
  return WorstCase{g_true + delta * Signal::sinusoid(grid, k), k, errors[best]};
}

double apriori_alpha(double delta, double c, double sigma) {
  if (!(delta > 0.0) || !(c > 0.0) || !(sigma > 0.0)) {
    throw DomainError("a-priori rule needs delta, c, sigma > 0");
  }
  return c * std::pow(delta, sigma);
}

RatePrediction predicted_rates(const Experiment& ex, int steps) {
  const ProblemSpec& spec = ex.config.problem;
  const double order = ex.problem.op.smoothing_order();
  if (spec.penalty == PenaltyKind::entropy) {
    if (!(order > 0.0)) throw Unsupported("entropy rate prediction needs a finitely smoothing operator");
    return predict_rate_entropy(spec.smoothness, order, steps);
  }
  // Quadratic: truth in ran((T*T)^{t/2}); iterated Tikhonov saturates at t = 2 steps.
  double t = 0.0;
  if (spec.truth == TruthKind::source) {
    t = spec.source_exponent;
  } else {
    if (!(order > 0.0)) throw Unsupported("B-spline rate prediction needs a finitely smoothing operator");
    t = spec.smoothness / order;
  }
  t = std::min(t, 2.0 * steps);
  const int l = std::max(1, static_cast<int>(std::ceil(t)));
  RatePrediction norm_rates = predict_rate_hoelder(l, t - (l - 1));
  // The kl column is 1/2||f - truth||^2: squared norm exponents.
  RatePrediction out = norm_rates;
  out.error_exponent = 2.0 * norm_rates.error_exponent;
  out.approx_exponent = 2.0 * norm_rates.approx_exponent;
  return out;
}

double sweep_sigma(const Experiment& ex) {
  if (ex.config.sweep.alpha_sigma) return *ex.config.sweep.alpha_sigma;
  return predicted_rates(ex, ex.config.sweep.bregman_steps).alpha_exponent;
}

std::vector<SweepRow> approx_error_sweep(const Experiment& ex, const std::vector<double>& alphas) {
  std::vector<std::vector<SweepRow>> per_alpha(alphas.size());
  parallel_for(alphas.size(), ex.config.sweep.threads, [&](std::size_t i) {
    per_alpha[i] = run_rows(ex, ex.problem.g_true, 0.0, alphas[i], 0);
  });
  std::vector<SweepRow> rows;
  for (auto& block : per_alpha) rows.insert(rows.end(), block.begin(), block.end());
  return rows;
}

std::vector<SweepRow> rate_sweep(const Experiment& ex, double c) {
  const SweepSpec& sw = ex.config.sweep;
  const Problem& pb = ex.problem;
  const double sigma = sweep_sigma(ex);
  std::vector<SweepRow> rows;

  if (sw.noise == NoiseKind::worst_case) {
    for (double delta : sw.deltas) {
      const double alpha = apriori_alpha(delta, c, sigma);
      const Evaluator evaluate = [&](const Signal& g) {
        const auto states = bregman_iterate(pb.op, g, alpha, pb.penalty, sw.bregman_steps,
                                            ex.config.solver, ex.config.method);
        return reconstruction_errors(pb.penalty, states.back().iterate, pb.truth);
      };
      const WorstCase wc = worst_case_noise(pb.g_true, delta, sw.k_max, evaluate, sw.metric,
                                            sw.threads);
      auto block = run_rows(ex, wc.g_obs, delta, alpha, wc.k_worst);
      rows.insert(rows.end(), block.begin(), block.end());
    }
    return rows;
  }

  std::vector<std::vector<SweepRow>> per_delta(sw.deltas.size());
  parallel_for(sw.deltas.size(), sw.threads, [&](std::size_t i) {
    const double delta = sw.deltas[i];
    const double alpha = apriori_alpha(delta, c, sigma);
    Signal g = pb.g_true;
    if (sw.noise == NoiseKind::fixed_sinusoid) {
      g += delta * Signal::sinusoid(pb.g_true.grid(), sw.sinusoid_k);
    }
    const int k = sw.noise == NoiseKind::fixed_sinusoid ? sw.sinusoid_k : 0;
    per_delta[i] = run_rows(ex, g, delta, alpha, k);
  });
  for (auto& block : per_delta) rows.insert(rows.end(), block.begin(), block.end());
  return rows;
}

std::vector<SweepRow> rate_sweep(const Experiment& ex) { return rate_sweep(ex, ex.config.sweep.alpha_c); }

Calibration calibrate_c(const Experiment& ex, const std::vector<double>& candidate_cs) {
  if (candidate_cs.empty()) throw DomainError("calibration needs at least one candidate");
  const SweepSpec& sw = ex.config.sweep;
  const double rate = sw.target_rate.value_or(
      column_scale(sw.metric) * predicted_rates(ex, sw.bregman_steps).error_exponent);

  Calibration out;
  out.candidates = candidate_cs;
  for (double c : candidate_cs) {
    const auto rows = rate_sweep(ex, c);
    double worst = 0.0;
    for (const auto& row : rows) {
      if (row.n_bregman != sw.bregman_steps) continue;
      const double err = sw.metric == ErrorMetric::kl ? row.kl_error : row.l1_error;
      worst = std::max(worst, err / std::pow(row.delta, rate));
    }
    out.objectives.push_back(worst);
  }
  const auto best = std::min_element(out.objectives.begin(), out.objectives.end());
  out.c = candidate_cs[static_cast<std::size_t>(best - out.objectives.begin())];
  return out;
}

RateFit fit_rate(const std::vector<SweepRow>& rows, FitX x, FitY y, int n_bregman) {
  std::vector<double> lx;
  std::vector<double> ly;
  for (const auto& row : rows) {
    if (row.n_bregman != n_bregman) continue;
    const double xv = x == FitX::delta ? row.delta : row.alpha;
    const double yv = y == FitY::kl_error ? row.kl_error : row.l1_error;
    if (!(xv > 0.0) || !(yv > 0.0)) {
      throw NonPositiveError("log-log fit needs positive x and y values");
    }
    lx.push_back(std::log(xv));
    ly.push_back(std::log(yv));
  }
  if (lx.size() < 3) throw InsufficientData("rate fit needs at least 3 rows");

  const double m = static_cast<double>(lx.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= m;
  my /= m;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  if (!(sxx > 0.0)) throw InsufficientData("rate fit needs at least two distinct x values");
  RateFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy > 0.0 ? std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0) : 1.0;
  fit.n_points = static_cast<int>(lx.size());
  return fit;
}

}  // namespace itreg
