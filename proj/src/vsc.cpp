#include "itreg/vsc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <random>

#include "itreg/error.hpp"
#include "itreg/parallel.hpp"

namespace itreg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

const HoelderIndex& require_hoelder(const IndexFunction& phi, const char* what) {
  const auto* h = std::get_if<HoelderIndex>(&phi);
  if (h == nullptr) throw Unsupported(std::string(what) + " supports Hoelder index functions only");
  return *h;
}

// Amplitudes 10^-12 .. 10^6 in quarter decades.
std::vector<double> amplitude_grid() {
  std::vector<double> t;
  for (int e = -48; e <= 24; ++e) t.push_back(std::pow(10.0, 0.25 * e));
  return t;
}

struct Direction {
  double along_omega;  // <omega, e>
  double norm_sq;      // ||e||^2
  double image_sq;     // ||T e||^2
};

double best_residual(const Direction& d, const IndexFunction& phi,
                     const std::vector<double>& amplitudes) {
  double best = -kInf;
  for (double t : amplitudes) {
    for (double sign : {1.0, -1.0}) {
      const double r = sign * t * d.along_omega - 0.5 * t * t * d.norm_sq -
                       evaluate(phi, t * t * d.image_sq);
      best = std::max(best, r);
    }
  }
  return best;
}

Direction direction(const FourierMultiplierOperator& op, const Signal& omega, const Signal& e) {
  const Signal te = apply(op, e);
  return {inner(omega, e), inner(e, e), inner(te, te)};
}

}  // namespace

IndexFunction hoelder(double A, double theta) {
  if (!(A > 0.0) || !(theta > 0.0)) throw DomainError("Hoelder index needs A > 0, theta > 0");
  return HoelderIndex{A, theta};
}

double evaluate(const IndexFunction& phi, double t) {
  if (t < 0.0) throw DomainError("index functions are defined on t >= 0");
  if (const auto* h = std::get_if<HoelderIndex>(&phi)) {
    return t == 0.0 ? 0.0 : h->A * std::pow(t, h->theta);
  }
  const auto& lg = std::get<LogarithmicIndex>(phi);
  if (t == 0.0) return 0.0;
  if (t >= 1.0) throw DomainError("logarithmic index function needs t < 1");
  return std::pow(-std::log(t), -lg.p);
}

SourceDecomposition construct_source(const FourierMultiplierOperator& op, const Signal& f_true,
                                     int order) {
  if (order < 1) throw DomainError("source condition order must be >= 1");
  SourceDecomposition out;
  out.order = order;
  const int n = (order + 1) / 2;
  for (int j = 1; j <= n - 1; ++j) {
    out.intermediate_omegas.push_back(power_apply(op, -static_cast<double>(j), f_true));
    out.intermediate_pbars.push_back(power_apply(op, -(j - 0.5), f_true));
  }
  Signal leading = power_apply(op, -out.leading_power(), f_true);
  if (order % 2 == 1) {
    out.omega = std::move(leading);
  } else {
    out.pbar = std::move(leading);
  }
  return out;
}

double decay_space_norm(const FourierMultiplierOperator& op, const Signal& f,
                        const IndexFunction& kappa) {
  require_same_grid(op.grid(), f.grid());
  const Spectrum c = to_spectrum(f);
  const auto coeffs = c.coefficients();
  const auto& mu = op.symbol_fft_order();
  // Energy per distinct eigenvalue of T*T, ascending.
  std::map<double, double> energy;
  for (std::size_t k = 0; k < coeffs.size(); ++k) energy[mu[k] * mu[k]] += std::norm(coeffs[k]);

  // ||E_lambda f|| is constant on (lambda_i, lambda_{i+1}] and kappa is
  // increasing, so the supremum over that piece is the right limit at lambda_i.
  double cumulative = 0.0;
  double best = 0.0;
  for (const auto& [lambda, e] : energy) {
    cumulative += e;
    if (cumulative == 0.0) continue;
    best = std::max(best, std::sqrt(cumulative) / evaluate(kappa, lambda));
  }
  return best;
}

double theta_kappa(const IndexFunction& kappa, double lambda) {
  return std::sqrt(lambda) * evaluate(kappa, lambda);
}

double theta_kappa_inverse(const IndexFunction& kappa, double s) {
  const HoelderIndex& h = require_hoelder(kappa, "theta_kappa_inverse");
  if (s < 0.0) throw DomainError("theta_kappa_inverse needs s >= 0");
  return std::pow(s / h.A, 1.0 / (h.theta + 0.5));
}

IndexFunction rate_function(const IndexFunction& kappa) {
  const HoelderIndex& h = require_hoelder(kappa, "rate_function");
  // kappa(Theta^{-1}(sqrt t))^2 = A^2 (sqrt(t)/A)^{2 theta/(theta + 1/2)}.
  const double denom = h.theta + 0.5;
  return HoelderIndex{std::pow(h.A, 1.0 / denom), h.theta / denom};
}

double fenchel_psi(const IndexFunction& phi, double s) {
  const HoelderIndex& h = require_hoelder(phi, "fenchel_psi");
  if (!(s < 0.0)) throw DomainError("fenchel_psi is evaluated at s < 0 only");
  if (h.theta > 1.0) throw DomainError("fenchel_psi needs a concave index function (theta <= 1)");
  if (h.theta == 1.0) return s <= -h.A ? 0.0 : kInf;
  // Stationary point t* = (A theta / -s)^{1/(1-theta)}.
  const double theta = h.theta;
  return h.A * (1.0 - theta) * std::pow(h.A * theta / -s, theta / (1.0 - theta));
}

RatePrediction predict_rate_hoelder(int order, double nu) {
  if (order < 1) throw DomainError("order must be >= 1");
  if (!(nu > 0.0 && nu <= 1.0)) throw DomainError("nu must lie in (0, 1]");
  const double l = order;
  RatePrediction out;
  out.alpha_exponent = 2.0 / (l + nu);
  out.error_exponent = (l - 1.0 + nu) / (l + nu);
  out.approx_exponent = 0.5 * (l - 1.0 + nu);
  const IndexFunction phi = HoelderIndex{1.0, nu / (nu + 1.0)};
  out.envelope = [phi, l](double delta, double alpha) {
    return delta * delta / alpha + std::pow(alpha, l - 1.0) * fenchel_psi(phi, -1.0 / alpha);
  };
  return out;
}

RatePrediction predict_rate_entropy(double s, double a, int bregman_steps) {
  if (!(s > 0.0) || !(a > 0.0)) throw DomainError("entropy rate needs s > 0 and a > 0");
  if (bregman_steps < 1) throw DomainError("bregman_steps must be >= 1");
  const double s_eff = std::min(s, (bregman_steps + 1) * a);
  RatePrediction out;
  out.alpha_exponent = 2.0 * a / (s_eff + a);
  out.error_exponent = 2.0 * s_eff / (s_eff + a);
  out.approx_exponent = s_eff / a;
  // Source condition of order l with Phi(t) = t^theta such that
  // alpha^{l-1} psi(-1/alpha) ~ alpha^{s/a}.
  const double l = std::clamp(std::ceil(s_eff / a), 1.0, static_cast<double>(bregman_steps + 1));
  const double theta = (s_eff - (l - 1.0) * a) / (s_eff - (l - 2.0) * a);
  const IndexFunction phi = HoelderIndex{1.0, theta};
  out.envelope = [phi, l](double delta, double alpha) {
    return delta * delta / alpha + std::pow(alpha, l - 1.0) * fenchel_psi(phi, -1.0 / alpha);
  };
  return out;
}

double vsc_violation_search(const FourierMultiplierOperator& op, const Signal& omega,
                            const IndexFunction& phi, const ViolationSearchOptions& opts) {
  require_same_grid(op.grid(), omega.grid());
  if (opts.trials < 1) throw DomainError("violation search needs trials >= 1");
  const TorusGrid grid = op.grid();
  const auto amplitudes = amplitude_grid();

  // f = 0 always gives residual 0.
  double best = 0.0;

  const int half = static_cast<int>(grid.size() / 2);
  for (int k = 0; k < half; ++k) {
    best = std::max(best, best_residual(direction(op, omega, Signal::unit_mode(grid, k)), phi,
                                        amplitudes));
    if (k > 0) {
      const Signal s = std::numbers::sqrt2 * Signal::sinusoid(grid, k);
      best = std::max(best, best_residual(direction(op, omega, s), phi, amplitudes));
    }
  }
  if (norm_l2(omega) > 0.0) {
    best = std::max(best, best_residual(direction(op, omega, omega), phi, amplitudes));
  }

  std::vector<double> per_trial(static_cast<std::size_t>(opts.trials), -kInf);
  parallel_for(per_trial.size(), opts.threads, [&](std::size_t trial) {
    std::seed_seq seq{static_cast<std::uint64_t>(opts.seed), static_cast<std::uint64_t>(trial)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> normal;
    std::vector<double> v(grid.size());
    for (double& x : v) x = normal(rng);
    per_trial[trial] = best_residual(direction(op, omega, Signal(grid, std::move(v))), phi,
                                     amplitudes);
  });
  for (double r : per_trial) best = std::max(best, r);
  return best;
}

VscConstant find_vsc_constant(const FourierMultiplierOperator& op, const Signal& omega,
                              double theta, const ViolationSearchOptions& opts, double A0,
                              int max_doublings, double tol) {
  double A = A0;
  for (int d = 0; d <= max_doublings; ++d) {
    const double r = vsc_violation_search(op, omega, hoelder(A, theta), opts);
    if (r <= tol) return {A, r, d};
    A *= 2.0;
  }
  throw DomainError("no admissible VSC constant found within the doubling budget");
}

}  // namespace itreg
