#include "itreg/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "itreg/error.hpp"

namespace itreg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kBoxSlack = 1e-12;
constexpr int kProxMaxIter = 100;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

// (1+e) ln(1+e) - e, accurate for small e.
double entropy_kernel(double e) {
  if (std::abs(e) < 0.1) {
    // sum_{k>=2} (-1)^k e^k / (k (k-1))
    double power = e * e;
    double sum = 0.0;
    for (int k = 2; k < 40; ++k) {
      const double term = power / (k * (k - 1.0));
      sum += (k % 2 == 0) ? term : -term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
      power *= e;
    }
    return sum;
  }
  return (1.0 + e) * std::log1p(e) - e;
}

// Pointwise f ln(f/g) - f + g for g > 0, f >= 0.
double kl_integrand(double f, double g) {
  if (f == 0.0) return g;
  return g * entropy_kernel((f - g) / g);
}

bool in_box(const EntropyPenalty& p, double v) {
  return v >= p.box_lo - kBoxSlack && v <= p.box_hi + kBoxSlack && v >= 0.0;
}

}  // namespace

Penalty make_quadratic(Signal prior) { return QuadraticPenalty{std::move(prior)}; }

Penalty make_entropy(Signal prior, double box_lo, double box_hi) {
  if (!(box_lo >= 0.0) || !(box_lo < box_hi)) {
    throw ConfigError("entropy box needs 0 <= box_lo < box_hi");
  }
  if (!(prior.min() > 0.0)) throw ConfigError("entropy prior must be strictly positive");
  return EntropyPenalty{std::move(prior), box_lo, box_hi};
}

const Signal& penalty_prior(const Penalty& r) {
  return std::visit([](const auto& p) -> const Signal& { return p.prior; }, r);
}

Penalty with_prior(const Penalty& r, Signal prior) {
  return std::visit(
      overloaded{
          [&](const QuadraticPenalty&) { return make_quadratic(std::move(prior)); },
          [&](const EntropyPenalty& p) { return make_entropy(std::move(prior), p.box_lo, p.box_hi); },
      },
      r);
}

Fidelity::Fidelity(double q) {
  if (q != 2.0) throw Unsupported("only the quadratic fidelity (q = 2) is supported");
}

double Fidelity::value(const Signal& g) const { return 0.5 * inner(g, g); }

double kl_divergence(const Signal& f, const Signal& g) {
  require_same_grid(f.grid(), g.grid());
  double sum = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!(g[i] > 0.0)) throw DomainError("KL divergence needs a strictly positive reference");
    if (f[i] < 0.0) return kInf;
    sum += kl_integrand(f[i], g[i]);
  }
  return sum / static_cast<double>(f.size());
}

double penalty_value(const Penalty& r, const Signal& f) {
  return std::visit(
      overloaded{
          [&](const QuadraticPenalty& p) {
            const Signal d = f - p.prior;
            return 0.5 * inner(d, d);
          },
          [&](const EntropyPenalty& p) {
            require_same_grid(f.grid(), p.prior.grid());
            for (double v : f.values()) {
              if (!in_box(p, v)) return kInf;
            }
            return kl_divergence(f, p.prior);
          },
      },
      r);
}

Signal subgradient(const Penalty& r, const Signal& base) {
  return std::visit(
      overloaded{
          [&](const QuadraticPenalty& p) { return base - p.prior; },
          [&](const EntropyPenalty& p) {
            require_same_grid(base.grid(), p.prior.grid());
            std::vector<double> out(base.size());
            for (std::size_t i = 0; i < base.size(); ++i) {
              const double v = base[i];
              if (!(v > 0.0) || v <= p.box_lo || v >= p.box_hi) {
                throw SubgradientUndefined("entropy base point touches the box at sample " +
                                           std::to_string(i));
              }
              out[i] = std::log(v / p.prior[i]);
            }
            return Signal(base.grid(), std::move(out));
          },
      },
      r);
}

double bregman_distance(const Penalty& r, const Signal& f, const Signal& base) {
  return std::visit(
      overloaded{
          [&](const QuadraticPenalty&) {
            const Signal d = f - base;
            return 0.5 * inner(d, d);
          },
          [&](const EntropyPenalty& p) {
            // Validates interiority of the base point.
            (void)subgradient(r, base);
            for (double v : f.values()) {
              if (!in_box(p, v)) return kInf;
            }
            return kl_divergence(f, base);
          },
      },
      r);
}

double entropy_prox_scalar(double x, double w, double gamma, std::size_t sample) {
  // h(u) = gamma (u - ln w) + e^u - x is convex and increasing in u = ln v,
  // so Newton started where h >= 0 decreases monotonically onto the root.
  const double log_w = std::log(w);
  double u = std::log(std::max({w, x, 1e-8}));
  const double scale = std::max(1.0, std::abs(x));
  for (int it = 0; it < kProxMaxIter; ++it) {
    const double v = std::exp(u);
    const double h = gamma * (u - log_w) + v - x;
    if (std::abs(h) <= 1e-12 * scale) return v;
    const double step = h / (gamma + v);
    if (!std::isfinite(step)) break;
    u -= step;
    if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(u))) return std::exp(u);
  }
  // Bisection fallback on the original variable.
  double lo = 1e-300;
  double hi = std::max(x, w) + gamma * 50.0;
  auto h = [&](double v) { return gamma * std::log(v / w) + v - x; };
  if (h(hi) < 0.0 || h(lo) > 0.0) throw ProxFailure(sample);
  for (int it = 0; it < 2000 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (h(mid) > 0.0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

Signal prox_penalty(const Penalty& r, const Signal& x, double gamma) {
  if (!(gamma > 0.0)) throw DomainError("prox step gamma must be positive");
  return std::visit(
      overloaded{
          [&](const QuadraticPenalty& p) {
            require_same_grid(x.grid(), p.prior.grid());
            std::vector<double> out(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) {
              out[i] = (x[i] + gamma * p.prior[i]) / (1.0 + gamma);
            }
            return Signal(x.grid(), std::move(out));
          },
          [&](const EntropyPenalty& p) {
            require_same_grid(x.grid(), p.prior.grid());
            std::vector<double> out(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) {
              const double v = entropy_prox_scalar(x[i], p.prior[i], gamma, i);
              out[i] = std::clamp(v, p.box_lo, p.box_hi);
            }
            return Signal(x.grid(), std::move(out));
          },
      },
      r);
}

Signal prox_fidelity(const FourierMultiplierOperator& op, const Signal& g, const Signal& x,
                     double gamma, double alpha) {
  require_same_grid(op.grid(), g.grid());
  require_same_grid(op.grid(), x.grid());
  if (!(gamma > 0.0) || !(alpha > 0.0)) throw DomainError("prox needs gamma, alpha > 0");
  const double ratio = gamma / alpha;
  const Spectrum gc = to_spectrum(g);
  Spectrum xc = to_spectrum(x);
  auto xs = xc.coefficients();
  const auto gs = gc.coefficients();
  const auto& mu = op.symbol_fft_order();
  for (std::size_t k = 0; k < xs.size(); ++k) {
    xs[k] = (xs[k] + ratio * mu[k] * gs[k]) / (1.0 + ratio * mu[k] * mu[k]);
  }
  return from_spectrum(xc);
}

std::pair<double, double> xu_roach_check(const Signal& x, const Signal& y) {
  const Fidelity s;
  const Signal diff = x - y;
  // Generic Bregman formula S(x) - S(y) - <J(y), x - y>.
  const double lhs = s.value(x) - s.value(y) - inner(s.duality_map(y), diff);
  const double rhs = 0.5 * inner(diff, diff);
  return {lhs, rhs};
}

}  // namespace itreg
