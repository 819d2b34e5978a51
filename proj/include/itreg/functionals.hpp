#pragma once

// Convex penalties, the quadratic data fidelity, Bregman distances and
// proximal maps.

#include <utility>
#include <variant>

#include "itreg/operators.hpp"
#include "itreg/torus.hpp"

namespace itreg {

/// R(f) = 1/2 ||f - prior||^2.
struct QuadraticPenalty {
  Signal prior;
};

/// R(f) = KL(f, prior) + indicator of {box_lo <= f <= box_hi}.
struct EntropyPenalty {
  Signal prior;
  double box_lo = 0.0;
  double box_hi = 5.0;
};

using Penalty = std::variant<QuadraticPenalty, EntropyPenalty>;

Penalty make_quadratic(Signal prior);
/// Validates prior > 0 everywhere, box_lo >= 0 and box_lo < box_hi.
Penalty make_entropy(Signal prior, double box_lo, double box_hi);

const Signal& penalty_prior(const Penalty& r);
/// Same penalty type and box with a different prior.
Penalty with_prior(const Penalty& r, Signal prior);

/// S(g) = 1/q ||g||^q with q fixed to 2.
class Fidelity {
public:
  explicit Fidelity(double q = 2.0);
  double exponent() const noexcept { return 2.0; }
  double value(const Signal& g) const;
  /// Duality map J_2 = identity on L2.
  Signal duality_map(const Signal& g) const { return g; }
};

/// KL(f, g) = (1/n) sum f ln(f/g) - f + g, evaluated stably near f = g.
/// Requires g > 0; +inf if any f_i < 0. Uses 0 ln 0 = 0.
double kl_divergence(const Signal& f, const Signal& g);

/// R(f); +inf outside the effective domain (entropy: f < 0 or box violated by
/// more than 1e-12).
double penalty_value(const Penalty& r, const Signal& f);

/// Subgradient selection at base: base - prior (quadratic), ln(base/prior) (entropy).
/// Throws SubgradientUndefined for entropy when base touches the box or zero.
Signal subgradient(const Penalty& r, const Signal& base);

/// D_R(f, base) with the selection above. Quadratic: 1/2||f-base||^2, entropy: KL(f, base).
double bregman_distance(const Penalty& r, const Signal& f, const Signal& base);

/// argmin_v gamma R(v) + 1/2 ||v - x||^2, computed pointwise.
Signal prox_penalty(const Penalty& r, const Signal& x, double gamma);

/// Scalar entropy prox: solves gamma ln(v/w) + v - x = 0 for v > 0.
/// Throws ProxFailure(sample) when Newton and the bisection fallback both fail.
double entropy_prox_scalar(double x, double w, double gamma, std::size_t sample = 0);

/// argmin_v (gamma/alpha) 1/2 ||T v - g||^2 + 1/2 ||v - x||^2, solved per Fourier mode.
Signal prox_fidelity(const FourierMultiplierOperator& op, const Signal& g, const Signal& x,
                     double gamma, double alpha);

/// Xu-Roach inequality specialised to L2 with q = r = 2: returns
/// (D_S(x, y), c ||x - y||^2) with c = 1/2. The two coincide in Hilbert space.
std::pair<double, double> xu_roach_check(const Signal& x, const Signal& y);

}  // namespace itreg
