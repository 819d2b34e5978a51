#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "itreg/bregman.hpp"
#include "itreg/error.hpp"
#include "oracles.hpp"

using namespace itreg;

namespace {

Signal uniform_signal(std::mt19937_64& rng, const TorusGrid& grid, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(grid.size());
  for (auto& x : v) x = u(rng);
  return Signal(grid, v);
}

SolverConfig tight() {
  SolverConfig c;
  c.tol = 1e-13;
  c.max_iter = 200000;
  return c;
}

}  // namespace

TEST(BregmanIterate, SingleStepEqualsTikhonov) {
  std::mt19937_64 rng(1);
  const TorusGrid grid(64);
  const auto op = make_inverse_helmholtz(grid);
  const Penalty r = make_entropy(Signal::constant(grid, 1.0), 0.0, 5.0);
  const Signal g = apply(op, bspline_truth(grid, 5));
  const auto states = bregman_iterate(op, g, 1e-4, r, 1, tight());
  ASSERT_EQ(states.size(), 1u);
  const auto direct = solve_generalized_dr(op, g, 1e-4, r, tight());
  EXPECT_EQ(norm_l2(states[0].iterate - direct.minimizer), 0.0);
  EXPECT_THROW(bregman_iterate(op, g, 1e-4, r, 0), DomainError);
}

TEST(BregmanIterate, SingleModeRecurrence) {
  const TorusGrid g(4);
  const FourierMultiplierOperator id(g, {1.0, 1.0, 1.0, 1.0}, 0.0);
  const Penalty r = make_quadratic(Signal(g));
  for (StepMethod m : {StepMethod::spectral, StepMethod::douglas_rachford}) {
    const auto states = bregman_iterate(id, Signal::constant(g, 1.0), 1.0, r, 3, tight(), m);
    EXPECT_NEAR(states[0].iterate[0], 0.5, 1e-12);
    EXPECT_NEAR(states[1].iterate[0], 0.75, 1e-12);
    EXPECT_NEAR(states[2].iterate[0], 0.875, 1e-12);
  }
}

TEST(BregmanIterate, QuadraticMatchesFilterFormula) {
  std::mt19937_64 rng(2);
  const TorusGrid grid(64);
  const auto op = make_inverse_helmholtz(grid);
  const auto mu = oracle::symbol(grid.size(), oracle::helmholtz_symbol);
  const Signal g = uniform_signal(rng, grid, -1.0, 1.0);
  const Signal f0 = uniform_signal(rng, grid, -1.0, 1.0);
  for (double alpha : {1e-6, 1e-3, 1.0}) {
    const auto spectral = bregman_iterate(op, g, alpha, make_quadratic(f0), 8, {}, StepMethod::spectral);
    const auto dr = bregman_iterate(op, g, alpha, make_quadratic(f0), 8, tight());
    for (int n = 1; n <= 8; ++n) {
      const auto ref = oracle::iterated_tikhonov(mu, g.vector(), f0.vector(), alpha, n);
      const double scale = oracle::l2(ref);
      EXPECT_LE(oracle::l2_diff(spectral[n - 1].iterate.vector(), ref), 1e-10 * scale) << alpha << " " << n;
      EXPECT_LE(oracle::l2_diff(dr[n - 1].iterate.vector(), ref), 1e-8 * scale) << alpha << " " << n;
    }
  }
}

TEST(DualVariable, Examples) {
  std::mt19937_64 rng(3);
  const TorusGrid grid(32);
  const auto op = make_inverse_helmholtz(grid);
  const Signal f = uniform_signal(rng, grid, -1.0, 1.0);
  EXPECT_EQ(norm_l2(dual_variable(op, f, apply(op, f), 0.1)), 0.0);
  const Signal g = uniform_signal(rng, grid, -1.0, 1.0);
  const Signal p1 = dual_variable(op, f, g, 0.1);
  const Signal p2 = dual_variable(op, f, g, 0.2);
  EXPECT_LT(norm_l2(p2 - 0.5 * p1), 1e-15);
  EXPECT_THROW(dual_variable(op, f, Signal::constant(TorusGrid(8), 1.0), 1.0), GridMismatch);
}

TEST(DualVariable, StepKktForQuadratic) {
  std::mt19937_64 rng(4);
  const TorusGrid grid(32);
  const auto op = make_inverse_helmholtz(grid);
  const Signal f0 = uniform_signal(rng, grid, -1.0, 1.0);
  const Signal g = uniform_signal(rng, grid, -1.0, 1.0);
  const auto states = bregman_iterate(op, g, 1e-2, make_quadratic(f0), 4, {}, StepMethod::spectral);
  for (std::size_t n = 0; n < states.size(); ++n) {
    const Signal& prev = n == 0 ? f0 : states[n - 1].iterate;
    // T* p_n must be the gradient of 1/2||f - f_{n-1}||^2 at f_n.
    EXPECT_LE(norm_l2(apply(op, states[n].dual) - (states[n].iterate - prev)), 1e-8);
  }
}

TEST(BregmanIterate, AccumulatedSubgradientConsistency) {
  std::mt19937_64 rng(5);
  const TorusGrid grid(96);
  const auto op = make_inverse_helmholtz(grid);
  const Signal truth = bspline_truth(grid, 5);
  const Signal g = apply(op, truth) + 1e-4 * Signal::sinusoid(grid, 3);

  const Signal q0 = uniform_signal(rng, grid, -1.0, 1.0);
  const auto quad = bregman_iterate(op, g, 1e-3, make_quadratic(q0), 4, tight());
  for (const auto& st : quad) {
    EXPECT_LE(norm_l2(st.accumulated_subgradient - (st.iterate - q0)), 1e-8) << st.step;
  }

  const Signal e0 = Signal::constant(grid, 1.0);
  const auto ent = bregman_iterate(op, g, 1e-4, make_entropy(e0, 0.0, 5.0), 3, tight());
  for (const auto& st : ent) {
    Signal lg(grid);
    for (std::size_t i = 0; i < grid.size(); ++i) lg[i] = std::log(st.iterate[i] / e0[i]);
    EXPECT_LE(norm_l2(st.accumulated_subgradient - lg), 1e-6) << st.step;
    EXPECT_FALSE(st.interiority_warning);
  }
}

TEST(BregmanIterate, DiscrepancyIsNonIncreasing) {
  const TorusGrid grid(96);
  const auto op = make_inverse_helmholtz(grid);
  const Signal g = apply(op, bspline_truth(grid, 5)) + 1e-3 * Signal::sinusoid(grid, 2);
  for (const Penalty& r : {make_entropy(Signal::constant(grid, 1.0), 0.0, 5.0),
                           make_quadratic(Signal::constant(grid, 1.0))}) {
    const auto states = bregman_iterate(op, g, 1e-4, r, 5, tight());
    double previous = norm_l2(apply(op, penalty_prior(r)) - g);
    for (const auto& st : states) {
      const double d = norm_l2(apply(op, st.iterate) - g);
      EXPECT_LE(d, previous * (1.0 + 1e-9)) << st.step;
      previous = d;
    }
  }
}

TEST(BregmanIterate, WarnsWhenPreviousIterateTouchesBox) {
  const TorusGrid grid(48);
  const auto op = make_inverse_helmholtz(grid);
  const Penalty r = make_entropy(Signal::constant(grid, 1.0), 0.0, 1.2);
  const auto states = bregman_iterate(op, apply(op, bspline_truth(grid, 5)), 1e-5, r, 2, tight());
  EXPECT_FALSE(states[0].interiority_warning);
  EXPECT_TRUE(states[0].report.bound_active);
  EXPECT_TRUE(states[1].interiority_warning);
}

TEST(Invariance, Examples) {
  std::mt19937_64 rng(6);
  const TorusGrid grid(32);
  const auto op = make_inverse_helmholtz(grid);
  const Signal g = apply(op, uniform_signal(rng, grid, 0.5, 2.0));
  const Penalty q = make_quadratic(Signal::constant(grid, 1.0));
  const auto states = bregman_iterate(op, g, 1e-2, q, 3, tight());
  const Signal base = uniform_signal(rng, grid, 0.5, 2.0);
  const auto [l0, r0] = bregman_distance_invariance_check(q, op, states, base, base);
  EXPECT_EQ(l0, 0.0);
  EXPECT_EQ(r0, 0.0);
  const Signal f = uniform_signal(rng, grid, 0.5, 2.0);
  const auto [l1, r1] = bregman_distance_invariance_check(q, op, states, f, base);
  EXPECT_NEAR(l1, 0.5 * inner(f - base, f - base), 1e-12);
  EXPECT_NEAR(r1, 0.5 * inner(f - base, f - base), 1e-14);
  EXPECT_EQ(step_penalty_value(q, {}, f), penalty_value(q, f));
}
