#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "itreg/error.hpp"
#include "itreg/solvers.hpp"
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

TEST(SolverConfig, Validation) {
  SolverConfig c;
  EXPECT_NO_THROW(c.validate());
  c.gamma = 0.0;
  EXPECT_THROW(c.validate(), ConfigError);
  c = {};
  c.relax = 2.5;
  EXPECT_THROW(c.validate(), ConfigError);
  c = {};
  c.max_iter = 0;
  EXPECT_THROW(c.validate(), ConfigError);
  c = {};
  c.tol = 0.0;
  EXPECT_THROW(c.validate(), ConfigError);
}

TEST(Spectral, SingleModeAndLimits) {
  const TorusGrid g(4);
  const FourierMultiplierOperator id(g, {1.0, 1.0, 1.0, 1.0}, 0.0);
  const Signal f = solve_quadratic_spectral(id, Signal::constant(g, 1.0), 1.0, Signal(g));
  EXPECT_NEAR(f[0], 0.5, 1e-15);

  std::mt19937_64 rng(1);
  const TorusGrid grid(32);
  const auto op = make_inverse_helmholtz(grid);
  const Signal truth = uniform_signal(rng, grid, -1.0, 1.0);
  const Signal prior = uniform_signal(rng, grid, -1.0, 1.0);
  const Signal data = apply(op, truth);
  EXPECT_LT(norm_l2(solve_quadratic_spectral(op, data, 1e14, prior) - prior), 1e-9);
  EXPECT_LT(norm_l2(solve_quadratic_spectral(op, data, 1e-20, prior) - truth), 1e-6);
}

TEST(Spectral, MatchesTikhonovOracle) {
  std::mt19937_64 rng(2);
  const TorusGrid grid(32);
  const auto op = make_inverse_helmholtz(grid);
  const auto mu = oracle::symbol(grid.size(), oracle::helmholtz_symbol);
  const Signal g = uniform_signal(rng, grid, -1.0, 1.0);
  const Signal prior = uniform_signal(rng, grid, -1.0, 1.0);
  const Signal f = solve_quadratic_spectral(op, g, 1e-3, prior);
  EXPECT_LT(oracle::l2_diff(f.vector(), oracle::iterated_tikhonov(mu, g.vector(), prior.vector(), 1e-3, 1)),
            1e-10);
}

TEST(DouglasRachford, QuadraticMatchesSpectral) {
  std::mt19937_64 rng(3);
  const TorusGrid grid(128);
  const auto op = make_inverse_helmholtz(grid);
  for (double alpha : {1e-5, 1e-2, 1.0}) {
    const Signal g = uniform_signal(rng, grid, -1.0, 1.0);
    const Signal prior = uniform_signal(rng, grid, -1.0, 1.0);
    const auto rep = solve_generalized_dr(op, g, alpha, make_quadratic(prior), tight());
    const Signal ref = solve_quadratic_spectral(op, g, alpha, prior);
    EXPECT_LE(norm_l2(rep.minimizer - ref), 1e-6 * norm_l2(ref)) << alpha;
    EXPECT_LE(rep.final_residual, 1e-13);
  }
}

TEST(DouglasRachford, EntropyPriorIsFixedPoint) {
  std::mt19937_64 rng(4);
  const TorusGrid grid(64);
  const auto op = make_inverse_helmholtz(grid);
  const Signal f0 = uniform_signal(rng, grid, 0.5, 2.0);
  const Penalty r = make_entropy(f0, 0.0, 5.0);
  for (double alpha : {1e-6, 1e-2, 10.0}) {
    const auto rep = solve_generalized_dr(op, apply(op, f0), alpha, r, tight());
    EXPECT_LT(norm_l2(rep.minimizer - f0), 1e-9) << alpha;
    EXPECT_FALSE(rep.bound_active);
  }
  const Signal other = apply(op, uniform_signal(rng, grid, 0.5, 2.0));
  const auto rep = solve_generalized_dr(op, other, 1e8, r, tight());
  EXPECT_LT(norm_l2(rep.minimizer - f0), 1e-6);
}

TEST(DouglasRachford, EntropyOptimalityAndObjective) {
  std::mt19937_64 rng(5);
  const TorusGrid grid(64);
  const auto op = make_inverse_helmholtz(grid);
  const Signal truth = bspline_truth(grid, 5);
  const Signal f0 = Signal::constant(grid, 1.0);
  const Penalty r = make_entropy(f0, 0.0, 5.0);
  const Signal g = apply(op, truth) + 1e-3 * Signal::sinusoid(grid, 2);
  for (double alpha : {1e-6, 1e-4, 1e-2}) {
    const auto rep = solve_generalized_dr(op, g, alpha, r, tight());
    const Signal& f = rep.minimizer;
    ASSERT_GT(f.min(), 0.0);
    Signal grad = (1.0 / alpha) * apply(op, apply(op, f) - g);
    for (std::size_t i = 0; i < f.size(); ++i) grad[i] += std::log(f[i] / f0[i]);
    EXPECT_LE(norm_l2(grad), 1e-6) << alpha;
    const double obj = tikhonov_objective(op, g, alpha, r, f);
    EXPECT_NEAR(obj, rep.objective, 1e-12 * std::max(1.0, obj));
    EXPECT_LE(obj, tikhonov_objective(op, g, alpha, r, f0) + 1e-8);
    EXPECT_LE(obj, tikhonov_objective(op, g, alpha, r, truth) + 1e-8);
  }
}

TEST(DouglasRachford, SolutionIndependentOfStep) {
  std::mt19937_64 rng(6);
  const TorusGrid grid(40);
  const auto op = make_inverse_helmholtz(grid);
  const Signal g = apply(op, bspline_truth(grid, 4)) + 1e-3 * Signal::sinusoid(grid, 1);
  const Penalty r = make_entropy(Signal::constant(grid, 1.0), 0.0, 5.0);
  for (double alpha : {1.0, 1e-2}) {
    std::vector<Signal> sols;
    for (double gamma : {alpha / 10, alpha, 10 * alpha}) {
      SolverConfig c = tight();
      c.gamma = gamma;
      c.max_iter = 2000000;
      sols.push_back(solve_generalized_dr(op, g, alpha, r, c).minimizer);
    }
    for (std::size_t a = 0; a < sols.size(); ++a) {
      for (std::size_t b = a + 1; b < sols.size(); ++b) {
        EXPECT_LE(norm_l2(sols[a] - sols[b]), 1e-6 * norm_l2(sols[a])) << alpha;
      }
    }
  }
}

TEST(DouglasRachford, NonConvergenceCarriesResidual) {
  const TorusGrid grid(40);
  const auto op = make_inverse_helmholtz(grid);
  SolverConfig c;
  c.max_iter = 2;
  const Penalty r = make_entropy(Signal::constant(grid, 1.0), 0.0, 5.0);
  try {
    (void)solve_generalized_dr(op, apply(op, bspline_truth(grid, 4)), 1e-6, r, c);
    FAIL() << "expected NonConvergence";
  } catch (const NonConvergence& e) {
    EXPECT_EQ(e.iterations(), 2);
    EXPECT_GT(e.final_residual(), c.tol);
  }
}

TEST(DouglasRachford, ReportsActiveBound) {
  const TorusGrid grid(40);
  const auto op = make_inverse_helmholtz(grid);
  const Penalty r = make_entropy(Signal::constant(grid, 1.0), 0.0, 1.2);
  const auto rep = solve_generalized_dr(op, apply(op, bspline_truth(grid, 4)), 1e-5, r, tight());
  EXPECT_TRUE(rep.bound_active);
  EXPECT_LE(rep.minimizer.max(), 1.2);
}
