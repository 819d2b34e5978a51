#pragma once

// Convergence-rate experiments: problem construction, worst-case noise,
// a-priori parameter choice, alpha and delta sweeps, and log-log rate fits.

#include <functional>
#include <vector>

#include "itreg/bregman.hpp"
#include "itreg/config.hpp"
#include "itreg/vsc.hpp"

namespace itreg {

struct Problem {
  FourierMultiplierOperator op;
  Signal truth;
  Signal g_true;
  Penalty penalty;
};

/// Real signal whose Fourier coefficients have modulus in [0.5, 1] and
/// uniformly random phases (bounded spectrum), drawn from seed.
Signal random_bounded_spectrum(const TorusGrid& grid, std::uint64_t seed);

Problem build_problem(const ProblemSpec& spec);

struct Experiment {
  ExperimentConfig config;
  Problem problem;
};

Experiment make_experiment(const ExperimentConfig& config);

/// kl: the penalty-native Bregman error (KL(f, truth) for entropy,
/// 1/2||f - truth||^2 for quadratic). l1: ||f - truth||_1.
struct ReconstructionErrors {
  double kl = 0.0;
  double l1 = 0.0;
};

ReconstructionErrors reconstruction_errors(const Penalty& r, const Signal& f, const Signal& truth);
double metric_value(const ReconstructionErrors& e, ErrorMetric metric);

struct SweepRow {
  double delta = 0.0;
  double alpha = 0.0;
  int k_worst = 0;
  int n_bregman = 1;
  double kl_error = 0.0;
  double l1_error = 0.0;
  double data_residual = 0.0;
  int dr_iterations = 0;
};

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  int n_points = 0;
};

using Evaluator = std::function<ReconstructionErrors(const Signal& g_obs)>;

struct WorstCase {
  Signal g_obs;
  int k_worst = 1;
  double error = 0.0;
};

/// Maximises the chosen error over g_true + delta sin(2 pi k .), k = 1..k_max.
/// Ties go to the smallest k.
WorstCase worst_case_noise(const Signal& g_true, double delta, int k_max,
                           const Evaluator& evaluator, ErrorMetric metric, unsigned threads = 1);

double apriori_alpha(double delta, double c, double sigma);

/// Rate predictions for the kl error column of the configured problem with
/// `steps` Bregman steps (alpha exponent, delta exponent, exact-data alpha exponent).
RatePrediction predicted_rates(const Experiment& ex, int steps);

/// Exponent of alpha = c delta^sigma used by the sweep.
double sweep_sigma(const Experiment& ex);

/// Exact data; one row per (alpha, n) for n = 1..bregman_steps, alpha-major in
/// the given order.
std::vector<SweepRow> approx_error_sweep(const Experiment& ex, const std::vector<double>& alphas);

/// Per delta: alpha = c delta^sigma, noise per config, Bregman steps 1..bregman_steps.
std::vector<SweepRow> rate_sweep(const Experiment& ex, double c);
std::vector<SweepRow> rate_sweep(const Experiment& ex);

struct Calibration {
  double c = 0.0;
  std::vector<double> candidates;
  std::vector<double> objectives;
};

/// Picks c minimising max_delta error(delta) / delta^rate for the final
/// Bregman step, where rate is the configured target or the predicted rate.
Calibration calibrate_c(const Experiment& ex, const std::vector<double>& candidate_cs);

enum class FitX { delta, alpha };
enum class FitY { kl_error, l1_error };

/// Least squares on (log x, log y) over rows with the given n_bregman.
RateFit fit_rate(const std::vector<SweepRow>& rows, FitX x, FitY y, int n_bregman);

}  // namespace itreg
