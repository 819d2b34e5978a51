#pragma once

// Experiment configuration: a line-oriented key = value file with
// [problem], [solver], [sweep] and [output] sections. See docs/config.md.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "itreg/bregman.hpp"
#include "itreg/solvers.hpp"

namespace itreg {

enum class OperatorKind { inverse_helmholtz, exponential };
enum class PenaltyKind { entropy, quadratic };
enum class TruthKind { bspline, source };
enum class NoiseKind { exact, worst_case, fixed_sinusoid };
enum class ErrorMetric { kl, l1 };

struct ProblemSpec {
  std::size_t grid = 480;
  OperatorKind op = OperatorKind::inverse_helmholtz;
  double operator_rate = 0.3;
  PenaltyKind penalty = PenaltyKind::entropy;
  double prior = 1.0;
  double box_lo = 0.0;
  double box_hi = 5.0;
  TruthKind truth = TruthKind::bspline;
  int bspline_degree = 5;
  /// truth = source: f = (T*T)^{source_exponent/2} w with w a random
  /// bounded-spectrum signal drawn from source_seed.
  double source_exponent = 1.0;
  std::uint64_t source_seed = 1;
  /// Smoothness index s of the truth used for rate predictions.
  double smoothness = 5.5;
};

struct SweepSpec {
  std::vector<double> deltas;
  std::vector<double> alphas;
  double alpha_c = 1.0;
  /// Unset: exponent predicted from the problem.
  std::optional<double> alpha_sigma;
  int bregman_steps = 2;
  NoiseKind noise = NoiseKind::worst_case;
  int k_max = 32;
  int sinusoid_k = 1;
  ErrorMetric metric = ErrorMetric::kl;
  bool calibrate = false;
  std::vector<double> c_candidates;
  /// Unset: predicted rate of the chosen error column.
  std::optional<double> target_rate;
  unsigned threads = 1;
};

struct OutputSpec {
  std::string dir = "out";
  std::string prefix = "sweep";
  bool svg = true;
};

struct ExperimentConfig {
  ProblemSpec problem;
  SolverConfig solver;
  StepMethod method = StepMethod::douglas_rachford;
  SweepSpec sweep;
  OutputSpec output;

  void validate() const;
};

/// Geometric sequence from `first` to `last` with `count` points.
std::vector<double> geometric_sequence(double first, double last, int count);

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

}  // namespace itreg
