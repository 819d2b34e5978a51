// Command-line front end: single reconstructions, alpha and delta sweeps,
// source-condition diagnostics and the quadratic oracle self-test.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <random>

#include "itreg/error.hpp"
#include "itreg/harness.hpp"
#include "itreg/report.hpp"
#include "itreg/vsc.hpp"

namespace {

using namespace itreg;

struct CommonOptions {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
};

ExperimentConfig load(const CommonOptions& o) {
  ExperimentConfig cfg = o.config.empty() ? parse_config("") : load_config(o.config);
  if (!o.out.empty()) cfg.output.dir = o.out;
  if (o.seed) cfg.problem.source_seed = *o.seed;
  if (o.threads) cfg.sweep.threads = *o.threads;
  cfg.validate();
  return cfg;
}

std::string output_path(const ExperimentConfig& cfg, const std::string& suffix) {
  std::filesystem::create_directories(cfg.output.dir);
  return (std::filesystem::path(cfg.output.dir) / (cfg.output.prefix + suffix)).string();
}

void print_fits(const std::vector<SweepRow>& rows, FitX x, FitY y, int steps,
                const std::vector<double>& predicted) {
  for (int n = 1; n <= steps; ++n) {
    try {
      const RateFit fit = fit_rate(rows, x, y, n);
      std::printf("n = %d: slope %.4f (predicted %.4f), r^2 %.5f, %d points\n", n, fit.slope,
                  predicted[static_cast<std::size_t>(n - 1)], fit.r_squared, fit.n_points);
    } catch (const Error& e) {
      std::printf("n = %d: no fit (%s)\n", n, e.what());
    }
  }
}

int run_reconstruct(const CommonOptions& o, std::optional<double> alpha_opt,
                    std::optional<double> delta_opt) {
  const ExperimentConfig cfg = load(o);
  const Experiment ex = make_experiment(cfg);
  const double alpha = alpha_opt.value_or(cfg.sweep.alphas.front());
  Signal g = ex.problem.g_true;
  if (delta_opt && *delta_opt > 0.0) {
    g += *delta_opt * Signal::sinusoid(g.grid(), cfg.sweep.sinusoid_k);
  }
  const auto states = bregman_iterate(ex.problem.op, g, alpha, ex.problem.penalty,
                                      cfg.sweep.bregman_steps, cfg.solver, cfg.method);
  for (const auto& st : states) {
    const auto err = reconstruction_errors(ex.problem.penalty, st.iterate, ex.problem.truth);
    std::printf("n = %d: error %.6e, l1 %.6e, iterations %d%s\n", st.step, err.kl, err.l1,
                st.report.iterations, st.interiority_warning ? " (previous iterate touches the box)" : "");
    write_signal_csv(output_path(cfg, "_reconstruction_n" + std::to_string(st.step) + ".csv"),
                     st.iterate);
  }
  write_signal_csv(output_path(cfg, "_truth.csv"), ex.problem.truth);
  return 0;
}

int run_approx(const CommonOptions& o) {
  const ExperimentConfig cfg = load(o);
  const Experiment ex = make_experiment(cfg);
  const auto rows = approx_error_sweep(ex, cfg.sweep.alphas);
  std::vector<double> predicted;
  for (int n = 1; n <= cfg.sweep.bregman_steps; ++n) {
    predicted.push_back(predicted_rates(ex, n).approx_exponent);
  }
  write_sweep_csv(output_path(cfg, "_approx.csv"), rows);
  if (cfg.output.svg) {
    write_text(output_path(cfg, "_approx.svg"),
               render_loglog_svg(sweep_plot(rows, FitX::alpha, FitY::kl_error, predicted,
                                            "approximation error, exact data")));
  }
  print_fits(rows, FitX::alpha, FitY::kl_error, cfg.sweep.bregman_steps, predicted);
  return 0;
}

int run_rates(const CommonOptions& o) {
  const ExperimentConfig cfg = load(o);
  const Experiment ex = make_experiment(cfg);
  double c = cfg.sweep.alpha_c;
  if (cfg.sweep.calibrate) {
    const Calibration cal = calibrate_c(ex, cfg.sweep.c_candidates);
    c = cal.c;
    std::printf("calibrated c = %.6g\n", c);
  }
  std::printf("alpha = %.6g * delta^%.6g\n", c, sweep_sigma(ex));
  const auto rows = rate_sweep(ex, c);
  const FitY y = cfg.sweep.metric == ErrorMetric::kl ? FitY::kl_error : FitY::l1_error;
  const double scale = cfg.sweep.metric == ErrorMetric::kl ? 1.0 : 0.5;
  std::vector<double> predicted;
  for (int n = 1; n <= cfg.sweep.bregman_steps; ++n) {
    predicted.push_back(scale * predicted_rates(ex, n).error_exponent);
  }
  write_sweep_csv(output_path(cfg, "_rates.csv"), rows);
  if (cfg.output.svg) {
    write_text(output_path(cfg, "_rates.svg"),
               render_loglog_svg(sweep_plot(rows, FitX::delta, y, predicted,
                                            "reconstruction error vs noise level")));
  }
  print_fits(rows, FitX::delta, y, cfg.sweep.bregman_steps, predicted);
  return 0;
}

int run_vsc(const CommonOptions& o, int trials) {
  ExperimentConfig cfg = load(o);
  const Experiment ex = make_experiment(cfg);
  const auto& op = ex.problem.op;
  const Signal& truth = ex.problem.truth;
  if (cfg.problem.truth != TruthKind::source) {
    throw ConfigError("vsc-diagnose needs truth = source");
  }
  const double t = cfg.problem.source_exponent;
  const int l = static_cast<int>(std::floor(t)) + 1;
  const double nu = t - (l - 1);
  std::printf("truth = (T*T)^{%.4g/2} w: order l = %d, nu = %.4g\n", t, l, nu);

  const SourceDecomposition src = construct_source(op, truth, l);
  const Signal back = power_apply(op, src.leading_power(), src.leading());
  std::printf("source round trip: relative error %.3e\n",
              norm_l2(back - truth) / norm_l2(truth));

  if (nu > 0.0) {
    const IndexFunction kappa = hoelder(1.0, 0.5 * nu);
    const IndexFunction kappa_full = hoelder(1.0, 0.5 * t);
    std::printf("decay norm of leading element, kappa = t^{%.4g}: %.6e\n", 0.5 * nu,
                decay_space_norm(op, src.leading(), kappa));
    std::printf("decay norm of truth, kappa = t^{%.4g}: %.6e\n", 0.5 * t,
                decay_space_norm(op, truth, kappa_full));
  }

  if (src.omega) {
    ViolationSearchOptions opts;
    opts.trials = trials;
    opts.seed = o.seed.value_or(0);
    opts.threads = cfg.sweep.threads;
    const double theta = nu / (nu + 1.0);
    const VscConstant k = find_vsc_constant(op, *src.omega, theta, opts);
    std::printf("violation search, Phi = A t^{%.4g}: A = %.6g after %d doublings, max residual %.3e\n",
                theta, k.A, k.doublings, k.max_residual);
    std::printf("note: a non-positive residual over finitely many samples does not prove the inequality\n");
  } else {
    std::printf("even order: leading element is pbar, violation search not applicable\n");
  }
  return 0;
}

// Quadratic Bregman iterates against the iterated Tikhonov filter, mode by mode.
int run_selftest(const CommonOptions& o) {
  const TorusGrid grid(128);
  const auto op = make_inverse_helmholtz(grid);
  std::mt19937_64 rng(o.seed.value_or(20240917));
  std::normal_distribution<double> normal;
  std::vector<double> a(grid.size());
  std::vector<double> b(grid.size());
  for (auto& v : a) v = normal(rng);
  for (auto& v : b) v = normal(rng);
  const Signal truth(grid, a);
  const Signal prior(grid, b);
  const Signal g = apply(op, truth);
  const Spectrum gh = to_spectrum(g);
  const Spectrum ph = to_spectrum(prior);

  SolverConfig scfg;
  scfg.tol = 1e-13;
  scfg.max_iter = 200000;
  bool ok = true;
  for (double alpha : {1e-4, 1e-2, 1.0}) {
    const auto states = bregman_iterate(op, g, alpha, make_quadratic(prior), 4, scfg);
    for (const auto& st : states) {
      Spectrum fh(grid);
      for (int j = grid.min_mode(); j <= grid.max_mode(); ++j) {
        const double mu = op.symbol(j);
        const double q = std::pow(alpha / (mu * mu + alpha), st.step);
        fh(j) = ph(j) + (1.0 - q) * (gh(j) - mu * ph(j)) / mu;
      }
      const Signal oracle = from_spectrum(fh);
      const double rel = norm_l2(st.iterate - oracle) / norm_l2(oracle);
      const bool pass = rel <= 1e-6;
      ok = ok && pass;
      std::printf("%s alpha = %-6g n = %d relative error %.3e\n", pass ? "PASS" : "FAIL", alpha,
                  st.step, rel);
    }
  }
  std::printf("%s\n", ok ? "selftest passed" : "selftest FAILED");
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bregman iterated Tikhonov regularisation on the torus"};
  app.require_subcommand(1);
  CommonOptions common;
  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", common.config, "configuration file")->check(CLI::ExistingFile);
    sub->add_option("--out", common.out, "output directory (overrides [output] dir)");
    sub->add_option("--seed", common.seed, "random seed");
    sub->add_option("--threads", common.threads, "worker threads")->check(CLI::PositiveNumber);
  };

  auto* reconstruct = app.add_subcommand("reconstruct", "one Bregman run, writes signal CSVs");
  add_common(reconstruct);
  std::optional<double> alpha;
  std::optional<double> delta;
  reconstruct->add_option("--alpha", alpha, "regularisation parameter (default: first sweep alpha)");
  reconstruct->add_option("--delta", delta, "sinusoidal noise amplitude (default: exact data)");

  auto* approx = app.add_subcommand("approx-sweep", "exact-data error over the alpha grid");
  add_common(approx);
  auto* rates = app.add_subcommand("rate-sweep", "worst-case error over the delta grid");
  add_common(rates);
  auto* vsc = app.add_subcommand("vsc-diagnose", "source elements, decay norms, violation search");
  add_common(vsc);
  int trials = 64;
  vsc->add_option("--trials", trials, "random trials per violation search")->check(CLI::PositiveNumber);
  auto* selftest = app.add_subcommand("selftest", "quadratic oracle-equivalence check");
  add_common(selftest);

  CLI11_PARSE(app, argc, argv);
  try {
    if (*reconstruct) return run_reconstruct(common, alpha, delta);
    if (*approx) return run_approx(common);
    if (*rates) return run_rates(common);
    if (*vsc) return run_vsc(common, trials);
    if (*selftest) return run_selftest(common);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
