#include "itreg/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <type_traits>

#include "itreg/error.hpp"

namespace itreg {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

using Section = std::map<std::string, std::string>;

class Reader {
public:
  Reader(std::string name, Section values) : name_(std::move(name)), values_(std::move(values)) {}

  bool has(const std::string& key) const { return values_.count(key) != 0; }

  std::optional<std::string> text(const std::string& key) {
    used_.insert(key);
    auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    return it->second;
  }

  template <class T>
  void number(const std::string& key, T& out) {
    if (auto v = text(key)) out = parse_number<T>(key, *v);
  }

  std::optional<double> auto_or_number(const std::string& key, std::optional<double> fallback) {
    auto v = text(key);
    if (!v) return fallback;
    if (*v == "auto") return std::nullopt;
    return parse_number<double>(key, *v);
  }

  std::vector<double> list(const std::string& key) {
    std::vector<double> out;
    auto v = text(key);
    if (!v) return out;
    std::stringstream ss(*v);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_number<double>(key, trim(item)));
    return out;
  }

  template <class E>
  void choice(const std::string& key, E& out, const std::map<std::string, E>& options) {
    auto v = text(key);
    if (!v) return;
    auto it = options.find(*v);
    if (it == options.end()) throw ConfigError(where(key) + ": unknown value '" + *v + "'");
    out = it->second;
  }

  void flag(const std::string& key, bool& out) {
    auto v = text(key);
    if (!v) return;
    if (*v == "true" || *v == "1" || *v == "yes") {
      out = true;
    } else if (*v == "false" || *v == "0" || *v == "no") {
      out = false;
    } else {
      throw ConfigError(where(key) + ": expected a boolean, got '" + *v + "'");
    }
  }

  void finish() const {
    for (const auto& [key, value] : values_) {
      if (!used_.count(key)) throw ConfigError("unknown key [" + name_ + "] " + key);
    }
  }

  std::string where(const std::string& key) const { return "[" + name_ + "] " + key; }

private:
  template <class T>
  T parse_number(const std::string& key, const std::string& v) const {
    if constexpr (std::is_unsigned_v<T>) {
      if (!v.empty() && v.front() == '-') throw ConfigError(where(key) + ": must be non-negative");
    }
    std::istringstream in(v);
    T out{};
    in >> out;
    if (!in || !(in >> std::ws).eof()) {
      throw ConfigError(where(key) + ": expected a number, got '" + v + "'");
    }
    return out;
  }

  std::string name_;
  Section values_;
  std::set<std::string> used_;
};

std::vector<double> list_or_geometric(Reader& r, const std::string& list_key,
                                      const std::string& stem, double first, double last,
                                      int count) {
  auto values = r.list(list_key);
  const bool generator = r.has(stem + "_max") || r.has(stem + "_min") || r.has(stem + "_count");
  if (!values.empty() && generator) {
    throw ConfigError(r.where(list_key) + ": give either a list or a geometric generator");
  }
  r.number(stem + "_max", first);
  r.number(stem + "_min", last);
  r.number(stem + "_count", count);
  if (!values.empty()) return values;
  return geometric_sequence(first, last, count);
}

}  // namespace

std::vector<double> geometric_sequence(double first, double last, int count) {
  if (count < 1 || !(first > 0.0) || !(last > 0.0)) {
    throw ConfigError("geometric sequence needs positive endpoints and count >= 1");
  }
  if (count == 1) return {first};
  std::vector<double> out(static_cast<std::size_t>(count));
  const double step = std::log(last / first) / (count - 1);
  for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = first * std::exp(step * i);
  out.back() = last;
  return out;
}

void ExperimentConfig::validate() const {
  (void)TorusGrid(problem.grid);
  if (problem.box_lo < 0.0 || !(problem.box_lo < problem.box_hi)) {
    throw ConfigError("[problem] needs 0 <= box_lo < box_hi");
  }
  if (problem.penalty == PenaltyKind::entropy && !(problem.prior > 0.0)) {
    throw ConfigError("[problem] entropy prior must be positive");
  }
  if (problem.truth == TruthKind::source && !(problem.source_exponent > 0.0)) {
    throw ConfigError("[problem] source_exponent must be positive");
  }
  if (!(problem.smoothness > 0.0)) throw ConfigError("[problem] smoothness must be positive");
  solver.validate();
  if (method == StepMethod::spectral && problem.penalty != PenaltyKind::quadratic) {
    throw ConfigError("[solver] method = spectral requires penalty = quadratic");
  }
  for (std::size_t i = 0; i < sweep.deltas.size(); ++i) {
    if (!(sweep.deltas[i] > 0.0)) throw ConfigError("[sweep] deltas must be positive");
    if (i > 0 && !(sweep.deltas[i] < sweep.deltas[i - 1])) {
      throw ConfigError("[sweep] deltas must be strictly decreasing");
    }
  }
  for (double a : sweep.alphas) {
    if (!(a > 0.0)) throw ConfigError("[sweep] alphas must be positive");
  }
  if (!(sweep.alpha_c > 0.0)) throw ConfigError("[sweep] alpha_c must be positive");
  if (sweep.alpha_sigma && !(*sweep.alpha_sigma > 0.0 && *sweep.alpha_sigma <= 2.0)) {
    throw ConfigError("[sweep] alpha_sigma must lie in (0, 2]");
  }
  if (sweep.bregman_steps < 1) throw ConfigError("[sweep] bregman_steps must be >= 1");
  const int max_k = static_cast<int>(problem.grid / 2) - 1;
  if (sweep.k_max < 1 || sweep.k_max > max_k) {
    throw ConfigError("[sweep] k_max must lie in [1, " + std::to_string(max_k) + "]");
  }
  if (sweep.sinusoid_k < 1 || sweep.sinusoid_k > max_k) {
    throw ConfigError("[sweep] sinusoid_k out of range");
  }
  if (sweep.calibrate && sweep.c_candidates.empty()) {
    throw ConfigError("[sweep] calibration needs candidate constants");
  }
  for (double c : sweep.c_candidates) {
    if (!(c > 0.0)) throw ConfigError("[sweep] calibration candidates must be positive");
  }
  if (sweep.threads < 1) throw ConfigError("[sweep] threads must be >= 1");
}

ExperimentConfig parse_config(const std::string& text) {
  std::map<std::string, Section> sections;
  const std::set<std::string> known{"problem", "solver", "sweep", "output"};
  std::string current;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string at = "line " + std::to_string(line_no);
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(at + ": malformed section header");
      current = trim(line.substr(1, line.size() - 2));
      if (!known.count(current)) throw ConfigError(at + ": unknown section [" + current + "]");
      continue;
    }
    if (current.empty()) throw ConfigError(at + ": key outside of a section");
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(at + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) throw ConfigError(at + ": empty key or value");
    if (!sections[current].emplace(key, value).second) {
      throw ConfigError(at + ": duplicate key [" + current + "] " + key);
    }
  }

  ExperimentConfig cfg;

  Reader p("problem", sections["problem"]);
  p.number("grid", cfg.problem.grid);
  p.choice("operator", cfg.problem.op,
           {{"inverse_helmholtz", OperatorKind::inverse_helmholtz},
            {"exponential", OperatorKind::exponential}});
  p.number("operator_rate", cfg.problem.operator_rate);
  p.choice("penalty", cfg.problem.penalty,
           {{"entropy", PenaltyKind::entropy}, {"quadratic", PenaltyKind::quadratic}});
  p.number("prior", cfg.problem.prior);
  p.number("box_lo", cfg.problem.box_lo);
  p.number("box_hi", cfg.problem.box_hi);
  p.choice("truth", cfg.problem.truth,
           {{"bspline", TruthKind::bspline}, {"source", TruthKind::source}});
  p.number("bspline_degree", cfg.problem.bspline_degree);
  p.number("source_exponent", cfg.problem.source_exponent);
  p.number("source_seed", cfg.problem.source_seed);
  p.number("smoothness", cfg.problem.smoothness);
  p.finish();

  Reader s("solver", sections["solver"]);
  cfg.solver.gamma = s.auto_or_number("gamma", std::nullopt);
  s.number("relax", cfg.solver.relax);
  s.number("max_iter", cfg.solver.max_iter);
  s.number("tol", cfg.solver.tol);
  s.choice("method", cfg.method,
           {{"dr", StepMethod::douglas_rachford}, {"spectral", StepMethod::spectral}});
  s.finish();

  Reader w("sweep", sections["sweep"]);
  cfg.sweep.deltas = list_or_geometric(w, "deltas", "delta", 1e-3, 1e-7, 12);
  cfg.sweep.alphas = list_or_geometric(w, "alphas", "alpha", 1e-5, 1e-9, 13);
  w.number("alpha_c", cfg.sweep.alpha_c);
  cfg.sweep.alpha_sigma = w.auto_or_number("alpha_sigma", std::nullopt);
  w.number("bregman_steps", cfg.sweep.bregman_steps);
  w.choice("noise", cfg.sweep.noise,
           {{"exact", NoiseKind::exact},
            {"worst_case", NoiseKind::worst_case},
            {"fixed_sinusoid", NoiseKind::fixed_sinusoid}});
  w.number("k_max", cfg.sweep.k_max);
  w.number("sinusoid_k", cfg.sweep.sinusoid_k);
  w.choice("metric", cfg.sweep.metric, {{"kl", ErrorMetric::kl}, {"l1", ErrorMetric::l1}});
  w.flag("calibrate", cfg.sweep.calibrate);
  cfg.sweep.c_candidates = list_or_geometric(w, "c_list", "c", 1e-1, 1e-4, 13);
  cfg.sweep.target_rate = w.auto_or_number("target_rate", std::nullopt);
  w.number("threads", cfg.sweep.threads);
  w.finish();

  Reader o("output", sections["output"]);
  if (auto v = o.text("dir")) cfg.output.dir = *v;
  if (auto v = o.text("prefix")) cfg.output.prefix = *v;
  o.flag("svg", cfg.output.svg);
  o.finish();

  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

}  // namespace itreg
