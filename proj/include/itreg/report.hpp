#pragma once

// CSV and SVG emission for sweep results.

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "itreg/harness.hpp"

namespace itreg {

inline constexpr const char* kSweepCsvHeader =
    "delta,alpha,k_worst,n_bregman,kl_error,l1_error,data_residual,dr_iterations";

/// 17 significant digits, round-trip exact.
std::string format_double(double v);

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);
void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows);

/// Two columns x,value for a sampled signal.
void write_signal_csv(const std::string& path, const Signal& f);

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  std::optional<RateFit> fit;
  /// Reference line with this slope, anchored at the first point.
  std::optional<double> reference_slope;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<PlotSeries> series;
};

/// Static log-log plot: scatter, fitted lines and dashed reference slopes.
std::string render_loglog_svg(const PlotSpec& plot);
void write_text(const std::string& path, const std::string& text);

/// One series per Bregman step in rows, x = delta or alpha, y = chosen error.
PlotSpec sweep_plot(const std::vector<SweepRow>& rows, FitX x, FitY y,
                    const std::vector<double>& reference_slopes, std::string title);

}  // namespace itreg
