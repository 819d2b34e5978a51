#include "itreg/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "itreg/error.hpp"

namespace itreg {

namespace {

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open output file " + path);
  return out;
}

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

struct Frame {
  double x0, x1, y0, y1;  // log10 data range
  double left = 80, right = 600, top = 50, bottom = 410;
  double px(double x) const { return left + (std::log10(x) - x0) / (x1 - x0) * (right - left); }
  double py(double y) const { return bottom - (std::log10(y) - y0) / (y1 - y0) * (bottom - top); }
};

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << kSweepCsvHeader << '\n';
  for (const auto& r : rows) {
    out << format_double(r.delta) << ',' << format_double(r.alpha) << ',' << r.k_worst << ','
        << r.n_bregman << ',' << format_double(r.kl_error) << ',' << format_double(r.l1_error)
        << ',' << format_double(r.data_residual) << ',' << r.dr_iterations << '\n';
  }
}

void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows) {
  auto out = open_output(path);
  write_sweep_csv(out, rows);
}

void write_signal_csv(const std::string& path, const Signal& f) {
  auto out = open_output(path);
  out << "x,value\n";
  for (std::size_t i = 0; i < f.size(); ++i) {
    out << format_double(f.grid().point(i)) << ',' << format_double(f[i]) << '\n';
  }
}

void write_text(const std::string& path, const std::string& text) {
  auto out = open_output(path);
  out << text;
}

std::string render_loglog_svg(const PlotSpec& plot) {
  double lx0 = std::numeric_limits<double>::infinity();
  double lx1 = -lx0;
  double ly0 = lx0;
  double ly1 = -lx0;
  for (const auto& s : plot.series) {
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!(s.x[i] > 0.0) || !(s.y[i] > 0.0) || !std::isfinite(s.y[i])) continue;
      lx0 = std::min(lx0, std::log10(s.x[i]));
      lx1 = std::max(lx1, std::log10(s.x[i]));
      ly0 = std::min(ly0, std::log10(s.y[i]));
      ly1 = std::max(ly1, std::log10(s.y[i]));
    }
  }
  if (!(lx0 <= lx1)) {
    lx0 = 0;
    lx1 = 1;
    ly0 = 0;
    ly1 = 1;
  }
  Frame fr{std::floor(lx0), std::ceil(lx1), std::floor(ly0), std::ceil(ly1)};
  if (fr.x1 == fr.x0) fr.x1 += 1;
  if (fr.y1 == fr.y0) fr.y1 += 1;

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"760\" height=\"470\" "
         "viewBox=\"0 0 760 470\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<rect width=\"760\" height=\"470\" fill=\"white\"/>\n";
  svg << "<text x=\"340\" y=\"28\" text-anchor=\"middle\" font-size=\"15\">"
      << escape_xml(plot.title) << "</text>\n";
  svg << "<defs><clipPath id=\"plot\"><rect x=\"" << fr.left << "\" y=\"" << fr.top
      << "\" width=\"" << fr.right - fr.left << "\" height=\"" << fr.bottom - fr.top
      << "\"/></clipPath></defs>\n";

  for (double e = fr.x0; e <= fr.x1 + 1e-9; e += 1.0) {
    const double x = fr.px(std::pow(10.0, e));
    svg << "<line x1=\"" << fmt(x) << "\" y1=\"" << fr.top << "\" x2=\"" << fmt(x) << "\" y2=\""
        << fr.bottom << "\" stroke=\"#e0e0e0\"/>\n";
    svg << "<text x=\"" << fmt(x) << "\" y=\"" << fr.bottom + 18
        << "\" text-anchor=\"middle\">1e" << static_cast<int>(e) << "</text>\n";
  }
  for (double e = fr.y0; e <= fr.y1 + 1e-9; e += 1.0) {
    const double y = fr.py(std::pow(10.0, e));
    svg << "<line x1=\"" << fr.left << "\" y1=\"" << fmt(y) << "\" x2=\"" << fr.right
        << "\" y2=\"" << fmt(y) << "\" stroke=\"#e0e0e0\"/>\n";
    svg << "<text x=\"" << fr.left - 6 << "\" y=\"" << fmt(y + 4)
        << "\" text-anchor=\"end\">1e" << static_cast<int>(e) << "</text>\n";
  }
  svg << "<rect x=\"" << fr.left << "\" y=\"" << fr.top << "\" width=\"" << fr.right - fr.left
      << "\" height=\"" << fr.bottom - fr.top << "\" fill=\"none\" stroke=\"black\"/>\n";
  svg << "<text x=\"" << (fr.left + fr.right) / 2 << "\" y=\"" << fr.bottom + 40
      << "\" text-anchor=\"middle\">" << escape_xml(plot.x_label) << "</text>\n";
  svg << "<text x=\"20\" y=\"" << (fr.top + fr.bottom) / 2 << "\" text-anchor=\"middle\" "
      << "transform=\"rotate(-90 20 " << (fr.top + fr.bottom) / 2 << ")\">"
      << escape_xml(plot.y_label) << "</text>\n";

  const double xa = std::pow(10.0, fr.x0);
  const double xb = std::pow(10.0, fr.x1);
  int legend_row = 0;
  for (std::size_t si = 0; si < plot.series.size(); ++si) {
    const auto& s = plot.series[si];
    const char* color = kPalette[si % std::size(kPalette)];
    svg << "<g clip-path=\"url(#plot)\">\n";
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!(s.x[i] > 0.0) || !(s.y[i] > 0.0) || !std::isfinite(s.y[i])) continue;
      svg << "<circle cx=\"" << fmt(fr.px(s.x[i])) << "\" cy=\"" << fmt(fr.py(s.y[i]))
          << "\" r=\"3.5\" fill=\"" << color << "\"/>\n";
    }
    if (s.fit) {
      const auto line_y = [&](double x) { return std::exp(s.fit->intercept) * std::pow(x, s.fit->slope); };
      svg << "<line x1=\"" << fmt(fr.px(xa)) << "\" y1=\"" << fmt(fr.py(line_y(xa))) << "\" x2=\""
          << fmt(fr.px(xb)) << "\" y2=\"" << fmt(fr.py(line_y(xb))) << "\" stroke=\"" << color
          << "\" stroke-width=\"1.5\"/>\n";
    }
    if (s.reference_slope && !s.x.empty() && s.x.front() > 0.0 && s.y.front() > 0.0) {
      const double x0 = s.x.front();
      const double y0 = s.y.front();
      const auto ref_y = [&](double x) { return y0 * std::pow(x / x0, *s.reference_slope); };
      svg << "<line x1=\"" << fmt(fr.px(xa)) << "\" y1=\"" << fmt(fr.py(ref_y(xa))) << "\" x2=\""
          << fmt(fr.px(xb)) << "\" y2=\"" << fmt(fr.py(ref_y(xb))) << "\" stroke=\"" << color
          << "\" stroke-dasharray=\"6 4\"/>\n";
    }
    svg << "</g>\n";

    std::string label = s.label;
    if (s.fit) label += ", fit " + fmt(s.fit->slope);
    if (s.reference_slope) label += ", ref " + fmt(*s.reference_slope);
    const double ly = fr.top + 10 + 18 * legend_row++;
    svg << "<circle cx=\"" << fr.right + 16 << "\" cy=\"" << ly << "\" r=\"4\" fill=\"" << color
        << "\"/>\n";
    svg << "<text x=\"" << fr.right + 26 << "\" y=\"" << ly + 4 << "\" font-size=\"10\">"
        << escape_xml(label) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

PlotSpec sweep_plot(const std::vector<SweepRow>& rows, FitX x, FitY y,
                    const std::vector<double>& reference_slopes, std::string title) {
  PlotSpec plot;
  plot.title = std::move(title);
  plot.x_label = x == FitX::delta ? "delta" : "alpha";
  plot.y_label = y == FitY::kl_error ? "KL / Bregman error" : "L1 error";
  std::map<int, PlotSeries> by_step;
  for (const auto& r : rows) {
    auto& s = by_step[r.n_bregman];
    s.x.push_back(x == FitX::delta ? r.delta : r.alpha);
    s.y.push_back(y == FitY::kl_error ? r.kl_error : r.l1_error);
  }
  for (auto& [n, s] : by_step) {
    s.label = "n = " + std::to_string(n);
    try {
      s.fit = fit_rate(rows, x, y, n);
    } catch (const Error&) {
      s.fit.reset();
    }
    const auto idx = static_cast<std::size_t>(n - 1);
    if (idx < reference_slopes.size()) s.reference_slope = reference_slopes[idx];
    plot.series.push_back(std::move(s));
  }
  return plot;
}

}  // namespace itreg
