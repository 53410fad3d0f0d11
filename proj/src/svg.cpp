#include "casimir/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "casimir/errors.hpp"
#include "msg.hpp"

namespace casimir {

namespace {

struct Axis {
  double lo = 0.0;
  double hi = 1.0;
  bool log = false;

  double transform(double v) const { return log ? std::log10(v) : v; }
  // Fraction of the axis length at which v sits.
  double fraction(double v) const {
    return (transform(v) - lo) / (hi - lo);
  }
};

Axis make_axis(const std::vector<SvgSeries>& series, bool log_scale,
               bool use_y) {
  Axis axis;
  axis.log = log_scale;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& s : series) {
    const auto& values = use_y ? s.y : s.x;
    for (double raw : values) {
      double v = use_y && log_scale ? std::fabs(raw) : raw;
      if (!std::isfinite(v)) continue;
      if (log_scale && !(v > 0.0)) continue;
      v = log_scale ? std::log10(v) : v;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  if (!(lo <= hi)) {  // no plottable points
    lo = log_scale ? 0.0 : 0.0;
    hi = log_scale ? 1.0 : 1.0;
  }
  if (hi - lo < 1e-300) {  // degenerate span
    lo -= 0.5;
    hi += 0.5;
  }
  const double pad = 0.05 * (hi - lo);
  axis.lo = lo - pad;
  axis.hi = hi + pad;
  return axis;
}

std::string tick_label(const Axis& axis, double t) {
  const double value = axis.log ? std::pow(10.0, t) : t;
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.3g", value);
  return buffer;
}

}  // namespace

void write_svg_plot(const std::string& path,
                    const std::vector<SvgSeries>& series,
                    const SvgPlotOptions& options) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError(detail::msg("cannot open '", path, "' for writing"));
  }

  const int width = options.width;
  const int height = options.height;
  const double left = 80, right = 25, top = 45, bottom = 60;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;

  const Axis x_axis = make_axis(series, options.log_x, false);
  const Axis y_axis = make_axis(series, options.log_y, true);
  const auto px = [&](double v) { return left + x_axis.fraction(v) * plot_w; };
  const auto py = [&](double v) {
    return top + (1.0 - y_axis.fraction(v)) * plot_h;
  };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' '
      << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"16\">" << options.title
      << "</text>\n";

  // frame
  out << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << plot_w
      << "\" height=\"" << plot_h
      << "\" fill=\"none\" stroke=\"black\"/>\n";

  const int n_ticks = 5;
  for (int i = 0; i < n_ticks; ++i) {
    const double f = static_cast<double>(i) / (n_ticks - 1);
    const double tx = x_axis.lo + f * (x_axis.hi - x_axis.lo);
    const double ty = y_axis.lo + f * (y_axis.hi - y_axis.lo);
    const double sx = left + f * plot_w;
    const double sy = top + (1.0 - f) * plot_h;
    out << "<line x1=\"" << sx << "\" y1=\"" << top + plot_h << "\" x2=\""
        << sx << "\" y2=\"" << top + plot_h + 5 << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << sx << "\" y=\"" << top + plot_h + 20
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        << "font-size=\"11\">" << tick_label(x_axis, tx) << "</text>\n";
    out << "<line x1=\"" << left - 5 << "\" y1=\"" << sy << "\" x2=\"" << left
        << "\" y2=\"" << sy << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << left - 8 << "\" y=\"" << sy + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
        << "font-size=\"11\">" << tick_label(y_axis, ty) << "</text>\n";
  }
  out << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 12
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      << "font-size=\"13\">" << options.x_label << "</text>\n";
  out << "<text x=\"18\" y=\"" << top + plot_h / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      << "font-size=\"13\" transform=\"rotate(-90 18 " << top + plot_h / 2
      << ")\">" << options.y_label << "</text>\n";

  for (const auto& s : series) {
    const std::size_t n = std::min(s.x.size(), s.y.size());
    if (s.line && n > 1) {
      out << "<polyline fill=\"none\" stroke=\"" << s.color
          << "\" stroke-width=\"1.5\" points=\"";
      for (std::size_t i = 0; i < n; ++i) {
        double yv = options.log_y ? std::fabs(s.y[i]) : s.y[i];
        if (options.log_y && !(yv > 0.0)) continue;
        if (options.log_x && !(s.x[i] > 0.0)) continue;
        out << px(s.x[i]) << ',' << py(yv) << ' ';
      }
      out << "\"/>\n";
    }
    if (s.markers) {
      for (std::size_t i = 0; i < n; ++i) {
        double yv = options.log_y ? std::fabs(s.y[i]) : s.y[i];
        if (options.log_y && !(yv > 0.0)) continue;
        if (options.log_x && !(s.x[i] > 0.0)) continue;
        out << "<rect x=\"" << px(s.x[i]) - 2.5 << "\" y=\"" << py(yv) - 2.5
            << "\" width=\"5\" height=\"5\" fill=\"" << s.color << "\"/>\n";
      }
    }
  }
  out << "</svg>\n";
  if (!out) {
    throw IoError(detail::msg("write to '", path, "' failed"));
  }
}

}  // namespace casimir
