#include "output.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace spinflow_cli {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void absorb(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  double span() const { return hi > lo ? hi - lo : 1.0; }
};

}  // namespace

void write_svg_plot(std::ostream& out, const ConfigEcho& config,
                    const std::string& title, const std::string& x_label,
                    const std::string& y_label,
                    const std::vector<SvgSeries>& series, bool log_y) {
  constexpr double kW = 800, kH = 500;
  constexpr double kLeft = 70, kRight = 20, kTop = 40, kBottom = 50;

  auto transform_y = [log_y](double v) {
    return log_y ? std::log10(std::max(v, 1e-300)) : v;
  };

  Range xr, yr;
  for (const auto& s : series) {
    for (double v : s.x) xr.absorb(v);
    for (double v : s.y) yr.absorb(transform_y(v));
  }

  auto px = [&](double x) {
    return kLeft + (x - xr.lo) / xr.span() * (kW - kLeft - kRight);
  };
  auto py = [&](double y) {
    return kH - kBottom -
           (transform_y(y) - yr.lo) / yr.span() * (kH - kTop - kBottom);
  };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW
      << "\" height=\"" << kH << "\" viewBox=\"0 0 " << kW << " " << kH
      << "\">\n";
  out << "<desc>\n";
  for (const auto& [key, value] : config) {
    out << key << " = " << value << "\n";
  }
  out << "</desc>\n";
  out << "<rect width=\"" << kW << "\" height=\"" << kH
      << "\" fill=\"white\"/>\n";
  out << "<text x=\"" << kW / 2 << "\" y=\"24\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";

  // Axes.
  out << "<line x1=\"" << kLeft << "\" y1=\"" << kH - kBottom << "\" x2=\""
      << kW - kRight << "\" y2=\"" << kH - kBottom
      << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft
      << "\" y2=\"" << kH - kBottom << "\" stroke=\"black\"/>\n";
  out << "<text x=\"" << (kLeft + kW - kRight) / 2 << "\" y=\"" << kH - 12
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"12\">"
      << x_label << "</text>\n";
  out << "<text x=\"16\" y=\"" << (kTop + kH - kBottom) / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
      << "transform=\"rotate(-90 16 " << (kTop + kH - kBottom) / 2 << ")\">"
      << (log_y ? "log10 " + y_label : y_label) << "</text>\n";

  // Extremal tick labels.
  out << "<text x=\"" << kLeft << "\" y=\"" << kH - kBottom + 16
      << "\" font-family=\"sans-serif\" font-size=\"10\">"
      << format_double(xr.lo) << "</text>\n";
  out << "<text x=\"" << kW - kRight << "\" y=\"" << kH - kBottom + 16
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">"
      << format_double(xr.hi) << "</text>\n";
  out << "<text x=\"" << kLeft - 4 << "\" y=\"" << kH - kBottom
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">"
      << format_double(yr.lo) << "</text>\n";
  out << "<text x=\"" << kLeft - 4 << "\" y=\"" << kTop + 10
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">"
      << format_double(yr.hi) << "</text>\n";

  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* color = kPalette[k % (sizeof(kPalette) / sizeof(*kPalette))];
    out << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (i) out << ' ';
      out << format_double(px(s.x[i])) << ',' << format_double(py(s.y[i]));
    }
    out << "\"/>\n";
    out << "<text x=\"" << kW - kRight - 8 << "\" y=\"" << kTop + 16 + 14 * k
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\" "
        << "fill=\"" << color << "\">" << s.label << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace spinflow_cli
