#ifndef SPINFLOW_TOOLS_OUTPUT_HPP
#define SPINFLOW_TOOLS_OUTPUT_HPP

#include <charconv>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace spinflow_cli {

/// Shortest round-trip decimal rendering of a double.
inline std::string format_double(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

/// Resolved configuration as ordered key/value pairs; echoed into every
/// output artifact.
using ConfigEcho = std::vector<std::pair<std::string, std::string>>;

/// Output sink: file path or "-" for stdout.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (path == "-" || path.empty()) {
      out_ = &std::cout;
    } else {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw std::runtime_error("cannot open output file: " + path);
      out_ = file_.get();
    }
  }
  std::ostream& stream() { return *out_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* out_ = nullptr;
};

/// CSV with '#'-prefixed metadata lines, a header row, comma separator and
/// '.' decimal point.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, const ConfigEcho& config) : out_(out) {
    for (const auto& [key, value] : config) {
      out_ << "# " << key << " = " << value << "\n";
    }
  }
  void header(const std::vector<std::string>& columns) {
    join(columns);
  }
  void row(const std::vector<double>& values) {
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (double v : values) cells.push_back(format_double(v));
    join(cells);
  }
  void raw_row(const std::vector<std::string>& cells) { join(cells); }

 private:
  void join(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ',';
      out_ << cells[i];
    }
    out_ << "\n";
  }
  std::ostream& out_;
};

struct SvgSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

/// Single-panel polyline plot; log_y switches to a log10 ordinate.
void write_svg_plot(std::ostream& out, const ConfigEcho& config,
                    const std::string& title, const std::string& x_label,
                    const std::string& y_label,
                    const std::vector<SvgSeries>& series, bool log_y);

}  // namespace spinflow_cli

#endif
