#include "chanpred/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace chanpred {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 40.0;
constexpr double kTop = 30.0;
constexpr double kBottom = 60.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

void write_line_plot_svg(const std::vector<SvgSeries>& series,
                         const std::string& x_label, const std::string& y_label,
                         const std::filesystem::path& path) {
  if (series.empty()) {
    throw std::invalid_argument("write_line_plot_svg: no series");
  }
  double x_min = std::numeric_limits<double>::infinity(), x_max = -x_min;
  double y_min = std::numeric_limits<double>::infinity(), y_max = -y_min;
  for (const auto& s : series) {
    if (s.x.size() != s.y.size() || s.x.empty()) {
      throw std::invalid_argument("write_line_plot_svg: series '" + s.label +
                                  "' is empty or ragged");
    }
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!(s.y[i] > 0.0)) {
        throw std::invalid_argument(
            "write_line_plot_svg: log axis needs positive values (series '" +
            s.label + "')");
      }
      x_min = std::min(x_min, s.x[i]);
      x_max = std::max(x_max, s.x[i]);
      y_min = std::min(y_min, s.y[i]);
      y_max = std::max(y_max, s.y[i]);
    }
  }
  if (x_max == x_min) {
    x_max = x_min + 1.0;
  }
  double ly_min = std::floor(std::log10(y_min));
  double ly_max = std::ceil(std::log10(y_max));
  if (ly_max == ly_min) {
    ly_max += 1.0;
  }

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const auto to_x = [&](double x) {
    return kLeft + plot_w * (x - x_min) / (x_max - x_min);
  };
  const auto to_y = [&](double y) {
    return kTop + plot_h * (1.0 - (std::log10(y) - ly_min) / (ly_max - ly_min));
  };

  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("write_line_plot_svg: cannot open " + path.string());
  }
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " "
      << kHeight << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // frame
  out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << plot_w
      << "\" height=\"" << plot_h
      << "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";

  // y ticks: one per decade
  for (double e = ly_min; e <= ly_max + 1e-9; e += 1.0) {
    const double yy = to_y(std::pow(10.0, e));
    out << "<line x1=\"" << kLeft << "\" y1=\"" << fmt(yy) << "\" x2=\""
        << kWidth - kRight << "\" y2=\"" << fmt(yy)
        << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    out << "<text x=\"" << kLeft - 8 << "\" y=\"" << fmt(yy + 4)
        << "\" text-anchor=\"end\" font-size=\"12\" font-family=\"sans-serif\">1e"
        << static_cast<int>(e) << "</text>\n";
  }

  // x ticks: five evenly spaced
  for (int i = 0; i <= 4; ++i) {
    const double xv = x_min + (x_max - x_min) * i / 4.0;
    const double xx = to_x(xv);
    out << "<line x1=\"" << fmt(xx) << "\" y1=\"" << kTop + plot_h << "\" x2=\""
        << fmt(xx) << "\" y2=\"" << kTop + plot_h + 5
        << "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
    out << "<text x=\"" << fmt(xx) << "\" y=\"" << kTop + plot_h + 20
        << "\" text-anchor=\"middle\" font-size=\"12\" "
           "font-family=\"sans-serif\">"
        << fmt(xv) << "</text>\n";
  }

  out << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 15
      << "\" text-anchor=\"middle\" font-size=\"14\" font-family=\"sans-serif\">"
      << x_label << "</text>\n";
  out << "<text x=\"18\" y=\"" << kTop + plot_h / 2
      << "\" text-anchor=\"middle\" font-size=\"14\" font-family=\"sans-serif\" "
         "transform=\"rotate(-90 18 "
      << kTop + plot_h / 2 << ")\">" << y_label << "</text>\n";

  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& s = series[i];
    const char* color = kPalette[i % (sizeof(kPalette) / sizeof(kPalette[0]))];
    out << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"2\" points=\"";
    for (std::size_t j = 0; j < s.x.size(); ++j) {
      if (j > 0) {
        out << ' ';
      }
      out << fmt(to_x(s.x[j])) << ',' << fmt(to_y(s.y[j]));
    }
    out << "\"/>\n";

    // legend entry
    const double ly = kTop + 16.0 + 18.0 * static_cast<double>(i);
    out << "<line x1=\"" << kLeft + plot_w - 150 << "\" y1=\"" << fmt(ly)
        << "\" x2=\"" << kLeft + plot_w - 120 << "\" y2=\"" << fmt(ly)
        << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << kLeft + plot_w - 112 << "\" y=\"" << fmt(ly + 4)
        << "\" font-size=\"12\" font-family=\"sans-serif\">" << s.label
        << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace chanpred
