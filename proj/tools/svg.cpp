#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace qrk::cli {

namespace {

constexpr double kWidth = 1200.0;
constexpr double kHeight = 800.0;
constexpr double kLeft = 95.0;
constexpr double kRight = 30.0;
constexpr double kTop = 50.0;
constexpr double kBottom = 70.0;
constexpr std::size_t kMaxPointsPerSeries = 2000;

const char* kPalette[] = {"#1f6fb4", "#d1495b", "#2e9e5b", "#8e5bb4",
                          "#c98a1e", "#4bb0c9", "#6b6b6b", "#a0522d"};

std::string fmt(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.2f", v);
  return buffer;
}

std::string fmt_tick(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%g", v);
  return buffer;
}

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

}  // namespace

SvgLinePlot::SvgLinePlot(std::string title, std::string x_label, std::string y_label)
    : title_(std::move(title)), x_label_(std::move(x_label)), y_label_(std::move(y_label)) {}

void SvgLinePlot::add_series(const std::string& name, const std::vector<double>& xs,
                             const std::vector<double>& ys) {
  if (xs.size() != ys.size()) {
    throw std::invalid_argument("svg series: x/y size mismatch");
  }
  series_.push_back(Series{name, xs, ys});
}

void SvgLinePlot::write(const std::filesystem::path& path) const {
  double x_min = std::numeric_limits<double>::infinity();
  double x_max = -std::numeric_limits<double>::infinity();
  double y_min_pos = std::numeric_limits<double>::infinity();
  double y_max_pos = -std::numeric_limits<double>::infinity();
  for (const Series& s : series_) {
    for (std::size_t i = 0; i < s.xs.size(); ++i) {
      x_min = std::min(x_min, s.xs[i]);
      x_max = std::max(x_max, s.xs[i]);
      if (s.ys[i] > 0.0 && std::isfinite(s.ys[i])) {
        y_min_pos = std::min(y_min_pos, s.ys[i]);
        y_max_pos = std::max(y_max_pos, s.ys[i]);
      }
    }
  }
  const bool have_data = std::isfinite(x_min) && std::isfinite(y_min_pos);
  if (!have_data) {
    x_min = 0.0;
    x_max = 1.0;
    y_min_pos = 1e-1;
    y_max_pos = 1e1;
  }
  if (x_max == x_min) {
    x_max = x_min + 1.0;
  }
  double log_lo = std::floor(std::log10(y_min_pos));
  double log_hi = std::ceil(std::log10(y_max_pos));
  if (log_hi <= log_lo) {
    log_hi = log_lo + 1.0;
  }

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const auto x_pos = [&](double x) { return kLeft + (x - x_min) / (x_max - x_min) * plot_w; };
  const auto y_pos = [&](double y) {
    const double ly = std::log10(std::max(y, std::pow(10.0, log_lo)));
    const double clamped = std::min(ly, log_hi);
    return kTop + (log_hi - clamped) / (log_hi - log_lo) * plot_h;
  };

  std::ofstream os(path, std::ios::trunc);
  if (!os) {
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  }
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"1200\" height=\"800\" "
        "viewBox=\"0 0 1200 800\">\n";
  os << "<rect x=\"0\" y=\"0\" width=\"1200\" height=\"800\" fill=\"#ffffff\"/>\n";
  os << "<text x=\"" << fmt(kWidth / 2) << "\" y=\"28\" font-family=\"sans-serif\" font-size=\"20\" "
        "text-anchor=\"middle\">" << escape_xml(title_) << "</text>\n";

  // frame
  os << "<rect x=\"" << fmt(kLeft) << "\" y=\"" << fmt(kTop) << "\" width=\"" << fmt(plot_w)
     << "\" height=\"" << fmt(plot_h) << "\" fill=\"none\" stroke=\"#000000\"/>\n";

  // y ticks: one per decade, thinned to at most 12 labels
  const int decades = static_cast<int>(log_hi - log_lo);
  const int y_step = std::max(1, (decades + 11) / 12);
  for (int d = 0; d <= decades; d += y_step) {
    const double ly = log_lo + d;
    const double y = kTop + (log_hi - ly) / (log_hi - log_lo) * plot_h;
    os << "<line x1=\"" << fmt(kLeft) << "\" y1=\"" << fmt(y) << "\" x2=\"" << fmt(kLeft - 6)
       << "\" y2=\"" << fmt(y) << "\" stroke=\"#000000\"/>\n";
    os << "<line x1=\"" << fmt(kLeft) << "\" y1=\"" << fmt(y) << "\" x2=\"" << fmt(kLeft + plot_w)
       << "\" y2=\"" << fmt(y) << "\" stroke=\"#dddddd\"/>\n";
    os << "<text x=\"" << fmt(kLeft - 10) << "\" y=\"" << fmt(y + 4)
       << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"end\">1e"
       << static_cast<long long>(ly) << "</text>\n";
  }

  // x ticks: 6 evenly spaced
  for (int t = 0; t <= 5; ++t) {
    const double x_val = x_min + (x_max - x_min) * t / 5.0;
    const double x = x_pos(x_val);
    os << "<line x1=\"" << fmt(x) << "\" y1=\"" << fmt(kTop + plot_h) << "\" x2=\"" << fmt(x)
       << "\" y2=\"" << fmt(kTop + plot_h + 6) << "\" stroke=\"#000000\"/>\n";
    os << "<text x=\"" << fmt(x) << "\" y=\"" << fmt(kTop + plot_h + 24)
       << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">"
       << fmt_tick(std::round(x_val)) << "</text>\n";
  }

  os << "<text x=\"" << fmt(kLeft + plot_w / 2) << "\" y=\"" << fmt(kHeight - 18)
     << "\" font-family=\"sans-serif\" font-size=\"16\" text-anchor=\"middle\">"
     << escape_xml(x_label_) << "</text>\n";
  os << "<text x=\"24\" y=\"" << fmt(kTop + plot_h / 2)
     << "\" font-family=\"sans-serif\" font-size=\"16\" text-anchor=\"middle\" transform=\"rotate(-90 24 "
     << fmt(kTop + plot_h / 2) << ")\">" << escape_xml(y_label_) << "</text>\n";

  // series polylines (long series are strided down; the CSV holds every point)
  for (std::size_t si = 0; si < series_.size(); ++si) {
    const Series& s = series_[si];
    if (s.xs.empty()) {
      continue;
    }
    const std::size_t stride = std::max<std::size_t>(1, s.xs.size() / kMaxPointsPerSeries);
    os << "<polyline fill=\"none\" stroke=\"" << kPalette[si % 8] << "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (std::size_t i = 0; i < s.xs.size(); i += stride) {
      if (!std::isfinite(s.ys[i])) {
        continue;
      }
      if (!first) os << ' ';
      os << fmt(x_pos(s.xs[i])) << ',' << fmt(y_pos(s.ys[i]));
      first = false;
    }
    os << "\"/>\n";
  }

  // legend, top-right corner of the plot area
  const double legend_x = kLeft + plot_w - 260.0;
  double legend_y = kTop + 14.0;
  for (std::size_t si = 0; si < series_.size(); ++si) {
    os << "<line x1=\"" << fmt(legend_x) << "\" y1=\"" << fmt(legend_y - 4) << "\" x2=\""
       << fmt(legend_x + 26) << "\" y2=\"" << fmt(legend_y - 4) << "\" stroke=\"" << kPalette[si % 8]
       << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << fmt(legend_x + 32) << "\" y=\"" << fmt(legend_y)
       << "\" font-family=\"sans-serif\" font-size=\"14\">" << escape_xml(series_[si].name)
       << "</text>\n";
    legend_y += 20.0;
  }

  os << "</svg>\n";
  os.close();
  if (os.fail()) {
    throw std::runtime_error("svg write failed");
  }
}

}  // namespace qrk::cli
