#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace qrk::cli {

/// Deterministic log-y line chart writer (1200x800 units). No external
/// plotting dependency: the CSV files are the data contract, the SVG is a
/// rendering of the same series.
class SvgLinePlot {
 public:
  SvgLinePlot(std::string title, std::string x_label, std::string y_label);

  /// Series are drawn in insertion order with a fixed palette. Non-positive
  /// y values are clamped to the bottom of the log axis.
  void add_series(const std::string& name, const std::vector<double>& xs,
                  const std::vector<double>& ys);

  void write(const std::filesystem::path& path) const;

 private:
  struct Series {
    std::string name;
    std::vector<double> xs;
    std::vector<double> ys;
  };

  std::string title_;
  std::string x_label_;
  std::string y_label_;
  std::vector<Series> series_;
};

}  // namespace qrk::cli
