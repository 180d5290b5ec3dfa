#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

namespace qrk::cli {

/// Formats a double with 17 significant digits ("%.17g"), enough to
/// round-trip any IEEE double exactly.
std::string format_double(double value);

/// Comma-separated writer: UTF-8, header row, %.17g floats, empty cells for
/// missing values.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);

  void write_row(const std::vector<std::optional<double>>& cells);
  void write_text_row(const std::vector<std::string>& cells);
  void close();

 private:
  std::ofstream os_;
};

/// Reads a CSV file back into rows of strings (used by tests and the plot
/// pipeline; no quoting support needed for the files this tool writes).
std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& path);

}  // namespace qrk::cli
