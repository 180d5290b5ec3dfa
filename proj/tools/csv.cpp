#include "csv.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace qrk::cli {

std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header) {
  os_.open(path, std::ios::trunc);
  if (!os_) {
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  }
  write_text_row(header);
}

void CsvWriter::write_row(const std::vector<std::optional<double>>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) os_ << ',';
    if (cells[i]) os_ << format_double(*cells[i]);
  }
  os_ << '\n';
}

void CsvWriter::write_text_row(const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) os_ << ',';
    os_ << cells[i];
  }
  os_ << '\n';
}

void CsvWriter::close() {
  os_.close();
  if (os_.fail()) {
    throw std::runtime_error("csv write failed");
  }
}

std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) {
    throw std::runtime_error("cannot open " + path.string());
  }
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(is, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) {
      cells.push_back(cell);
    }
    if (!line.empty() && line.back() == ',') {
      cells.emplace_back();
    }
    rows.push_back(std::move(cells));
  }
  return rows;
}

}  // namespace qrk::cli
