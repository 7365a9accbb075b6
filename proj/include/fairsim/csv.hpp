#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

namespace fairsim::csv {

/// A parsed CSV file: header plus data rows tagged with their 1-based line
/// numbers (for error messages). Plain comma-separated UTF-8, no quoting;
/// CRLF tolerated, empty lines skipped.
struct Table {
  std::vector<std::string> header;
  struct Row {
    std::size_t line;
    std::vector<std::string> cells;
  };
  std::vector<Row> rows;

  /// Index of a header column; throws LoadError when absent.
  std::size_t column(const std::string& name, const std::string& path) const;
};

Table read_file(const std::string& path);

std::vector<std::string> split_line(const std::string& line);

/// Strict numeric parse; throws LoadError naming the file and line.
double parse_double(const std::string& cell, const std::string& path, std::size_t line);

/// Shortest round-trip representation (std::to_chars); locale-independent
/// and stable across runs.
std::string format_double(double value);

void write_row(std::ostream& out, const std::vector<std::string>& cells);

}  // namespace fairsim::csv
