#include "fairsim/csv.hpp"

#include <charconv>
#include <fstream>

#include "fairsim/types.hpp"

namespace fairsim::csv {

std::size_t Table::column(const std::string& name, const std::string& path) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw LoadError(path + ": missing required column '" + name + "'");
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      cells.push_back(line.substr(start));
      break;
    }
    cells.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return cells;
}

Table read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open file: " + path);
  Table table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (table.header.empty()) {
      table.header = split_line(line);
      continue;
    }
    auto cells = split_line(line);
    if (cells.size() != table.header.size()) {
      throw LoadError(path + ":" + std::to_string(line_no) + ": expected " +
                      std::to_string(table.header.size()) + " cells, got " +
                      std::to_string(cells.size()));
    }
    table.rows.push_back({line_no, std::move(cells)});
  }
  if (table.header.empty()) throw LoadError(path + ": empty file (no header row)");
  return table;
}

double parse_double(const std::string& cell, const std::string& path, std::size_t line) {
  double value = 0.0;
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw LoadError(path + ":" + std::to_string(line) + ": not a number: '" + cell + "'");
  }
  return value;
}

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

void write_row(std::ostream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) out << ',';
    out << cells[i];
  }
  out << '\n';
}

}  // namespace fairsim::csv
