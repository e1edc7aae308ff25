#include "vandermetric/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "vandermetric/errors.hpp"

namespace vandermetric::io {

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  std::string field;
  std::istringstream in(text);
  while (std::getline(in, field, ',')) {
    const auto b = field.find_first_not_of(" \t\r");
    const auto e = field.find_last_not_of(" \t\r");
    if (b == std::string::npos) throw ArgumentError("empty field in number list '" + text + "'");
    const std::string trimmed = field.substr(b, e - b + 1);
    double v = 0.0;
    const auto res = std::from_chars(trimmed.data(), trimmed.data() + trimmed.size(), v);
    if (res.ec != std::errc() || res.ptr != trimmed.data() + trimmed.size()) {
      throw ArgumentError("not a number: '" + trimmed + "'");
    }
    out.push_back(v);
  }
  if (out.empty()) throw ArgumentError("empty number list");
  return out;
}

PointTuple read_csv_points(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    try {
      rows.push_back(parse_number_list(line));
    } catch (const ArgumentError& e) {
      throw ArgumentError("csv line " + std::to_string(lineno) + ": " + e.what());
    }
    if (rows.back().size() != rows.front().size()) {
      throw ArgumentError("csv line " + std::to_string(lineno) + ": expected " + std::to_string(rows.front().size()) +
                          " columns");
    }
  }
  return PointTuple(rows);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ArgumentError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

PointTuple read_csv_points_file(const std::string& path) {
  std::istringstream in(read_file(path));
  return read_csv_points(in);
}

}  // namespace vandermetric::io
