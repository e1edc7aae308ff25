#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "vandermetric/point_tuple.hpp"

namespace vandermetric::io {

/// Shortest representation that round-trips (at most 17 significant digits).
std::string format_double(double x);

/// One point per row, comma separated; blank lines and lines starting with
/// '#' are skipped. Throws ArgumentError on ragged or non-numeric rows.
PointTuple read_csv_points(std::istream& in);
PointTuple read_csv_points_file(const std::string& path);

std::vector<double> parse_number_list(const std::string& text);

std::string read_file(const std::string& path);

}  // namespace vandermetric::io
