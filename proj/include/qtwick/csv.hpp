#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace qtwick::csv {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// 17 significant digits, "%.17g" style; round-trips every double.
std::string formatDouble(double value);

/// Strict parses: the whole field must be consumed. Throw ArgumentError.
double parseDouble(const std::string& field);
std::int64_t parseInteger(const std::string& field);

/// Quotes a field when it contains a comma, quote or newline.
std::string escape(const std::string& field);
void writeRow(std::ostream& out, const std::vector<std::string>& fields);

/// Reads a header line and rows; every row must have the header's width.
Table read(std::istream& in);

}  // namespace qtwick::csv
