#include "qtwick/csv.hpp"

#include <cstdio>
#include <istream>
#include <ostream>

#include "qtwick/errors.hpp"

namespace qtwick::csv {

std::string formatDouble(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

double parseDouble(const std::string& field) {
  try {
    std::size_t used = 0;
    const double v = std::stod(field, &used);
    if (used == field.size()) return v;
  } catch (const std::exception&) {
  }
  throw ArgumentError("not a number: \"" + field + "\"");
}

std::int64_t parseInteger(const std::string& field) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(field, &used);
    if (used == field.size()) return v;
  } catch (const std::exception&) {
  }
  throw ArgumentError("not an integer: \"" + field + "\"");
}

std::string escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void writeRow(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t k = 0; k < fields.size(); ++k) {
    if (k) out << ',';
    out << escape(fields[k]);
  }
  out << '\n';
}

namespace {

std::vector<std::string> splitLine(const std::string& line, int lineNumber) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  for (std::size_t k = 0; k < line.size(); ++k) {
    const char c = line[k];
    if (quoted) {
      if (c == '"') {
        if (k + 1 < line.size() && line[k + 1] == '"') {
          current += '"';
          ++k;
        } else {
          quoted = false;
        }
      } else {
        current += c;
      }
    } else if (c == '"' && current.empty()) {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(current));
      current.clear();
    } else {
      current += c;
    }
  }
  if (quoted) {
    throw ArgumentError("unterminated quote on CSV line " + std::to_string(lineNumber));
  }
  fields.push_back(std::move(current));
  return fields;
}

}  // namespace

Table read(std::istream& in) {
  Table table;
  std::string line;
  int lineNumber = 0;
  while (std::getline(in, line)) {
    ++lineNumber;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = splitLine(line, lineNumber);
    if (table.header.empty()) {
      table.header = std::move(fields);
      continue;
    }
    if (fields.size() != table.header.size()) {
      throw ArgumentError("CSV line " + std::to_string(lineNumber) + " has " +
                          std::to_string(fields.size()) + " fields, expected " +
                          std::to_string(table.header.size()));
    }
    table.rows.push_back(std::move(fields));
  }
  if (table.header.empty()) throw ArgumentError("CSV input has no header");
  return table;
}

}  // namespace qtwick::csv
