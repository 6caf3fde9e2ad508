#pragma once

#include <string>
#include <vector>

namespace fqnmr {

// Locale-independent number formatting, 12 significant digits. NaN renders
// as an empty field.
std::string format_number(double v);

// Deterministic CSV: comment lines, one header row, numeric rows.
struct Table {
  std::vector<std::string> comments;  // without the leading "# "
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

std::string to_csv(const Table& t);
void write_csv(const std::string& path, const Table& t);

}  // namespace fqnmr
