#include "fqnmr/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "fqnmr/errors.hpp"

namespace fqnmr {

std::string format_number(double v) {
  if (std::isnan(v)) return "";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof(buf), v,
                           std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

std::string to_csv(const Table& t) {
  std::ostringstream out;
  for (const auto& c : t.comments) out << "# " << c << "\n";
  for (std::size_t i = 0; i < t.header.size(); ++i) {
    if (i) out << ",";
    out << t.header[i];
  }
  out << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ",";
      out << format_number(row[i]);
    }
    out << "\n";
  }
  return out.str();
}

void write_csv(const std::string& path, const Table& t) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open output file: " + path);
  out << to_csv(t);
  if (!out) throw Error("write failed: " + path);
}

}  // namespace fqnmr
