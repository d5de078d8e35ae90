#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "qhe/sweep.hpp"

namespace qhe {

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) return "0";  // folds -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

void emit_csv(const Table& table, std::ostream& out) {
  for (const auto& [key, value] : table.metadata) out << "# " << key << "=" << value << '\n';
  for (std::size_t c = 0; c < table.columns.size(); ++c) out << (c ? "," : "") << table.columns[c];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ',';
      if (const auto* d = std::get_if<double>(&row[c])) {
        out << format_number(*d);
      } else {
        out << (std::get<bool>(row[c]) ? "true" : "false");
      }
    }
    out << '\n';
  }
}

void emit_csv_file(const Table& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::IoFailure, "cannot open '" + path + "' for writing");
  emit_csv(table, out);
  out.flush();
  if (!out) throw Error(ErrorKind::IoFailure, "write to '" + path + "' failed");
}

}  // namespace qhe
