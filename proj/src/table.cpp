#include "smallworld/table.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace smallworld {

void OutputTable::add_metadata(std::string key, std::string value) {
  metadata_.emplace_back(std::move(key), std::move(value));
}

void OutputTable::add_row(std::vector<Cell> row) {
  if (row.size() != header_.size())
    throw std::invalid_argument("row has " + std::to_string(row.size()) + " fields, header has " +
                                std::to_string(header_.size()));
  rows_.push_back(std::move(row));
}

std::string format_real(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 6);
  return std::string(buf, res.ptr);
}

std::string format_cell(const Cell& cell) {
  if (const auto* i = std::get_if<std::int64_t>(&cell)) return std::to_string(*i);
  return format_real(std::get<double>(cell));
}

void emit_tsv(const OutputTable& table, std::ostream& out) {
  for (const auto& [key, value] : table.metadata()) out << "# " << key << ": " << value << '\n';
  for (std::size_t i = 0; i < table.header().size(); ++i)
    out << (i ? "\t" : "") << table.header()[i];
  out << '\n';
  for (const auto& row : table.rows()) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "\t" : "") << format_cell(row[i]);
    out << '\n';
  }
}

void emit_tsv(const OutputTable& table, const std::string& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open " + path + " for writing");
  emit_tsv(table, file);
  file.flush();
  if (!file) throw std::runtime_error("failed writing " + path);
}

}  // namespace smallworld
