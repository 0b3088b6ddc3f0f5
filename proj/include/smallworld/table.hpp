#ifndef SMALLWORLD_TABLE_HPP
#define SMALLWORLD_TABLE_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace smallworld {

using Cell = std::variant<std::int64_t, double>;

/// Tab-separated result table with `# key: value` metadata lines.
class OutputTable {
 public:
  explicit OutputTable(std::vector<std::string> header) : header_(std::move(header)) {}

  void add_metadata(std::string key, std::string value);
  /// Throws std::invalid_argument when the row width differs from the header.
  void add_row(std::vector<Cell> row);

  const std::vector<std::string>& header() const { return header_; }
  const std::vector<std::vector<Cell>>& rows() const { return rows_; }
  const std::vector<std::pair<std::string, std::string>>& metadata() const { return metadata_; }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<Cell>> rows_;
  std::vector<std::pair<std::string, std::string>> metadata_;
};

/// Six significant digits, '.' decimal point regardless of locale.
std::string format_real(double value);
std::string format_cell(const Cell& cell);

void emit_tsv(const OutputTable& table, std::ostream& out);
/// Throws std::runtime_error if the file cannot be written.
void emit_tsv(const OutputTable& table, const std::string& path);

}  // namespace smallworld

#endif
