#pragma once

#include <concepts>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace qdarwin::cli {

/// Reals are written with 17 significant digits; non-finite values are rejected.
std::string format_real(double value);

class Cell {
 public:
  Cell(double v);
  Cell(int v);
  template <std::unsigned_integral T>
  Cell(T v) : text_(std::to_string(v)) {}
  Cell(bool v);
  Cell(std::string_view v);
  Cell(const std::string& v) : Cell(std::string_view(v)) {}
  Cell(const char* v) : Cell(std::string_view(v)) {}
  const std::string& text() const { return text_; }

 private:
  std::string text_;
};

// Header plus rows of already formatted fields. Column count is fixed by the header.
class Table {
 public:
  explicit Table(std::vector<std::string> header);
  void add(std::vector<Cell> row);
  const std::vector<std::string>& header() const { return header_; }
  const std::vector<std::vector<std::string>>& rows() const { return rows_; }
  std::size_t column(std::string_view name) const;
  void write(std::ostream& out) const;
  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

/// Reads a table written by Table::write. Throws ArgumentError when the header
/// is missing or a row has the wrong number of fields.
Table parse_csv(std::istream& in);
Table parse_csv(const std::string& text);

}  // namespace qdarwin::cli
