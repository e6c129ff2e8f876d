#include "cli/csv.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "qdarwin/errors.hpp"

namespace qdarwin::cli {

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

std::string format_real(double value) {
  if (!std::isfinite(value)) throw InvariantViolation("csv: refusing to write a non-finite value");
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value == 0.0 ? 0.0 : value);  // no "-0"
  return buf;
}

Cell::Cell(double v) : text_(format_real(v)) {}
Cell::Cell(int v) : text_(std::to_string(v)) {}
Cell::Cell(bool v) : text_(v ? "1" : "0") {}
Cell::Cell(std::string_view v) : text_(v) {
  if (text_.find_first_of(",\n\r") != std::string::npos) throw InvariantViolation("csv: field contains a separator");
}

Table::Table(std::vector<std::string> header) : header_(std::move(header)) {
  if (header_.empty()) throw ArgumentError("csv: empty header");
}

void Table::add(std::vector<Cell> row) {
  if (row.size() != header_.size()) {
    throw InvariantViolation("csv: row has " + std::to_string(row.size()) + " fields, header has " +
                             std::to_string(header_.size()));
  }
  std::vector<std::string> fields;
  fields.reserve(row.size());
  for (auto& c : row) fields.push_back(c.text());
  rows_.push_back(std::move(fields));
}

std::size_t Table::column(std::string_view name) const {
  for (std::size_t i = 0; i < header_.size(); ++i) {
    if (header_[i] == name) return i;
  }
  throw ArgumentError("csv: no column named " + std::string(name));
}

void Table::write(std::ostream& out) const {
  auto line = [&out](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) out << (i ? "," : "") << fields[i];
    out << '\n';
  };
  line(header_);
  for (const auto& r : rows_) line(r);
}

std::string Table::str() const {
  std::ostringstream ss;
  write(ss);
  return ss.str();
}

Table parse_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.empty()) throw ArgumentError("csv: missing header");
  Table t(split(line));
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto fields = split(line);
    if (fields.size() != t.header().size()) throw ArgumentError("csv: ragged row: " + line);
    std::vector<Cell> cells(fields.begin(), fields.end());
    t.add(std::move(cells));
  }
  return t;
}

Table parse_csv(const std::string& text) {
  std::istringstream ss(text);
  return parse_csv(ss);
}

}  // namespace qdarwin::cli
