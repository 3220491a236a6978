#pragma once

#include <charconv>
#include <cmath>
#include <complex>
#include <ostream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace spp::cli {

using Cell = std::variant<double, long long, std::string>;

/// Shortest representation that reads back to the same double.
inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  if (res.ec != std::errc()) throw std::runtime_error("format_double: to_chars failed");
  return std::string(buf, res.ptr);
}

inline std::string format_cell(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  return std::get<std::string>(c);
}

enum class Delimiter { comma, tab };

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void add_row(std::vector<Cell> row) {
    if (row.size() != columns_.size())
      throw std::logic_error("CsvTable: row has " + std::to_string(row.size()) + " cells, expected " +
                             std::to_string(columns_.size()));
    rows_.push_back(std::move(row));
  }

  void add_comment(std::string line) { comments_.push_back(std::move(line)); }

  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<Cell>>& rows() const { return rows_; }
  const std::vector<std::string>& comments() const { return comments_; }

  std::size_t column(const std::string& name) const {
    for (std::size_t i = 0; i < columns_.size(); ++i)
      if (columns_[i] == name) return i;
    throw std::out_of_range("CsvTable: no column " + name);
  }

  double number(std::size_t row, const std::string& name) const {
    const Cell& c = rows_.at(row).at(column(name));
    if (const auto* d = std::get_if<double>(&c)) return *d;
    if (const auto* i = std::get_if<long long>(&c)) return static_cast<double>(*i);
    throw std::invalid_argument("CsvTable: column " + name + " is not numeric");
  }

  const std::string& text(std::size_t row, const std::string& name) const {
    return std::get<std::string>(rows_.at(row).at(column(name)));
  }

  void write(std::ostream& os, Delimiter delim = Delimiter::comma) const {
    const char sep = delim == Delimiter::comma ? ',' : '\t';
    for (const auto& c : comments_) os << "# " << c << '\n';
    for (std::size_t i = 0; i < columns_.size(); ++i) os << (i ? std::string(1, sep) : "") << columns_[i];
    os << '\n';
    for (const auto& row : rows_) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? std::string(1, sep) : "") << format_cell(row[i]);
      os << '\n';
    }
  }

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
  std::vector<std::string> comments_;
};

inline void push_complex(std::vector<Cell>& row, std::complex<double> z) {
  row.emplace_back(z.real());
  row.emplace_back(z.imag());
}

}  // namespace spp::cli
