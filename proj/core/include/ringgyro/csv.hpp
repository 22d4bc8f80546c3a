#pragma once

#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace ringgyro {

/// Shortest decimal text that parses back to exactly the same double.
std::string format_double(double value);

using CsvCell = std::variant<double, std::int64_t, std::uint64_t, std::string>;

/// Minimal CSV emitter; doubles are written round-trip exact.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, std::vector<std::string> columns);

  void comment(std::string_view text);
  void row(std::initializer_list<CsvCell> cells);
  void row(const std::vector<CsvCell>& cells);

 private:
  void write_header();

  std::ostream& out_;
  std::vector<std::string> columns_;
  bool header_written_ = false;
};

}  // namespace ringgyro
