#include "ringgyro/csv.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

#include "ringgyro/errors.hpp"

namespace ringgyro {

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc{}) throw Error("format_double: conversion failed");
  return std::string(buf, end);
}

CsvWriter::CsvWriter(std::ostream& out, std::vector<std::string> columns)
    : out_(out), columns_(std::move(columns)) {}

void CsvWriter::comment(std::string_view text) {
  if (header_written_) throw ContractViolation("CsvWriter: comments must precede rows");
  out_ << "# " << text << '\n';
}

void CsvWriter::write_header() {
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (i) out_ << ',';
    out_ << columns_[i];
  }
  out_ << '\n';
  header_written_ = true;
}

void CsvWriter::row(std::initializer_list<CsvCell> cells) {
  row(std::vector<CsvCell>(cells));
}

void CsvWriter::row(const std::vector<CsvCell>& cells) {
  if (cells.size() != columns_.size()) {
    throw ContractViolation("CsvWriter: row width does not match header");
  }
  if (!header_written_) write_header();
  bool first = true;
  for (const auto& cell : cells) {
    if (!first) out_ << ',';
    first = false;
    std::visit(
        [this](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, double>) {
            out_ << format_double(v);
          } else {
            out_ << v;
          }
        },
        cell);
  }
  out_ << '\n';
}

}  // namespace ringgyro
