#include "ringgyro/field_io.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "ringgyro/csv.hpp"
#include "ringgyro/errors.hpp"

namespace ringgyro {

namespace {

double parse_double(std::string_view s, std::string_view what) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ConfigError("field dump: cannot parse " + std::string(what) + " '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

void write_field_csv(std::ostream& out, const ComplexField& field) {
  const Grid1D& g = field.grid();
  CsvWriter csv(out, {"x", "re", "im"});
  csv.comment("ringgyro field dump v1");
  csv.comment("n_points=" + std::to_string(g.size()));
  csv.comment("length=" + format_double(g.length()));
  csv.comment("offset=" + format_double(g.offset()));
  csv.comment("units=hbar=m=1;R=length/(2pi)");
  csv.comment("wavenumber_order=fft (k_j = 2 pi m_j / length, m = 0..n/2-1,-n/2..-1)");
  for (std::size_t i = 0; i < field.size(); ++i) {
    csv.row({g.x(i), field[i].real(), field[i].imag()});
  }
}

void write_field_csv(const std::filesystem::path& path, const ComplexField& field) {
  std::ofstream out(path);
  if (!out) throw Error("write_field_csv: cannot open " + path.string());
  write_field_csv(out, field);
}

ComplexField read_field_csv(std::istream& in) {
  std::map<std::string, std::string, std::less<>> header;
  std::vector<Complex> values;
  std::string line;
  bool saw_columns = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.rfind("# ", 0) == 0) {
      const auto eq = line.find('=');
      if (eq != std::string::npos) header[line.substr(2, eq - 2)] = line.substr(eq + 1);
      continue;
    }
    if (!saw_columns) {
      if (line != "x,re,im") throw ConfigError("field dump: unexpected column header '" + line + "'");
      saw_columns = true;
      continue;
    }
    std::string_view sv(line);
    const auto c1 = sv.find(',');
    const auto c2 = sv.find(',', c1 + 1);
    if (c1 == std::string_view::npos || c2 == std::string_view::npos) {
      throw ConfigError("field dump: malformed row '" + line + "'");
    }
    const double re = parse_double(sv.substr(c1 + 1, c2 - c1 - 1), "re");
    const double im = parse_double(sv.substr(c2 + 1), "im");
    values.emplace_back(re, im);
  }
  for (const char* key : {"n_points", "length", "offset"}) {
    if (!header.count(key)) throw ConfigError(std::string("field dump: missing header ") + key);
  }
  const auto n = static_cast<std::size_t>(parse_double(header.find("n_points")->second, "n_points"));
  if (n != values.size()) throw ConfigError("field dump: n_points does not match row count");
  Grid1D grid(n, parse_double(header.find("length")->second, "length"),
              parse_double(header.find("offset")->second, "offset"));
  return ComplexField(std::move(grid), std::move(values));
}

ComplexField read_field_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("read_field_csv: cannot open " + path.string());
  return read_field_csv(in);
}

}  // namespace ringgyro
