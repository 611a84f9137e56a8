#include "tfse/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>

#include "tfse/errors.hpp"

namespace tfse {

namespace {

std::string quote_field(const std::string& f) {
  if (f.find_first_of(",\"\r\n") == std::string::npos) return f;
  std::string out = "\"";
  for (char c : f) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

void CsvTable::add_row(std::vector<std::string> row) {
  if (row.size() != header.size())
    throw IOError("CSV row has " + std::to_string(row.size()) + " fields, header has " + std::to_string(header.size()));
  rows.push_back(std::move(row));
}

std::string CsvTable::str() const {
  std::string out;
  auto line = [&](const std::vector<std::string>& r) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) out += ',';
      out += quote_field(r[i]);
    }
    out += '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  return out;
}

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, r.ptr);
}

std::string format_scaled(const ScaledReal& v) {
  if (v.representable()) return format_real(v.value());
  const double l10 = v.log_abs() / std::numbers::ln10;
  double e = std::floor(l10);
  double m = std::pow(10.0, l10 - e);
  if (m >= 10.0) {
    m /= 10.0;
    e += 1.0;
  }
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, v.sign() * m, std::chars_format::fixed, 16);
  std::string out(buf, r.ptr);
  out += "e+";
  r = std::to_chars(buf, buf + sizeof buf, static_cast<long long>(e));
  return out + std::string(buf, r.ptr);
}

void write_csv(const CsvTable& table, const std::string& path) {
  const std::string s = table.str();
  if (path.empty() || path == "-") {
    std::cout << s << std::flush;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IOError("cannot open '" + path + "' for writing");
  f << s;
  if (!f) throw IOError("write to '" + path + "' failed");
}

}  // namespace tfse
