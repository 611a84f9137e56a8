#pragma once

// Deterministic CSV output: '.' decimal point, 17 significant digits,
// RFC-4180 quoting, rows written in the order given.

#include <string>
#include <vector>

#include "tfse/scaled.hpp"

namespace tfse {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Throws IOError when the row width differs from the header.
  void add_row(std::vector<std::string> row);
  std::string str() const;
};

/// %.17g, locale independent; "nan", "inf", "-inf" for non-finite values.
std::string format_real(double x);
/// Decimal form of a scaled value even past the double range, e.g. "1.2345e+1000".
std::string format_scaled(const ScaledReal& v);

/// Writes the table to `path`, or to stdout when `path` is empty or "-".
void write_csv(const CsvTable& table, const std::string& path);

}  // namespace tfse
