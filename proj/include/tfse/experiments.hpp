#pragma once

// The runs behind the CLI subcommands, each producing a CSV table.

#include <limits>
#include <string>
#include <vector>

#include "tfse/config.hpp"
#include "tfse/io.hpp"

namespace tfse {

/// k,lambda1,dlambda1,phi_cap on a uniform k grid (direct solves).
CsvTable spectrum_table(const RunConfig& cfg);

/// The long-time formula matching the order: Case 1 below the critical
/// line, Naber on it (Schrodinger at alpha = 1), Case 2 above it.
Method asymptotic_method(const FractionalOrder& order);

/// t,J_direct,J_asymptotic,logJ,regime,method over the configured times.
CsvTable current_table(const RunConfig& cfg);

/// t,A,B,C,F,total,leading_model. Rows that overflow are written as inf.
/// The leading model is nan below the critical line, where no closed form exists.
CsvTable msd_table(const RunConfig& cfg);

struct RegimeRow {
  double beta = 0.0;
  RegimeClass predicted;
  double fitted_slope = std::numeric_limits<double>::quiet_NaN();
  double expected = std::numeric_limits<double>::quiet_NaN();
  bool pass = false;
  std::string detail;
};

struct RegimesReport {
  double alpha = 0.0;
  std::vector<RegimeRow> rows;
  bool all_pass() const;
};

/// beta in {alpha/2, alpha, min(1, 3 alpha/2)}. Below the critical line the
/// semilog slope over the last decade must be within 10% of
/// 2 lambda_max^{1/a} cos(theta); on it J(t_max) within 2% of the Naber
/// constant; above it the loglog slope over the last two decades within 5%
/// of -(1+3a). A row that throws is reported as failed, the rest still run.
RegimesReport run_regimes(const RunConfig& cfg);
CsvTable regimes_table(const RegimesReport& report);

/// Synthetic traces for harness self-tests: "t^p", "exp(c*t)" or "const(c)".
TransportTrace synthetic_trace(const std::string& form, const std::vector<double>& times);

struct VerifyRow {
  std::string check;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

/// Bound certification in all three regimes around the configured alpha and
/// the single-mode Caputo residual at t in {0.5, 1, 2}.
std::vector<VerifyRow> run_verify(const RunConfig& cfg);
CsvTable verify_table(const std::vector<VerifyRow>& rows);

}  // namespace tfse
