#pragma once

// Momentum cutoff chi(k) for the initial state u0-hat(x,k) = chi(k) phi1(x,k):
// the standard C-infinity bump on [k_lo, k_hi].

#include "tfse/fiber_spectrum.hpp"

namespace tfse {

struct ChiProfile {
  double k_lo = 1.0;
  double k_hi = 2.0;
  double amplitude = 1.0;

  /// Throws DomainError unless k_lo < k_hi and amplitude > 0.
  void validate() const;
  double midpoint() const { return 0.5 * (k_lo + k_hi); }
};

/// amplitude * exp(-1/(1-s^2)), s = (2k - k_hi - k_lo)/(k_hi - k_lo); zero for |s| >= 1.
double chi(const ChiProfile& profile, double k);

/// Analytic derivative of chi; zero outside the support.
double chi_deriv(const ChiProfile& profile, double k);

struct SupportReport {
  double lambda_lo = 0.0;  // lambda1(k_lo), the larger one
  double lambda_hi = 0.0;  // lambda1(k_hi)
  bool valid = false;
};

/// Checks b < lambda1(k_hi) and lambda1(k_lo) < 3b (endpoint checks suffice
/// because lambda1 decreases). Throws WindowViolation naming the endpoint.
SupportReport validate_support(const ModelParams& model, const ChiProfile& profile, const HalfLineGrid& grid);

/// Same check against eigenvalues already tabulated.
SupportReport validate_support(const SpectralTable& table, const ChiProfile& profile);

}  // namespace tfse
