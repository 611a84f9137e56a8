#include "tfse/wavepacket.hpp"

#include <cmath>
#include <string>

#include "tfse/errors.hpp"

namespace tfse {

void ChiProfile::validate() const {
  if (!(std::isfinite(k_lo) && std::isfinite(k_hi) && k_lo < k_hi))
    throw DomainError("chi support needs k_lo < k_hi, got [" + std::to_string(k_lo) + ", " + std::to_string(k_hi) + "]");
  if (!(amplitude > 0.0) || !std::isfinite(amplitude)) throw DomainError("chi amplitude must be positive");
}

namespace {

double bump_s(const ChiProfile& p, double k) { return (2.0 * k - p.k_hi - p.k_lo) / (p.k_hi - p.k_lo); }

}  // namespace

double chi(const ChiProfile& profile, double k) {
  const double s = bump_s(profile, k);
  if (!(std::abs(s) < 1.0)) return 0.0;
  return profile.amplitude * std::exp(-1.0 / (1.0 - s * s));
}

double chi_deriv(const ChiProfile& profile, double k) {
  const double s = bump_s(profile, k);
  if (!(std::abs(s) < 1.0)) return 0.0;
  const double u = 1.0 - s * s;
  return chi(profile, k) * (-2.0 * s / (u * u)) * (2.0 / (profile.k_hi - profile.k_lo));
}

namespace {

SupportReport check_window(double b, const ChiProfile& profile, double lam_lo, double lam_hi) {
  SupportReport r{lam_lo, lam_hi, false};
  if (!(lam_hi > b))
    throw WindowViolation("lambda1(k_max = " + std::to_string(profile.k_hi) + ") = " + std::to_string(lam_hi) +
                          " is not above b = " + std::to_string(b));
  if (!(lam_lo < 3.0 * b))
    throw WindowViolation("lambda1(k_min = " + std::to_string(profile.k_lo) + ") = " + std::to_string(lam_lo) +
                          " is not below 3b = " + std::to_string(3.0 * b));
  r.valid = true;
  return r;
}

}  // namespace

SupportReport validate_support(const ModelParams& model, const ChiProfile& profile, const HalfLineGrid& grid) {
  profile.validate();
  const double lo = solve_ground_state(model, profile.k_lo, grid).lambda1;
  const double hi = solve_ground_state(model, profile.k_hi, grid).lambda1;
  return check_window(model.b, profile, lo, hi);
}

SupportReport validate_support(const SpectralTable& table, const ChiProfile& profile) {
  profile.validate();
  return check_window(table.model().b, profile, table(profile.k_lo).lambda1, table(profile.k_hi).lambda1);
}

}  // namespace tfse
