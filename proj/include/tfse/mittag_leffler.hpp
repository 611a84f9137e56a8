#pragma once

// Two-parameter Mittag-Leffler function E_{a,s}(z) = sum_n z^n / Gamma(a n + s)
// for complex z. Small arguments go through the power series, summed in
// MPFR at a working precision chosen from the size of the largest term, so
// the cancellation on the decaying side of the plane does not eat the
// result. Large arguments use the sector-dependent asymptotic expansions,
// truncated at their smallest term.

#include <complex>
#include <cstddef>
#include <memory>

#include "tfse/scaled.hpp"

namespace tfse {

struct MLParams {
  double alpha = 1.0;
  double sigma = 1.0;

  /// Throws DomainError unless 0 < alpha < 2 and sigma is finite.
  void validate() const;
};

struct MLAccuracy {
  /// Relative stopping tolerance of the power series.
  double rel_tol = 1e-12;
  /// Dispatch threshold on |z|. Zero selects the alpha-dependent default
  /// auto_series_radius(alpha).
  double series_radius = 0.0;
  /// Cap on the asymptotic truncation order. The expansion is cut earlier,
  /// at its smallest term, when that comes first.
  int p_terms = 200;
  /// Term budget of the power series before NonConvergence.
  std::size_t max_series_terms = 10000;

  void validate() const;
  double radius_for(double alpha) const;
};

/// |z| at which |z|^(1/alpha) reaches the switch-over value where the
/// optimally truncated expansion is accurate to roughly e^-45.
double auto_series_radius(double alpha);

/// Edge of the exponential sector, mu = 3 pi alpha / 4.
double sector_angle(double alpha);

/// 1/Gamma(x); exactly zero at 0, -1, -2, ...
double gamma_reciprocal(double x);

/// Power series. Requires |z| <= acc.radius_for(alpha) unless the caller
/// raises the radius; throws NonConvergence when the term budget runs out.
Complex ml_series(const MLParams& params, Complex z, const MLAccuracy& acc = {});

/// Asymptotic form valid for |arg z| <= mu:
/// (1/a) z^((1-s)/a) exp(z^(1/a)) - sum_{k=1..p} z^-k / Gamma(s - a k).
/// Exactly p terms are summed. Throws DomainError outside the sector.
Complex ml_asymptotic_sector(const MLParams& params, Complex z, int p);

/// Asymptotic form valid for mu < |arg z| <= pi: -sum_{k=1..p} z^-k / Gamma(s - a k).
/// Throws DomainError inside the exponential sector.
Complex ml_asymptotic_outer(const MLParams& params, Complex z, int p);

/// Dispatching evaluator; throws OverflowGuard when |E| leaves the double range.
Complex ml_eval(const MLParams& params, Complex z, const MLAccuracy& acc = {});

/// dE_{a,1}/dz = (1/a) E_{a,a}(z).
Complex ml_deriv(double alpha, Complex z, const MLAccuracy& acc = {});

/// Reusable evaluator for one (alpha, sigma). Holds the series coefficient
/// seeds so repeated evaluation (quadrature over momentum, time sweeps) does
/// not pay for the high-precision Gamma values each call. Copies share the
/// seed cache; all member functions are safe to call concurrently.
class MittagLeffler {
 public:
  explicit MittagLeffler(MLParams params, MLAccuracy acc = {});
  ~MittagLeffler();
  MittagLeffler(const MittagLeffler&);
  MittagLeffler& operator=(const MittagLeffler&);
  MittagLeffler(MittagLeffler&&) noexcept;
  MittagLeffler& operator=(MittagLeffler&&) noexcept;

  const MLParams& params() const { return params_; }
  const MLAccuracy& accuracy() const { return acc_; }
  double radius() const { return radius_; }

  /// Full-plane value in scaled form; never overflows.
  ScaledComplex scaled(Complex z) const;
  /// Same as scaled(z).value().
  Complex operator()(Complex z) const;

  /// Series route at any |z| (may be expensive far outside the radius).
  ScaledComplex series_scaled(Complex z) const;
  /// Asymptotic route at any z: the exponential term is kept for
  /// |arg z| <= pi*alpha, the algebraic tail is cut at its smallest term
  /// (or at p_terms).
  ScaledComplex asymptotic_scaled(Complex z) const;

 private:
  struct Impl;
  MLParams params_;
  MLAccuracy acc_;
  double radius_ = 0.0;
  std::shared_ptr<Impl> impl_;
};

}  // namespace tfse
