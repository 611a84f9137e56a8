#pragma once

#include <cmath>
#include <complex>
#include <limits>

#include "tfse/errors.hpp"

namespace tfse {

using Complex = std::complex<double>;

namespace detail {
// Largest natural-log magnitude we let a plain double carry.
inline constexpr double kSafeLog = 690.0;
}  // namespace detail

/// A real number stored as mantissa * exp(log_scale). Used wherever the
/// exponential transport regime pushes values past the double range.
struct ScaledReal {
  double mantissa = 0.0;
  double log_scale = 0.0;

  static ScaledReal from(double v) { return {v, 0.0}; }

  bool is_zero() const { return mantissa == 0.0; }
  int sign() const { return (mantissa > 0.0) - (mantissa < 0.0); }

  /// ln|value|; -inf for zero.
  double log_abs() const {
    if (mantissa == 0.0) return -std::numeric_limits<double>::infinity();
    return std::log(std::abs(mantissa)) + log_scale;
  }

  bool representable() const {
    return log_scale == 0.0 ? std::isfinite(mantissa) : log_abs() < detail::kSafeLog;
  }

  /// Plain double value. Throws OverflowGuard when it does not fit;
  /// underflow quietly returns a (possibly zero) denormal.
  double value() const {
    if (log_scale == 0.0 || mantissa == 0.0) return mantissa;
    const double la = log_abs();
    if (la >= detail::kSafeLog)
      throw OverflowGuard("value exceeds double range (ln|v| = " + std::to_string(la) + ")");
    return sign() * std::exp(la);
  }
};

/// Complex analogue of ScaledReal.
struct ScaledComplex {
  Complex mantissa{0.0, 0.0};
  double log_scale = 0.0;

  static ScaledComplex from(Complex v) { return {v, 0.0}; }

  double log_abs() const {
    if (mantissa == Complex{}) return -std::numeric_limits<double>::infinity();
    return std::log(std::abs(mantissa)) + log_scale;
  }

  bool representable() const {
    return log_scale == 0.0 ? (std::isfinite(mantissa.real()) && std::isfinite(mantissa.imag()))
                            : log_abs() < detail::kSafeLog;
  }

  Complex value() const {
    if (log_scale == 0.0 || mantissa == Complex{}) return mantissa;
    const double la = log_abs();
    if (la >= detail::kSafeLog)
      throw OverflowGuard("value exceeds double range (ln|v| = " + std::to_string(la) + ")");
    return std::polar(std::exp(la), std::arg(mantissa));
  }

  ScaledComplex conj() const { return {std::conj(mantissa), log_scale}; }

  /// Pull the binary exponent of the mantissa into log_scale when the
  /// mantissa drifts far from unity.
  ScaledComplex balanced() const {
    const double m = std::max(std::abs(mantissa.real()), std::abs(mantissa.imag()));
    if (m == 0.0 || !std::isfinite(m)) return *this;
    const int e = std::ilogb(m);
    if (e > -400 && e < 400) return *this;
    return {Complex(std::ldexp(mantissa.real(), -e), std::ldexp(mantissa.imag(), -e)),
            log_scale + e * std::log(2.0)};
  }
};

inline ScaledComplex operator*(const ScaledComplex& a, const ScaledComplex& b) {
  return ScaledComplex{a.balanced().mantissa * b.balanced().mantissa,
                       a.balanced().log_scale + b.balanced().log_scale}
      .balanced();
}

inline ScaledComplex operator*(const ScaledComplex& a, Complex c) {
  return ScaledComplex{a.balanced().mantissa * c, a.balanced().log_scale}.balanced();
}

inline ScaledComplex operator+(const ScaledComplex& a, const ScaledComplex& b) {
  if (a.mantissa == Complex{}) return b;
  if (b.mantissa == Complex{}) return a;
  if (a.log_scale == b.log_scale) return {a.mantissa + b.mantissa, a.log_scale};
  const double s = std::max(a.log_scale, b.log_scale);
  return ScaledComplex{a.mantissa * std::exp(a.log_scale - s) + b.mantissa * std::exp(b.log_scale - s), s}
      .balanced();
}

inline ScaledReal scale_by(const ScaledReal& a, double c) { return {a.mantissa * c, a.log_scale}; }

/// Ordered accumulator for a sum of scaled reals. The order of `add` calls
/// fully determines the result, so sequential index-ordered use is bitwise
/// reproducible.
class ScaledSum {
 public:
  void add(double mantissa, double log_scale) {
    if (mantissa == 0.0) return;
    if (acc_ == 0.0) {
      acc_ = mantissa;
      scale_ = log_scale;
    } else if (log_scale > scale_) {
      acc_ = acc_ * std::exp(scale_ - log_scale) + mantissa;
      scale_ = log_scale;
    } else {
      acc_ += mantissa * std::exp(log_scale - scale_);
    }
  }
  void add(const ScaledReal& v) { add(v.mantissa, v.log_scale); }

  ScaledReal result() const { return acc_ == 0.0 ? ScaledReal{} : ScaledReal{acc_, scale_}; }

 private:
  double acc_ = 0.0;
  double scale_ = 0.0;
};

}  // namespace tfse
