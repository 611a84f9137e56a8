#include "tfse/wellposed.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tfse/errors.hpp"
#include "tfse/mittag_leffler.hpp"

namespace tfse {

namespace {

constexpr double kPi = std::numbers::pi;

void check_args(double lambda, double t) {
  if (!(lambda > 0.0)) throw DomainError("envelope needs lambda > 0");
  if (!(t >= 0.0)) throw DomainError("envelope needs t >= 0");
}

}  // namespace

double log_envelope(const FractionalOrder& order, double lambda, double t) {
  order.validate();
  check_args(lambda, t);
  const double s = 1.0 + std::pow(t, order.alpha) * lambda;
  switch (order.regime()) {
    case Regime::SuperCritical:
      return -std::log(s);
    case Regime::Critical:
      return 0.0;
    case Regime::SubCritical:
      break;
  }
  const double theta = kPi * order.beta / (2.0 * order.alpha);
  const double g = (1.0 - order.beta) / order.alpha * std::log(s) + t * std::pow(lambda, 1.0 / order.alpha) * std::cos(theta);
  const double h = -std::log(s);
  const double m = std::max(g, h);
  return m + std::log(std::exp(g - m) + std::exp(h - m));
}

double envelope(const FractionalOrder& order, double lambda, double t) {
  const double l = log_envelope(order, lambda, t);
  if (l > detail::kSafeLog) throw OverflowGuard("envelope exceeds the double range", t);
  return std::exp(l);
}

void ModeSpectrum::validate() const {
  if (modes.empty()) throw DomainError("mode spectrum needs at least one mode");
  for (std::size_t i = 0; i < modes.size(); ++i) {
    if (!(modes[i].lambda > 0.0)) throw DomainError("mode eigenvalues must be positive");
    if (!(modes[i].weight >= 0.0)) throw DomainError("mode weights must be nonnegative");
    if (i > 0 && !(modes[i].lambda > modes[i - 1].lambda))
      throw DomainError("mode eigenvalues must be strictly increasing");
  }
}

double ModeSpectrum::weight_sum() const {
  double s = 0.0;
  for (const Mode& m : modes) s += m.weight;
  return s;
}

double ModeSpectrum::graph_norm_sq() const {
  double s = 0.0;
  for (const Mode& m : modes) s += (1.0 + m.lambda * m.lambda) * m.weight;
  return s;
}

ScaledReal solution_norm_sq_scaled(const FractionalOrder& order, const ModeSpectrum& spectrum, double t) {
  order.validate();
  spectrum.validate();
  if (!(t >= 0.0)) throw DomainError("solution norm needs t >= 0");
  const MittagLeffler e1({order.alpha, 1.0});
  const Complex rot = std::polar(1.0, -kPi * order.beta / 2.0);
  const double ta = std::pow(t, order.alpha);
  ScaledSum s;
  for (const Mode& m : spectrum.modes) {
    const ScaledComplex E = e1.scaled(rot * (ta * m.lambda)).balanced();
    s.add(m.weight * std::norm(E.mantissa), 2.0 * E.log_scale);
  }
  return s.result();
}

double solution_norm_sq(const FractionalOrder& order, const ModeSpectrum& spectrum, double t) {
  return solution_norm_sq_scaled(order, spectrum, t).value();
}

namespace {

// ln of the squared bound the norm is compared against.
double log_bound_sq(const FractionalOrder& order, const ModeSpectrum& spectrum, double t) {
  switch (order.regime()) {
    case Regime::Critical:
      return std::log(spectrum.graph_norm_sq());
    case Regime::SuperCritical: {
      double s = 0.0;
      for (const Mode& m : spectrum.modes) {
        const double e = envelope(order, m.lambda, t);
        s += m.weight * e * e;
      }
      return std::log(s);
    }
    case Regime::SubCritical:
      break;
  }
  return 2.0 * log_envelope(order, spectrum.lambda_max(), t) + std::log(spectrum.weight_sum());
}

double fitted_constant(const FractionalOrder& order, const ModeSpectrum& spectrum, const std::vector<double>& times) {
  double worst = -INFINITY;
  for (double t : times) {
    const double ln = solution_norm_sq_scaled(order, spectrum, t).log_abs();
    worst = std::max(worst, ln - log_bound_sq(order, spectrum, t));
  }
  return std::exp(0.5 * worst);
}

}  // namespace

BoundCertificate certify_bounds(const FractionalOrder& order, const ModeSpectrum& spectrum,
                                const std::vector<double>& times) {
  order.validate();
  spectrum.validate();
  if (times.size() < 2) throw DomainError("bound certification needs at least two times");
  if (spectrum.weight_sum() <= 0.0) throw DomainError("bound certification needs nonzero initial data");
  std::vector<double> fine;
  fine.reserve(2 * times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] > 0.0) || (i > 0 && !(times[i] > times[i - 1])))
      throw DomainError("certification times must be positive and increasing");
    if (i > 0) fine.push_back(std::sqrt(times[i - 1] * times[i]));
    fine.push_back(times[i]);
  }
  std::sort(fine.begin(), fine.end());
  BoundCertificate c;
  c.C = fitted_constant(order, spectrum, times);
  c.C_refined = fitted_constant(order, spectrum, fine);
  c.change = std::abs(c.C_refined - c.C) / c.C;
  c.passed = std::isfinite(c.C) && std::isfinite(c.C_refined) && c.C > 0.0 && c.change < 0.01;
  return c;
}

void CaputoScheme::validate() const {
  if (n < 10) throw DomainError("Caputo mesh needs at least 10 intervals");
  if (!(grading >= 1.0)) throw DomainError("Caputo mesh grading must be at least 1");
}

double caputo_residual(const FractionalOrder& order, double lambda, double t, const CaputoScheme& scheme) {
  order.validate();
  scheme.validate();
  if (!(lambda > 0.0 && t > 0.0)) throw DomainError("Caputo residual needs lambda > 0 and t > 0");
  if (order.alpha == 1.0) throw DomainError("Caputo residual needs alpha < 1 (alpha = 1 is the ordinary derivative)");
  const double a = order.alpha;
  const MittagLeffler e1({a, 1.0});
  const Complex rot = std::polar(1.0, -kPi * order.beta / 2.0);
  auto u = [&](double s) { return e1(rot * (std::pow(s, a) * lambda)); };
  const double n = static_cast<double>(scheme.n);
  std::vector<double> s(scheme.n + 1);
  for (std::size_t j = 0; j <= scheme.n; ++j) s[j] = t * std::pow(static_cast<double>(j) / n, scheme.grading);
  s.back() = t;
  Complex acc{};
  Complex prev = u(0.0);
  for (std::size_t j = 0; j < scheme.n; ++j) {
    const Complex next = u(s[j + 1]);
    // Exact kernel integral over the cell, slope of u constant on it.
    const double w = (std::pow(t - s[j], 1.0 - a) - std::pow(t - s[j + 1], 1.0 - a)) / (1.0 - a);
    acc += (next - prev) / (s[j + 1] - s[j]) * w;
    prev = next;
  }
  const Complex lhs = acc * gamma_reciprocal(1.0 - a);
  const Complex rhs = rot * lambda * u(t);
  return std::abs(lhs - rhs) / std::abs(rhs);
}

}  // namespace tfse
