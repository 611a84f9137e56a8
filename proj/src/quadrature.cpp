#include "tfse/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <string>

#include "tfse/errors.hpp"

namespace tfse {

QuadratureRule QuadratureRule::gauss_legendre(double a, double b, std::size_t n_nodes) {
  if (!(a < b)) throw DomainError("quadrature interval needs a < b");
  using G = boost::math::quadrature::gauss<double, 16>;
  const auto& x = G::abscissa();
  const auto& w = G::weights();
  const std::size_t panels = std::max<std::size_t>(2, (n_nodes + 15) / 16);
  QuadratureRule r;
  r.a = a;
  r.b = b;
  r.nodes.reserve(panels * 16);
  r.weights.reserve(panels * 16);
  const double width = (b - a) / panels;
  for (std::size_t p = 0; p < panels; ++p) {
    const double c = a + (p + 0.5) * width, half = 0.5 * width;
    for (std::size_t i = x.size(); i-- > 0;) {
      r.nodes.push_back(c - half * x[i]);
      r.weights.push_back(half * w[i]);
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
      r.nodes.push_back(c + half * x[i]);
      r.weights.push_back(half * w[i]);
    }
  }
  return r;
}

double integrate(const QuadratureRule& rule, const std::function<double(double)>& f) {
  double s = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * f(rule.nodes[i]);
  return s;
}

namespace {

struct Pass {
  std::vector<ScaledReal> values;
  std::vector<ScaledReal> abs_values;
};

Pass run_rule(const QuadratureRule& rule, std::size_t m, const std::function<void(double, std::vector<ScaledReal>&)>& f) {
  std::vector<ScaledSum> acc(m), abs_acc(m);
  std::vector<ScaledReal> buf(m);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    f(rule.nodes[i], buf);
    for (std::size_t c = 0; c < m; ++c) {
      acc[c].add(buf[c].mantissa * rule.weights[i], buf[c].log_scale);
      abs_acc[c].add(std::abs(buf[c].mantissa) * rule.weights[i], buf[c].log_scale);
    }
  }
  Pass p;
  for (std::size_t c = 0; c < m; ++c) {
    p.values.push_back(acc[c].result());
    p.abs_values.push_back(abs_acc[c].result());
  }
  return p;
}

// |x - y| / |y| with both in scaled form; the floor term is relative to `scale`.
double scaled_change(const ScaledReal& x, const ScaledReal& y, const ScaledReal& scale, double floor_rel) {
  if (x.is_zero() && y.is_zero()) return 0.0;
  const double ref = std::max({x.log_abs(), y.log_abs(), scale.log_abs()});
  const double xv = x.is_zero() ? 0.0 : x.sign() * std::exp(x.log_abs() - ref);
  const double yv = y.is_zero() ? 0.0 : y.sign() * std::exp(y.log_abs() - ref);
  const double sv = scale.is_zero() ? 0.0 : std::exp(scale.log_abs() - ref);
  const double denom = std::abs(yv) + floor_rel * sv;
  if (denom == 0.0) return INFINITY;
  return std::abs(xv - yv) / denom;
}

}  // namespace

QuadratureResult integrate_doubling(double a, double b, std::size_t n0, std::size_t m,
                                    const std::function<void(double, std::vector<ScaledReal>&)>& f, double rel_tol,
                                    std::size_t max_nodes) {
  constexpr double kFloor = 1e-12;
  std::size_t n = std::max<std::size_t>(n0, 32);
  QuadratureRule rule = QuadratureRule::gauss_legendre(a, b, n);
  Pass prev = run_rule(rule, m, f);
  for (;;) {
    const std::size_t n2 = 2 * rule.n_nodes();
    if (n2 > max_nodes)
      throw QuadratureError("k-quadrature did not settle within " + std::to_string(max_nodes) + " nodes");
    rule = QuadratureRule::gauss_legendre(a, b, n2);
    Pass cur = run_rule(rule, m, f);
    // Components are pieces of one quantity, so the absolute floor is tied to
    // the largest integral of |f| among them; a component that is pure
    // roundoff (an identically cancelling cross term) then settles.
    ScaledReal scale = cur.abs_values[0];
    for (std::size_t c = 1; c < m; ++c)
      if (cur.abs_values[c].log_abs() > scale.log_abs()) scale = cur.abs_values[c];
    double worst = 0.0;
    for (std::size_t c = 0; c < m; ++c) {
      const double ch = scaled_change(prev.values[c], cur.values[c], scale, kFloor / rel_tol);
      worst = std::max(worst, ch);
    }
    if (worst <= rel_tol) return {cur.values, rule.n_nodes(), worst};
    prev = std::move(cur);
  }
}

}  // namespace tfse
