#pragma once

// Composite Gauss-Legendre on a compact momentum window, and the doubling
// driver every k-integral goes through.

#include <cstddef>
#include <functional>
#include <vector>

#include "tfse/scaled.hpp"

namespace tfse {

struct QuadratureRule {
  double a = 0.0, b = 0.0;
  std::vector<double> nodes, weights;

  std::size_t n_nodes() const { return nodes.size(); }

  /// 16-point panels; n_nodes is rounded up to a multiple of 16, minimum 32.
  static QuadratureRule gauss_legendre(double a, double b, std::size_t n_nodes);
};

struct QuadratureResult {
  std::vector<ScaledReal> values;
  std::size_t n_nodes = 0;
  double rel_change = 0.0;  // worst component, last doubling
};

/// Integrates the m-component integrand f(k, out) over [a, b]: n0 nodes,
/// then doubling until every component changes by at most
/// rel_tol * |value| + 1e-12 * (largest component integral of |f|). Sums run in node order, so the
/// result is reproducible. Throws QuadratureError past max_nodes.
QuadratureResult integrate_doubling(double a, double b, std::size_t n0, std::size_t m,
                                    const std::function<void(double, std::vector<ScaledReal>&)>& f,
                                    double rel_tol = 1e-4, std::size_t max_nodes = std::size_t{1} << 20);

/// Plain fixed-rule sum of a real integrand.
double integrate(const QuadratureRule& rule, const std::function<double(double)>& f);

}  // namespace tfse
