#pragma once

// Norm envelopes for finite-band initial data, and the checks that the
// mode expansion actually solves the fractional equation.

#include <cstddef>
#include <vector>

#include "tfse/edge_current.hpp"
#include "tfse/scaled.hpp"

namespace tfse {

/// 1/(1+t^a lambda) above the critical line, 1 on it, and
/// (1+t^a lambda)^{(1-b)/a} exp(t lambda^{1/a} cos theta) + 1/(1+t^a lambda) below.
double envelope(const FractionalOrder& order, double lambda, double t);
/// ln of the same, finite for every t (the sub-critical one overflows early).
double log_envelope(const FractionalOrder& order, double lambda, double t);

struct Mode {
  double lambda = 1.0;
  double weight = 0.0;  // |u_{0,n}|^2
};

struct ModeSpectrum {
  std::vector<Mode> modes;

  /// lambda > 0 strictly increasing, weights >= 0, at least one mode.
  void validate() const;
  double weight_sum() const;
  /// sum (1 + lambda^2) weight, the squared graph norm.
  double graph_norm_sq() const;
  double lambda_max() const { return modes.back().lambda; }
};

/// sum weight |E_{a,1}((-i)^b t^a lambda)|^2, scaled.
ScaledReal solution_norm_sq_scaled(const FractionalOrder& order, const ModeSpectrum& spectrum, double t);
double solution_norm_sq(const FractionalOrder& order, const ModeSpectrum& spectrum, double t);

struct BoundCertificate {
  double C = 0.0;          // fitted on the given grid
  double C_refined = 0.0;  // fitted on the grid with every interval halved (geometrically)
  double change = 0.0;     // |C_refined - C| / C
  bool passed = false;     // finite, positive, change < 1%
};

/// Smallest C with ||u(t)||^2 <= C^2 bound(t)^2 on the grid, where bound^2 is
/// sum weight env^2 above the critical line, the graph norm on it, and
/// env(lambda_max, t)^2 ||u0||^2 below it.
BoundCertificate certify_bounds(const FractionalOrder& order, const ModeSpectrum& spectrum,
                                const std::vector<double>& times);

struct CaputoScheme {
  std::size_t n = 2000;
  double grading = 2.0;
  void validate() const;
};

/// L1 quadrature of the Caputo derivative of s -> E_{a,1}((-i)^b s^a lambda)
/// at t on the mesh t (j/n)^grading, compared against (-i)^b lambda u(t).
/// Returns the relative residual. Needs alpha < 1.
double caputo_residual(const FractionalOrder& order, double lambda, double t, const CaputoScheme& scheme = {});

}  // namespace tfse
