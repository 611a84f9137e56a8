#pragma once

// Mean-square displacement in y of the evolved edge state, split into the
// three squared pieces and the single surviving cross term.

#include <cstddef>
#include <vector>

#include "tfse/edge_current.hpp"

namespace tfse {

struct MSDBreakdown {
  double A = 0.0;  // t^{2a} int |E_{a,a}|^2 lambda'^2 chi^2
  double B = 0.0;  // int |E_{a,1}|^2 chi'^2
  double C = 0.0;  // int |E_{a,1}|^2 chi^2 Phi
  double F = 0.0;  // 2 t^a int Re{(-i)^b E_{a,a} conj(E_{a,1})} lambda' chi' chi
  double total = 0.0;

  /// Divides every entry by the same weight (e.g. ||u0||^2).
  MSDBreakdown scaled(double w) const;
};

/// Exact four-term evaluation at time t. Throws OverflowGuard when the
/// terms leave the double range (sub-critical orders at large t).
MSDBreakdown msd_direct(const FractionalOrder& order, const EdgeSystem& sys, double t);

/// ||u0||^2 = int chi^2 dk.
double initial_weight(const EdgeSystem& sys);

/// Both sides of the breakdown identity from one set of ground states
/// solved directly at the nodes of a fixed Gauss-Legendre rule: the four
/// terms, and int int |d_k u-hat|^2 dx dk with d_k u-hat assembled from its
/// three pieces before squaring.
struct MSDIdentity {
  MSDBreakdown terms;
  double assembled = 0.0;
  double rel_gap() const;
};
MSDIdentity msd_identity(const FractionalOrder& order, const EdgeSystem& sys, double t, std::size_t n_nodes = 64);

/// t^2 coefficient for alpha = beta: (1/a^2) int lambda^{2(1-a)/a} lambda'^2 chi^2.
double msd_naber_leading(double alpha, const EdgeSystem& sys);

/// t^{-2a} coefficient for alpha < beta:
/// Gamma(-a)^-2 int lambda'^2 lambda^-4 chi^2 + Gamma(1-a)^-2 int (chi'^2 + chi^2 Phi) lambda^-2.
double msd_case2_leading(const FractionalOrder& order, const EdgeSystem& sys);

struct MSDTrace {
  std::vector<double> times;
  std::vector<MSDBreakdown> rows;
};

/// Parallel over t, like current_trace.
MSDTrace msd_trace(const FractionalOrder& order, const EdgeSystem& sys, const std::vector<double>& times);

}  // namespace tfse
