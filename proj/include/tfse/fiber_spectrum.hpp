#pragma once

// Ground state of the fiber operator h_b(k) = -d^2/dx^2 + (b x - k)^2 on the
// half-line with a Dirichlet condition at x = 0. The line is truncated at L
// and discretized with linear finite elements: stiffness plus consistent
// potential and mass matrices, all tridiagonal. Galerkin eigenvalues sit
// above the exact ones, which keeps lambda1 > b even deep in the Landau tail
// where a plain difference stencil dips below it.

#include <limits>
#include <vector>

namespace tfse {

struct ModelParams {
  double b = 1.0;
  void validate() const;
};

struct HalfLineGrid {
  double L = 0.0;
  int n = 4000;  // interior points

  double h() const { return L / (n + 1); }
  double x(int j) const { return j * h(); }
  void validate() const;

  /// L = 12/sqrt(b) + k_abs_max/b, enough to hold the ground state for every
  /// |k| <= k_abs_max.
  static HalfLineGrid automatic(const ModelParams& model, double k_abs_max, int n = 4000);
};

/// The pencil (K, M) on the n interior nodes, plus dK/dk for Feynman-Hellmann.
/// `*_diag` have n entries, `*_off` have n-1 (super-diagonal, symmetric).
struct FiberOperator {
  ModelParams model;
  double k = 0.0;
  HalfLineGrid grid;
  std::vector<double> k_diag, k_off;
  std::vector<double> m_diag, m_off;
  std::vector<double> dk_diag, dk_off;

  std::vector<double> apply_k(const std::vector<double>& v) const;
  std::vector<double> apply_m(const std::vector<double>& v) const;
  /// Number of generalized eigenvalues below s (Sylvester inertia of K - s M).
  int count_below(double s) const;
};

/// Throws GridError when V_k(L) < 10 (3b + min(k,0)^2), i.e. the box is too
/// short to confine the ground state.
FiberOperator build_fiber_operator(const ModelParams& model, double k, const HalfLineGrid& grid);

struct GroundState {
  double k = 0.0;
  double lambda1 = 0.0;
  /// n+2 nodal values including the two Dirichlet zeros; h * sum phi^2 = 1,
  /// maximum positive.
  std::vector<double> phi1;
  double dlambda1 = 0.0;
  /// Left at NaN by solve_ground_state; filled by solve_with_derivative.
  double phi_cap = std::numeric_limits<double>::quiet_NaN();
  /// ||K phi - lambda M phi|| / ||M phi||.
  double residual = 0.0;
  bool converged = false;
};

/// Bisection on the inertia count, inverse iteration, Rayleigh quotient.
/// Throws NonConvergence, GridError (also when the tail value exceeds 1e-8).
GroundState solve_ground_state(const ModelParams& model, double k, const HalfLineGrid& grid);

/// Feynman-Hellmann slope phi^T (dK/dk) phi / phi^T M phi.
double dlambda1(const ModelParams& model, double k, const HalfLineGrid& grid);

struct PhiDerivative {
  std::vector<double> dphi;  // n+2 values, orthogonal to phi1 (trapezoid)
  double phi_cap = 0.0;      // trapezoid integral of dphi^2
};

/// Centered difference in k of the sign-fixed ground state, projected
/// orthogonal to phi1. dk must lie in [1e-5, 1e-3].
PhiDerivative dk_phi1(const ModelParams& model, double k, const HalfLineGrid& grid, double dk = 1e-4);

/// Ground state plus phi_cap in one call.
GroundState solve_with_derivative(const ModelParams& model, double k, const HalfLineGrid& grid, double dk = 1e-4);

struct SpectralSample {
  double lambda1 = 0.0;
  double dlambda1 = 0.0;
  double phi_cap = 0.0;
};

/// lambda1, lambda1' and Phi on [k_lo, k_hi], solved at Chebyshev-Lobatto
/// points and evaluated by barycentric interpolation. All three are
/// analytic in k, so a few dozen points reach solver accuracy; every later
/// quadrature then costs nothing spectral.
class SpectralTable {
 public:
  SpectralTable(const ModelParams& model, double k_lo, double k_hi, const HalfLineGrid& grid, int points = 48,
                double dk = 1e-4);

  /// Throws DomainError outside [k_lo, k_hi].
  SpectralSample operator()(double k) const;

  double k_lo() const { return k_lo_; }
  double k_hi() const { return k_hi_; }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<SpectralSample>& samples() const { return samples_; }
  const HalfLineGrid& grid() const { return grid_; }
  const ModelParams& model() const { return model_; }

 private:
  ModelParams model_;
  HalfLineGrid grid_;
  double k_lo_, k_hi_;
  std::vector<double> nodes_, bary_;
  std::vector<SpectralSample> samples_;
};

}  // namespace tfse
