#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tfse/errors.hpp"
#include "tfse/fiber_spectrum.hpp"

using namespace tfse;

namespace {

const ModelParams kB1{1.0};

HalfLineGrid grid_for(double k, int n = 4000) { return HalfLineGrid::automatic(kB1, std::abs(k), n); }

double trapezoid_norm(const GroundState& g, double h) {
  return h * std::inner_product(g.phi1.begin(), g.phi1.end(), g.phi1.begin(), 0.0);
}

}  // namespace

TEST_CASE("pencil structure") {
  const HalfLineGrid g{12.0, 2000};
  const FiberOperator op = build_fiber_operator(kB1, 0.0, g);
  REQUIRE(op.k_diag.size() == 2000);
  REQUIRE(op.k_off.size() == 1999);
  const double h = g.h();
  // Row sums: the stiffness part cancels, leaving the potential load ~ h V(x_j);
  // the mass rows sum to h.
  for (int j : {10, 500, 1000, 1900}) {
    const double ks = op.k_diag[j] + op.k_off[j - 1] + op.k_off[j];
    const double ms = op.m_diag[j] + op.m_off[j - 1] + op.m_off[j];
    const double x = g.x(j + 1);
    CHECK(ks / h == doctest::Approx(x * x).epsilon(1e-4));
    CHECK(ms == doctest::Approx(h).epsilon(1e-12));
  }
  // Stiffness off-diagonal is -1/h plus a potential term of order h.
  CHECK(std::abs(op.k_off[0] + 1.0 / h) < 10 * h);
}

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(build_fiber_operator(kB1, 0.0, {3.0, 400}), GridError);  // V(L) = 9 < 30
  CHECK_THROWS_AS(build_fiber_operator(kB1, 0.0, {12.0, 100}), GridError);
  CHECK_THROWS_AS(build_fiber_operator({-1.0}, 0.0, {12.0, 400}), DomainError);
  CHECK(HalfLineGrid::automatic(kB1, 3.0).L == doctest::Approx(15.0));
}

TEST_CASE("ground state against the finite-difference oracle") {
  // tests/oracles/fiber_oracle.py: second-order differences, Richardson-extrapolated.
  const std::pair<double, double> ref[] = {{-1.0, 6.074391061441}, {0.0, 2.999999999779}, {1.0, 1.468467743530},
                                           {1.5, 1.157479872066},  {2.0, 1.035763394646}, {3.0, 1.000390824036}};
  for (auto [k, lam] : ref) {
    CAPTURE(k);
    CHECK(solve_ground_state(kB1, k, grid_for(k)).lambda1 == doctest::Approx(lam).epsilon(1e-5));
  }
}

TEST_CASE("anchors") {
  CHECK(std::abs(solve_ground_state(kB1, 0.0, grid_for(0.0)).lambda1 - 3.0) < 1e-3);
  const double l8 = solve_ground_state(kB1, 8.0, grid_for(8.0)).lambda1;
  CHECK(l8 > 1.0);
  CHECK(l8 < 1.001);
  CHECK(solve_ground_state(kB1, -3.0, grid_for(-3.0)).lambda1 >= 9.0);
  // Scaling: lambda_b(k) = b lambda_1(k / sqrt b).
  const ModelParams b4{4.0};
  const double l = solve_ground_state(b4, 2.0, HalfLineGrid::automatic(b4, 2.0)).lambda1;
  CHECK(l == doctest::Approx(4.0 * solve_ground_state(kB1, 1.0, grid_for(1.0)).lambda1).epsilon(1e-5));
}

TEST_CASE("eigenfunction normalization, sign and residual") {
  for (double k : {-2.0, 0.0, 1.5, 4.0}) {
    const HalfLineGrid g = grid_for(k);
    const GroundState s = solve_ground_state(kB1, k, g);
    CAPTURE(k);
    CHECK(s.converged);
    CHECK(s.phi1.front() == 0.0);
    CHECK(s.phi1.back() == 0.0);
    CHECK(std::abs(trapezoid_norm(s, g.h()) - 1.0) < 1e-10);
    CHECK(*std::max_element(s.phi1.begin(), s.phi1.end()) > 0.0);
    CHECK(std::abs(*std::min_element(s.phi1.begin(), s.phi1.end())) < 1e-10);
    CHECK(s.residual <= 1e-8 * s.lambda1);
    CHECK(s.lambda1 >= kB1.b);
  }
}

TEST_CASE("Feynman-Hellmann slope against centered differences") {
  const double d = 1e-4;
  for (double k : {0.0, 1.0, 3.0}) {
    const HalfLineGrid g = grid_for(k + 1.0);
    const double fh = dlambda1(kB1, k, g);
    const double fd = (solve_ground_state(kB1, k + d, g).lambda1 - solve_ground_state(kB1, k - d, g).lambda1) / (2 * d);
    CAPTURE(k);
    CHECK(fh < 0.0);
    CHECK(std::abs(fh - fd) <= 1e-5 * std::abs(fd));
  }
  CHECK(std::abs(dlambda1(kB1, 8.0, grid_for(8.0))) < 1e-2);
}

TEST_CASE("second-order grid convergence") {
  for (double k : {0.0, 2.0, 5.0}) {
    const double L = grid_for(k).L;
    const double l1 = solve_ground_state(kB1, k, {L, 999}).lambda1;
    const double l2 = solve_ground_state(kB1, k, {L, 1999}).lambda1;
    const double l3 = solve_ground_state(kB1, k, {L, 3999}).lambda1;
    CAPTURE(k);
    const double ratio = (l1 - l2) / (l2 - l3);
    CHECK(ratio > 3.0);
    CHECK(ratio < 5.0);
  }
}

TEST_CASE("dispersion is decreasing where it is resolvable") {
  // Common grid over [-3, 10]. Beyond k ~ 5.5 the true gaps lambda(k) - b
  // fall below double resolution, so there the curve is only required flat.
  const HalfLineGrid g = HalfLineGrid::automatic(kB1, 10.0);
  double prev = INFINITY;
  for (int i = 0; i < 20; ++i) {
    const double k = -3.0 + 13.0 * i / 19.0;
    const double l = solve_ground_state(kB1, k, g).lambda1;
    CAPTURE(k);
    if (k < 5.5) {
      CHECK(l < prev);
    } else {
      CHECK(l - 1.0 > 0.0);
      CHECK(l - 1.0 < 1e-5);
      CHECK(std::abs(l - prev) < 1e-10);
    }
    prev = l;
  }
}

TEST_CASE("k-derivative of the ground state") {
  const HalfLineGrid g = grid_for(2.0);
  const GroundState s = solve_ground_state(kB1, 1.0, g);
  const PhiDerivative d = dk_phi1(kB1, 1.0, g);
  const double overlap = g.h() * std::inner_product(s.phi1.begin(), s.phi1.end(), d.dphi.begin(), 0.0);
  CHECK(std::abs(overlap) < 1e-12);
  CHECK(d.phi_cap > 0.0);
  CHECK(d.phi_cap == doctest::Approx(dk_phi1(kB1, 1.0, g, 1e-3).phi_cap).epsilon(1e-5));
  // Deep in the tail phi1 only translates with k, so Phi tends to the
  // oscillator value int phi'^2 = b/2, not to zero.
  CHECK(dk_phi1(kB1, 8.0, grid_for(8.0)).phi_cap == doctest::Approx(0.5).epsilon(1e-4));
  CHECK_THROWS_AS(dk_phi1(kB1, 1.0, g, 1e-2), DomainError);
  CHECK_THROWS_AS(dk_phi1(kB1, 1.0, g, 1e-6), DomainError);
  CHECK(solve_with_derivative(kB1, 1.0, g).phi_cap == doctest::Approx(d.phi_cap).epsilon(1e-14));
}

TEST_CASE("spectral table interpolates the solver") {
  const HalfLineGrid g = grid_for(2.0);
  const SpectralTable t(kB1, 1.0, 2.0, g);
  CHECK(t.nodes().front() == 1.0);
  CHECK(t.nodes().back() == 2.0);
  for (double k : {1.0, 1.137, 1.5, 1.92, 2.0}) {
    const GroundState s = solve_with_derivative(kB1, k, g);
    const SpectralSample v = t(k);
    CAPTURE(k);
    CHECK(v.lambda1 == doctest::Approx(s.lambda1).epsilon(1e-12));
    CHECK(v.dlambda1 == doctest::Approx(s.dlambda1).epsilon(1e-9));
    CHECK(v.phi_cap == doctest::Approx(s.phi_cap).epsilon(1e-6));
  }
  CHECK_THROWS_AS(t(2.1), DomainError);
}
