#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>

#include "tfse/errors.hpp"
#include "tfse/quadrature.hpp"
#include "tfse/wavepacket.hpp"

using namespace tfse;

TEST_CASE("bump values") {
  const ChiProfile p{1.0, 2.0, 1.0};
  CHECK(chi(p, 1.0) == 0.0);
  CHECK(chi(p, 2.0) == 0.0);
  CHECK(chi(p, 0.3) == 0.0);
  CHECK(chi(p, 7.0) == 0.0);
  CHECK(chi(p, 1.5) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK(chi({1.0, 2.0, 3.0}, 1.5) == doctest::Approx(3.0 * std::exp(-1.0)).epsilon(1e-15));
  CHECK(chi_deriv(p, 1.5) == 0.0);
  CHECK(chi_deriv(p, 0.5) == 0.0);
  // Flat to all orders at the edges.
  CHECK(chi(p, 1.0 + 1e-9) < 1e-30);
  CHECK(std::abs(chi_deriv(p, 1.0 + 1e-9)) < 1e-30);
  CHECK(std::abs(chi_deriv(p, 2.0 - 1e-9)) < 1e-30);
}

TEST_CASE("derivative against centered differences") {
  const ChiProfile p{-0.5, 1.5, 2.0};
  const double h = 1e-6;
  for (int i = 1; i <= 20; ++i) {
    const double k = -0.5 + 2.0 * i / 21.0;
    const double fd = (chi(p, k + h) - chi(p, k - h)) / (2 * h);
    CAPTURE(k);
    CHECK(std::abs(chi_deriv(p, k) - fd) < 1e-8);
  }
}

TEST_CASE("chi chi' integrates to zero") {
  const ChiProfile p{1.0, 2.0, 1.0};
  const auto rule = QuadratureRule::gauss_legendre(1.0, 2.0, 256);
  const double v = integrate(rule, [&](double k) { return chi(p, k) * chi_deriv(p, k); });
  CHECK(std::abs(v) < 1e-14);
  for (double k = 0.9; k < 2.1; k += 0.01) CHECK(chi(p, k) >= 0.0);
}

TEST_CASE("profile validation") {
  CHECK_THROWS_AS(ChiProfile({2.0, 1.0, 1.0}).validate(), DomainError);
  CHECK_THROWS_AS(ChiProfile({1.0, 2.0, 0.0}).validate(), DomainError);
  CHECK(ChiProfile{}.midpoint() == 1.5);
}

TEST_CASE("spectral window") {
  const ModelParams m{1.0};
  const HalfLineGrid g = HalfLineGrid::automatic(m, 2.0);
  const SupportReport r = validate_support(m, {1.0, 2.0, 1.0}, g);
  CHECK(r.valid);
  CHECK(r.lambda_lo > 1.0);
  CHECK(r.lambda_lo < 3.0);
  CHECK(r.lambda_hi > 1.0);
  CHECK(r.lambda_hi < r.lambda_lo);
  try {
    validate_support(m, {-1.0, -0.5, 1.0}, HalfLineGrid::automatic(m, 1.0));
    FAIL("expected WindowViolation");
  } catch (const WindowViolation& e) {
    CHECK(std::string(e.what()).find("k_min") != std::string::npos);
  }
  // lambda1(-0.5) is above 3b.
  CHECK_THROWS_AS(validate_support(m, {-0.5, 1.0, 1.0}, g), WindowViolation);
}
