#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "tfse/errors.hpp"
#include "tfse/wellposed.hpp"

using namespace tfse;

namespace {

const ModeSpectrum kThree{{{1.5, 0.25}, {2.0, 0.5}, {2.5, 0.25}}};
const ModeSpectrum kOne{{{2.0, 1.0}}};

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("envelopes") {
  CHECK(envelope({0.5, 1.0}, 2.0, 0.0) == 1.0);
  CHECK(envelope({0.5, 1.0}, 2.0, 100.0) == doctest::Approx(1.0 / 21.0));
  for (double t : {0.0, 1.0, 1e3}) CHECK(envelope({0.6, 0.6}, 2.0, t) == 1.0);
  const double e = envelope({0.5, 0.25}, 2.0, 10.0);
  CHECK(std::isfinite(e));
  CHECK(e > 1.0);
  CHECK(std::log(e) == doctest::Approx(40.0 * std::cos(std::numbers::pi / 4) + 1.5 * std::log(1.0 + std::sqrt(10.0) * 2.0))
                           .epsilon(1e-6));
  CHECK(log_envelope({0.5, 0.25}, 2.0, 10.0) == doctest::Approx(std::log(e)).epsilon(1e-14));
  CHECK_THROWS_AS(envelope({0.5, 0.25}, 2.0, 1e4), OverflowGuard);
  CHECK(std::isfinite(log_envelope({0.5, 0.25}, 2.0, 1e4)));
}

TEST_CASE("mode spectra") {
  CHECK(kThree.weight_sum() == 1.0);
  CHECK(kThree.graph_norm_sq() == doctest::Approx(0.25 * 3.25 + 0.5 * 5.0 + 0.25 * 7.25));
  CHECK_THROWS_AS(ModeSpectrum({{{2.0, 1.0}, {1.0, 1.0}}}).validate(), DomainError);
  CHECK_THROWS_AS(ModeSpectrum({{{-1.0, 1.0}}}).validate(), DomainError);
  CHECK_THROWS_AS(ModeSpectrum({{{1.0, -1.0}}}).validate(), DomainError);
  CHECK_THROWS_AS(ModeSpectrum{}.validate(), DomainError);
}

TEST_CASE("solution norms") {
  for (FractionalOrder o : {FractionalOrder{0.5, 0.25}, FractionalOrder{0.5, 0.5}, FractionalOrder{0.5, 1.0}})
    CHECK(solution_norm_sq(o, kThree, 0.0) == kThree.weight_sum());
  for (double t : {0.3, 7.0, 250.0}) CHECK(rel(solution_norm_sq({1.0, 1.0}, kThree, t), 1.0) < 1e-12);
  // |E_{a,1}(z)|^2 ~ 1 / (|z| Gamma(1-a))^2 off the exponential sector.
  const double t = 1e6, a = 0.5;
  const double want = 1.0 / std::pow(std::pow(t, a) * 2.0 * std::tgamma(1.0 - a), 2);
  CHECK(rel(solution_norm_sq({a, 1.0}, kOne, t), want) < 1e-2);
  CHECK(solution_norm_sq_scaled({0.5, 0.25}, kOne, 1e4).log_abs() > 700.0);
}

TEST_CASE("behaviour as t -> 0") {
  // First order: 2 cos(pi b / 2) lambda t^a / Gamma(1+a); at b = 1 that
  // vanishes and the t^{2a} term leads.
  const double lam = 2.0, a = 0.5;
  for (double b : {0.25, 0.5}) {
    for (double t : {1e-6, 1e-10}) {
      CAPTURE(b);
      CAPTURE(t);
      const double gap = solution_norm_sq({a, b}, kOne, t) - 1.0;
      CHECK(rel(gap, 2.0 * std::cos(std::numbers::pi * b / 2) * lam * std::pow(t, a) / std::tgamma(1.0 + a)) < 1e-2);
    }
  }
  for (double t : {1e-6, 1e-10}) {
    const double gap = solution_norm_sq({a, 1.0}, kOne, t) - 1.0;
    const double second = std::pow(t, 2 * a) * lam * lam * (1.0 / std::pow(std::tgamma(1 + a), 2) - 2.0 / std::tgamma(1 + 2 * a));
    CHECK(rel(gap, second) < 1e-2);
  }
  CHECK(std::abs(solution_norm_sq({0.5, 0.5}, kOne, 1e-12) - 1.0) < 1e-5);
}

TEST_CASE("bound certificates") {
  const auto times = log_times(1e-2, 1e2, 200);
  for (FractionalOrder o : {FractionalOrder{0.5, 0.25}, FractionalOrder{0.5, 0.5}, FractionalOrder{0.5, 1.0},
                            FractionalOrder{0.8, 0.4}, FractionalOrder{0.8, 1.0}}) {
    for (const ModeSpectrum* s : {&kOne, &kThree}) {
      CAPTURE(o.alpha);
      CAPTURE(o.beta);
      const BoundCertificate c = certify_bounds(o, *s, times);
      CHECK(c.passed);
      CHECK(std::isfinite(c.C));
      CHECK(c.C > 0.0);
      CHECK(c.change < 0.01);
    }
  }
  // Critical: on the critical ray |E_{a,1}| tends to 1/a, so C is at least
  // that over the graph norm.
  const double c = certify_bounds({0.5, 0.5}, kOne, times).C;
  CHECK(c * c >= solution_norm_sq({0.5, 0.5}, kOne, 1e2) / kOne.graph_norm_sq());
  CHECK(solution_norm_sq({0.5, 0.5}, kOne, 1e6) == doctest::Approx(4.0).epsilon(1e-2));
}

TEST_CASE("mode expansion solves the fractional equation") {
  for (FractionalOrder o : {FractionalOrder{0.5, 0.25}, FractionalOrder{0.5, 0.5}, FractionalOrder{0.5, 1.0},
                            FractionalOrder{0.8, 0.4}, FractionalOrder{0.3, 0.9}}) {
    for (double t : {0.5, 1.0, 2.0}) {
      CAPTURE(o.alpha);
      CAPTURE(o.beta);
      CAPTURE(t);
      CHECK(caputo_residual(o, 2.0, t) <= 1e-3);
    }
  }
  // The residual falls with the mesh.
  CHECK(caputo_residual({0.5, 0.5}, 2.0, 1.0, {4000, 2.0}) < caputo_residual({0.5, 0.5}, 2.0, 1.0, {500, 2.0}));
  CHECK_THROWS_AS(caputo_residual({1.0, 1.0}, 2.0, 1.0), DomainError);
  CHECK_THROWS_AS(CaputoScheme({5, 2.0}).validate(), DomainError);
}
