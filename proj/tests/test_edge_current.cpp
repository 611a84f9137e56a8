#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>

#include "tfse/edge_current.hpp"
#include "tfse/errors.hpp"
#include "tfse/mittag_leffler.hpp"

using namespace tfse;

namespace {

constexpr double kPi = std::numbers::pi;

const EdgeSystem& sys() {
  static const EdgeSystem s({1.0}, {1.0, 2.0, 1.0});
  return s;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("regime labels") {
  CHECK(classify_regime({0.5, 0.25}).label == TransportLabel::ExponentialGrowth);
  CHECK(classify_regime({0.5, 0.5}).label == TransportLabel::AsymptoticallyConstant);
  const RegimeClass p = classify_regime({0.5, 1.0});
  CHECK(p.label == TransportLabel::PowerLawDecay);
  CHECK(p.exponent == -2.5);
  CHECK(p.name() == "PowerLawDecay(-2.5)");
  CHECK(FractionalOrder{0.3, 0.3}.regime() == Regime::Critical);
  CHECK(FractionalOrder{0.3, 0.30000000000000004}.regime() == Regime::SuperCritical);
  CHECK_THROWS_AS(FractionalOrder({0.0, 0.5}).validate(), DomainError);
  CHECK_THROWS_AS(FractionalOrder({0.5, 1.5}).validate(), DomainError);
  const RegimeAngles a = regime_angles({0.5, 0.25});
  CHECK(a.theta == doctest::Approx(kPi / 4));
  CHECK(a.gamma(2.0) == doctest::Approx(4.0 * std::sin(kPi / 4)));
  CHECK(std::abs(std::cos(regime_angles({0.7, 0.7}).theta)) < 1e-15);
}

TEST_CASE("Schrodinger current") {
  const double j = current_schrodinger(sys());
  CHECK(j < 0.0);
  // Finite-difference oracle (tests/oracles/fiber_oracle.py).
  CHECK(rel(j, -0.0273089008) < 1e-5);
  CHECK(rel(current_schrodinger_by_parts(sys()), j) < 1e-6);
}

TEST_CASE("alpha = beta = 1 reduces to the Schrodinger current") {
  const double js = current_schrodinger(sys());
  for (double t : {1.0, 3.0, 10.0, 30.0, 100.0}) {
    CAPTURE(t);
    CHECK(rel(current_direct({1.0, 1.0}, sys(), t), js) < 1e-3);
  }
}

TEST_CASE("direct evaluation is real under conjugate reflection") {
  for (FractionalOrder o : {FractionalOrder{0.5, 0.25}, FractionalOrder{0.5, 0.5}, FractionalOrder{0.7, 0.9}}) {
    const ScaledReal a = current_direct_scaled(o, sys(), 7.0), b = current_direct_scaled(o, sys(), 7.0, true);
    CHECK(a.mantissa == b.mantissa);
    CHECK(a.log_scale == b.log_scale);
  }
}

TEST_CASE("beta line") {
  const double js = current_schrodinger(sys());
  CHECK(rel(current_beta_line(1.0, sys(), 5.0), js) < 1e-6);
  const double I = sys().integrate_real([](double k) {
    const ChiProfile p{1.0, 2.0, 1.0};
    return sys().table()(k).lambda1 * chi(p, k) * chi_deriv(p, k);
  });
  CHECK(rel(current_beta_line(0.5, sys(), 0.0), 2.0 * std::cos(3.0 * kPi / 4.0) * I) < 1e-12);
  for (double t : {0.5, 1.0, 2.0}) {
    CAPTURE(t);
    CHECK(rel(current_beta_line(0.5, sys(), t), current_direct({1.0, 0.5}, sys(), t)) < 1e-3);
  }
  try {
    current_beta_line(0.5, sys(), 1e3);
    FAIL("expected OverflowGuard");
  } catch (const OverflowGuard& e) {
    const double rate = 2.0 * sys().lambda_max() * std::cos(kPi / 4.0);
    CHECK(e.t_limit() == doctest::Approx(700.0 / rate));
  }
  CHECK(current_beta_line_scaled(0.5, sys(), 1e3).log_abs() > 700.0);
}

TEST_CASE("sub-critical formula") {
  CHECK_THROWS_AS(current_asymptotic_case1({0.5, 0.75}, sys(), 10.0), DomainError);
  // Critical point: the exponential weights collapse to the critical formula.
  for (double t : {3.0, 100.0})
    CHECK(rel(current_asymptotic_case1({0.5, 0.5}, sys(), t), current_naber(0.5, sys(), t)) < 1e-8);
  // Growth rate on [5, 20].
  const FractionalOrder o{0.5, 0.25};
  const auto tr = current_trace(o, sys(), log_times(5.0, 20.0, 16), Method::AsymptoticCase1);
  const FitResult f = fit_exponent(tr, 5.0, 20.0, FitMode::SemiLog);
  const double rate = 2.0 * std::pow(sys().lambda_max(), 2.0) * std::cos(kPi / 4.0);
  CHECK(f.slope > 0.0);
  // The peak of the exponent sits where chi vanishes to all orders, so on
  // [5, 20] the rate is the slope of max_k of the whole log-integrand; the
  // bare rate is approached only as t grows.
  const ChiProfile prof{1.0, 2.0, 1.0};
  auto log_peak = [&](double t) {
    double best = -INFINITY;
    for (int i = 1; i < 20000; ++i) {
      const double k = 1.0 + i / 20000.0, l = sys().table()(k).lambda1;
      best = std::max(best, 2.0 * t * l * l * std::cos(kPi / 4.0) + std::log(std::abs(l * l * chi(prof, k) * chi_deriv(prof, k))));
    }
    return best;
  };
  CHECK(std::abs(f.slope / ((log_peak(20.0) - log_peak(5.0)) / 15.0) - 1.0) < 0.1);
  const auto late = current_trace(o, sys(), log_times(50.0, 200.0, 16), Method::AsymptoticCase1);
  CHECK(std::abs(fit_exponent(late, 50.0, 200.0, FitMode::SemiLog).slope / rate - 1.0) < 0.05);
  for (double t : {50.0, 100.0}) {
    CAPTURE(t);
    const FractionalOrder o2{0.6, 0.3};
    const ScaledReal d = current_direct_scaled(o2, sys(), t), a = current_asymptotic_case1_scaled(o2, sys(), t);
    CHECK(d.sign() == a.sign());
    CHECK(std::abs(std::expm1(a.log_abs() - d.log_abs())) < 1e-2);
  }
  // The sign the leading term carries is computed, not assumed.
  CHECK(case1_leading_coefficient(o, sys()) != 0.0);
}

TEST_CASE("super-critical formula") {
  CHECK_THROWS_AS(current_asymptotic_case2({0.5, 0.5}, sys(), 10.0), DomainError);
  // Both reciprocal gammas of the bracket hit poles at alpha = 1/2 and as alpha -> 1.
  CHECK(case2_bracket(0.5) == 0.0);
  CHECK(std::abs(case2_bracket(0.999999)) < 1e-4);
  CHECK(std::abs(case2_bracket(0.3)) > 0.05);
  CHECK(current_ayh(0.4, sys(), 1e3) == current_asymptotic_case2({0.4, 1.0}, sys(), 1e3));
  CHECK(rel(ayh_coefficient(0.4, sys()) / std::pow(1e3, 2.2), current_ayh(0.4, sys(), 1e3)) < 1e-14);
  CHECK(rel(current_asymptotic_case2({0.3, 0.9}, sys(), 1e3), current_direct({0.3, 0.9}, sys(), 1e3)) < 0.1);
  CHECK(rel(current_ayh(0.4, sys(), 1e3), current_direct({0.4, 1.0}, sys(), 1e3)) < 0.1);
  CHECK_THROWS_AS(current_ayh(1.0, sys(), 10.0), DomainError);
}

TEST_CASE("critical formula") {
  const double n = naber_constant(0.5, sys());
  CHECK(rel(n, -0.2600763112) < 1e-5);
  CHECK(rel(naber_constant_by_parts(0.5, sys()), n) < 1e-6);
  CHECK(rel(current_naber(1.0, sys(), 10.0), current_schrodinger(sys())) < 1e-6);
  CHECK(rel(current_naber(0.5, sys(), 1e3), current_direct({0.5, 0.5}, sys(), 1e3)) < 1e-2);
  CHECK(rel(current_direct({0.5, 0.5}, sys(), 1e3), n) < 0.02);
}

TEST_CASE("quadrature refinement") {
  const EdgeSystem fine({1.0}, {1.0, 2.0, 1.0}, {0.0, 4000}, QuadConfig{128, 1e-4});
  for (FractionalOrder o : {FractionalOrder{1.0, 1.0}, FractionalOrder{0.5, 0.5}, FractionalOrder{0.5, 1.0}}) {
    for (double t : {1.0, 100.0}) {
      CAPTURE(o.beta);
      CAPTURE(t);
      const double a = current_direct(o, sys(), t), b = current_direct(o, fine, t);
      CHECK(std::abs(a - b) <= 1e-4 * std::abs(b) + 1e-15);
    }
  }
  CHECK_THROWS_AS(QuadConfig({16, 1e-4}).validate(), DomainError);
}

TEST_CASE("traces are independent of the thread count") {
  const auto times = log_times(1.0, 1e3, 12);
  setenv("TFSE_THREADS", "1", 1);
  const TransportTrace a = current_trace({0.5, 0.25}, sys(), times);
  setenv("TFSE_THREADS", "5", 1);
  const TransportTrace b = current_trace({0.5, 0.25}, sys(), times);
  unsetenv("TFSE_THREADS");
  for (std::size_t i = 0; i < times.size(); ++i) {
    CHECK(a.values[i].mantissa == b.values[i].mantissa);
    CHECK(a.values[i].log_scale == b.values[i].log_scale);
  }
}

TEST_CASE("exponent fits") {
  const auto times = log_times(1.0, 1e4, 40);
  CHECK(times.front() == 1.0);
  CHECK(times.back() == 1e4);
  CHECK(times[13] < times[14]);
  TransportTrace p{times, {}, Method::Direct};
  TransportTrace e{log_times(1.0, 100.0, 30), {}, Method::Direct};
  for (double t : p.times) p.values.push_back(ScaledReal::from(3.0 * std::pow(t, -2.5)));
  for (double t : e.times) e.values.push_back({-0.7, 0.3 * t});
  CHECK(std::abs(fit_exponent(p, 1.0, 1e4, FitMode::LogLog).slope + 2.5) < 1e-6);
  const FitResult fe = fit_exponent(e, 1.0, 100.0, FitMode::SemiLog);
  CHECK(std::abs(fe.slope - 0.3) < 1e-6);
  CHECK(fe.samples == 30);
  CHECK(fe.max_rel_residual < 1e-9);
  CHECK_THROWS_AS(fit_exponent(p, 1.0, 2.0, FitMode::LogLog), DomainError);
  TransportTrace s = p;
  s.values[20].mantissa = -s.values[20].mantissa;
  CHECK_THROWS_AS(fit_exponent(s, 1.0, 1e4, FitMode::LogLog), SignChange);
  CHECK_THROWS_AS(log_times(0.0, 1.0, 5), DomainError);
}
