#include "tfse/mittag_leffler.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include "mp_real.hpp"
#include "tfse/errors.hpp"

namespace tfse {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLn2 = std::numbers::ln2;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Largest denominator for which alpha (and sigma) are treated as exact
// rationals, enabling the integer-factor Gamma recurrence.
constexpr long kMaxDenominator = 200;

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

// Imaginary part -0 would put the negative real axis on the wrong side of
// the principal branch.
Complex canonical(Complex z) {
  return {z.real() == 0.0 ? 0.0 : z.real(), z.imag() == 0.0 ? 0.0 : z.imag()};
}

long find_denominator(double x, long max_q) {
  for (long q = 1; q <= max_q; ++q) {
    const double p = std::round(x * q);
    if (std::abs(p / q - x) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x)))
      return q;
  }
  return 0;
}

// Exponent (base 2) of the larger component, or a very negative number for zero.
long mp_exponent(mpfr_srcptr re, mpfr_srcptr im) {
  constexpr long kZero = std::numeric_limits<long>::min() / 4;
  const long er = mpfr_zero_p(re) ? kZero : static_cast<long>(mpfr_get_exp(re));
  const long ei = mpfr_zero_p(im) ? kZero : static_cast<long>(mpfr_get_exp(im));
  return std::max(er, ei);
}

ScaledComplex mp_to_scaled(mpfr_srcptr re, mpfr_srcptr im) {
  if (mpfr_zero_p(re) && mpfr_zero_p(im)) return {};
  const long e = mp_exponent(re, im);
  if (e > -1000 && e < 1000)
    return ScaledComplex::from({mpfr_get_d(re, MPFR_RNDN), mpfr_get_d(im, MPFR_RNDN)});
  detail::MpReal tr(53), ti(53);
  mpfr_mul_2si(tr.get(), re, -e, MPFR_RNDN);
  mpfr_mul_2si(ti.get(), im, -e, MPFR_RNDN);
  return {Complex(mpfr_get_d(tr.get(), MPFR_RNDN), mpfr_get_d(ti.get(), MPFR_RNDN)), e * kLn2};
}

// 1/Gamma(v) at the precision of `out`.
void mp_gamma_reciprocal(mpfr_ptr out, mpfr_srcptr v) {
  if (mpfr_integer_p(v) && mpfr_sgn(v) <= 0) {
    mpfr_set_zero(out, 1);
    return;
  }
  mpfr_gamma(out, v, MPFR_RNDN);
  mpfr_ui_div(out, 1, out, MPFR_RNDN);
}

// Gamma(r/Q) for integers r, Q > 0. At high precision mpfr_gamma becomes
// very slow; for rational arguments the lower incomplete gamma series
//   Gamma(x) ~ N^x e^-N sum_k N^k / (x (x+1) ... (x+k)),
// cut at an integer N ~ precision, only needs word-sized multiplies.
void mp_gamma_rational(mpfr_ptr out, long r, long Q) {
  const mpfr_prec_t prec = mpfr_get_prec(out);
  if (prec < 4000) {
    detail::MpReal v(prec + 32);
    mpfr_set_si(v.get(), r, MPFR_RNDN);
    mpfr_div_si(v.get(), v.get(), Q, MPFR_RNDN);
    mpfr_gamma(out, v.get(), MPFR_RNDN);
    return;
  }
  long r0 = r % Q;
  if (r0 == 0) r0 = Q;
  const mpfr_prec_t wp = prec + 64;
  const unsigned long N = static_cast<unsigned long>(std::ceil(wp * kLn2)) + 8;
  const unsigned long uQ = static_cast<unsigned long>(Q);
  detail::MpReal term(wp), sum(wp), tmp(wp);
  mpfr_set_ui(term.get(), uQ, MPFR_RNDN);
  mpfr_div_ui(term.get(), term.get(), static_cast<unsigned long>(r0), MPFR_RNDN);
  mpfr_set(sum.get(), term.get(), MPFR_RNDN);
  for (unsigned long k = 1;; ++k) {
    mpfr_mul_ui(term.get(), term.get(), N * uQ, MPFR_RNDN);
    mpfr_div_ui(term.get(), term.get(), static_cast<unsigned long>(r0) + k * uQ, MPFR_RNDN);
    mpfr_add(sum.get(), sum.get(), term.get(), MPFR_RNDN);
    if (k > N && mpfr_get_exp(term.get()) < mpfr_get_exp(sum.get()) - wp) break;
  }
  mpfr_set_ui(tmp.get(), N, MPFR_RNDN);
  mpfr_log(tmp.get(), tmp.get(), MPFR_RNDN);
  mpfr_mul_ui(tmp.get(), tmp.get(), static_cast<unsigned long>(r0), MPFR_RNDN);
  mpfr_div_ui(tmp.get(), tmp.get(), uQ, MPFR_RNDN);
  mpfr_sub_ui(tmp.get(), tmp.get(), N, MPFR_RNDN);
  mpfr_exp(tmp.get(), tmp.get(), MPFR_RNDN);
  mpfr_mul(sum.get(), sum.get(), tmp.get(), MPFR_RNDN);
  for (long i = 0; i < (r - r0) / Q; ++i) {
    mpfr_mul_ui(sum.get(), sum.get(), static_cast<unsigned long>(r0 + i * Q), MPFR_RNDN);
    mpfr_div_ui(sum.get(), sum.get(), uQ, MPFR_RNDN);
  }
  mpfr_set(out, sum.get(), MPFR_RNDN);
}

mpfr_prec_t precision_tier(mpfr_prec_t bits) {
  mpfr_prec_t tier = 128;
  while (tier < bits) tier = tier * 3 / 2 + 64;
  return tier;
}

}  // namespace

void MLParams::validate() const {
  if (!(alpha > 0.0 && alpha < 2.0))
    throw DomainError("Mittag-Leffler alpha must lie in (0,2), got " + std::to_string(alpha));
  if (!std::isfinite(sigma)) throw DomainError("Mittag-Leffler sigma must be finite");
}

void MLAccuracy::validate() const {
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw DomainError("rel_tol must lie in (0,1)");
  if (!(series_radius >= 0.0)) throw DomainError("series_radius must be nonnegative");
  if (p_terms < 1) throw DomainError("p_terms must be at least 1");
  if (max_series_terms < 1) throw DomainError("max_series_terms must be at least 1");
}

double MLAccuracy::radius_for(double alpha) const {
  return series_radius > 0.0 ? series_radius : auto_series_radius(alpha);
}

double auto_series_radius(double alpha) { return std::pow(45.0, alpha); }

double sector_angle(double alpha) { return 0.75 * kPi * alpha; }

double gamma_reciprocal(double x) {
  if (std::isnan(x)) return x;
  if (x == std::numeric_limits<double>::infinity()) return 0.0;
  if (is_nonpositive_integer(x)) return 0.0;
  if (x >= 0.5) return 1.0 / std::tgamma(x);
  // Reflection: 1/Gamma(x) = sin(pi x) Gamma(1-x) / pi, with the sine
  // argument reduced exactly first.
  const double r = x - 2.0 * std::round(0.5 * x);
  return std::sin(kPi * r) * std::tgamma(1.0 - x) / kPi;
}

// ---------------------------------------------------------------------------

struct MittagLeffler::Impl {
  double alpha = 1.0;
  double sigma = 1.0;

  // alpha = P/Q and sigma = S/Q when rational (Q > 0); then
  // Gamma(alpha (m+q) + sigma) = Gamma(alpha m + sigma) * prod_{j<p} (P m + S + j Q)/Q.
  bool rational = false;
  long p = 0, q = 0;
  long P = 0, Q = 0, S = 0;

  // Asymptotic tail: coefficient 1/Gamma(sigma - alpha k) and a log-envelope
  // of the term size without the |z|^-k factor.
  std::vector<double> tail_coef;
  std::vector<double> tail_env;
  bool tail_all_zero = true;

  std::mutex mu;
  // Seeds 1/Gamma(alpha n + sigma), n < q, keyed by precision tier.
  std::map<mpfr_prec_t, std::shared_ptr<const std::vector<detail::MpReal>>> seeds;

  std::shared_ptr<const std::vector<detail::MpReal>> seeds_for(mpfr_prec_t prec) {
    std::lock_guard<std::mutex> lock(mu);
    auto it = seeds.lower_bound(prec);
    if (it != seeds.end()) return it->second;
    const mpfr_prec_t tier = precision_tier(prec);
    auto vec = std::make_shared<std::vector<detail::MpReal>>();
    vec->reserve(static_cast<std::size_t>(q));
    detail::MpReal v(tier + 32);
    for (long n = 0; n < q; ++n) {
      detail::MpReal c(tier);
      if (P * n + S > 0) {
        mp_gamma_rational(c.get(), P * n + S, Q);
        mpfr_ui_div(c.get(), 1, c.get(), MPFR_RNDN);
      } else {
        mpfr_set_si(v.get(), P * n + S, MPFR_RNDN);
        mpfr_div_si(v.get(), v.get(), Q, MPFR_RNDN);
        mp_gamma_reciprocal(c.get(), v.get());
      }
      vec->push_back(std::move(c));
    }
    std::shared_ptr<const std::vector<detail::MpReal>> out = vec;
    seeds.emplace(tier, out);
    return out;
  }
};

MittagLeffler::MittagLeffler(MLParams params, MLAccuracy acc) : params_(params), acc_(acc) {
  params_.validate();
  acc_.validate();
  radius_ = acc_.radius_for(params_.alpha);
  impl_ = std::make_shared<Impl>();
  Impl& im = *impl_;
  im.alpha = params_.alpha;
  im.sigma = params_.sigma;

  const long qa = find_denominator(im.alpha, kMaxDenominator);
  const long qs = find_denominator(im.sigma, kMaxDenominator);
  if (qa > 0 && qs > 0) {
    const long Q = std::lcm(qa, qs);
    const long p = std::lround(im.alpha * qa);
    if (Q <= 4 * kMaxDenominator && p >= 1) {
      im.rational = true;
      im.p = p;
      im.q = qa;
      im.Q = Q;
      im.P = p * (Q / qa);
      im.S = std::lround(im.sigma * Q);
    }
  }

  const int K = acc_.p_terms;
  im.tail_coef.assign(K + 1, 0.0);
  im.tail_env.assign(K + 1, 0.0);
  for (int k = 1; k <= K; ++k) {
    const double x = im.sigma - im.alpha * k;
    im.tail_coef[k] = gamma_reciprocal(x);
    if (im.tail_coef[k] != 0.0) im.tail_all_zero = false;
    // |1/Gamma(x)| <= Gamma(1-x)/pi for x < 1/2 and is O(1) otherwise.
    im.tail_env[k] = std::max(0.0, std::lgamma(1.0 - x) - std::log(kPi));
  }
}

MittagLeffler::~MittagLeffler() = default;
MittagLeffler::MittagLeffler(const MittagLeffler&) = default;
MittagLeffler& MittagLeffler::operator=(const MittagLeffler&) = default;
MittagLeffler::MittagLeffler(MittagLeffler&&) noexcept = default;
MittagLeffler& MittagLeffler::operator=(MittagLeffler&&) noexcept = default;

namespace {

// ln of the size of E: the larger of the exponential part (where it is
// present) and the first nonvanishing algebraic term.
double log_size_estimate(double alpha, double sigma, Complex z) {
  const double r = std::abs(z);
  const double lr = std::log(r);
  const double th = std::abs(std::arg(z));
  double est = kNegInf;
  if (th <= kPi * alpha) {
    const double w = std::pow(r, 1.0 / alpha) * std::cos(th / alpha);
    est = w + (1.0 - sigma) / alpha * lr - std::log(alpha);
  }
  for (int k = 1; k <= 60; ++k) {
    const double g = gamma_reciprocal(sigma - alpha * k);
    if (g != 0.0) {
      est = std::max(est, std::log(std::abs(g)) - k * lr);
      break;
    }
  }
  return est;
}

double lgamma_or_inf(double x) {
  if (is_nonpositive_integer(x)) return std::numeric_limits<double>::infinity();
  return std::lgamma(x);
}

}  // namespace

ScaledComplex MittagLeffler::series_scaled(Complex z_in) const {
  const Impl& im = *impl_;
  z_in = canonical(z_in);
  const bool flip = z_in.imag() < 0.0;
  const Complex z = flip ? std::conj(z_in) : z_in;
  const double alpha = im.alpha, sigma = im.sigma;

  if (z == Complex{}) return ScaledComplex::from(gamma_reciprocal(sigma));

  const double lr = std::log(std::abs(z));
  const double log_tol = std::log(acc_.rel_tol);

  // Scan term magnitudes in double to size the precision and term count.
  double fmax = kNegInf;
  std::size_t n_peak = 0;
  {
    std::size_t n = 0;
    double prev = kNegInf;
    for (;; ++n) {
      const double f = n * lr - lgamma_or_inf(alpha * n + sigma);
      if (f > fmax) {
        fmax = f;
        n_peak = n;
      }
      if (alpha * n + sigma > 1.0 && f < prev && f < fmax - 1.0) break;
      prev = f;
      if (n > acc_.max_series_terms) break;
    }
  }
  const double log_est = std::min(log_size_estimate(alpha, sigma, z), fmax);
  std::size_t n_need = n_peak;
  {
    const double target = log_est + log_tol - 3.0;
    while (n_need <= acc_.max_series_terms) {
      const double f = n_need * lr - lgamma_or_inf(alpha * n_need + sigma);
      if (alpha * n_need + sigma > 0.0 && f < target) break;
      ++n_need;
    }
  }
  if (n_need + 3 > acc_.max_series_terms)
    throw NonConvergence("Mittag-Leffler series needs about " + std::to_string(n_need) + " terms at |z| = " +
                         std::to_string(std::abs(z)) + " (budget " + std::to_string(acc_.max_series_terms) + ")");

  const double cancel_bits = std::max(0.0, (fmax - log_est) / kLn2);
  const std::size_t tol_bits = static_cast<std::size_t>(std::ceil(-log_tol / kLn2));

  ScaledComplex out;
  const bool fits_double = fmax < detail::kSafeLog && (n_need + 3) * lr < detail::kSafeLog &&
                           alpha * (n_need + 3) + sigma < 170.0;
  if (cancel_bits < 4.0 && tol_bits <= 44 && fits_double) {
    // No cancellation to speak of, and z^n and 1/Gamma stay in range: plain summation.
    Complex sum{}, pw{1.0, 0.0};
    int small = 0;
    for (std::size_t n = 0; n < acc_.max_series_terms; ++n) {
      const double a = alpha * n + sigma;
      const Complex term = pw * gamma_reciprocal(a);
      sum += term;
      if (a > 0.0 && std::abs(term) < acc_.rel_tol * std::abs(sum)) {
        if (++small == 3) break;
      } else {
        small = 0;
      }
      pw *= z;
    }
    if (small < 3) throw NonConvergence("Mittag-Leffler series did not settle within the term budget");
    out = ScaledComplex::from(sum);
  } else {
    const mpfr_prec_t prec = static_cast<mpfr_prec_t>(
        53 + 64 + std::ceil(cancel_bits) + std::ceil(std::log2(static_cast<double>(n_need) + 2.0)) +
        std::max<std::size_t>(tol_bits, 53) - 53);

    using detail::MpReal;
    MpReal sr(prec), si(prec), tr(prec), ti(prec), tmp(prec);
    const long tol_exp = static_cast<long>(std::floor(log_tol / kLn2)) - 2;
    const double zr = z.real(), zi = z.imag();
    int small = 0;
    // Stopping rule on the term just added in (tr, ti).
    auto settled = [&](std::size_t n) {
      mpfr_add(sr.get(), sr.get(), tr.get(), MPFR_RNDN);
      mpfr_add(si.get(), si.get(), ti.get(), MPFR_RNDN);
      const bool past_poles = alpha * n + sigma > 0.0;
      const long et = mp_exponent(tr.get(), ti.get());
      const long es = mp_exponent(sr.get(), si.get());
      if (past_poles && !(mpfr_zero_p(sr.get()) && mpfr_zero_p(si.get())) && et <= es + tol_exp) return ++small == 3;
      small = 0;
      return false;
    };

    if (im.rational && sigma > 0.0) {
      // Terms obey t_{n+q} = t_n z^q Q^p / prod_{j<p} (P m + S + j Q), all
      // factors positive. z^q is kept exact, so each step costs a handful of
      // short-by-long products instead of full multiplications.
      const std::size_t q = static_cast<std::size_t>(im.q);
      mpfr_prec_t zprec = static_cast<mpfr_prec_t>(56 * q + 64);
      MpReal Zr(zprec, 1.0), Zi(zprec, 0.0), a(zprec), b(zprec);
      for (;;) {
        mpfr_set_d(Zr.get(), 1.0, MPFR_RNDN);
        mpfr_set_d(Zi.get(), 0.0, MPFR_RNDN);
        int inexact = 0;
        for (std::size_t j = 0; j < q; ++j) {
          inexact |= mpfr_mul_d(a.get(), Zr.get(), zr, MPFR_RNDN);
          inexact |= mpfr_mul_d(b.get(), Zi.get(), zi, MPFR_RNDN);
          inexact |= mpfr_mul_d(Zi.get(), Zi.get(), zr, MPFR_RNDN);
          inexact |= mpfr_mul_d(Zr.get(), Zr.get(), zi, MPFR_RNDN);
          inexact |= mpfr_add(Zi.get(), Zi.get(), Zr.get(), MPFR_RNDN);
          inexact |= mpfr_sub(Zr.get(), a.get(), b.get(), MPFR_RNDN);
        }
        if (inexact == 0) break;
        zprec *= 2;
        for (MpReal* x : {&Zr, &Zi, &a, &b}) mpfr_set_prec(x->get(), zprec);
      }

      const auto seeds = const_cast<Impl&>(im).seeds_for(prec);
      std::vector<MpReal> ring_r, ring_i;
      ring_r.reserve(q);
      ring_i.reserve(q);
      MpReal pr(prec, 1.0), pi(prec, 0.0);
      for (std::size_t n = 0; n < q; ++n) {
        mpfr_mul(tr.get(), pr.get(), (*seeds)[n].get(), MPFR_RNDN);
        mpfr_mul(ti.get(), pi.get(), (*seeds)[n].get(), MPFR_RNDN);
        ring_r.emplace_back(tr);
        ring_i.emplace_back(ti);
        if (settled(n)) break;
        mpfr_mul_d(tmp.get(), pi.get(), zi, MPFR_RNDN);
        mpfr_mul_d(pi.get(), pi.get(), zr, MPFR_RNDN);
        mpfr_mul_d(tr.get(), pr.get(), zi, MPFR_RNDN);
        mpfr_add(pi.get(), pi.get(), tr.get(), MPFR_RNDN);
        mpfr_mul_d(pr.get(), pr.get(), zr, MPFR_RNDN);
        mpfr_sub(pr.get(), pr.get(), tmp.get(), MPFR_RNDN);
      }
      const std::uint64_t Qw = static_cast<std::uint64_t>(im.Q);
      for (std::size_t n = q; small < 3 && n < acc_.max_series_terms; ++n) {
        const std::size_t slot = n % q;
        mpfr_ptr xr = ring_r[slot].get();
        mpfr_ptr xi = ring_i[slot].get();
        // (xr + i xi) *= (Zr + i Zi)
        mpfr_mul(tmp.get(), xi, Zi.get(), MPFR_RNDN);
        mpfr_mul(xi, xi, Zr.get(), MPFR_RNDN);
        mpfr_mul(tr.get(), xr, Zi.get(), MPFR_RNDN);
        mpfr_add(xi, xi, tr.get(), MPFR_RNDN);
        mpfr_mul(xr, xr, Zr.get(), MPFR_RNDN);
        mpfr_sub(xr, xr, tmp.get(), MPFR_RNDN);
        // Rational Gamma ratio, batched into 64-bit words.
        const std::uint64_t base = static_cast<std::uint64_t>(im.P) * (n - q) + static_cast<std::uint64_t>(im.S);
        std::uint64_t num = 1, den = 1;
        auto flush = [&] {
          mpfr_mul_ui(xr, xr, num, MPFR_RNDN);
          mpfr_mul_ui(xi, xi, num, MPFR_RNDN);
          mpfr_div_ui(xr, xr, den, MPFR_RNDN);
          mpfr_div_ui(xi, xi, den, MPFR_RNDN);
          num = den = 1;
        };
        for (long j = 0; j < im.p; ++j) {
          const std::uint64_t f = base + static_cast<std::uint64_t>(j) * Qw;
          if (den > (std::uint64_t{1} << 62) / f || num > (std::uint64_t{1} << 62) / Qw) flush();
          den *= f;
          num *= Qw;
        }
        flush();
        mpfr_set(tr.get(), xr, MPFR_RNDN);
        mpfr_set(ti.get(), xi, MPFR_RNDN);
        settled(n);
      }
    } else {
      // General alpha or sigma <= 0: coefficients straight from MPFR Gamma.
      MpReal pr(prec, 1.0), pi(prec, 0.0), c(prec), v(prec + 32);
      for (std::size_t n = 0; small < 3 && n < acc_.max_series_terms; ++n) {
        mpfr_set_d(v.get(), alpha, MPFR_RNDN);
        mpfr_mul_ui(v.get(), v.get(), static_cast<unsigned long>(n), MPFR_RNDN);
        mpfr_add_d(v.get(), v.get(), sigma, MPFR_RNDN);
        mp_gamma_reciprocal(c.get(), v.get());
        mpfr_mul(tr.get(), pr.get(), c.get(), MPFR_RNDN);
        mpfr_mul(ti.get(), pi.get(), c.get(), MPFR_RNDN);
        if (settled(n)) break;
        mpfr_mul_d(tmp.get(), pi.get(), zi, MPFR_RNDN);
        mpfr_mul_d(pi.get(), pi.get(), zr, MPFR_RNDN);
        mpfr_mul_d(c.get(), pr.get(), zi, MPFR_RNDN);
        mpfr_add(pi.get(), pi.get(), c.get(), MPFR_RNDN);
        mpfr_mul_d(pr.get(), pr.get(), zr, MPFR_RNDN);
        mpfr_sub(pr.get(), pr.get(), tmp.get(), MPFR_RNDN);
      }
    }
    if (small < 3)
      throw NonConvergence("Mittag-Leffler series did not settle within " + std::to_string(acc_.max_series_terms) +
                           " terms");
    out = mp_to_scaled(sr.get(), si.get());
  }

  if (z.imag() == 0.0) out.mantissa.imag(0.0);
  return flip ? out.conj() : out;
}

ScaledComplex MittagLeffler::asymptotic_scaled(Complex z_in) const {
  const Impl& im = *impl_;
  z_in = canonical(z_in);
  const bool flip = z_in.imag() < 0.0;
  const Complex z = flip ? std::conj(z_in) : z_in;
  const double alpha = im.alpha, sigma = im.sigma;
  if (z == Complex{}) throw DomainError("asymptotic expansion undefined at z = 0");

  const double lr = std::log(std::abs(z));
  const double th = std::arg(z);

  ScaledComplex out;
  if (th <= kPi * alpha) {
    const double wr = std::pow(std::abs(z), 1.0 / alpha);
    const double ls = wr * std::cos(th / alpha) + (1.0 - sigma) / alpha * lr - std::log(alpha);
    const double ph = wr * std::sin(th / alpha) + (1.0 - sigma) / alpha * th;
    out = ScaledComplex{std::polar(1.0, ph), ls};
    if (std::abs(ls) < detail::kSafeLog) out = ScaledComplex::from(std::polar(std::exp(ls), ph));
  }

  if (!im.tail_all_zero) {
    const Complex zinv = 1.0 / z;
    Complex pw = 1.0, tail{};
    double prev_env = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= acc_.p_terms; ++k) {
      pw *= zinv;
      const double env = im.tail_env[k] - k * lr;
      if (k > 1 && env > prev_env) break;
      prev_env = env;
      tail -= pw * im.tail_coef[k];
      if (tail != Complex{} && env < std::log(std::abs(tail)) - 42.0) break;
    }
    out = out + ScaledComplex::from(tail);
  }

  if (z.imag() == 0.0) out.mantissa.imag(0.0);
  return flip ? out.conj() : out;
}

ScaledComplex MittagLeffler::scaled(Complex z) const {
  return std::abs(z) < radius_ ? series_scaled(z) : asymptotic_scaled(z);
}

Complex MittagLeffler::operator()(Complex z) const {
  const ScaledComplex s = scaled(z);
  if (!s.representable())
    throw OverflowGuard("|E_{" + std::to_string(params_.alpha) + "," + std::to_string(params_.sigma) +
                        "}(z)| exceeds the double range (ln|E| = " + std::to_string(s.log_abs()) + ")");
  return s.value();
}

// ---------------------------------------------------------------------------

Complex ml_series(const MLParams& params, Complex z, const MLAccuracy& acc) {
  const ScaledComplex s = MittagLeffler(params, acc).series_scaled(z);
  return s.value();
}

namespace {

Complex algebraic_tail(const MLParams& params, Complex z, int p) {
  if (p < 0) throw DomainError("asymptotic order must be nonnegative");
  const Complex zinv = 1.0 / z;
  Complex pw = 1.0, tail{};
  for (int k = 1; k <= p; ++k) {
    pw *= zinv;
    tail -= pw * gamma_reciprocal(params.sigma - params.alpha * k);
  }
  return tail;
}

}  // namespace

Complex ml_asymptotic_sector(const MLParams& params, Complex z, int p) {
  params.validate();
  z = canonical(z);
  if (z == Complex{}) throw DomainError("asymptotic expansion undefined at z = 0");
  const double mu = sector_angle(params.alpha);
  if (std::abs(std::arg(z)) > mu)
    throw DomainError("arg z = " + std::to_string(std::arg(z)) + " lies outside the sector |arg z| <= " +
                      std::to_string(mu));
  const Complex w = std::pow(z, 1.0 / params.alpha);
  const Complex pre = std::pow(z, (1.0 - params.sigma) / params.alpha) / params.alpha;
  const Complex lead = pre * std::exp(w);
  if (!std::isfinite(lead.real()) || !std::isfinite(lead.imag()))
    throw OverflowGuard("exponential term of the sector expansion overflows");
  Complex out = lead + algebraic_tail(params, z, p);
  if (z.imag() == 0.0) out.imag(0.0);
  return out;
}

Complex ml_asymptotic_outer(const MLParams& params, Complex z, int p) {
  params.validate();
  z = canonical(z);
  if (z == Complex{}) throw DomainError("asymptotic expansion undefined at z = 0");
  const double mu = sector_angle(params.alpha);
  if (std::abs(std::arg(z)) <= mu)
    throw DomainError("arg z = " + std::to_string(std::arg(z)) + " lies inside the exponential sector");
  Complex out = algebraic_tail(params, z, p);
  if (z.imag() == 0.0) out.imag(0.0);
  return out;
}

Complex ml_eval(const MLParams& params, Complex z, const MLAccuracy& acc) { return MittagLeffler(params, acc)(z); }

Complex ml_deriv(double alpha, Complex z, const MLAccuracy& acc) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("ml_deriv needs alpha in (0,1]");
  return MittagLeffler({alpha, alpha}, acc)(z) / alpha;
}

}  // namespace tfse
