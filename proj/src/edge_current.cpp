#include "tfse/edge_current.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "tfse/errors.hpp"
#include "tfse/mittag_leffler.hpp"
#include "tfse/parallel.hpp"
#include "transport_detail.hpp"

namespace tfse {

namespace {
constexpr double kPi = std::numbers::pi;
}

void FractionalOrder::validate() const {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("order.alpha must lie in (0,1]");
  if (!(beta > 0.0 && beta <= 1.0)) throw DomainError("order.beta must lie in (0,1]");
}

Regime FractionalOrder::regime() const {
  if (beta < alpha) return Regime::SubCritical;
  if (beta == alpha) return Regime::Critical;
  return Regime::SuperCritical;
}

double RegimeAngles::gamma(double lambda) const { return std::pow(lambda, 1.0 / alpha) * std::sin(theta); }

RegimeAngles regime_angles(const FractionalOrder& order) {
  order.validate();
  return {order.alpha, kPi * order.beta / (2.0 * order.alpha)};
}

std::string RegimeClass::name() const {
  switch (label) {
    case TransportLabel::ExponentialGrowth:
      return "ExponentialGrowth";
    case TransportLabel::AsymptoticallyConstant:
      return "AsymptoticallyConstant";
    case TransportLabel::PowerLawDecay: {
      std::ostringstream os;
      os << "PowerLawDecay(" << exponent << ")";
      return os.str();
    }
  }
  return "?";
}

RegimeClass classify_regime(const FractionalOrder& order) {
  switch (order.regime()) {
    case Regime::SubCritical:
      return {TransportLabel::ExponentialGrowth, 0.0};
    case Regime::Critical:
      return {TransportLabel::AsymptoticallyConstant, 0.0};
    case Regime::SuperCritical:
      break;
  }
  return {TransportLabel::PowerLawDecay, -(1.0 + 3.0 * order.alpha)};
}

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::SubCritical:
      return "SubCritical";
    case Regime::Critical:
      return "Critical";
    case Regime::SuperCritical:
      return "SuperCritical";
  }
  return "?";
}

const char* method_name(Method m) {
  switch (m) {
    case Method::Direct:
      return "Direct";
    case Method::AsymptoticCase1:
      return "AsymptoticCase1";
    case Method::AsymptoticCase2:
      return "AsymptoticCase2";
    case Method::Naber:
      return "Naber";
    case Method::AYH:
      return "AYH";
    case Method::Schrodinger:
      return "Schrodinger";
    case Method::BetaLine:
      return "BetaLine";
  }
  return "?";
}

void QuadConfig::validate() const {
  if (n_nodes < 32) throw DomainError("quad.n_nodes must be at least 32");
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw DomainError("quadrature rel_tol must lie in (0,1)");
  if (max_nodes < 2 * n_nodes) throw DomainError("quadrature max_nodes must allow one doubling");
}

namespace {

SpectralTable make_table(const ModelParams& model, const ChiProfile& profile, HalfLineGrid grid, int points) {
  model.validate();
  profile.validate();
  if (!(grid.L > 0.0))
    grid = HalfLineGrid::automatic(model, std::max(std::abs(profile.k_lo), std::abs(profile.k_hi)), grid.n);
  return SpectralTable(model, profile.k_lo, profile.k_hi, grid, points);
}

}  // namespace

EdgeSystem::EdgeSystem(ModelParams model, ChiProfile profile, HalfLineGrid grid, QuadConfig quad, int table_points)
    : model_(model), profile_(profile), quad_(quad), table_(make_table(model, profile, grid, table_points)) {
  quad_.validate();
  support_ = validate_support(table_, profile_);
}

QuadratureResult EdgeSystem::integrate(std::size_t m, const std::function<void(double, std::vector<ScaledReal>&)>& f,
                                       double phase_range) const {
  // Roughly one node per radian of phase keeps 16-point panels well inside
  // their resolving power; doubling then confirms.
  const double extra = std::min(std::max(0.0, phase_range), static_cast<double>(quad_.max_nodes / 4));
  const std::size_t n0 = quad_.n_nodes + static_cast<std::size_t>(std::ceil(extra));
  return integrate_doubling(profile_.k_lo, profile_.k_hi, n0, m, f, quad_.rel_tol, quad_.max_nodes);
}

double EdgeSystem::integrate_real(const std::function<double(double)>& f, double phase_range) const {
  return integrate(
             1, [&](double k, std::vector<ScaledReal>& out) { out[0] = ScaledReal::from(f(k)); }, phase_range)
      .values[0]
      .value();
}

void TransportTrace::validate() const {
  if (times.size() != values.size()) throw DomainError("trace needs one value per time");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] > 0.0)) throw DomainError("trace times must be positive");
    if (i > 0 && !(times[i] > times[i - 1])) throw DomainError("trace times must be strictly increasing");
  }
}

namespace detail {

MLPair::MLPair(double alpha) : e1({alpha, 1.0}), ea({alpha, alpha}) {}

double exp_phase_range(const FractionalOrder& order, const EdgeSystem& sys, double t) {
  // The exponential part of E is present for |arg z| = pi beta/2 <= pi alpha.
  if (order.beta > 2.0 * order.alpha) return 0.0;
  const double theta = kPi * order.beta / (2.0 * order.alpha);
  const double a = 1.0 / order.alpha;
  return t * std::abs(std::sin(theta)) * (std::pow(sys.lambda_max(), a) - std::pow(sys.lambda_min(), a));
}

}  // namespace detail

namespace {

ScaledReal direct_with(const detail::MLPair& ml, const FractionalOrder& order, const EdgeSystem& sys, double t,
                       bool reflect) {
  order.validate();
  if (!(t > 0.0)) throw DomainError("current_direct needs t > 0");
  const double a = order.alpha, b = order.beta;
  const Complex rot = std::polar(1.0, -kPi * b / 2.0);           // (-i)^b
  const Complex pre = std::polar(1.0, -kPi * (1.0 + b) / 2.0);  // (-i)^(1+b)
  const double ta = std::pow(t, a);
  const double front = 2.0 * std::pow(t, a - 1.0);
  const auto& tab = sys.table();
  const auto& prof = sys.profile();
  auto f = [&](double k, std::vector<ScaledReal>& out) {
    const double lam = tab(k).lambda1;
    Complex z = rot * (ta * lam);
    ScaledComplex Ea, E1;
    if (reflect) {
      z = std::conj(z);
      Ea = ml.ea.scaled(z).conj();
      E1 = ml.e1.scaled(z).conj();
    } else {
      Ea = ml.ea.scaled(z);
      E1 = ml.e1.scaled(z);
    }
    const ScaledComplex p = Ea * E1.conj() * pre;
    const double w = front * lam * chi(prof, k) * chi_deriv(prof, k);
    out[0] = ScaledReal{p.mantissa.real() * w, p.log_scale};
  };
  return sys.integrate(1, f, detail::exp_phase_range(order, sys, t)).values[0];
}

double checked_value(const ScaledReal& v, const char* what, double t) {
  if (!v.representable())
    throw OverflowGuard(std::string(what) + " at t = " + std::to_string(t) +
                            " exceeds the double range (ln|J| = " + std::to_string(v.log_abs()) + ")",
                        t);
  return v.value();
}

}  // namespace

ScaledReal current_direct_scaled(const FractionalOrder& order, const EdgeSystem& sys, double t, bool reflect) {
  return direct_with(detail::MLPair(order.alpha), order, sys, t, reflect);
}

double current_direct(const FractionalOrder& order, const EdgeSystem& sys, double t) {
  return checked_value(current_direct_scaled(order, sys, t), "edge current", t);
}

double current_schrodinger(const EdgeSystem& sys) {
  const auto& prof = sys.profile();
  return sys.integrate_real([&](double k) {
    const double c = chi(prof, k);
    return sys.table()(k).dlambda1 * c * c;
  });
}

double current_schrodinger_by_parts(const EdgeSystem& sys) {
  const auto& prof = sys.profile();
  return -2.0 * sys.integrate_real([&](double k) { return sys.table()(k).lambda1 * chi(prof, k) * chi_deriv(prof, k); });
}

ScaledReal current_beta_line_scaled(double beta, const EdgeSystem& sys, double t) {
  if (!(beta > 0.0 && beta <= 1.0)) throw DomainError("beta must lie in (0,1]");
  if (!(t >= 0.0)) throw DomainError("beta-line current needs t >= 0");
  const double c = std::cos(kPi * beta / 2.0);
  const double front = 2.0 * std::cos(kPi * (1.0 + beta) / 2.0);
  const auto& prof = sys.profile();
  auto f = [&](double k, std::vector<ScaledReal>& out) {
    const double lam = sys.table()(k).lambda1;
    out[0] = ScaledReal{front * lam * chi(prof, k) * chi_deriv(prof, k), 2.0 * t * lam * c};
  };
  return sys.integrate(1, f).values[0];
}

double current_beta_line(double beta, const EdgeSystem& sys, double t) {
  const double rate = 2.0 * sys.lambda_max() * std::cos(kPi * beta / 2.0);
  if (rate * t > 700.0)
    throw OverflowGuard("beta-line exponent " + std::to_string(rate * t) + " exceeds 700; values are not representable for t > " +
                            std::to_string(700.0 / rate),
                        700.0 / rate);
  return current_beta_line_scaled(beta, sys, t).value();
}

double case1_leading_coefficient(const FractionalOrder& order, const EdgeSystem& sys) {
  order.validate();
  const double a = order.alpha, th = kPi * order.beta / (2.0 * a);
  const auto& prof = sys.profile();
  const double I = sys.integrate_real(
      [&](double k) { return std::pow(sys.table()(k).lambda1, 1.0 / a) * chi(prof, k) * chi_deriv(prof, k); });
  return std::cos(th * (1.0 - a) + kPi * (1.0 + order.beta) / 2.0) * I;
}

ScaledReal current_asymptotic_case1_scaled(const FractionalOrder& order, const EdgeSystem& sys, double t) {
  order.validate();
  if (order.beta > order.alpha) throw DomainError("the Case-1 formula needs beta <= alpha");
  const double a = order.alpha, b = order.beta;
  const double th = kPi * b / (2.0 * a);
  const double ct = std::cos(th);
  const double c1 = (2.0 / (a * a)) * std::cos(th * (1.0 - a) + kPi * (1.0 + b) / 2.0);
  const double c2 = -(2.0 * std::pow(t, -a) / a) * gamma_reciprocal(1.0 - a);
  const auto& prof = sys.profile();
  auto f = [&](double k, std::vector<ScaledReal>& out) {
    const double lam = sys.table()(k).lambda1;
    const double la = std::pow(lam, 1.0 / a);
    const double cc = chi(prof, k) * chi_deriv(prof, k);
    out[0] = ScaledReal{c1 * la * cc, 2.0 * t * la * ct};
    out[1] = ScaledReal{c2 * std::cos(t * la * std::sin(th) + th + kPi * (1.0 + b) / 2.0) * la / lam * cc, t * la * ct};
  };
  const double phase = t * std::sin(th) * (std::pow(sys.lambda_max(), 1.0 / a) - std::pow(sys.lambda_min(), 1.0 / a));
  const auto r = sys.integrate(2, f, phase);
  ScaledSum s;
  s.add(r.values[0]);
  s.add(r.values[1]);
  return s.result();
}

double current_asymptotic_case1(const FractionalOrder& order, const EdgeSystem& sys, double t) {
  return checked_value(current_asymptotic_case1_scaled(order, sys, t), "Case-1 current", t);
}

double case2_bracket(double alpha) {
  return gamma_reciprocal(1.0 - 2.0 * alpha) * gamma_reciprocal(-alpha) -
         gamma_reciprocal(1.0 - alpha) * gamma_reciprocal(-2.0 * alpha);
}

namespace {

double inverse_cube_moment(const EdgeSystem& sys) {
  const auto& prof = sys.profile();
  return sys.integrate_real([&](double k) {
    const double lam = sys.table()(k).lambda1;
    return chi(prof, k) * chi_deriv(prof, k) / (lam * lam * lam);
  });
}

}  // namespace

double current_asymptotic_case2(const FractionalOrder& order, const EdgeSystem& sys, double t) {
  order.validate();
  if (!(order.alpha < order.beta)) throw DomainError("the Case-2 formula needs alpha < beta");
  const double a = order.alpha;
  return (2.0 / std::pow(t, 1.0 + 3.0 * a)) * inverse_cube_moment(sys) * std::cos((order.beta + 1.0) * kPi / 2.0) *
         case2_bracket(a);
}

double naber_constant(double alpha, const EdgeSystem& sys) {
  const auto& prof = sys.profile();
  return sys.integrate_real([&](double k) {
           const SpectralSample s = sys.table()(k);
           const double c = chi(prof, k);
           return (1.0 / alpha) * std::pow(s.lambda1, 1.0 / alpha - 1.0) * s.dlambda1 * c * c;
         }) /
         (alpha * alpha);
}

double naber_constant_by_parts(double alpha, const EdgeSystem& sys) {
  const auto& prof = sys.profile();
  return -(2.0 / (alpha * alpha)) * sys.integrate_real([&](double k) {
    return std::pow(sys.table()(k).lambda1, 1.0 / alpha) * chi(prof, k) * chi_deriv(prof, k);
  });
}

double current_naber(double alpha, const EdgeSystem& sys, double t) {
  FractionalOrder{alpha, alpha}.validate();
  const auto& prof = sys.profile();
  const double c2 = (2.0 * std::pow(t, -alpha) / alpha) * gamma_reciprocal(1.0 - alpha);
  double corr = 0.0;
  if (c2 != 0.0) {
    const double phase = t * (std::pow(sys.lambda_max(), 1.0 / alpha) - std::pow(sys.lambda_min(), 1.0 / alpha));
    corr = c2 * sys.integrate_real(
                    [&](double k) {
                      const double lam = sys.table()(k).lambda1;
                      const double la = std::pow(lam, 1.0 / alpha);
                      return la / lam * chi(prof, k) * chi_deriv(prof, k) * std::cos(kPi * alpha / 2.0 + t * la);
                    },
                    phase);
  }
  return naber_constant(alpha, sys) + corr;
}

double current_ayh(double alpha, const EdgeSystem& sys, double t) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("the AYH formula needs alpha in (0,1)");
  return current_asymptotic_case2({alpha, 1.0}, sys, t);
}

double ayh_coefficient(double alpha, const EdgeSystem& sys) {
  return -2.0 * inverse_cube_moment(sys) * case2_bracket(alpha);
}

TransportTrace current_trace(const FractionalOrder& order, const EdgeSystem& sys, const std::vector<double>& times,
                             Method method) {
  order.validate();
  TransportTrace tr;
  tr.times = times;
  tr.method = method;
  tr.values.resize(times.size());
  const detail::MLPair ml(order.alpha);
  // Time-independent pieces once, outside the loop.
  double fixed = 0.0;
  if (method == Method::Schrodinger) fixed = current_schrodinger(sys);
  parallel_for(times.size(), [&](std::size_t i) {
    const double t = times[i];
    switch (method) {
      case Method::Direct:
        tr.values[i] = direct_with(ml, order, sys, t, false);
        break;
      case Method::AsymptoticCase1:
        tr.values[i] = current_asymptotic_case1_scaled(order, sys, t);
        break;
      case Method::AsymptoticCase2:
        tr.values[i] = ScaledReal::from(current_asymptotic_case2(order, sys, t));
        break;
      case Method::Naber:
        tr.values[i] = ScaledReal::from(current_naber(order.alpha, sys, t));
        break;
      case Method::AYH:
        tr.values[i] = ScaledReal::from(current_ayh(order.alpha, sys, t));
        break;
      case Method::Schrodinger:
        tr.values[i] = ScaledReal::from(fixed);
        break;
      case Method::BetaLine:
        tr.values[i] = current_beta_line_scaled(order.beta, sys, t);
        break;
    }
  });
  tr.validate();
  return tr;
}

FitResult fit_exponent(const TransportTrace& trace, double t_lo, double t_hi, FitMode mode) {
  std::vector<double> xs, ys;
  int sign = 0;
  for (std::size_t i = 0; i < trace.times.size(); ++i) {
    const double t = trace.times[i];
    if (t < t_lo || t > t_hi) continue;
    const ScaledReal& v = trace.values[i];
    const int s = v.sign();
    if (s == 0 || (sign != 0 && s != sign))
      throw SignChange("values change sign inside the fit window near t = " + std::to_string(t));
    sign = s;
    xs.push_back(mode == FitMode::LogLog ? std::log(t) : t);
    ys.push_back(v.log_abs());
  }
  if (xs.size() < 8)
    throw DomainError("fit window holds " + std::to_string(xs.size()) + " samples; at least 8 are needed");
  const double n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  FitResult r;
  r.slope = sxy / sxx;
  r.intercept = my - r.slope * mx;
  r.samples = xs.size();
  for (std::size_t i = 0; i < xs.size(); ++i)
    r.max_rel_residual = std::max(r.max_rel_residual, std::abs(std::expm1(ys[i] - (r.intercept + r.slope * xs[i]))));
  return r;
}

std::vector<double> log_times(double t_min, double t_max, std::size_t n) {
  if (!(t_min > 0.0 && t_max > t_min) || n < 2) throw DomainError("log_times needs 0 < t_min < t_max and n >= 2");
  std::vector<double> t(n);
  // Base 10 so that whole decades come out exact.
  const double a = std::log10(t_min), b = std::log10(t_max);
  for (std::size_t i = 0; i < n; ++i)
    t[i] = std::pow(10.0, a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
  t.front() = t_min;
  t.back() = t_max;
  return t;
}

}  // namespace tfse
