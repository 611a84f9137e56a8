#include "tfse/msd.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "tfse/errors.hpp"
#include "tfse/parallel.hpp"
#include "transport_detail.hpp"

namespace tfse {

namespace {

constexpr double kPi = std::numbers::pi;

double finite_or_throw(const ScaledReal& v, const char* what, double t) {
  if (!v.representable())
    throw OverflowGuard(std::string("MSD term ") + what + " at t = " + std::to_string(t) + " exceeds the double range",
                        t);
  return v.value();
}

// Pointwise terms shared by the table-based and the node-solved evaluations.
struct PointTerms {
  ScaledReal a, b, c, f;
};

PointTerms point_terms(const detail::MLPair& ml, const FractionalOrder& order, double t, double lam, double dlam,
                       double phi_cap, double ch, double dch) {
  const Complex rot = std::polar(1.0, -kPi * order.beta / 2.0);
  const double ta = std::pow(t, order.alpha);
  const Complex z = rot * (ta * lam);
  const ScaledComplex Ea = ml.ea.scaled(z).balanced();
  const ScaledComplex E1 = ml.e1.scaled(z).balanced();
  const double ea2 = std::norm(Ea.mantissa), e12 = std::norm(E1.mantissa);
  PointTerms p;
  p.a = {ea2 * ta * ta * dlam * dlam * ch * ch, 2.0 * Ea.log_scale};
  p.b = {e12 * dch * dch, 2.0 * E1.log_scale};
  p.c = {e12 * ch * ch * phi_cap, 2.0 * E1.log_scale};
  const Complex cross = rot * Ea.mantissa * std::conj(E1.mantissa);
  p.f = {2.0 * ta * cross.real() * dlam * dch * ch, Ea.log_scale + E1.log_scale};
  return p;
}

}  // namespace

MSDBreakdown MSDBreakdown::scaled(double w) const {
  if (!(w > 0.0)) throw DomainError("MSD normalization weight must be positive");
  return {A / w, B / w, C / w, F / w, total / w};
}

MSDBreakdown msd_direct(const FractionalOrder& order, const EdgeSystem& sys, double t) {
  order.validate();
  if (!(t > 0.0)) throw DomainError("msd_direct needs t > 0");
  const detail::MLPair ml(order.alpha);
  const auto& prof = sys.profile();
  auto f = [&](double k, std::vector<ScaledReal>& out) {
    const SpectralSample s = sys.table()(k);
    const PointTerms p =
        point_terms(ml, order, t, s.lambda1, s.dlambda1, s.phi_cap, chi(prof, k), chi_deriv(prof, k));
    out[0] = p.a;
    out[1] = p.b;
    out[2] = p.c;
    out[3] = p.f;
  };
  const auto r = sys.integrate(4, f, detail::exp_phase_range(order, sys, t));
  MSDBreakdown m;
  m.A = finite_or_throw(r.values[0], "A", t);
  m.B = finite_or_throw(r.values[1], "B", t);
  m.C = finite_or_throw(r.values[2], "C", t);
  m.F = finite_or_throw(r.values[3], "F", t);
  m.total = m.A + m.B + m.C + m.F;
  return m;
}

double initial_weight(const EdgeSystem& sys) {
  const auto& prof = sys.profile();
  return sys.integrate_real([&](double k) {
    const double c = chi(prof, k);
    return c * c;
  });
}

double MSDIdentity::rel_gap() const {
  return std::abs(assembled - terms.total) / std::max(std::abs(assembled), std::abs(terms.total));
}

MSDIdentity msd_identity(const FractionalOrder& order, const EdgeSystem& sys, double t, std::size_t n_nodes) {
  order.validate();
  if (!(t > 0.0)) throw DomainError("msd_identity needs t > 0");
  const auto& prof = sys.profile();
  const QuadratureRule rule = QuadratureRule::gauss_legendre(prof.k_lo, prof.k_hi, n_nodes);
  const detail::MLPair ml(order.alpha);
  const HalfLineGrid& grid = sys.grid();
  const double h = grid.h();
  const Complex rot = std::polar(1.0, -kPi * order.beta / 2.0);
  const double ta = std::pow(t, order.alpha);

  struct NodeValues {
    double a = 0, b = 0, c = 0, f = 0, assembled = 0;
  };
  std::vector<NodeValues> vals(rule.n_nodes());
  parallel_for(rule.n_nodes(), [&](std::size_t i) {
    const double k = rule.nodes[i];
    const double ch = chi(prof, k), dch = chi_deriv(prof, k);
    const GroundState g = solve_ground_state(sys.model(), k, grid);
    const PhiDerivative d = dk_phi1(sys.model(), k, grid);
    const PointTerms p = point_terms(ml, order, t, g.lambda1, g.dlambda1, d.phi_cap, ch, dch);
    NodeValues& v = vals[i];
    v.a = p.a.value();
    v.b = p.b.value();
    v.c = p.c.value();
    v.f = p.f.value();
    const Complex z = rot * (ta * g.lambda1);
    const Complex Ea = ml.ea(z), E1 = ml.e1(z);
    // d_k u-hat = E_{a,a} (-i)^b t^a lambda' chi phi + E_{a,1} chi' phi + E_{a,1} chi d_k phi
    const Complex c1 = Ea * rot * ta * g.dlambda1 * ch;
    const Complex c2 = E1 * dch;
    const Complex c3 = E1 * ch;
    double s = 0.0;
    for (std::size_t j = 0; j < g.phi1.size(); ++j) s += std::norm((c1 + c2) * g.phi1[j] + c3 * d.dphi[j]);
    v.assembled = h * s;
  });
  MSDIdentity out;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    const double w = rule.weights[i];
    out.terms.A += w * vals[i].a;
    out.terms.B += w * vals[i].b;
    out.terms.C += w * vals[i].c;
    out.terms.F += w * vals[i].f;
    out.assembled += w * vals[i].assembled;
  }
  out.terms.total = out.terms.A + out.terms.B + out.terms.C + out.terms.F;
  return out;
}

double msd_naber_leading(double alpha, const EdgeSystem& sys) {
  FractionalOrder{alpha, alpha}.validate();
  const auto& prof = sys.profile();
  return sys.integrate_real([&](double k) {
           const SpectralSample s = sys.table()(k);
           const double c = chi(prof, k);
           return std::pow(s.lambda1, 2.0 * (1.0 - alpha) / alpha) * s.dlambda1 * s.dlambda1 * c * c;
         }) /
         (alpha * alpha);
}

double msd_case2_leading(const FractionalOrder& order, const EdgeSystem& sys) {
  order.validate();
  if (!(order.alpha < order.beta)) throw DomainError("the t^{-2 alpha} coefficient needs alpha < beta");
  const double a = order.alpha;
  const double g0 = gamma_reciprocal(-a), g1 = gamma_reciprocal(1.0 - a);
  const auto& prof = sys.profile();
  return sys.integrate_real([&](double k) {
    const SpectralSample s = sys.table()(k);
    const double c = chi(prof, k), dc = chi_deriv(prof, k);
    const double l2 = s.lambda1 * s.lambda1;
    return g0 * g0 * s.dlambda1 * s.dlambda1 * c * c / (l2 * l2) + g1 * g1 * (dc * dc + c * c * s.phi_cap) / l2;
  });
}

MSDTrace msd_trace(const FractionalOrder& order, const EdgeSystem& sys, const std::vector<double>& times) {
  MSDTrace tr;
  tr.times = times;
  tr.rows.resize(times.size());
  parallel_for(times.size(), [&](std::size_t i) { tr.rows[i] = msd_direct(order, sys, times[i]); });
  return tr;
}

}  // namespace tfse
