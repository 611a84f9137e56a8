#include "tfse/fiber_spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "tfse/errors.hpp"
#include "tfse/parallel.hpp"

namespace tfse {

void ModelParams::validate() const {
  if (!(b > 0.0) || !std::isfinite(b)) throw DomainError("model.b must be positive, got " + std::to_string(b));
}

void HalfLineGrid::validate() const {
  if (!(L > 0.0) || !std::isfinite(L)) throw GridError("grid.L must be positive, got " + std::to_string(L));
  if (n < 200) throw GridError("grid.n must be at least 200, got " + std::to_string(n));
}

HalfLineGrid HalfLineGrid::automatic(const ModelParams& model, double k_abs_max, int n) {
  model.validate();
  return {12.0 / std::sqrt(model.b) + std::abs(k_abs_max) / model.b, n};
}

namespace {

void tri_apply(const std::vector<double>& d, const std::vector<double>& e, const std::vector<double>& v,
               std::vector<double>& out) {
  const std::size_t n = d.size();
  out.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = d[i] * v[i];
    if (i > 0) s += e[i - 1] * v[i - 1];
    if (i + 1 < n) s += e[i] * v[i + 1];
    out[i] = s;
  }
}

// Tridiagonal solve with partial pivoting (the LAPACK gtsv scheme). Zero
// pivots are nudged, which is what inverse iteration wants anyway.
void tri_solve(std::vector<double> dl, std::vector<double> d, std::vector<double> du, std::vector<double>& b) {
  const std::size_t n = d.size();
  double scale = 0.0;
  for (double x : d) scale = std::max(scale, std::abs(x));
  const double tiny = 1e-300 + scale * 1e-18;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::abs(d[i]) >= std::abs(dl[i])) {
      if (d[i] == 0.0) d[i] = tiny;
      const double f = dl[i] / d[i];
      d[i + 1] -= f * du[i];
      b[i + 1] -= f * b[i];
      dl[i] = 0.0;
    } else {
      const double f = d[i] / dl[i];
      d[i] = dl[i];
      const double tmp = d[i + 1];
      d[i + 1] = du[i] - f * tmp;
      if (i + 2 < n) {
        dl[i] = du[i + 1];
        du[i + 1] = -f * dl[i];
      } else {
        dl[i] = 0.0;
      }
      du[i] = tmp;
      const double tb = b[i];
      b[i] = b[i + 1];
      b[i + 1] = tb - f * b[i + 1];
    }
  }
  if (d[n - 1] == 0.0) d[n - 1] = tiny;
  b[n - 1] /= d[n - 1];
  if (n > 1) b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
  for (std::size_t i = n - 2; i-- > 0;) b[i] = (b[i] - du[i] * b[i + 1] - dl[i] * b[i + 2]) / d[i];
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

}  // namespace

std::vector<double> FiberOperator::apply_k(const std::vector<double>& v) const {
  std::vector<double> out;
  tri_apply(k_diag, k_off, v, out);
  return out;
}

std::vector<double> FiberOperator::apply_m(const std::vector<double>& v) const {
  std::vector<double> out;
  tri_apply(m_diag, m_off, v, out);
  return out;
}

int FiberOperator::count_below(double s) const {
  const std::size_t n = k_diag.size();
  int neg = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    double d = k_diag[i] - s * m_diag[i];
    if (i > 0) {
      const double e = k_off[i - 1] - s * m_off[i - 1];
      d -= e * e / q;
    }
    if (d == 0.0) d = -1e-300;
    if (d < 0.0) ++neg;
    q = d;
  }
  return neg;
}

FiberOperator build_fiber_operator(const ModelParams& model, double k, const HalfLineGrid& grid) {
  model.validate();
  grid.validate();
  if (!std::isfinite(k)) throw DomainError("fiber momentum k must be finite");
  const double b = model.b;
  const double vL = (b * grid.L - k) * (b * grid.L - k);
  const double need = 10.0 * (3.0 * b + std::min(k, 0.0) * std::min(k, 0.0));
  if (vL < need)
    throw GridError("half-line truncation L = " + std::to_string(grid.L) + " too short for k = " + std::to_string(k) +
                    ": V_k(L) = " + std::to_string(vL) + " < " + std::to_string(need));

  const int n = grid.n;
  const double h = grid.h();
  FiberOperator op{model, k, grid, {}, {}, {}, {}, {}, {}};
  op.k_diag.assign(n, 2.0 / h);
  op.k_off.assign(n - 1, -1.0 / h);
  op.m_diag.assign(n, 2.0 * h / 3.0);
  op.m_off.assign(n - 1, h / 6.0);
  op.dk_diag.assign(n, 0.0);
  op.dk_off.assign(n - 1, 0.0);

  // Three-point Gauss on each cell is exact for (quadratic V) x (hat)^2.
  const double g = std::sqrt(0.6) / 2.0;
  const double s_pts[3] = {0.5 - g, 0.5, 0.5 + g};
  const double w_pts[3] = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};
  for (int c = 0; c <= n; ++c) {
    double v00 = 0, v01 = 0, v11 = 0, d00 = 0, d01 = 0, d11 = 0;
    for (int q = 0; q < 3; ++q) {
      const double s = s_pts[q];
      const double x = (c + s) * h;
      const double r = b * x - k;
      const double V = r * r, dV = -2.0 * r;
      const double n0 = 1.0 - s, n1 = s, w = w_pts[q] * h;
      v00 += w * V * n0 * n0;
      v01 += w * V * n0 * n1;
      v11 += w * V * n1 * n1;
      d00 += w * dV * n0 * n0;
      d01 += w * dV * n0 * n1;
      d11 += w * dV * n1 * n1;
    }
    // Cell c joins nodes c and c+1; interior node j sits at index j-1.
    if (c >= 1) {
      op.k_diag[c - 1] += v00;
      op.dk_diag[c - 1] += d00;
    }
    if (c + 1 <= n) {
      op.k_diag[c] += v11;
      op.dk_diag[c] += d11;
    }
    if (c >= 1 && c + 1 <= n) {
      op.k_off[c - 1] += v01;
      op.dk_off[c - 1] += d01;
    }
  }
  return op;
}

GroundState solve_ground_state(const ModelParams& model, double k, const HalfLineGrid& grid) {
  const FiberOperator op = build_fiber_operator(model, k, grid);
  const int n = grid.n;
  const double h = grid.h();

  double lo = 0.0, hi = 3.0 * model.b + k * k + 1.0;
  for (int i = 0; op.count_below(hi) < 1; ++i) {
    if (i > 200) throw NonConvergence("no eigenvalue bracket found");
    lo = hi;
    hi *= 2.0;
  }
  for (int it = 0; hi - lo > 4e-16 * hi; ++it) {
    if (it > 200) throw NonConvergence("eigenvalue bisection did not converge");
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (op.count_below(mid) >= 1 ? hi : lo) = mid;
  }

  // Inverse iteration at the bracketed shift.
  const double shift = lo;
  std::vector<double> dl(n - 1), d(n), du(n - 1);
  for (int i = 0; i < n; ++i) d[i] = op.k_diag[i] - shift * op.m_diag[i];
  for (int i = 0; i + 1 < n; ++i) dl[i] = du[i] = op.k_off[i] - shift * op.m_off[i];

  std::vector<double> v(n, 1.0), kv, mv;
  double lambda = 0.5 * (lo + hi), residual = INFINITY;
  bool converged = false;
  for (int it = 0; it < 12; ++it) {
    std::vector<double> rhs = op.apply_m(v);
    tri_solve(dl, d, du, rhs);
    const double nv = norm2(rhs);
    for (int i = 0; i < n; ++i) v[i] = rhs[i] / nv;
    kv = op.apply_k(v);
    mv = op.apply_m(v);
    lambda = dot(v, kv) / dot(v, mv);
    double r2 = 0.0;
    for (int i = 0; i < n; ++i) r2 += (kv[i] - lambda * mv[i]) * (kv[i] - lambda * mv[i]);
    residual = std::sqrt(r2) / norm2(mv);
    if (it >= 1 && residual <= 1e-10 * lambda) {
      converged = true;
      break;
    }
  }
  if (!(residual <= 1e-8 * lambda))
    throw NonConvergence("inverse iteration residual " + std::to_string(residual) + " at k = " + std::to_string(k));

  GroundState gs;
  gs.k = k;
  gs.lambda1 = lambda;
  gs.residual = residual;
  gs.converged = converged || residual <= 1e-8 * lambda;
  gs.dlambda1 = [&] {
    std::vector<double> dv;
    tri_apply(op.dk_diag, op.dk_off, v, dv);
    return dot(v, dv) / dot(v, mv);
  }();

  // Trapezoid normalization, maximum positive.
  const double nrm = std::sqrt(h * dot(v, v));
  const auto mx = std::max_element(v.begin(), v.end(), [](double a, double c) { return std::abs(a) < std::abs(c); });
  const double sgn = *mx < 0.0 ? -1.0 : 1.0;
  gs.phi1.assign(n + 2, 0.0);
  for (int i = 0; i < n; ++i) gs.phi1[i + 1] = sgn * v[i] / nrm;
  if (std::abs(gs.phi1[n]) >= 1e-8)
    throw GridError("ground state not decayed at x = L (|phi| = " + std::to_string(std::abs(gs.phi1[n])) +
                    "); increase grid.L");
  return gs;
}

double dlambda1(const ModelParams& model, double k, const HalfLineGrid& grid) {
  return solve_ground_state(model, k, grid).dlambda1;
}

PhiDerivative dk_phi1(const ModelParams& model, double k, const HalfLineGrid& grid, double dk) {
  if (!(dk >= 1e-5 && dk <= 1e-3)) throw DomainError("dk must lie in [1e-5, 1e-3]");
  const GroundState g0 = solve_ground_state(model, k, grid);
  const GroundState gp = solve_ground_state(model, k + dk, grid);
  const GroundState gm = solve_ground_state(model, k - dk, grid);
  const double h = grid.h();
  PhiDerivative out;
  out.dphi.resize(g0.phi1.size());
  for (std::size_t j = 0; j < out.dphi.size(); ++j) out.dphi[j] = (gp.phi1[j] - gm.phi1[j]) / (2.0 * dk);
  const double c = h * dot(g0.phi1, out.dphi);
  for (std::size_t j = 0; j < out.dphi.size(); ++j) out.dphi[j] -= c * g0.phi1[j];
  out.phi_cap = h * dot(out.dphi, out.dphi);
  return out;
}

GroundState solve_with_derivative(const ModelParams& model, double k, const HalfLineGrid& grid, double dk) {
  GroundState gs = solve_ground_state(model, k, grid);
  gs.phi_cap = dk_phi1(model, k, grid, dk).phi_cap;
  return gs;
}

SpectralTable::SpectralTable(const ModelParams& model, double k_lo, double k_hi, const HalfLineGrid& grid, int points,
                             double dk)
    : model_(model), grid_(grid), k_lo_(k_lo), k_hi_(k_hi) {
  if (!(k_lo < k_hi)) throw DomainError("spectral table needs k_lo < k_hi");
  if (points < 2) throw DomainError("spectral table needs at least 2 points");
  const int m = points - 1;
  nodes_.resize(points);
  bary_.resize(points);
  for (int j = 0; j <= m; ++j) {
    nodes_[j] = 0.5 * (k_lo + k_hi) - 0.5 * (k_hi - k_lo) * std::cos(std::numbers::pi * j / m);
    bary_[j] = (j % 2 == 0 ? 1.0 : -1.0) * ((j == 0 || j == m) ? 0.5 : 1.0);
  }
  // Exact endpoints, so window checks see the solver values.
  nodes_.front() = k_lo;
  nodes_.back() = k_hi;
  samples_.resize(points);
  parallel_for(points, [&](std::size_t j) {
    const GroundState gs = solve_with_derivative(model_, nodes_[j], grid_, dk);
    samples_[j] = {gs.lambda1, gs.dlambda1, gs.phi_cap};
  });
}

SpectralSample SpectralTable::operator()(double k) const {
  if (!(k >= k_lo_ && k <= k_hi_))
    throw DomainError("k = " + std::to_string(k) + " outside the spectral table [" + std::to_string(k_lo_) + ", " +
                      std::to_string(k_hi_) + "]");
  double num_l = 0, num_d = 0, num_p = 0, den = 0;
  for (std::size_t j = 0; j < nodes_.size(); ++j) {
    const double diff = k - nodes_[j];
    if (diff == 0.0) return samples_[j];
    const double w = bary_[j] / diff;
    num_l += w * samples_[j].lambda1;
    num_d += w * samples_[j].dlambda1;
    num_p += w * samples_[j].phi_cap;
    den += w;
  }
  return {num_l / den, num_d / den, num_p / den};
}

}  // namespace tfse
