#pragma once

// Edge current J_y[u0](t) of the time-fractional Schrodinger evolution
// i^beta d_t^alpha u = H u, computed exactly as a momentum integral of
// Mittag-Leffler values, and through each of the long-time formulas.

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "tfse/fiber_spectrum.hpp"
#include "tfse/quadrature.hpp"
#include "tfse/scaled.hpp"
#include "tfse/wavepacket.hpp"

namespace tfse {

enum class Regime { SubCritical, Critical, SuperCritical };

struct FractionalOrder {
  double alpha = 0.5;
  double beta = 0.5;

  /// Both must lie in (0, 1]; throws DomainError otherwise.
  void validate() const;
  /// Exact comparison of the configured values.
  Regime regime() const;
};

/// theta = pi beta / (2 alpha); gamma(lambda) = lambda^(1/alpha) sin(theta).
struct RegimeAngles {
  double alpha = 1.0;
  double theta = 0.0;
  double gamma(double lambda) const;
};
RegimeAngles regime_angles(const FractionalOrder& order);

enum class TransportLabel { ExponentialGrowth, AsymptoticallyConstant, PowerLawDecay };

struct RegimeClass {
  TransportLabel label = TransportLabel::AsymptoticallyConstant;
  double exponent = 0.0;  // only meaningful for PowerLawDecay
  std::string name() const;
};

RegimeClass classify_regime(const FractionalOrder& order);
const char* regime_name(Regime r);

enum class Method { Direct, AsymptoticCase1, AsymptoticCase2, Naber, AYH, Schrodinger, BetaLine };
const char* method_name(Method m);

struct QuadConfig {
  std::size_t n_nodes = 64;
  double rel_tol = 1e-4;
  std::size_t max_nodes = std::size_t{1} << 20;
  void validate() const;
};

/// Everything time-independent: the model, the cutoff, lambda1 data on the
/// support of chi, and the quadrature settings. Building it validates the
/// spectral window.
class EdgeSystem {
 public:
  /// grid.L <= 0 selects HalfLineGrid::automatic over the support.
  EdgeSystem(ModelParams model, ChiProfile profile, HalfLineGrid grid = {0.0, 4000}, QuadConfig quad = {},
             int table_points = 48);

  const ModelParams& model() const { return model_; }
  const ChiProfile& profile() const { return profile_; }
  const HalfLineGrid& grid() const { return table_.grid(); }
  const SpectralTable& table() const { return table_; }
  const QuadConfig& quad() const { return quad_; }
  const SupportReport& support() const { return support_; }

  /// lambda1 at k_lo (the maximum over the support).
  double lambda_max() const { return support_.lambda_lo; }
  double lambda_min() const { return support_.lambda_hi; }

  /// Gauss-Legendre with the doubling guard over the support of chi.
  QuadratureResult integrate(std::size_t m, const std::function<void(double, std::vector<ScaledReal>&)>& f,
                             double phase_range = 0.0) const;
  /// Single real integrand, no overflow handling.
  double integrate_real(const std::function<double(double)>& f, double phase_range = 0.0) const;

 private:
  ModelParams model_;
  ChiProfile profile_;
  QuadConfig quad_;
  SpectralTable table_;
  SupportReport support_;
};

struct TransportTrace {
  std::vector<double> times;
  std::vector<ScaledReal> values;
  Method method = Method::Direct;

  /// Times strictly increasing and positive, one value per time.
  void validate() const;
};

/// 2 t^(a-1) int lambda chi chi' Re{(-i)^(1+b) E_{a,a}(z) conj(E_{a,1}(z))} dk with
/// z = (-i)^b t^a lambda. Scaled form never overflows. `reflect` evaluates
/// at conj(z) and conjugates back, which must give the same number.
ScaledReal current_direct_scaled(const FractionalOrder& order, const EdgeSystem& sys, double t, bool reflect = false);
/// Throws OverflowGuard when the value leaves the double range.
double current_direct(const FractionalOrder& order, const EdgeSystem& sys, double t);

/// int lambda1' chi^2 dk, the alpha = beta = 1 current.
double current_schrodinger(const EdgeSystem& sys);
/// -2 int lambda1 chi chi' dk, the same number by parts.
double current_schrodinger_by_parts(const EdgeSystem& sys);

/// alpha = 1: 2 cos(pi(1+b)/2) int lambda chi' chi exp(2 t lambda cos(pi b/2)) dk.
ScaledReal current_beta_line_scaled(double beta, const EdgeSystem& sys, double t);
/// Throws OverflowGuard (carrying the first unrepresentable t) once the
/// exponent passes 700.
double current_beta_line(double beta, const EdgeSystem& sys, double t);

/// beta <= alpha: leading exponential term plus the oscillating t^-alpha correction.
ScaledReal current_asymptotic_case1_scaled(const FractionalOrder& order, const EdgeSystem& sys, double t);
double current_asymptotic_case1(const FractionalOrder& order, const EdgeSystem& sys, double t);
/// Leading coefficient cos(theta(1-a) + pi(1+b)/2) int lambda^(1/a) chi chi' dk, for the sign check.
double case1_leading_coefficient(const FractionalOrder& order, const EdgeSystem& sys);

/// alpha < beta: power law t^-(1+3 alpha).
double current_asymptotic_case2(const FractionalOrder& order, const EdgeSystem& sys, double t);
/// [1/(Gamma(1-2a) Gamma(-a)) - 1/(Gamma(1-a) Gamma(-2a))].
double case2_bracket(double alpha);

/// alpha = beta.
double current_naber(double alpha, const EdgeSystem& sys, double t);
/// (1/a^2) int (lambda^(1/a))' chi^2 dk.
double naber_constant(double alpha, const EdgeSystem& sys);
/// -(2/a^2) int lambda^(1/a) chi chi' dk, the same constant by parts.
double naber_constant_by_parts(double alpha, const EdgeSystem& sys);

/// beta = 1 > alpha.
double current_ayh(double alpha, const EdgeSystem& sys, double t);
/// t^(1+3a) J in the AYH limit: -2 bracket int lambda^-3 chi chi' dk.
double ayh_coefficient(double alpha, const EdgeSystem& sys);

/// Evaluates `method` at every time, in parallel over t (TFSE_THREADS).
/// Asymptotic methods take their parameters from `order`.
TransportTrace current_trace(const FractionalOrder& order, const EdgeSystem& sys, const std::vector<double>& times,
                             Method method = Method::Direct);

enum class FitMode { LogLog, SemiLog };

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double max_rel_residual = 0.0;
  std::size_t samples = 0;
};

/// Least-squares slope of log|J| against log t (LogLog) or t (SemiLog) over
/// samples with t in [t_lo, t_hi]. Needs 8 samples; throws SignChange when
/// values in the window change sign, DomainError when too few samples.
FitResult fit_exponent(const TransportTrace& trace, double t_lo, double t_hi, FitMode mode);

/// Log-spaced times, n >= 2 samples from t_min to t_max inclusive.
std::vector<double> log_times(double t_min, double t_max, std::size_t n);

}  // namespace tfse
