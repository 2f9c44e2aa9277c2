#include "warpsat/theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace warpsat::theory {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

double pow_int(double x, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

void require_k(int k, int min_k = 2) {
  if (k < min_k || k > 30)
    throw std::invalid_argument("theory: K must be in [" + std::to_string(min_k) + ", 30]");
}

// Gamma(rho) = (alpha K / 2) w^{K-1} / (1 - w^K), w = (1 - rho)/2.
double gamma_of(double rho, int k, double alpha) {
  const double w = 0.5 * (1.0 - rho);
  return 0.5 * alpha * k * pow_int(w, k - 1) / (1.0 - pow_int(w, k));
}

// 1 / (2 e^G - 1) without overflow for any G >= 0.
double inv_two_exp_gamma(double gamma_big) {
  const double eg = std::exp(-gamma_big);
  return eg / (2.0 - eg);
}

double rho_residual(double rho, int k, double alpha) {
  return rho - inv_two_exp_gamma(gamma_of(rho, k, alpha));
}

}  // namespace

double gamma_large_alpha(int k, double alpha) {
  require_k(k);
  return alpha * k / (std::ldexp(1.0, k) - 1.0);
}

Rho0Result solve_rho0(int k, double alpha, const SeriesControl& ctl) {
  require_k(k);
  if (alpha < 0.0) throw std::invalid_argument("solve_rho0: alpha must be nonnegative");
  if (alpha == 0.0) return {1.0, 0.0};

  const double g0 = rho_residual(0.0, k, alpha);
  if (!(g0 < 0.0)) throw std::logic_error("solve_rho0: residual at 0 is not negative");

  // Dense scan for the leftmost sign change; the residual is negative at 0
  // and exactly zero at 1, so absence of an interior crossing means rho0 = 1.
  constexpr int kScan = 20000;
  double lo = 0.0;
  bool bracketed = false;
  double hi = 1.0;
  for (int i = 1; i < kScan; ++i) {
    const double x = static_cast<double>(i) / kScan;
    if (rho_residual(x, k, alpha) >= 0.0) {
      hi = x;
      bracketed = true;
      break;
    }
    lo = x;
  }
  if (!bracketed) return {1.0, 0.0};

  for (int it = 0; it < 200 && hi - lo > ctl.fixed_point_tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (rho_residual(mid, k, alpha) >= 0.0)
      hi = mid;
    else
      lo = mid;
  }
  const double rho0 = 0.5 * (lo + hi);
  return {rho0, gamma_of(rho0, k, alpha)};
}

double FieldDistribution::total() const {
  double t = weight.empty() ? 0.0 : weight[0];
  for (size_t n = 1; n < weight.size(); ++n) t += 2.0 * weight[n];
  return t;
}

namespace {

int default_n_max(double poisson_scale) {
  return static_cast<int>(std::ceil(poisson_scale + 10.0 * std::sqrt(poisson_scale))) + 10;
}

// Poisson(lambda) pmf table p_0..p_nmax, computed iteratively from e^{-lambda}.
std::vector<double> poisson_pmf(double lambda, int n_max) {
  std::vector<double> p(static_cast<size_t>(n_max) + 1);
  p[0] = std::exp(-lambda);
  for (int n = 1; n <= n_max; ++n) p[n] = p[n - 1] * lambda / n;
  return p;
}

}  // namespace

FieldDistribution field_weights_inf(int k, double alpha, int n_max, const SeriesControl& ctl) {
  const auto [rho0, gamma_big] = solve_rho0(k, alpha, ctl);
  if (n_max < 0) n_max = default_n_max(gamma_big);
  // rho_n = rho0 Gamma^n / n! = Poisson_n(Gamma) / (2 - e^{-Gamma})
  auto pmf = poisson_pmf(gamma_big, n_max);
  const double scale = 1.0 / (2.0 - std::exp(-gamma_big));
  FieldDistribution d;
  d.weight.resize(pmf.size());
  for (size_t n = 0; n < pmf.size(); ++n) d.weight[n] = pmf[n] * scale;
  d.tail = std::max(0.0, 1.0 - d.total());
  return d;
}

FieldDistribution planted_field_dist(int k, double alpha, int n_max) {
  const double gamma = gamma_large_alpha(k, alpha);
  if (n_max < 0) n_max = default_n_max(gamma);
  auto pmf = poisson_pmf(gamma, n_max);
  FieldDistribution d;
  d.weight.resize(pmf.size());
  d.weight[0] = pmf[0];
  for (size_t n = 1; n < pmf.size(); ++n) d.weight[n] = 0.5 * pmf[n];
  d.tail = std::max(0.0, 1.0 - d.total());
  return d;
}

double tv_distance(const FieldDistribution& a, const FieldDistribution& b) {
  const int n_max = std::max(a.n_max(), b.n_max());
  double tv = std::abs(a.at(0) - b.at(0));
  for (int n = 1; n <= n_max; ++n) tv += 2.0 * std::abs(a.at(n) - b.at(n));
  // Whatever mass lies beyond both supports can differ by at most the tails.
  tv += a.tail + b.tail;
  return 0.5 * tv;
}

double bessel_i(int n, double z, const SeriesControl& ctl) {
  n = n < 0 ? -n : n;  // I_{-n} = I_n
  if (z < 0.0) throw std::invalid_argument("bessel_i: z must be nonnegative");
  if (z > 600.0)
    throw std::overflow_error(
        "bessel_i: power series not usable at z > 600; use the exponentially scaled regime");
  if (z == 0.0) return n == 0 ? 1.0 : 0.0;

  const double half = 0.5 * z;
  double term = 1.0;
  for (int i = 1; i <= n; ++i) term *= half / i;  // (z/2)^n / n!
  double sum = term;
  for (int m = 1; m < ctl.max_terms; ++m) {
    term *= half * half / (static_cast<double>(m) * (m + n));
    sum += term;
    if (term < ctl.rel_tol * sum) break;
  }
  return sum;
}

BigIResult big_i(double z, double nu, const SeriesControl& ctl) {
  if (!(nu > 0.0)) throw std::invalid_argument("big_i: nu must be positive");
  if (z < 0.0) throw std::invalid_argument("big_i: z must be nonnegative");
  const double ch = std::cosh(0.5 * nu);
  const double lead = 2.0 * std::exp(z * ch);
  if (!std::isfinite(lead))
    throw std::overflow_error("big_i: z cosh(nu/2) too large; rescale the argument");

  const double i0 = bessel_i(0, z, ctl);
  double value = lead - i0;
  double dz = ch * lead - std::exp(-0.5 * nu) * i0;
  double tail = 0.0;
  for (int n = 1; n < ctl.max_terms; ++n) {
    const double t = std::exp(-0.5 * nu * n) * bessel_i(n, z, ctl);
    value -= 2.0 * t;
    dz -= 2.0 * ch * t;
    tail = t;
    if (t < ctl.rel_tol * std::abs(value)) break;
  }
  return {value, dz, tail};
}

namespace {

// t_n = e^{nu n/2} I_n(z) expressed through G = z e^{nu/2}/2 and eps = e^{-nu}:
// t_n = sum_m G^{n+2m} eps^m / (m! (m+n)!). Stable for huge nu where the two
// factors would overflow/underflow separately.
double scaled_exp_bessel(int n, double big_g, double eps, const SeriesControl& ctl) {
  double term = 1.0;
  for (int i = 1; i <= n; ++i) term *= big_g / i;
  double sum = term;
  for (int m = 1; m < ctl.max_terms; ++m) {
    term *= big_g * big_g * eps / (static_cast<double>(m) * (m + n));
    sum += term;
    if (term < ctl.rel_tol * sum) break;
  }
  return sum;
}

double b_coefficient(double r0, int k, double nu) {
  const double w = 0.5 * (1.0 - r0);
  return pow_int(w, k - 1) * std::exp(-0.5 * nu) /
         (1.0 + pow_int(w, k) * std::expm1(-nu));
}

}  // namespace

FiniteNuSolution solve_finite_nu(int k, double alpha, double nu, int n_max,
                                 const SeriesControl& ctl) {
  require_k(k);
  if (!(nu > 0.0)) throw std::invalid_argument("solve_finite_nu: nu must be positive");
  if (alpha < 0.0) throw std::invalid_argument("solve_finite_nu: alpha must be nonnegative");

  double r0 = solve_rho0(k, alpha, ctl).rho0;
  int it = 0;
  bool converged = false;
  for (; it < ctl.max_fp_iters; ++it) {
    const double z = alpha * k * b_coefficient(r0, k, nu);
    const double r_new = bessel_i(0, z, ctl) / big_i(z, nu, ctl).value;
    const double next = 0.5 * r0 + 0.5 * r_new;
    const bool done = std::abs(next - r0) < ctl.fixed_point_tol;
    r0 = next;
    if (done) {
      converged = true;
      break;
    }
  }
  if (!converged)
    throw FixedPointError("solve_finite_nu: no fixed point after " +
                              std::to_string(ctl.max_fp_iters) + " iterations",
                          r0);

  FiniteNuSolution sol;
  sol.k = k;
  sol.alpha = alpha;
  sol.nu = nu;
  sol.r0 = r0;
  sol.w = 0.5 * (1.0 - r0);
  sol.b = b_coefficient(r0, k, nu);
  sol.z = alpha * k * sol.b;
  const auto big = big_i(sol.z, nu, ctl);
  sol.big_i_value = big.value;
  sol.big_i_dz = big.dz;
  sol.iterations = it + 1;

  const double big_g = 0.5 * sol.z * std::exp(0.5 * nu);
  const double eps = std::exp(-nu);
  if (n_max < 0) n_max = default_n_max(std::max(big_g, 1.0));
  sol.weights.weight.resize(static_cast<size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n)
    sol.weights.weight[n] = scaled_exp_bessel(n, big_g, eps, ctl) / sol.big_i_value;
  sol.weights.tail = std::max(0.0, 1.0 - sol.weights.total());
  return sol;
}

double free_energy(int k, double alpha, double nu, const SeriesControl& ctl) {
  const auto sol = solve_finite_nu(k, alpha, nu, 0, ctl);
  return -sol.z * sol.big_i_dz / sol.big_i_value + std::log(sol.big_i_value) +
         alpha * std::log1p(pow_int(sol.w, k) * std::expm1(-nu));
}

GsEnergyResult gs_energy(int k, double alpha, double nu, const SeriesControl& ctl) {
  GsEnergyResult out{};

  // Richardson-extrapolated centered difference of F, r0 re-solved per point.
  const double h = 1e-4 * nu;
  auto diff = [&](double hh) {
    return (free_energy(k, alpha, nu - hh, ctl) - free_energy(k, alpha, nu + hh, ctl)) /
           (2.0 * hh);
  };
  out.from_free_energy = (4.0 * diff(h) - diff(2.0 * h)) / 3.0;

  // Saddle-point expression at the solved fixed point.
  const auto sol = solve_finite_nu(k, alpha, nu, -1, ctl);
  double weighted = 0.0;
  for (int n = sol.weights.n_max(); n >= 1; --n) weighted += n * sol.weights.weight[n];
  const double denom = 1.0 + pow_int(sol.w, k) * std::expm1(-nu);
  out.saddle = -weighted +
               0.5 * alpha * k * pow_int(sol.w, k - 1) * (0.5 * (1.0 + sol.r0)) / denom +
               alpha * (1.0 - 0.5 * k) * pow_int(sol.w, k) * std::exp(-nu) / denom;

  // Large-nu closed form in nu = infinity quantities, via the stable
  // identities rho0 e^G = 1/(2 - e^{-G}) and 1/(rho0 e^G) = 2 - e^{-G}.
  const auto [rho0, g] = solve_rho0(k, alpha, ctl);
  const double eps = std::exp(-nu);
  const double rho_eg = 1.0 / (2.0 - std::exp(-g));
  const double bracket = -g * g * rho0 * (1.0 - rho0) / (alpha * k) -
                         (std::exp(-g) - 1.0 + g) + 2.0 * g * rho_eg -
                         rho0 * (g * g + 2.0 * g) +
                         (2.0 - std::exp(-g)) * (2.0 / k - 1.0) * 0.5 * (1.0 - rho0);
  out.large_nu_closed_form = eps * g * rho_eg * bracket;

  out.large_alpha = gamma_large_alpha(k, alpha) / k * std::exp(-nu);
  return out;
}

Omega0Result omega0(int k, double alpha, const SeriesControl& ctl) {
  const auto [rho0, g] = solve_rho0(k, alpha, ctl);
  const double w = 0.5 * (1.0 - rho0);
  // log(2 e^G - 1) = G + log(2 - e^{-G}); 2 G e^G/(2 e^G - 1) = 2 G/(2 - e^{-G})
  const double eg = std::exp(-g);
  const double exact =
      g + std::log(2.0 - eg) - 2.0 * g / (2.0 - eg) + alpha * std::log1p(-pow_int(w, k));
  const double gamma = gamma_large_alpha(k, alpha);
  const double approx = std::log(2.0) + alpha * std::log1p(-std::ldexp(1.0, -k)) +
                        0.5 * gamma * std::exp(-gamma);
  return {exact, approx, std::abs(exact - approx)};
}

SigmaBounds relative_entropy_per_var(int k, double alpha, const SeriesControl& ctl) {
  const auto om = omega0(k, alpha, ctl);
  const double rho0 = solve_rho0(k, alpha, ctl).rho0;
  const double hi = -om.exact + alpha * std::log1p(-std::ldexp(1.0, -k)) + std::log(2.0);
  const double gamma = gamma_large_alpha(k, alpha);
  // A relative entropy is nonnegative, so the lower bound never dips below 0
  // (it otherwise would in the unwarned small-alpha phase where rho0 = 1).
  return {std::max(0.0, hi - rho0 * std::log(2.0)), hi, 0.5 * gamma * std::exp(-gamma)};
}

BiasResult bias_theory(int k, double alpha, const SeriesControl& ctl) {
  require_k(k);
  const auto [rho0, g] = solve_rho0(k, alpha, ctl);
  const double w = 0.5 * (1.0 - rho0);
  const double q = pow_int(w, k - 1);
  const double a_prime = alpha / (1.0 - pow_int(w, k));
  double ell_plus, ell_minus;
  if (g > 1e-9) {
    ell_plus = 0.5 * a_prime * k * (1.0 - (1.0 - q) * std::exp(-g)) / (-std::expm1(-g));
    ell_minus = 0.5 * a_prime * k * (1.0 - q);
  } else {
    // Gamma -> 0 limit along q/Gamma = 2/(alpha' K)
    ell_plus = 1.0 + 0.5 * a_prime * k * (1.0 - q);
    ell_minus = 0.5 * a_prime * k * (1.0 - q);
  }
  return {(ell_plus - ell_minus) / (ell_plus + ell_minus), ell_plus, ell_minus, false};
}

BiasResult bias_theory_at_nu(int k, double alpha, double nu, const SeriesControl& ctl) {
  if (!(nu > 0.0)) throw std::invalid_argument("bias_theory_at_nu: nu must be positive");
  BiasResult out = bias_theory(k, alpha, ctl);
  const double tk = std::ldexp(1.0, k);
  out.bias = 1.0 / (tk - 1.0) - alpha * k / (2.0 * (tk - 1.0) * (tk - 1.0)) * std::exp(-nu);
  return out;
}

BiasResult bias_theory_at_energy(int k, double alpha, double e, const SeriesControl& ctl) {
  if (e < 0.0) throw std::invalid_argument("bias_theory_at_energy: e must be nonnegative");
  BiasResult out = bias_theory(k, alpha, ctl);
  const double tk = std::ldexp(1.0, k);
  out.bias = 1.0 / (tk - 1.0) *
             (1.0 - e * k * tk * (0.5 - 1.0 / (2.0 * tk - 2.0) - tk / (alpha * k)));
  out.outside_first_order_regime = e >= 2.0 * std::ldexp(1.0, -k) / k;
  return out;
}

OccurrenceGf occurrence_gf(int k, double alpha, double x, const SeriesControl& ctl) {
  if (x < 0.0 || x > 1.5)
    throw std::invalid_argument("occurrence_gf: x outside the validity window [0, 1.5]");
  const auto [rho0, g] = solve_rho0(k, alpha, ctl);
  const double w = 0.5 * (1.0 - rho0);
  const double q = pow_int(w, k - 1);
  const double a_prime = alpha / (1.0 - pow_int(w, k));
  // (2 e^{Gx} - 1)/(2 e^G - 1) = e^{G(x-1)} (2 - e^{-Gx})/(2 - e^{-G})
  const double value = std::exp(a_prime * k * (x - 1.0) * (1.0 - q) + g * (x - 1.0)) *
                       (2.0 - std::exp(-g * x)) / (2.0 - std::exp(-g));
  return {value, std::exp(alpha * k * (x - 1.0))};
}

double noninteger_lhs(double y, int k) {
  if (y <= 0.0) return 1.0 / (k - 1.0);
  return y / (1.0 - pow_int(1.0 - y, k - 1));
}

NonIntegerRoot noninteger_check(int k, double alpha, const SeriesControl& ctl) {
  require_k(k, 3);
  const auto [rho0, g] = solve_rho0(k, alpha, ctl);
  const double w = 0.5 * (1.0 - rho0);
  const double rhs =
      alpha * k * (0.5 - w) * pow_int(w, k - 2) / (1.0 - pow_int(w, k));
  if (!(rhs > 1.0 / (k - 1.0)) || rhs > 1.0) return {false, kNan, rhs};

  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 200 && hi - lo > ctl.fixed_point_tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (noninteger_lhs(mid, k) < rhs)
      lo = mid;
    else
      hi = mid;
  }
  return {true, 0.5 * (lo + hi), rhs};
}

AlphaScanResult noninteger_alpha_scan(int k, double alpha_lo, double alpha_hi, int grid_points,
                                      const SeriesControl& ctl) {
  if (grid_points < 2 || !(alpha_hi > alpha_lo))
    throw std::invalid_argument("noninteger_alpha_scan: need an increasing grid");
  AlphaScanResult out{false, kNan, kNan, kNan};
  const double step = (alpha_hi - alpha_lo) / (grid_points - 1);
  for (int i = grid_points - 1; i >= 0; --i) {
    const double a = alpha_lo + i * step;
    if (noninteger_check(k, a, ctl).exists) {
      out.any_root = true;
      out.largest_alpha_with_root = a;
      out.bracket_lo = a;
      out.bracket_hi = i + 1 < grid_points ? a + step : a;
      break;
    }
  }
  return out;
}

TheoryPoint theory_point(int k, double alpha, std::optional<double> nu,
                         const SeriesControl& ctl) {
  TheoryPoint tp;
  tp.k = k;
  tp.alpha = alpha;
  tp.nu = nu;
  const auto [rho0, g] = solve_rho0(k, alpha, ctl);
  tp.rho0 = rho0;
  tp.gamma_big = g;
  tp.gamma = gamma_large_alpha(k, alpha);
  tp.omega0 = omega0(k, alpha, ctl);
  tp.sigma_per_var = relative_entropy_per_var(k, alpha, ctl);
  if (nu) {
    const auto sol = solve_finite_nu(k, alpha, *nu, -1, ctl);
    tp.b = sol.b;
    tp.field_weights = sol.weights;
    tp.free_energy = free_energy(k, alpha, *nu, ctl);
    tp.gs_energy = gs_energy(k, alpha, *nu, ctl);
    tp.bias = bias_theory_at_nu(k, alpha, *nu, ctl);
  } else {
    tp.b = 0.0;
    tp.field_weights = field_weights_inf(k, alpha, -1, ctl);
    tp.free_energy = tp.omega0.exact;  // F(infinity)
    tp.gs_energy = {0.0, 0.0, 0.0, 0.0};
    tp.bias = bias_theory(k, alpha, ctl);
  }
  return tp;
}

}  // namespace warpsat::theory
