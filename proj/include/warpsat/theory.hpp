#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace warpsat::theory {

struct SeriesControl {
  double rel_tol = 1e-14;
  int max_terms = 500;
  double fixed_point_tol = 1e-12;
  int max_fp_iters = 10000;
};

// gamma = alpha K / (2^K - 1), the large-alpha Poisson parameter.
double gamma_large_alpha(int k, double alpha);

struct Rho0Result {
  double rho0;       // zero-field weight at nu = infinity
  double gamma_big;  // Gamma(rho0) = (alpha K / 2) w^{K-1} / (1 - w^K), w = (1-rho0)/2
};

// Leftmost root of g(rho) = rho - 1/(2 e^{Gamma(rho)} - 1) on [0, 1] by
// bisection (dense pre-scan locates the bracket; g(0) < 0 always and
// g(1) = 0, so a root exists for every alpha >= 0). Below the warning
// bifurcation the only root is rho0 = 1.
Rho0Result solve_rho0(int k, double alpha, const SeriesControl& ctl = {});

// Symmetric field distribution: weight[|n|] with the convention
// total = weight[0] + 2 sum_{n>=1} weight[n], tail = 1 - total analytic.
struct FieldDistribution {
  std::vector<double> weight;  // index |n|, size n_max + 1
  double tail;

  int n_max() const { return static_cast<int>(weight.size()) - 1; }
  double at(int n) const {  // signed n
    const int a = n < 0 ? -n : n;
    return a < static_cast<int>(weight.size()) ? weight[a] : 0.0;
  }
  double total() const;
};

// rho_n = Gamma^{|n|} / |n|! * 1/(2 e^Gamma - 1), the nu -> infinity weights.
// n_max < 0 selects ceil(Gamma + 10 sqrt(Gamma)) + 10 (tail mass < 1e-12).
FieldDistribution field_weights_inf(int k, double alpha, int n_max = -1,
                                    const SeriesControl& ctl = {});

// rho_plant(n) = e^{-gamma} delta_{n0} + gamma^{|n|}/(2 |n|!) e^{-gamma} (n != 0).
FieldDistribution planted_field_dist(int k, double alpha, int n_max = -1);

double tv_distance(const FieldDistribution& a, const FieldDistribution& b);

// Modified Bessel function I_n(z) by its power series
// sum_m (z/2)^{2m+n} / (m! (m+n)!); exact symmetry I_{-n} = I_n.
double bessel_i(int n, double z, const SeriesControl& ctl = {});

struct BigIResult {
  double value;       // I(z, nu)        = sum_n e^{nu |n|/2} I_n(z)
  double dz;          // I^{(1,0)}(z,nu) = d/dz of the above
  double tail_bound;  // magnitude of the last series term taken
};

// Fast-converging form 2 e^{z cosh(nu/2)} - I_0(z) - 2 sum_{n>=1} e^{-nu n/2} I_n(z)
// (and its z-derivative), both accumulated in one pass. Requires nu > 0.
BigIResult big_i(double z, double nu, const SeriesControl& ctl = {});

class FixedPointError : public std::runtime_error {
 public:
  FixedPointError(const std::string& what, double last)
      : std::runtime_error(what), last_iterate(last) {}
  double last_iterate;
};

struct FiniteNuSolution {
  int k;
  double alpha, nu;
  double r0;       // zero-field weight
  double w;        // (1 - r0) / 2
  double b;        // B = w^{K-1} e^{-nu/2} / (1 + w^K (e^{-nu} - 1))
  double z;        // alpha K B
  double big_i_value;
  double big_i_dz;
  FieldDistribution weights;  // r_n = e^{nu |n|/2} I_n(z) / I(z, nu)
  int iterations;
};

// Damped fixed-point iteration r0 <- I_0(alpha K B(r0)) / I(alpha K B(r0), nu)
// (damping 0.5) to fixed_point_tol. Throws FixedPointError carrying the last
// iterate when max_fp_iters is exhausted. Requires nu > 0.
FiniteNuSolution solve_finite_nu(int k, double alpha, double nu, int n_max = -1,
                                 const SeriesControl& ctl = {});

// F(nu) = -alpha K B I^{(1,0)}/I + log I + alpha log[1 + w^K (e^{-nu} - 1)]
// at the solved fixed point.
double free_energy(int k, double alpha, double nu, const SeriesControl& ctl = {});

struct GsEnergyResult {
  // Primary: e0 = -dF/dnu, centered differences with re-solved r0 at each
  // stencil point, Richardson-extrapolated.
  double from_free_energy;
  // Independent route: the saddle-point expression
  // -sum_{n>=1} n r_n + (aK/2) w^{K-1} (1+r0)/2 / D + a (1-K/2) w^K e^{-nu} / D
  // at the same fixed point (the d/dnu log I term of the Bessel form holds
  // the first argument fixed).
  double saddle;
  // Large-nu closed form in nu = infinity quantities; carries a relative
  // error of order gamma^2 e^{-gamma}, so it is reported, not used as the
  // cross-check.
  double large_nu_closed_form;
  // (gamma / K) e^{-nu}
  double large_alpha;
};

GsEnergyResult gs_energy(int k, double alpha, double nu, const SeriesControl& ctl = {});

struct Omega0Result {
  double exact;   // log[2 e^G - 1] - 2 G e^G/(2 e^G - 1) + alpha log[1 - w^K]
  double approx;  // log 2 + alpha log(1 - 2^{-K}) + (gamma/2) e^{-gamma}
  double gap;     // |exact - approx|
};

Omega0Result omega0(int k, double alpha, const SeriesControl& ctl = {});

struct SigmaBounds {
  double lo, hi;         // sigma/N bounds: hi - lo = rho0 log 2
  double leading_order;  // (gamma/2) e^{-gamma}
};

// sigma/N = -omega(0) + alpha log(1 - 2^{-K}) + log 2 - s_sol with
// s_sol in [0, rho0 log 2].
SigmaBounds relative_entropy_per_var(int k, double alpha, const SeriesControl& ctl = {});

struct BiasResult {
  double bias;  // (<l+> - <l->) / (<l+> + <l->) among z > 0 variables
  double ell_plus;
  double ell_minus;
  bool outside_first_order_regime;  // energy form with e >= 2^{1-K}/K
};

// Exact cavity expressions in the nu -> infinity limit via q = w^{K-1},
// alpha' = alpha / (1 - w^K).
BiasResult bias_theory(int k, double alpha, const SeriesControl& ctl = {});
// First order in e^{-nu}: 1/(2^K-1) - alpha K e^{-nu} / (2 (2^K-1)^2).
BiasResult bias_theory_at_nu(int k, double alpha, double nu, const SeriesControl& ctl = {});
// First order in the ground-state energy density e.
BiasResult bias_theory_at_energy(int k, double alpha, double e, const SeriesControl& ctl = {});

struct OccurrenceGf {
  double value;              // G(x)
  double poisson_reference;  // e^{alpha K (x-1)}
};

// G(x) = e^{a'K(x-1)(1-q)} (2 e^{a'Kxq/2} - 1) / (2 e^{a'Kq/2} - 1) on [0, 1.5].
OccurrenceGf occurrence_gf(int k, double alpha, double x, const SeriesControl& ctl = {});

// y / (1 - (1-y)^{K-1}): increasing on (0, 1], limit 1/(K-1) at y -> 0+.
double noninteger_lhs(double y, int k);

struct NonIntegerRoot {
  bool exists;
  double y;    // root of y / (1 - (1-y)^{K-1}) = rhs in (0, 1], NaN when absent
  double rhs;  // alpha K (1/2 - w) w^{K-2} / (1 - w^K)
};

// Checks for a rational-valued-field solution branch; requires k >= 3.
NonIntegerRoot noninteger_check(int k, double alpha, const SeriesControl& ctl = {});

struct AlphaScanResult {
  bool any_root;
  double largest_alpha_with_root;  // alpha_s estimate (grid value)
  double bracket_lo, bracket_hi;   // alpha_s lies in (bracket_lo, bracket_hi]
};

AlphaScanResult noninteger_alpha_scan(int k, double alpha_lo, double alpha_hi, int grid_points,
                                      const SeriesControl& ctl = {});

// One (K, alpha, nu) point with every solved quantity, the unit emitted by
// the `theory` CLI subcommand. nu empty means the nu -> infinity limit.
struct TheoryPoint {
  int k;
  double alpha;
  std::optional<double> nu;
  double rho0;
  double gamma_big;
  double gamma;
  double b;  // 0 in the infinity limit
  FieldDistribution field_weights;
  double free_energy;  // F(nu); omega0.exact in the infinity limit
  GsEnergyResult gs_energy;
  Omega0Result omega0;
  SigmaBounds sigma_per_var;
  BiasResult bias;
};

TheoryPoint theory_point(int k, double alpha, std::optional<double> nu = {},
                         const SeriesControl& ctl = {});

}  // namespace warpsat::theory
