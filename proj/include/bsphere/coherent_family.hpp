// Coherent-state family K_{n,p} on the complex sphere: series evaluation,
// reproducing kernel T_{n,p}, ambient measure, Parseval checks, and the g_a
// special-function machinery with its large-argument expansion.
#pragma once

#include "bsphere/sphere_geom.hpp"
#include "bsphere/types.hpp"

namespace bsphere::coherent_family {

using sphere_geom::SpherePoint;

/// c_{ell,p} = sqrt( (n)_ell / (n+p)_ell ), assembled in log space.
double c_coeff(const Params& params, int ell);

/// Detailed series evaluation of K_{n,p}(x, z) = sum_l c_l/l! (x.z/hbar)^l.
struct SeriesEval {
  cplx value = 0.0;
  double tail_bound = 0.0;  // |remainder| <= next-term/(1 - ratio)
  int terms = 0;
};
SeriesEval k_family_eval_detailed(const Params& params, const SpherePoint& x,
                                  const CVec& z, const SeriesControl& ctl = {});
cplx k_family_eval(const Params& params, const SpherePoint& x, const CVec& z,
                   const SeriesControl& ctl = {});

/// Reproducing kernel
///   T_{n,p}(z, w) = Gamma(n+p) sum_l (z.w/hbar^2)^l / (l! Gamma(l+n+p)),
/// evaluated by the entire series below the Bessel switch threshold and by
/// Gamma(n+p) u^{(1-n-p)/2} I_{n+p-1}(2 sqrt(u)) above it (principal
/// branches; Arg(z.w) = pi rejected on that route).
cplx kernel_T(const Params& params, const CVec& z, const CVec& w,
              const SeriesControl& ctl = {});

/// Ambient measure density
///   (1/Gamma(n+p)) (2/(pi hbar^2)^n) (|z|/hbar)^p K_p(2|z|/hbar);
/// z = 0 is singular for p <= 0 (domain error) and finite for p > 0.
double measure_density(const Params& params, const CVec& z);

/// Transform of the monomial x^k:
///   (U x^k)(z) = c_{|k|,p} Gamma(n)/Gamma(n+|k|) (z/hbar)^k.
cplx u_transform_monomial(const Params& params, const MultiIndex& k,
                          const CVec& z);

/// Verifies <U(x^a), U(x^b)>_m = <x^a, x^b>_S via the angular closed form and
/// a 1D radial MacDonald quadrature; returns the relative error (absolute
/// when the exact value is zero).
double parseval_check(const Params& params, const MultiIndex& a,
                      const MultiIndex& b);

/// Two-term expansion of <K_p(., w), K_p(., z)>:
///   Gamma(n+p)/(2 sqrt(pi)) (u/hbar^2)^{(1/2)(-p-n+1/2)} e^{2 sqrt(u)/hbar}
///   [1 - (n+p-3/2)(n+p-1/2) hbar/(4 sqrt(u))],  u = z.w.
/// order 0 drops the bracketed correction.
cplx inner_product_asymptotic(const Params& params, const CVec& z,
                              const CVec& w, int order);

// --- g_a machinery ----------------------------------------------------------

/// g_a(z) = sum_l sqrt(a l + 1)/l! z^l  (a > 0).
cplx g_eval(double a, cplx z, const SeriesControl& ctl = {});

/// s-th derivative of g_a by term-wise differentiation of the series.
cplx g_eval_derivative(double a, int s, cplx z, const SeriesControl& ctl = {});

/// Integral form (Re z > 0):
///   g_a(z) = (2/sqrt(a pi)) e^z int_0^1 [a z (1-w^2) + 1] e^{-z w^2} m(w) dw,
///   m(w) = w (1-w^2)^{1/a-1} / sqrt(-ln(1-w^2)),  m(0) = 1.
cplx g_integral(double a, cplx z);

/// Taylor coefficients b_{2j}, j = 0..N (N <= 8), of the profile m(w) about
/// w = 0, by series composition.  b_0 = 1.
std::vector<double> m_taylor_coeffs(double a, int N);

/// Precomputed coefficient tables for the large-argument expansion of
/// g_a^{(s)}: the b_{2j} profile coefficients and the half-integer moments
/// d_r = Gamma(r+1/2)/2, combined into the relative 1/z-coefficients a_{q,s}.
struct GaCoefficients {
  double a = 1.0;
  std::vector<double> b;  // b_{2j}, j = 0..N
  std::vector<double> d;  // d_r, r = 0..N+s_max

  static GaCoefficients build(double a, int N, int s_max = 8);

  /// Coefficient of z^{-q} in the bracketed series of g_a^{(s)} (absolute,
  /// i.e. including the k-fold sign/binomial assembly).
  double bracket_coefficient(int q, int s) const;

  /// a_{q,s} = bracket_coefficient(q,s)/bracket_coefficient(0,s); a_{1,0} is
  /// the acceptance-critical 1/z coefficient (= 1/2 (n - 5/4) at a=1/(n-1)).
  double a_coeff(int q, int s) const;
};

/// Large-argument expansion
///   g_a^{(s)}(z) ~ 2 e^z sqrt(z/(a pi)) sum_{q<=N} bracket_coefficient(q,s) z^{-q}
/// (Re z > 0, principal sqrt).
cplx g_derivative_asymptotic(double a, int s, cplx z, int N,
                             const GaCoefficients& coeffs);

// --- peak / complement regions ----------------------------------------------

enum class RegionTag { W, V };

/// W_z = { x : C Re(x.z)/|z| >= 1 } (closed inequality), V_z its complement.
RegionTag region_classify(const SpherePoint& x, const CVec& z, double C);

/// Samples x in V_z and evaluates |g_a^{(s)}(x.z/hbar)| against the bound
/// shape (1/hbar) e^{(1+mu)|z|/hbar} (|z|/hbar + 1), mu = 1/C - 1, over an
/// hbar grid; residuals hold the per-hbar smallest admissible constant and
/// fitted_log_constant the overall best C_1.
AsymptoticFit v_region_bound_check(const Params& params, const CVec& z,
                                   double C, int s,
                                   const std::vector<double>& hbar_grid = {},
                                   std::uint64_t seed = 42);

/// Peak-region expansion of K_{n,-1}:
///   [x.z/(hbar (n-1))]^{1/2} exp(x.z/hbar) [1 + a_1 hbar/(x.z)],
///   a_1 = 1/2 (n - 5/4); order 0 drops the bracket correction.
/// Requires region_classify(x, z, 2) = W.
cplx k_minus1_asymptotic(const Params& params, const SpherePoint& x,
                         const CVec& z, int order);

}  // namespace bsphere::coherent_family
