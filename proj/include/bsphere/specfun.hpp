// Special functions: log-gamma helpers, modified Bessel I (complex argument,
// series + large-argument expansion) and MacDonald K (integral representation).
#pragma once

#include "bsphere/types.hpp"

namespace bsphere::specfun {

/// ln Gamma(x) for x > 0; throws std::domain_error otherwise.
double ln_gamma(double x);

/// ln|Gamma(x)| with the sign of Gamma(x); defined away from poles
/// x = 0, -1, -2, ...
struct LnGammaSigned {
  double ln_abs;
  int sign;  // +1 or -1
};
LnGammaSigned ln_gamma_signed(double x);

/// Gamma(num)/Gamma(den), assembled in log space with sign tracking so that
/// ratios of large values stay finite.
double gamma_ratio(double num, double den);

/// Pochhammer symbol (a)_ell = a (a+1) ... (a+ell-1); (a)_0 = 1.
double pochhammer(double a, int ell);

/// Modified Bessel function I_nu(w), complex w with |Arg w| < pi pinned to
/// the principal branch of w^nu.  Ascending series below the switch
/// threshold, large-argument expansion above it.
cplx bessel_i(double nu, cplx w, const SeriesControl& ctl = {});

/// Ascending series only (any |w|; subject to max_terms).
cplx bessel_i_series(double nu, cplx w, const SeriesControl& ctl = {});

/// Large-argument expansion
///   I_nu(w) ~ e^w / sqrt(2 pi w) * sum_{k<=N} (-1)^k (2w)^{-k}
///             Gamma(nu+k+1/2) / (k! Gamma(nu-k+1/2)),
/// truncated at N terms (N <= 0 picks the optimal truncation adaptively).
cplx bessel_i_asymptotic(double nu, cplx w, int N);

/// MacDonald function K_nu(x), x > 0, via the integral representation
/// K_nu(x) = int_0^inf exp(-x cosh t) cosh(nu t) dt (tanh-sinh quadrature).
/// K_nu = K_{-nu}.
double bessel_k(double nu, double x, const SeriesControl& ctl = {});

/// Scaled variant e^x K_nu(x); stays finite for large x.
double bessel_k_scaled(double nu, double x, const SeriesControl& ctl = {});

}  // namespace bsphere::specfun
