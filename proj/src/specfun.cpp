// Log-gamma helpers, modified Bessel I and MacDonald K.
#include "bsphere/specfun.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <stdexcept>

namespace bsphere::specfun {

double ln_gamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("ln_gamma: requires x > 0");
  return std::lgamma(x);
}

LnGammaSigned ln_gamma_signed(double x) {
  if (x > 0.0) return {std::lgamma(x), 1};
  if (x == std::floor(x))
    throw std::domain_error("ln_gamma_signed: pole at non-positive integer");
  // Reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x).
  const double s = std::sin(M_PI * x);
  const double ln_abs = std::log(M_PI / std::abs(s)) - std::lgamma(1.0 - x);
  return {ln_abs, s > 0.0 ? 1 : -1};
}

double gamma_ratio(double num, double den) {
  const auto a = ln_gamma_signed(num);
  const auto b = ln_gamma_signed(den);
  return a.sign * b.sign * std::exp(a.ln_abs - b.ln_abs);
}

double pochhammer(double a, int ell) {
  if (ell < 0) throw std::invalid_argument("pochhammer: ell >= 0 required");
  double v = 1.0;
  for (int j = 0; j < ell; ++j) v *= a + j;
  return v;
}

cplx bessel_i_series(double nu, cplx w, const SeriesControl& ctl) {
  // I_nu(w) = (w/2)^nu sum_m (w^2/4)^m / (m! Gamma(m+nu+1)).
  if (nu < 0.0 && nu == std::floor(nu)) nu = -nu;  // I_{-n} = I_n
  if (w == cplx(0.0)) {
    if (nu == 0.0) return 1.0;
    return 0.0;  // Re nu > 0 case; nu < 0 non-integer would diverge
  }
  const cplx q = 0.25 * w * w;
  // term_m = q^m / (m! Gamma(m+nu+1)), starting at 1/Gamma(nu+1).
  cplx term;
  if (nu + 1.0 > 0.0) {
    term = std::exp(-ln_gamma(nu + 1.0));
  } else {
    const auto g = ln_gamma_signed(nu + 1.0);
    term = static_cast<double>(g.sign) * std::exp(-g.ln_abs);
  }
  cplx sum = term;
  int m = 1;
  for (; m <= ctl.max_terms; ++m) {
    term *= q / (static_cast<double>(m) * (nu + m));
    sum += term;
    if (std::abs(term) <= ctl.rel_tol * std::abs(sum) &&
        static_cast<double>(m) > std::abs(w))
      break;
  }
  if (m > ctl.max_terms)
    throw std::runtime_error("bessel_i_series: max_terms exhausted");
  // principal branch of (w/2)^nu
  return std::exp(nu * std::log(0.5 * w)) * sum;
}

cplx bessel_i_asymptotic(double nu, cplx w, int N) {
  if (w == cplx(0.0))
    throw std::domain_error("bessel_i_asymptotic: w = 0 invalid");
  // e^w/sqrt(2 pi w) sum_k (-1)^k (2w)^{-k} Gamma(nu+k+1/2)/(k! Gamma(nu-k+1/2));
  // successive terms obey t_k/t_{k-1} = ((k-1/2)^2 - nu^2) / (2 k w).
  const int cap = (N > 0) ? N : 60;
  cplx term = 1.0, sum = 1.0;
  double prev_mag = 1.0;
  for (int k = 1; k < cap; ++k) {
    const double c = (k - 0.5) * (k - 0.5) - nu * nu;
    term *= c / (2.0 * k) / w;
    const double mag = std::abs(term);
    if (N <= 0 && mag > prev_mag) break;  // optimal truncation reached
    sum += term;
    prev_mag = mag;
    if (N <= 0 && mag < 1e-18 * std::abs(sum)) break;
  }
  return std::exp(w) / std::sqrt(2.0 * M_PI * w) * sum;
}

cplx bessel_i(double nu, cplx w, const SeriesControl& ctl) {
  const double thr =
      (ctl.switch_threshold > 0.0) ? ctl.switch_threshold
                                   : 30.0 * std::max(1.0, std::abs(nu));
  if (std::abs(w) <= thr) return bessel_i_series(nu, w, ctl);
  return bessel_i_asymptotic(nu, w, 0);
}

double bessel_k_scaled(double nu, double x, const SeriesControl& ctl) {
  if (!(x > 0.0)) throw std::domain_error("bessel_k: requires x > 0");
  const double anu = std::abs(nu);  // K_nu = K_{-nu}
  // e^x K_nu(x) = int_0^inf exp(-x (cosh t - 1)) cosh(nu t) dt.
  // Truncate where the integrand falls below 1e-20 of its t=0 value.
  double T = 1.0;
  auto log_integrand = [&](double t) {
    const double ch = std::cosh(t);
    return -x * (ch - 1.0) + std::log(std::cosh(anu * t) + 1e-300);
  };
  while (T < 60.0 && log_integrand(T) > -46.0 - 0.5 * std::log1p(x)) T += 1.0;
  boost::math::quadrature::tanh_sinh<double> integrator;
  const double tol = std::max(ctl.rel_tol, 1e-15);
  const double v = integrator.integrate(
      [&](double t) {
        return std::exp(-x * (std::cosh(t) - 1.0)) * std::cosh(anu * t);
      },
      0.0, T, tol);
  return v;
}

double bessel_k(double nu, double x, const SeriesControl& ctl) {
  return std::exp(-x) * bessel_k_scaled(nu, x, ctl);
}

}  // namespace bsphere::specfun
