// Coherent family, reproducing kernel, measure, Parseval, g_a machinery.
#include "bsphere/coherent_family.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <stdexcept>

#include "bsphere/numerics.hpp"
#include "bsphere/specfun.hpp"

namespace bsphere::coherent_family {

using specfun::gamma_ratio;
using specfun::ln_gamma;

double c_coeff(const Params& params, int ell) {
  params.validate();
  if (ell < 0) throw std::invalid_argument("c_coeff: ell >= 0 required");
  const double n = params.n, p = params.p;
  // (n)_l / (n+p)_l = Gamma(n+l) Gamma(n+p) / (Gamma(n) Gamma(n+p+l))
  const double ln_ratio = ln_gamma(n + ell) + ln_gamma(n + p) - ln_gamma(n) -
                          ln_gamma(n + p + ell);
  return std::exp(0.5 * ln_ratio);
}

SeriesEval k_family_eval_detailed(const Params& params, const SpherePoint& x,
                                  const CVec& z, const SeriesControl& ctl) {
  params.validate();
  const cplx t = cdot(x.x, z) / params.hbar;
  const double at = std::abs(t);
  const double n = params.n, p = params.p;

  SeriesEval out;
  cplx term = 1.0;  // c_0/0! t^0
  cplx sum = term;
  int ell = 0;
  double ratio = 0.0;
  for (ell = 1; ell <= ctl.max_terms; ++ell) {
    // term_{l} = term_{l-1} * (c_l/c_{l-1}) * t / l,
    // c_l/c_{l-1} = sqrt((n+l-1)/(n+p+l-1)).
    const double cr = std::sqrt((n + ell - 1) / (n + p + ell - 1));
    term *= cr * t / static_cast<double>(ell);
    sum += term;
    ratio = at / (ell + 1) * std::sqrt((n + ell) / (n + p + ell));
    if (std::abs(term) <= ctl.rel_tol * std::abs(sum) &&
        static_cast<double>(ell) > at && ratio < 1.0)
      break;
  }
  if (ell > ctl.max_terms)
    throw std::runtime_error("k_family_eval: max_terms exhausted");
  const double next = std::abs(term) * ratio;
  out.value = sum;
  out.tail_bound = next / (1.0 - ratio);
  out.terms = ell + 1;
  return out;
}

cplx k_family_eval(const Params& params, const SpherePoint& x, const CVec& z,
                   const SeriesControl& ctl) {
  return k_family_eval_detailed(params, x, z, ctl).value;
}

cplx kernel_T(const Params& params, const CVec& z, const CVec& w,
              const SeriesControl& ctl) {
  params.validate();
  const double n = params.n, p = params.p;
  const cplx u = cdot(z, w) / (params.hbar * params.hbar);
  const double au = std::abs(u);
  if (au == 0.0) return 1.0;

  const double nu = n + p - 1.0;
  const double thr = (ctl.switch_threshold > 0.0)
                         ? ctl.switch_threshold
                         : 30.0 * std::max(1.0, std::abs(nu));
  if (2.0 * std::sqrt(au) <= thr) {
    // entire series: sum_l Gamma(n+p) u^l / (l! Gamma(l+n+p)), term_0 = 1.
    cplx term = 1.0, sum = 1.0;
    int ell = 1;
    for (; ell <= ctl.max_terms; ++ell) {
      term *= u / (static_cast<double>(ell) * (nu + ell));
      sum += term;
      if (std::abs(term) <= ctl.rel_tol * std::abs(sum) &&
          static_cast<double>(ell) > std::sqrt(au))
        break;
    }
    if (ell > ctl.max_terms)
      throw std::runtime_error("kernel_T: max_terms exhausted");
    return sum;
  }
  // Bessel route (principal branches).
  if (std::imag(u) == 0.0 && std::real(u) < 0.0)
    throw std::domain_error("kernel_T: Arg(z.w) = pi on the branch route");
  const cplx su = std::sqrt(u);
  const cplx pw = std::exp(0.5 * (1.0 - n - p) * std::log(u));
  return std::exp(ln_gamma(n + p)) * pw * specfun::bessel_i(nu, 2.0 * su, ctl);
}

double measure_density(const Params& params, const CVec& z) {
  params.validate();
  const double n = params.n, p = params.p, h = params.hbar;
  const double r = cnorm(z);
  const double front =
      std::exp(-ln_gamma(n + p)) * 2.0 / std::pow(M_PI * h * h, n);
  if (r < 1e-280) {
    if (p <= 0.0)
      throw std::domain_error("measure_density: singular at z = 0 for p <= 0");
    // (r/h)^p K_p(2r/h) -> Gamma(p)/2 as r -> 0.
    return front * 0.5 * std::exp(ln_gamma(p));
  }
  const double arg = 2.0 * r / h;
  // assemble in logs: (r/h)^p e^{-arg} * [e^{arg} K_p(arg)]
  const double scaled = specfun::bessel_k_scaled(p, arg);
  return front * std::exp(p * std::log(r / h) - arg) * scaled;
}

cplx u_transform_monomial(const Params& params, const MultiIndex& k,
                          const CVec& z) {
  params.validate();
  k.validate(params.n);
  if (static_cast<int>(z.size()) != params.n)
    throw std::invalid_argument("u_transform_monomial: z dimension mismatch");
  CVec zh(z.size());
  for (std::size_t s = 0; s < z.size(); ++s) zh[s] = z[s] / params.hbar;
  return c_coeff(params, k.total()) * gamma_ratio(params.n, params.n + k.total()) *
         cpow_multi(zh, k);
}

namespace {

/// int_0^inf t^{mu-1} K_p(t) dt by tanh-sinh on the exponentially scaled
/// integrand (requires mu > |p|).
double macdonald_moment(double mu, double p) {
  boost::math::quadrature::tanh_sinh<double> integrator;
  const double T = 60.0 + 12.0 * mu;
  return integrator.integrate(
      [&](double t) {
        if (t <= 0.0) return 0.0;
        return std::exp((mu - 1.0) * std::log(t) - t) *
               specfun::bessel_k_scaled(p, t);
      },
      0.0, T, 1e-12);
}

}  // namespace

double parseval_check(const Params& params, const MultiIndex& a,
                      const MultiIndex& b) {
  params.validate();
  a.validate(params.n);
  b.validate(params.n);
  const double rhs = sphere_geom::monomial_inner(a, b, params.n);
  // The angular factor of the transformed pairing is the same closed-form
  // delta; off-diagonal pairs vanish identically on both sides.
  if (!(a == b)) return std::abs(0.0 - rhs);

  const int n = params.n;
  const double p = params.p;
  const int k = a.total();
  const double ck = c_coeff(params, k);
  const double gr = gamma_ratio(n, n + k);
  // Angular closed form contributes rhs itself times the sphere area; with
  // the radial MacDonald moment after t = 2 rho / hbar (hbar cancels):
  //   lhs = rhs * c_k^2 (Gamma(n)/Gamma(n+k))^2 * 4 * 2^{-2k-2n-p}
  //         * M(2k+2n+p, p) / (Gamma(n) Gamma(n+p)).
  const double mu = 2.0 * k + 2.0 * n + p;
  const double M = macdonald_moment(mu, p);
  const double lhs = rhs * ck * ck * gr * gr * 4.0 *
                     std::pow(2.0, -2.0 * k - 2.0 * n - p) * M /
                     std::exp(ln_gamma(n) + ln_gamma(n + p));
  return std::abs(lhs - rhs) / std::max(std::abs(rhs), 1e-300);
}

cplx inner_product_asymptotic(const Params& params, const CVec& z,
                              const CVec& w, int order) {
  params.validate();
  if (order != 0 && order != 1)
    throw std::invalid_argument("inner_product_asymptotic: order in {0,1}");
  const cplx u = cdot(z, w);
  if (u == cplx(0.0))
    throw std::domain_error("inner_product_asymptotic: z.w = 0");
  const double n = params.n, p = params.p, h = params.hbar;
  const cplx uh2 = u / (h * h);
  const cplx su = std::sqrt(u);
  cplx val = std::exp(ln_gamma(n + p)) / (2.0 * std::sqrt(M_PI)) *
             std::exp(0.5 * (-p - n + 0.5) * std::log(uh2)) *
             std::exp(2.0 * su / h);
  if (order >= 1)
    val *= 1.0 - (n + p - 1.5) * (n + p - 0.5) * h / (4.0 * su);
  return val;
}

// --- g_a ---------------------------------------------------------------------

cplx g_eval(double a, cplx z, const SeriesControl& ctl) {
  if (!(a > 0.0)) throw std::domain_error("g_eval: requires a > 0");
  const double az = std::abs(z);
  cplx pw = 1.0;  // z^l / l!
  cplx sum = 1.0;
  int ell = 1;
  for (; ell <= ctl.max_terms; ++ell) {
    pw *= z / static_cast<double>(ell);
    const cplx term = std::sqrt(a * ell + 1.0) * pw;
    sum += term;
    if (std::abs(term) <= ctl.rel_tol * std::abs(sum) &&
        static_cast<double>(ell) > az)
      break;
  }
  if (ell > ctl.max_terms)
    throw std::runtime_error("g_eval: max_terms exhausted");
  return sum;
}

cplx g_eval_derivative(double a, int s, cplx z, const SeriesControl& ctl) {
  if (!(a > 0.0)) throw std::domain_error("g_eval_derivative: requires a > 0");
  if (s < 0) throw std::invalid_argument("g_eval_derivative: s >= 0");
  if (s == 0) return g_eval(a, z, ctl);
  const double az = std::abs(z);
  // sum_{l>=s} sqrt(a l + 1) z^{l-s} / (l-s)!
  cplx pw = 1.0;
  cplx sum = std::sqrt(a * s + 1.0);
  int m = 1;  // m = l - s
  for (; m <= ctl.max_terms; ++m) {
    pw *= z / static_cast<double>(m);
    const cplx term = std::sqrt(a * (m + s) + 1.0) * pw;
    sum += term;
    if (std::abs(term) <= ctl.rel_tol * std::abs(sum) &&
        static_cast<double>(m) > az)
      break;
  }
  if (m > ctl.max_terms)
    throw std::runtime_error("g_eval_derivative: max_terms exhausted");
  return sum;
}

cplx g_integral(double a, cplx z) {
  if (!(a > 0.0)) throw std::domain_error("g_integral: requires a > 0");
  if (!(std::real(z) > 0.0))
    throw std::domain_error("g_integral: requires Re z > 0");
  // After the exact substitution w^2 = 1 - e^{-q^2} the profile weight
  // m(w) dw becomes e^{-q^2/a} dq and the integral turns into the smooth,
  // Gaussian-tailed form
  //   g_a(z) = (2/sqrt(a pi)) e^z int_0^inf [a z e^{-q^2} + 1]
  //            e^{-z (1 - e^{-q^2})} e^{-q^2/a} dq.
  const double T = std::sqrt(a * (50.0 + std::log1p(a * std::abs(z)))) + 1.0;
  auto integrand = [&](double q, bool imagpart) {
    const double e = std::exp(-q * q);
    const cplx v = (a * z * e + 1.0) * std::exp(-z * (1.0 - e) - q * q / a);
    return imagpart ? std::imag(v) : std::real(v);
  };
  boost::math::quadrature::tanh_sinh<double> integrator;
  const double re = integrator.integrate(
      [&](double q) { return integrand(q, false); }, 0.0, T, 1e-14);
  const double im = integrator.integrate(
      [&](double q) { return integrand(q, true); }, 0.0, T, 1e-14);
  return 2.0 / std::sqrt(a * M_PI) * std::exp(z) * cplx(re, im);
}

namespace {

using Series = std::vector<double>;

Series series_mul(const Series& p, const Series& q, int N) {
  Series r(N + 1, 0.0);
  for (int i = 0; i <= N; ++i) {
    if (p[i] == 0.0) continue;
    for (int j = 0; i + j <= N; ++j) r[i + j] += p[i] * q[j];
  }
  return r;
}

Series series_log(const Series& p, int N) {  // p[0] = 1
  Series L(N + 1, 0.0);
  for (int k = 1; k <= N; ++k) {
    double s = k * p[k];
    for (int j = 1; j < k; ++j) s -= j * L[j] * p[k - j];
    L[k] = s / k;
  }
  return L;
}

Series series_exp(const Series& L, int N) {  // L[0] = 0
  Series E(N + 1, 0.0);
  E[0] = 1.0;
  for (int k = 1; k <= N; ++k) {
    double s = 0.0;
    for (int j = 1; j <= k; ++j) s += j * L[j] * E[k - j];
    E[k] = s / k;
  }
  return E;
}

}  // namespace

std::vector<double> m_taylor_coeffs(double a, int N) {
  if (!(a > 0.0) || a > 2.0)
    throw std::domain_error("m_taylor_coeffs: requires a in (0, 2]");
  if (N < 0 || N > 8)
    throw std::invalid_argument("m_taylor_coeffs: degree cap N <= 8");
  // m(w) = P(w^2),  P(u) = (1-u)^{alpha} h(u)^{-1/2},
  // h(u) = -ln(1-u)/u = sum_j u^j/(j+1),  alpha = 1/a - 1.
  const double alpha = 1.0 / a - 1.0;
  Series binom(N + 1, 0.0);
  binom[0] = 1.0;
  for (int j = 1; j <= N; ++j)
    binom[j] = binom[j - 1] * (alpha - (j - 1)) / j * (-1.0);
  Series h(N + 1, 0.0);
  for (int j = 0; j <= N; ++j) h[j] = 1.0 / (j + 1);
  Series lh = series_log(h, N);
  for (double& v : lh) v *= -0.5;
  return series_mul(binom, series_exp(lh, N), N);
}

GaCoefficients GaCoefficients::build(double a, int N, int s_max) {
  GaCoefficients c;
  c.a = a;
  c.b = m_taylor_coeffs(a, N);
  c.d.resize(N + s_max + 2);
  for (int r = 0; r < static_cast<int>(c.d.size()); ++r)
    c.d[r] = 0.5 * std::exp(ln_gamma(r + 0.5));
  return c;
}

double GaCoefficients::bracket_coefficient(int q, int s) const {
  if (q < 0 || s < 0) throw std::invalid_argument("bracket_coefficient");
  if (q >= static_cast<int>(b.size()))
    throw std::invalid_argument("bracket_coefficient: q exceeds table");
  auto dval = [&](int r) { return r < 0 ? 0.0 : d.at(r); };
  auto B = [&](int k) {
    return a * b[0] * (dval(k) - k * dval(k - 1));
  };
  auto E = [&](int k, int j) {
    return a * (b[j] - b[j - 1]) * (dval(j + k) - k * dval(j + k - 1)) +
           b[j - 1] * dval(k + j - 1);
  };
  double binom = 1.0;  // C(s, k)
  double acc = 0.0;
  for (int k = 0; k <= std::min(q, s); ++k) {
    if (k > 0) binom *= static_cast<double>(s - k + 1) / k;
    const double inner = (k == q) ? B(k) : E(k, q - k);
    acc += ((k % 2) ? -1.0 : 1.0) * binom * inner;
  }
  return acc;
}

double GaCoefficients::a_coeff(int q, int s) const {
  return bracket_coefficient(q, s) / bracket_coefficient(0, s);
}

cplx g_derivative_asymptotic(double a, int s, cplx z, int N,
                             const GaCoefficients& coeffs) {
  if (!(std::real(z) > 0.0))
    throw std::domain_error("g_derivative_asymptotic: requires Re z > 0");
  if (std::abs(coeffs.a - a) > 1e-12)
    throw std::invalid_argument("g_derivative_asymptotic: coeffs built for different a");
  if (N >= static_cast<int>(coeffs.b.size()))
    throw std::invalid_argument("g_derivative_asymptotic: N exceeds coefficient table");
  cplx bracket = 0.0;
  cplx zq = 1.0;
  for (int q = 0; q <= N; ++q) {
    bracket += coeffs.bracket_coefficient(q, s) * zq;
    zq /= z;
  }
  return 2.0 * std::exp(z) * std::sqrt(z / (a * M_PI)) * bracket;
}

RegionTag region_classify(const SpherePoint& x, const CVec& z, double C) {
  if (!(C > 1.0)) throw std::invalid_argument("region_classify: C > 1 required");
  const double r = cnorm(z);
  if (!(r > 0.0)) throw std::domain_error("region_classify: z = 0");
  return (C * std::real(cdot(x.x, z)) / r >= 1.0) ? RegionTag::W : RegionTag::V;
}

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// Deterministic quasi-uniform point on S^n (Gaussian directions).
SpherePoint random_sphere_point(int n, std::uint64_t& state) {
  std::vector<double> y(2 * n);
  double nrm2 = 0.0;
  for (int i = 0; i < 2 * n; ++i) {
    // Box-Muller from explicit u01 values.
    const double u1 = std::max(1e-17, numerics::u01(splitmix64(state)));
    const double u2 = numerics::u01(splitmix64(state));
    y[i] = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    nrm2 += y[i] * y[i];
  }
  const double inv = 1.0 / std::sqrt(nrm2);
  for (double& v : y) v *= inv;
  return SpherePoint::from_real(std::move(y));
}

}  // namespace

AsymptoticFit v_region_bound_check(const Params& params, const CVec& z,
                                   double C, int s,
                                   const std::vector<double>& hbar_grid,
                                   std::uint64_t seed) {
  params.validate();
  if (std::abs(params.p + 1.0) > 1e-12)
    throw std::invalid_argument("v_region_bound_check: requires p = -1");
  const double a = 1.0 / (params.n - 1.0);
  const double r = cnorm(z);
  const double mu = 1.0 / C - 1.0;

  std::vector<double> grid = hbar_grid;
  if (grid.empty()) grid = {0.2, 0.141, 0.1, 0.071, 0.05, 0.035, 0.025};

  // deterministic V-region sample set
  std::uint64_t state = seed;
  std::vector<SpherePoint> pts;
  while (pts.size() < 48) {
    SpherePoint x = random_sphere_point(params.n, state);
    if (region_classify(x, z, C) == RegionTag::V) pts.push_back(std::move(x));
  }

  AsymptoticFit fit;
  fit.grid = grid;
  SeriesControl ctl;
  ctl.max_terms = 2000;
  for (double h : grid) {
    const double shape =
        (1.0 / h) * std::exp((1.0 + mu) * r / h) * (r / h + 1.0);
    double worst = 0.0;
    for (const auto& x : pts) {
      const cplx t = cdot(x.x, z) / h;
      worst = std::max(worst, std::abs(g_eval_derivative(a, s, t, ctl)) / shape);
    }
    fit.residuals.push_back(worst);
  }
  fit.fitted_slope = numerics::fit_loglog_slope(grid, fit.residuals);
  double c1 = 0.0;
  for (double v : fit.residuals) c1 = std::max(c1, v);
  fit.fitted_log_constant = std::log(std::max(c1, 1e-300));
  return fit;
}

cplx k_minus1_asymptotic(const Params& params, const SpherePoint& x,
                         const CVec& z, int order) {
  params.validate();
  if (std::abs(params.p + 1.0) > 1e-12)
    throw std::invalid_argument("k_minus1_asymptotic: requires p = -1");
  if (order != 0 && order != 1)
    throw std::invalid_argument("k_minus1_asymptotic: order in {0,1}");
  if (region_classify(x, z, 2.0) != RegionTag::W)
    throw std::domain_error("k_minus1_asymptotic: x outside the peak region W_z");
  const cplx t = cdot(x.x, z) / params.hbar;
  const double nm1 = params.n - 1.0;
  cplx val = std::sqrt(t / nm1) * std::exp(t);
  if (order >= 1) {
    const double a1 = 0.5 * (params.n - 1.25);
    val *= 1.0 + a1 / t;
  }
  return val;
}

}  // namespace bsphere::coherent_family
