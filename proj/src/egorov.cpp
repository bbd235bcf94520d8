// Chart atlas, partition of unity, chartwise quantization, and the covariant
// symbol of assembled pseudodifferential operators.
#include "bsphere/egorov.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

#include "bsphere/coherent_family.hpp"
#include "bsphere/numerics.hpp"

namespace bsphere::egorov {

namespace {

constexpr double kPi = 3.14159265358979323846;

// margin between the inner support and the outer plateau: rho_c == 1 must
// hold across every finite-difference stencil placed where t_c > 0, so the
// auto step of the chartwise quantization is sized against this gap.
constexpr double kStencilMargin = 0.02;

void validate_chart_index(const ChartAtlas& atlas, int chart) {
  if (chart < 1 || chart > atlas.chart_count())
    throw std::invalid_argument("egorov: chart index out of range");
}

/// The frame rotation R_a (a >= 2): sign flip on slot 1, swap of slots 2 and
/// a+1 (1-based ambient slots).  Symmetric and involutive, det = +1; chart 1
/// uses the identity.  Maps chart-frame coordinates to ambient ones and back.
std::vector<double> apply_rotation(int chart, const std::vector<double>& t) {
  std::vector<double> y = t;
  if (chart >= 2) {
    y[0] = -t[0];
    y[1] = t[chart];
    y[chart] = t[1];
  }
  return y;
}

struct TildeCoords {
  double r = 0.0;      // sqrt(t0^2 + t1^2)
  double theta = 0.0;  // atan2(t1, t0), the cut at +-pi excluded
  double vsq = 0.0;    // |v|^2
  std::vector<double> v;
};

TildeCoords tilde_coords(const ChartAtlas& atlas, int chart,
                         const std::vector<double>& y) {
  validate_chart_index(atlas, chart);
  if (static_cast<int>(y.size()) != 2 * atlas.n)
    throw std::invalid_argument("egorov: ambient vector has wrong dimension");
  const std::vector<double> t = apply_rotation(chart, y);
  TildeCoords out;
  out.r = std::hypot(t[0], t[1]);
  out.theta = std::atan2(t[1], t[0]);
  out.v.assign(t.begin() + 2, t.end());
  for (double c : out.v) out.vsq += c * c;
  return out;
}

bool tilde_in_chart(const ChartAtlas& atlas, const TildeCoords& t) {
  return t.r > 0.0 && std::abs(t.theta) < kPi && t.vsq < atlas.v_max_sq;
}

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

SpherePoint random_sphere_point(int n, std::uint64_t& state) {
  std::vector<double> y(2 * n);
  double nrm2 = 0.0;
  for (int i = 0; i < 2 * n; ++i) {
    const double u1 = std::max(1e-17, numerics::u01(splitmix64(state)));
    const double u2 = numerics::u01(splitmix64(state));
    y[i] = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
    nrm2 += y[i] * y[i];
  }
  const double inv = 1.0 / std::sqrt(nrm2);
  for (double& v : y) v *= inv;
  return SpherePoint::from_real(std::move(y));
}

cplx i_power(int j) {
  switch (((j % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

double factorial(int m) {
  double f = 1.0;
  for (int j = 2; j <= m; ++j) f *= j;
  return f;
}

double binomial(int k, int j) {
  return factorial(k) / (factorial(j) * factorial(k - j));
}

std::vector<double> chart_u_vector(const ChartPoint& u) {
  std::vector<double> out(1 + u.v.size());
  out[0] = u.theta;
  std::copy(u.v.begin(), u.v.end(), out.begin() + 1);
  return out;
}

ChartPoint chart_point_from_u(int chart, const std::vector<double>& u) {
  ChartPoint cp;
  cp.chart = chart;
  cp.theta = u[0];
  cp.v.assign(u.begin() + 1, u.end());
  return cp;
}

void validate_unitary(const std::vector<CVec>& U, int n, const char* who) {
  if (static_cast<int>(U.size()) != n)
    throw std::invalid_argument(std::string(who) + ": U must be n x n");
  for (const auto& row : U)
    if (static_cast<int>(row.size()) != n)
      throw std::invalid_argument(std::string(who) + ": U must be n x n");
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      cplx s = 0.0;
      for (int k = 0; k < n; ++k) s += U[i][k] * std::conj(U[j][k]);
      const cplx want = (i == j) ? cplx(1.0) : cplx(0.0);
      if (std::abs(s - want) > 1e-12)
        throw std::invalid_argument(std::string(who) + ": U is not unitary");
    }
  }
}

CVec apply_matrix(const std::vector<CVec>& U, const CVec& v) {
  const int n = static_cast<int>(v.size());
  CVec out(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out[i] += U[i][j] * v[j];
  return out;
}

CVec apply_adjoint(const std::vector<CVec>& U, const CVec& v) {
  const int n = static_cast<int>(v.size());
  CVec out(n, 0.0);
  for (int s = 0; s < n; ++s)
    for (int r = 0; r < n; ++r) out[s] += std::conj(U[r][s]) * v[r];
  return out;
}

}  // namespace

// --- atlas ---------------------------------------------------------------------

ChartAtlas charts_build(int n) {
  if (n < 2) throw std::domain_error("charts_build: need n >= 2");
  ChartAtlas atlas;
  atlas.n = n;
  atlas.v_max_sq = 1.0 - 1.0 / (8.0 * (n - 1.0));
  // The hardest point to cover has y_1 = 0, weight 1/(2n-1) on slot 2 and the
  // rest spread evenly over slots 3..2n, equalizing the |v|-radius of chart 1
  // with those of all the rotated charts; its min-over-charts radius is W.
  const double worst =
      std::sqrt(((2.0 * n - 2.0) / (2.0 * n - 1.0)) / atlas.v_max_sq);
  atlas.part_inner_support = worst + 0.4 * (1.0 - worst);
  atlas.part_inner_plateau = 0.75 * atlas.part_inner_support;
  atlas.part_outer_plateau = atlas.part_inner_support + kStencilMargin;
  atlas.part_outer_support = 0.5 * (1.0 + atlas.part_outer_plateau);
  return atlas;
}

SpherePoint chart_to_sphere(const ChartAtlas& atlas, const ChartPoint& u) {
  validate_chart_index(atlas, u.chart);
  if (static_cast<int>(u.v.size()) != atlas.v_dim())
    throw std::invalid_argument("chart_to_sphere: v has wrong dimension");
  double vsq = 0.0;
  for (double c : u.v) vsq += c * c;
  if (!(vsq < 1.0))
    throw std::domain_error("chart_to_sphere: |v| >= 1");
  const double r = std::sqrt(1.0 - vsq);
  std::vector<double> t(2 * atlas.n);
  t[0] = r * std::cos(u.theta);
  t[1] = r * std::sin(u.theta);
  std::copy(u.v.begin(), u.v.end(), t.begin() + 2);
  return SpherePoint::from_real(apply_rotation(u.chart, t));
}

bool chart_contains(const ChartAtlas& atlas, int chart, const SpherePoint& x) {
  return tilde_in_chart(atlas, tilde_coords(atlas, chart, x.y));
}

ChartPoint sphere_to_chart(const ChartAtlas& atlas, int chart,
                           const SpherePoint& x) {
  TildeCoords t = tilde_coords(atlas, chart, x.y);
  if (!tilde_in_chart(atlas, t))
    throw std::domain_error("sphere_to_chart: point outside chart");
  ChartPoint cp;
  cp.chart = chart;
  cp.theta = t.theta;
  cp.v = std::move(t.v);
  return cp;
}

double chart_radius(const ChartAtlas& atlas, int chart, const SpherePoint& x) {
  const TildeCoords t = tilde_coords(atlas, chart, x.y);
  if (!tilde_in_chart(atlas, t))
    return std::numeric_limits<double>::infinity();
  return std::max(std::abs(t.theta) / kPi,
                  std::sqrt(t.vsq / atlas.v_max_sq));
}

int chart_assign(const ChartAtlas& atlas, const SpherePoint& x) {
  if (chart_contains(atlas, 1, x)) return 1;
  // outside chart 1 either |v|^2 = sum_{q>=3} y_q^2 >= V^2 or the point sits
  // on the theta cut (y_2 = 0, y_1 < 0); the dominant slot j >= 3 lands it in
  // chart j-1 (any chart >= 2 works when all those slots vanish).
  int best = -1;
  double mag = -1.0;
  for (int q = 2; q < 2 * atlas.n; ++q) {
    if (std::abs(x.y[q]) > mag) {
      mag = std::abs(x.y[q]);
      best = q;
    }
  }
  const int chart = (mag > 0.0) ? best : 2;
  return chart_contains(atlas, chart, x) ? chart : 0;
}

CoverReport chart_cover_check(int n, std::int64_t samples,
                              std::uint64_t seed) {
  const ChartAtlas atlas = charts_build(n);
  if (samples < 1) throw std::invalid_argument("chart_cover_check: samples");
  CoverReport rep;
  rep.samples = samples;
  std::uint64_t state = seed;
  for (std::int64_t i = 0; i < samples; ++i) {
    const SpherePoint x = random_sphere_point(n, state);
    double min_rho = std::numeric_limits<double>::infinity();
    for (int c = 1; c <= atlas.chart_count(); ++c)
      min_rho = std::min(min_rho, chart_radius(atlas, c, x));
    rep.worst_radius = std::max(rep.worst_radius, min_rho);
    if (chart_contains(atlas, 1, x)) {
      ++rep.in_chart1;
      continue;
    }
    const int c = chart_assign(atlas, x);
    if (c >= 2 && chart_contains(atlas, c, x))
      ++rep.reassigned;
    else
      ++rep.uncovered;
  }
  return rep;
}

// --- partition of unity ----------------------------------------------------------

double cutoff_profile(double rho, double plateau, double support) {
  if (!(plateau > 0.0 && support > plateau))
    throw std::invalid_argument("cutoff_profile: need 0 < plateau < support");
  if (rho <= plateau) return 1.0;
  if (rho >= support) return 0.0;
  const double s = (rho - plateau) / (support - plateau);
  const auto f = [](double u) { return u > 0.0 ? std::exp(-1.0 / u) : 0.0; };
  return f(1.0 - s) / (f(1.0 - s) + f(s));
}

double partition_t(const ChartAtlas& atlas, int chart, const SpherePoint& x) {
  validate_chart_index(atlas, chart);
  double total = 0.0;
  double mine = 0.0;
  for (int c = 1; c <= atlas.chart_count(); ++c) {
    const double rho = chart_radius(atlas, c, x);
    const double bump =
        std::isinf(rho) ? 0.0
                        : cutoff_profile(rho, atlas.part_inner_plateau,
                                         atlas.part_inner_support);
    total += bump;
    if (c == chart) mine = bump;
  }
  if (!(total > 0.0))
    throw std::runtime_error("partition_t: atlas coverage hole");
  return mine / total;
}

double partition_outer(const ChartAtlas& atlas, int chart,
                       const SpherePoint& x) {
  const double rho = chart_radius(atlas, chart, x);
  return std::isinf(rho) ? 0.0
                         : cutoff_profile(rho, atlas.part_outer_plateau,
                                          atlas.part_outer_support);
}

// --- cotangent anchor -------------------------------------------------------------

std::vector<double> ambient_covector(const CVec& z) {
  // pairing v -> Im(sum_s v_s conj(z_s)), the gradient of the oscillation
  // phase Im(x . z); with v_s = v_{2s} + i v_{2s+1} the components are
  // (-Im z_s, Re z_s).  This form is invariant under simultaneous unitary
  // moves of v and z (the unconjugated variant is not).
  std::vector<double> eta(2 * z.size());
  for (std::size_t s = 0; s < z.size(); ++s) {
    eta[2 * s] = -z[s].imag();
    eta[2 * s + 1] = z[s].real();
  }
  return eta;
}

std::vector<double> chart_covector(const ChartAtlas& atlas, int chart,
                                   const CVec& z) {
  if (static_cast<int>(z.size()) != atlas.n)
    throw std::invalid_argument("chart_covector: z dimension mismatch");
  const double r = cnorm(z);
  if (!(r > 0.0)) throw std::domain_error("chart_covector: z = 0");
  CVec x0(z);
  for (auto& c : x0) c /= r;
  const ChartPoint u0 =
      sphere_to_chart(atlas, chart, SpherePoint::from_complex(x0));
  const std::vector<double> eta = ambient_covector(z);

  const int vd = atlas.v_dim();
  const double vr = std::sqrt(1.0 - std::inner_product(u0.v.begin(),
                                                       u0.v.end(),
                                                       u0.v.begin(), 0.0));
  const double ct = std::cos(u0.theta), st = std::sin(u0.theta);
  std::vector<double> xi(1 + vd, 0.0);
  // theta column of D kappa^{-1} in the chart frame: (-r sin, r cos, 0,...)
  {
    std::vector<double> col(2 * atlas.n, 0.0);
    col[0] = -vr * st;
    col[1] = vr * ct;
    col = apply_rotation(chart, col);
    for (int j = 0; j < 2 * atlas.n; ++j) xi[0] += eta[j] * col[j];
  }
  // v_q column: ((-v_q/r) cos, (-v_q/r) sin, e_q)
  for (int q = 0; q < vd; ++q) {
    std::vector<double> col(2 * atlas.n, 0.0);
    const double dr = -u0.v[q] / vr;
    col[0] = dr * ct;
    col[1] = dr * st;
    col[2 + q] = 1.0;
    col = apply_rotation(chart, col);
    for (int j = 0; j < 2 * atlas.n; ++j) xi[1 + q] += eta[j] * col[j];
  }
  return xi;
}

// --- momentum-polynomial symbols ---------------------------------------------------

int MomentumPolySymbol::degree() const {
  int m = 0;
  for (const auto& t : terms) m = std::max(m, t.alpha.total());
  return m;
}

cplx MomentumPolySymbol::value_at(const std::vector<double>& u,
                                  const std::vector<double>& xi) const {
  cplx acc = 0.0;
  for (const auto& t : terms) {
    double mono = 1.0;
    for (std::size_t d = 0; d < xi.size(); ++d)
      for (int j = 0; j < t.alpha.k[d]; ++j) mono *= xi[d];
    acc += t.coeff(u) * mono;
  }
  return acc;
}

cplx pdo_apply(const MomentumPolySymbol& a, const ChartFn& f,
               const std::vector<double>& b, double hbar,
               const PDOApplySpec& spec) {
  if (a.dim != static_cast<int>(b.size()))
    throw std::invalid_argument("pdo_apply: dimension mismatch");
  if (!(spec.t >= 0.0 && spec.t <= 1.0))
    throw std::invalid_argument("pdo_apply: t outside [0, 1]");
  if (!(hbar > 0.0)) throw std::invalid_argument("pdo_apply: hbar <= 0");
  const double step =
      spec.fd_step > 0.0 ? spec.fd_step : std::min(0.04 * hbar, 0.005);
  if (!(step > 0.0 && step <= 0.1))
    throw std::invalid_argument("pdo_apply: fd_step outside (0, 0.1]");

  cplx acc = 0.0;
  for (const auto& term : a.terms) {
    term.alpha.validate(a.dim);
    const int order = term.alpha.total();
    if (order == 0) {
      acc += term.coeff(b) * f(b);
      continue;
    }
    if (order > 6)
      throw std::invalid_argument("pdo_apply: momentum degree above 6");

    auto g = [&](const std::vector<double>& c) {
      std::vector<double> arg(c.size());
      for (std::size_t d = 0; d < c.size(); ++d)
        arg[d] = (1.0 - spec.t) * b[d] + spec.t * c[d];
      return term.coeff(arg) * f(c);
    };

    // nested central stencils over the active dimensions
    struct DimStencil {
      int dim = 0;
      int half = 0;
      std::vector<double> w;
    };
    std::vector<DimStencil> dims;
    for (int d = 0; d < a.dim; ++d) {
      const int od = term.alpha.k[d];
      if (od == 0) continue;
      int npts = od + 5;
      if (npts % 2 == 0) ++npts;
      dims.push_back({d, npts / 2,
                      numerics::central_fd_weights(od, npts, step)});
    }
    cplx deriv = 0.0;
    std::vector<int> idx(dims.size(), 0);
    while (true) {
      double wprod = 1.0;
      std::vector<double> c = b;
      for (std::size_t q = 0; q < dims.size(); ++q) {
        wprod *= dims[q].w[idx[q]];
        c[dims[q].dim] += (idx[q] - dims[q].half) * step;
      }
      if (wprod != 0.0) deriv += wprod * g(c);
      std::size_t q = 0;
      for (; q < dims.size(); ++q) {
        if (++idx[q] < static_cast<int>(dims[q].w.size())) break;
        idx[q] = 0;
      }
      if (q == dims.size()) break;
    }
    acc += std::pow(hbar, order) * i_power(-order) * deriv;
  }
  return acc;
}

// --- separable oscillatory path ----------------------------------------------------

namespace {

std::vector<cplx> poly_multiply(const std::vector<cplx>& p,
                                const std::vector<cplx>& q) {
  std::vector<cplx> out(p.size() + q.size() - 1, 0.0);
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j) out[i + j] += p[i] * q[j];
  return out;
}

/// P(scale x + shift) by iterated multiply-accumulate.
std::vector<cplx> poly_compose_affine(const std::vector<cplx>& p, cplx scale,
                                      cplx shift) {
  std::vector<cplx> out{0.0};
  std::vector<cplx> base{1.0};
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (out.size() < base.size()) out.resize(base.size(), 0.0);
    for (std::size_t i = 0; i < base.size(); ++i) out[i] += p[j] * base[i];
    if (j + 1 < p.size()) base = poly_multiply(base, {shift, scale});
  }
  return out;
}

}  // namespace

cplx Factor1D::eval(double x) const {
  cplx pv = 0.0;
  for (std::size_t j = poly.size(); j-- > 0;) pv = pv * x + poly[j];
  return pv * std::exp((q2 * x + q1) * x + q0);
}

Factor1D Factor1D::derivative() const {
  Factor1D out = *this;
  out.poly.assign(poly.size() + 1, 0.0);
  for (std::size_t j = 0; j < poly.size(); ++j) {
    if (j + 1 < poly.size()) out.poly[j] += (j + 1.0) * poly[j + 1];
    out.poly[j] += q1 * poly[j];
    out.poly[j + 1] += 2.0 * q2 * poly[j];
  }
  return out;
}

Factor1D Factor1D::multiply(const Factor1D& other) const {
  Factor1D out;
  out.poly = poly_multiply(poly, other.poly);
  out.q2 = q2 + other.q2;
  out.q1 = q1 + other.q1;
  out.q0 = q0 + other.q0;
  return out;
}

Factor1D Factor1D::affine(double scale, double shift) const {
  Factor1D out;
  out.poly = poly_compose_affine(poly, scale, shift);
  out.q2 = q2 * scale * scale;
  out.q1 = 2.0 * q2 * scale * shift + q1 * scale;
  out.q0 = (q2 * shift + q1) * shift + q0;
  return out;
}

cplx Factor1D::fourier(double nu) const {
  if (!(q2.real() < 0.0))
    throw std::invalid_argument("Factor1D::fourier: needs Re q2 < 0");
  const cplx beta = q1 - cplx(0.0, 1.0) * nu;
  const cplx A = -q2;  // Re A > 0
  // complete the square: integral of Q(u) e^{q2 u^2}, Q = P shifted
  const std::vector<cplx> Q =
      poly_compose_affine(poly, 1.0, -beta / (2.0 * q2));
  cplx moment = std::sqrt(kPi / A);  // principal branch
  cplx acc = Q[0] * moment;
  for (std::size_t m = 2; m < Q.size() + 2; m += 2) {
    moment *= (m - 1.0) / (2.0 * A);
    if (m < Q.size()) acc += Q[m] * moment;
  }
  return acc * std::exp(q0 - beta * beta / (4.0 * q2));
}

cplx SeparableFn::eval(const std::vector<double>& c) const {
  if (c.size() != factors.size())
    throw std::invalid_argument("SeparableFn: dimension mismatch");
  cplx v = 1.0;
  for (std::size_t d = 0; d < factors.size(); ++d) v *= factors[d].eval(c[d]);
  return v;
}

cplx pdo_apply_oscillatory(const std::vector<SeparableSymbolTerm>& a,
                           const SeparableFn& f, const std::vector<double>& b,
                           double hbar, const PDOApplySpec& spec) {
  const int d = static_cast<int>(b.size());
  if (d < 1 || static_cast<int>(f.factors.size()) != d)
    throw std::invalid_argument("pdo_apply_oscillatory: dimension mismatch");
  if (!(spec.t >= 0.0 && spec.t <= 1.0))
    throw std::invalid_argument("pdo_apply_oscillatory: t outside [0, 1]");
  if (!(hbar > 0.0))
    throw std::invalid_argument("pdo_apply_oscillatory: hbar <= 0");
  if (spec.xi_nodes < 8)
    throw std::invalid_argument("pdo_apply_oscillatory: xi_nodes < 8");

  int max_alpha = 0;
  for (const auto& term : a) {
    term.alpha.validate(d);
    for (int dim = 0; dim < d; ++dim)
      max_alpha = std::max(max_alpha, term.alpha.k[dim]);
  }
  const int k = spec.k > 0 ? spec.k : max_alpha + 2;
  if (k < max_alpha + 2)
    throw std::invalid_argument(
        "pdo_apply_oscillatory: need k >= max_d alpha_d + 2");

  // The per-dimension regularizer (1+xi_d^2)^{-k} (1 - hbar xi_d i d_{c_d})^k
  // keeps every xi_d-integral absolutely convergent (k >= alpha_d + 2) and
  // factorizes the quantization into a product of 1-d integrals
  //   I_dim = (2 pi)^{-1} int e^{i b_dim nu} (1 + xi^2)^{-k} xi^{alpha_dim}
  //           sum_{mu <= k} C(k, mu) hbar^mu (-i)^mu xi^mu FT[h^(mu)](nu) dnu
  // with xi = hbar nu and h(c) = coeff_dim((1-t) b_dim + t c) f_dim(c); the
  // c-integrals are the closed-form Fourier transforms FT[h^(mu)].
  cplx acc = 0.0;
  for (const auto& term : a) {
    if (!term.coeff.factors.empty() &&
        static_cast<int>(term.coeff.factors.size()) != d)
      throw std::invalid_argument(
          "pdo_apply_oscillatory: coefficient dimension mismatch");
    cplx prod = term.scale;
    for (int dim = 0; dim < d; ++dim) {
      Factor1D h = f.factors[dim];
      if (!term.coeff.factors.empty())
        h = h.multiply(
            term.coeff.factors[dim].affine(spec.t, (1.0 - spec.t) * b[dim]));
      const double decay = -h.q2.real();
      if (!(decay > 0.0))
        throw std::invalid_argument(
            "pdo_apply_oscillatory: amplitude lacks Gaussian decay");

      std::vector<Factor1D> chain{h};
      for (int m = 1; m <= k; ++m) chain.push_back(chain.back().derivative());

      // |FT[h]| decays on the nu scale sqrt(decay) around a center set by
      // Im q1 / |q2|; the span covers the center, ~10 Gaussian widths, and a
      // buffer for the polynomial amplification xi^{alpha+mu}.
      double nu_span = std::abs(h.q1.imag()) +
                       10.0 * std::abs(h.q2) / std::sqrt(decay) + 6.0 +
                       static_cast<double>(term.alpha.k[dim] + k);
      if (spec.momentum_cutoff > 0.0)
        nu_span = std::min(nu_span, spec.momentum_cutoff / hbar);
      // enough nodes for the Fourier width and the e^{i b nu} oscillation
      const double feature = std::min(std::sqrt(decay), 1.0);
      const int nodes = std::max(
          {spec.xi_nodes,
           static_cast<int>(std::ceil(12.0 * nu_span / feature)),
           static_cast<int>(std::ceil(4.0 * nu_span * std::abs(b[dim])))});
      const numerics::GaussRule gl = numerics::gauss_legendre(nodes);

      const int ad = term.alpha.k[dim];
      cplx integral = 0.0;
      for (int i = 0; i < nodes; ++i) {
        const double nu = nu_span * gl.x[i];
        const double w = nu_span * gl.w[i];
        const double xi = hbar * nu;
        const cplx phase = std::exp(cplx(0.0, b[dim] * nu));
        const double reg = std::pow(1.0 + xi * xi, -k);
        cplx sum = 0.0;
        double xipow = std::pow(xi, ad);  // xi^{alpha_dim + mu}
        for (int mu = 0; mu <= k; ++mu) {
          sum += binomial(k, mu) * std::pow(hbar, mu) * i_power(-mu) * xipow *
                 chain[mu].fourier(nu);
          xipow *= xi;
        }
        integral += w * phase * reg * sum;
      }
      prod *= integral / (2.0 * kPi);
    }
    acc += prod;
  }
  return acc;
}

// --- assembled operator ------------------------------------------------------------

namespace {

void validate_assembled(const AssembledOperator& op) {
  op.params.validate();
  const int charts = 2 * op.params.n - 1;
  if (static_cast<int>(op.chart_symbols.size()) != charts)
    throw std::invalid_argument(
        "AssembledOperator: need one symbol slot per chart (2n-1)");
  for (const auto& sym : op.chart_symbols)
    if (!sym.terms.empty() && sym.dim != charts)
      throw std::invalid_argument(
          "AssembledOperator: symbol dimension must be 2n-1");
}

}  // namespace

cplx principal_symbol_at(const AssembledOperator& op, const CVec& z) {
  validate_assembled(op);
  const ChartAtlas atlas = charts_build(op.params.n);
  const double r = cnorm(z);
  if (!(r > 0.0)) throw std::domain_error("principal_symbol_at: z = 0");
  CVec x0(z);
  for (auto& c : x0) c /= r;
  const SpherePoint pt = SpherePoint::from_complex(x0);

  cplx acc = 0.0;
  for (int c = 1; c <= atlas.chart_count(); ++c) {
    const auto& sym = op.chart_symbols[c - 1];
    if (sym.terms.empty()) continue;
    const double tc = partition_t(atlas, c, pt);
    if (tc == 0.0) continue;
    const ChartPoint u0 = sphere_to_chart(atlas, c, pt);
    acc += tc * sym.value_at(chart_u_vector(u0), chart_covector(atlas, c, z));
  }
  return acc;
}

cplx covariant_symbol_pdo(const AssembledOperator& op, const CVec& z,
                          QuadSpec qspec, const SeriesControl& ctl,
                          const std::vector<CVec>& move) {
  validate_assembled(op);
  const Params& prm = op.params;
  const int n = prm.n;
  if (static_cast<int>(z.size()) != n)
    throw std::invalid_argument("covariant_symbol_pdo: z dimension mismatch");
  const double r = cnorm(z);
  if (!(r > 0.0)) throw std::domain_error("covariant_symbol_pdo: z = 0");
  const bool has_move = !move.empty();
  if (has_move) validate_unitary(move, n, "covariant_symbol_pdo");

  // peak of |K(Ux, z)|^2 sits at x = U* z / |z|
  CVec peak = has_move ? apply_adjoint(move, z) : z;
  for (auto& c : peak) c /= r;

  const int floor_nodes =
      static_cast<int>(std::ceil(8.0 / std::sqrt(prm.hbar)));
  if (qspec.nodes_per_angle < floor_nodes)
    throw std::invalid_argument(
        "covariant_symbol_pdo: nodes_per_angle below the 8/sqrt(hbar) floor");
  if (qspec.align_y.empty())
    qspec.align_y = SpherePoint::from_complex(peak).y;
  if (qspec.cluster_delta == 0.0)
    qspec.cluster_delta = std::min(1.0, 3.0 * std::sqrt(prm.hbar / (2.0 * r)));

  const ChartAtlas atlas = charts_build(n);
  PDOApplySpec pspec = op.pdo;
  if (pspec.fd_step == 0.0) {
    // keep every stencil point (half-width <= 5 per dimension) within the
    // outer-plateau margin so the cutoffs are exactly 1 across the stencil
    const double shift_per_h =
        5.0 * (1.0 / kPi +
               std::sqrt(2.0 * n - 2.0) / std::sqrt(atlas.v_max_sq));
    pspec.fd_step = std::min({0.04 * prm.hbar / std::max(1.0, r),
                              kStencilMargin / shift_per_h, 0.005});
  }
  auto integrand = [&](const SpherePoint& x) {
    const SpherePoint xm =
        has_move ? SpherePoint::from_complex(apply_matrix(move, x.x)) : x;
    const cplx uval = coherent_family::k_family_eval(prm, xm, z, ctl);
    cplx acc = 0.0;
    for (int c = 1; c <= atlas.chart_count(); ++c) {
      const auto& sym = op.chart_symbols[c - 1];
      if (sym.terms.empty()) continue;
      const double tc = partition_t(atlas, c, x);
      if (tc == 0.0) continue;
      const std::vector<double> b =
          chart_u_vector(sphere_to_chart(atlas, c, x));
      ChartFn fc = [&, c](const std::vector<double>& u) -> cplx {
        const SpherePoint xs =
            chart_to_sphere(atlas, chart_point_from_u(c, u));
        const double rho = partition_outer(atlas, c, xs);
        if (rho == 0.0) return 0.0;
        const SpherePoint xsm =
            has_move ? SpherePoint::from_complex(apply_matrix(move, xs.x))
                     : xs;
        return rho * coherent_family::k_family_eval(prm, xsm, z, ctl);
      };
      acc += tc * pdo_apply(sym, fc, b, prm.hbar, pspec);
    }
    return acc * std::conj(uval);
  };
  const cplx num = sphere_geom::surface_integral(n, integrand, qspec);
  const cplx den = coherent_family::kernel_T(prm, z, z, ctl);
  return num / den;
}

AsymptoticFit egorov_check(const AssembledOperator& op, const CVec& z,
                           std::vector<double> hbar_grid, QuadSpec qspec) {
  validate_assembled(op);
  if (hbar_grid.empty()) hbar_grid = {0.4, 0.283, 0.2, 0.141, 0.1};
  const cplx principal = principal_symbol_at(op, z);

  AsymptoticFit fit;
  fit.grid = hbar_grid;
  for (double h : hbar_grid) {
    AssembledOperator oph = op;
    oph.params.hbar = h;
    QuadSpec s = qspec;
    s.nodes_per_angle = std::max(
        qspec.nodes_per_angle,
        static_cast<int>(std::ceil(8.0 / std::sqrt(h))));
    const cplx cov = covariant_symbol_pdo(oph, z, s);
    fit.residuals.push_back(std::abs(cov - principal));
  }
  std::vector<double> lg, lr;
  for (std::size_t i = 0; i < hbar_grid.size(); ++i) {
    if (fit.residuals[i] < 1e-300) continue;
    lg.push_back(std::log(hbar_grid[i]));
    lr.push_back(std::log(fit.residuals[i]));
  }
  if (lg.size() >= 2) {
    const auto [c0, c1] = numerics::fit_line(lg, lr);
    fit.fitted_log_constant = c0;
    fit.fitted_slope = c1;
  }
  return fit;
}

double conjugation_check(const AssembledOperator& op, const CVec& z,
                         const std::vector<CVec>& U, QuadSpec qspec) {
  validate_assembled(op);
  validate_unitary(U, op.params.n, "conjugation_check");
  const cplx lhs = covariant_symbol_pdo(op, z, qspec, {}, U);
  const cplx rhs = covariant_symbol_pdo(op, apply_adjoint(U, z), qspec);
  return std::abs(lhs - rhs);
}

}  // namespace bsphere::egorov
