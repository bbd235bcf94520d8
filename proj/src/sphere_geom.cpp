// Sphere parametrisation and tensor-product quadrature.
#include "bsphere/sphere_geom.hpp"

#include <cmath>
#include <stdexcept>

#include "bsphere/numerics.hpp"
#include "bsphere/specfun.hpp"

namespace bsphere::sphere_geom {

SpherePoint SpherePoint::from_complex(CVec xc) {
  SpherePoint p;
  p.y.resize(2 * xc.size());
  for (std::size_t s = 0; s < xc.size(); ++s) {
    p.y[2 * s] = xc[s].real();
    p.y[2 * s + 1] = xc[s].imag();
  }
  p.x = std::move(xc);
  return p;
}

SpherePoint SpherePoint::from_real(std::vector<double> yr) {
  if (yr.size() % 2 != 0)
    throw std::invalid_argument("SpherePoint: odd real dimension");
  SpherePoint p;
  p.x.resize(yr.size() / 2);
  for (std::size_t s = 0; s < p.x.size(); ++s)
    p.x[s] = cplx(yr[2 * s], yr[2 * s + 1]);
  p.y = std::move(yr);
  return p;
}

SpherePoint angles_to_point(const std::vector<double>& angles) {
  const int d = static_cast<int>(angles.size());
  if (d < 3 || d % 2 == 0)
    throw std::invalid_argument(
        "angles_to_point: need odd angle count 2n-1 >= 3");
  std::vector<double> y(d + 1);
  // y_{k+1} = cos(theta_k) * prod_{j=k+1..d} sin(theta_j); build suffix
  // products of sines back-to-front.
  double suffix = 1.0;
  y[d] = std::cos(angles[d - 1]);  // y_{2n} = cos(theta_{2n-1})
  for (int k = d - 1; k >= 2; --k) {
    suffix *= std::sin(angles[k]);
    y[k] = std::cos(angles[k - 1]) * suffix;
  }
  suffix *= std::sin(angles[1]);
  y[0] = std::cos(angles[0]) * suffix;
  y[1] = std::sin(angles[0]) * suffix;
  return SpherePoint::from_real(std::move(y));
}

double sphere_area(int n) {
  return 2.0 * std::pow(M_PI, n) / std::exp(specfun::ln_gamma(n));
}

std::int64_t SphereRule::total_nodes() const {
  std::int64_t t = 1;
  for (const auto& v : theta) t *= static_cast<std::int64_t>(v.size());
  return t;
}

SphereRule build_rule(int n, const QuadSpec& spec) {
  if (n < 2) throw std::invalid_argument("build_rule: n >= 2 required");
  if (spec.nodes_per_angle < 2)
    throw std::invalid_argument("build_rule: nodes_per_angle >= 2 required");
  const int d = 2 * n - 1;
  SphereRule rule;
  rule.n = n;
  rule.theta.resize(d);
  rule.weight.resize(d);

  const int N = spec.nodes_per_angle;
  const bool cluster = spec.cluster_delta > 0.0;

  // theta_1 on [-pi, pi): periodic trapezoid, plain GL, or clustered GL.
  if (!cluster && spec.scheme == QuadSpec::Scheme::trapezoid_periodic) {
    auto tr = numerics::trapezoid_periodic(N);
    rule.theta[0] = tr.x;
    rule.weight[0] = tr.w;
  } else {
    auto gl = numerics::gauss_legendre(N);
    rule.theta[0].resize(N);
    rule.weight[0].resize(N);
    const double delta1 = cluster ? std::min(0.45, spec.cluster_delta / M_PI) : 0.0;
    for (int i = 0; i < N; ++i) {
      auto [u, du] = numerics::sinh_cluster_map(gl.x[i], delta1);
      rule.theta[0][i] = M_PI * u;
      rule.weight[0][i] = gl.w[i] * M_PI * du;
    }
  }

  // theta_j on (0, pi), j = 2..d: GL (optionally clustered around pi/2) with
  // Jacobian sin^{j-1}.
  auto gl = numerics::gauss_legendre(N);
  for (int dim = 1; dim < d; ++dim) {
    const int jexp = dim;  // sin^{j-1} with j = dim+1
    rule.theta[dim].resize(N);
    rule.weight[dim].resize(N);
    const double deltaj =
        cluster ? std::min(0.45, spec.cluster_delta / (0.5 * M_PI)) : 0.0;
    for (int i = 0; i < N; ++i) {
      auto [u, du] = numerics::sinh_cluster_map(gl.x[i], deltaj);
      const double th = 0.5 * M_PI * (1.0 + u);
      rule.theta[dim][i] = th;
      rule.weight[dim][i] =
          gl.w[i] * 0.5 * M_PI * du * std::pow(std::sin(th), jexp);
    }
  }

  // Normalize each dimension to unit mass: the measure density factorizes, so
  // the tensor weights then sum to 1.
  for (auto& w : rule.weight) {
    double s = 0.0;
    for (double wi : w) s += wi;
    for (double& wi : w) wi /= s;
  }

  if (!spec.align_y.empty()) {
    if (static_cast<int>(spec.align_y.size()) != 2 * n)
      throw std::invalid_argument("build_rule: align_y has wrong dimension");
    double nrm = 0.0;
    for (double v : spec.align_y) nrm += v * v;
    nrm = std::sqrt(nrm);
    if (!(nrm > 0.0))
      throw std::invalid_argument("build_rule: align_y must be nonzero");
    // Householder vector v = (e1 - u)/|e1 - u|; H = I - 2 v v^T swaps e1 <-> u.
    std::vector<double> v(2 * n);
    double vv = 0.0;
    for (int i = 0; i < 2 * n; ++i) {
      v[i] = (i == 0 ? 1.0 : 0.0) - spec.align_y[i] / nrm;
      vv += v[i] * v[i];
    }
    if (vv > 1e-28) {
      const double inv = 1.0 / std::sqrt(vv);
      for (double& vi : v) vi *= inv;
      rule.reflect_v = std::move(v);
    }
  }
  return rule;
}

namespace {

// Decode a flat node index, build the point, return f(point) * weight.
cplx eval_node(const SphereRule& rule,
               const std::function<cplx(const SpherePoint&)>& f,
               std::int64_t flat) {
  const int d = static_cast<int>(rule.theta.size());
  std::vector<double> ang(d);
  double w = 1.0;
  for (int dim = 0; dim < d; ++dim) {
    const auto sz = static_cast<std::int64_t>(rule.theta[dim].size());
    const auto i = static_cast<std::size_t>(flat % sz);
    flat /= sz;
    ang[dim] = rule.theta[dim][i];
    w *= rule.weight[dim][i];
  }
  SpherePoint pt = angles_to_point(ang);
  if (!rule.reflect_v.empty()) {
    double dot = 0.0;
    for (std::size_t i = 0; i < pt.y.size(); ++i)
      dot += rule.reflect_v[i] * pt.y[i];
    std::vector<double> yr(pt.y.size());
    for (std::size_t i = 0; i < pt.y.size(); ++i)
      yr[i] = pt.y[i] - 2.0 * dot * rule.reflect_v[i];
    pt = SpherePoint::from_real(std::move(yr));
  }
  return w * f(pt);
}

}  // namespace

cplx surface_integral(int n, const std::function<cplx(const SpherePoint&)>& f,
                      const QuadSpec& spec) {
  const SphereRule rule = build_rule(n, spec);
  return numerics::parallel_sum(
      rule.total_nodes(),
      [&](std::int64_t flat) { return eval_node(rule, f, flat); });
}

cplx inner_product(int n, const std::function<cplx(const SpherePoint&)>& phi,
                   const std::function<cplx(const SpherePoint&)>& psi,
                   const QuadSpec& spec) {
  return surface_integral(
      n, [&](const SpherePoint& p) { return phi(p) * std::conj(psi(p)); },
      spec);
}

double monomial_inner(const MultiIndex& a, const MultiIndex& b, int n) {
  a.validate(n);
  b.validate(n);
  if (!(a == b)) return 0.0;
  double fact = 1.0;
  for (int ks : a.k)
    for (int j = 2; j <= ks; ++j) fact *= j;
  return fact * specfun::gamma_ratio(n, n + a.total());
}

}  // namespace bsphere::sphere_geom
