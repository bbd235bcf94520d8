// Quadrature nodes, finite differences, fits, deterministic reduction.
#include "bsphere/numerics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

namespace bsphere::numerics {

GaussRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n >= 1 required");
  GaussRule r;
  r.x.resize(n);
  r.w.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Chebyshev-based initial guess, then Newton on P_n.
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      if (n == 1) p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      double pn = (n == 1) ? x : p1;
      double pnm1 = (n == 1) ? 1.0 : p0;
      pp = n * (x * pn - pnm1) / (x * x - 1.0);
      double dx = pn / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    r.x[i] = -x;
    r.x[n - 1 - i] = x;
    double wi = 2.0 / ((1.0 - x * x) * pp * pp);
    r.w[i] = wi;
    r.w[n - 1 - i] = wi;
  }
  if (n % 2 == 1) r.x[n / 2] = 0.0;
  return r;
}

GaussRule trapezoid_periodic(int n) {
  if (n < 1) throw std::invalid_argument("trapezoid_periodic: n >= 1");
  GaussRule r;
  r.x.resize(n);
  r.w.assign(n, 2.0 * M_PI / n);
  for (int i = 0; i < n; ++i) r.x[i] = -M_PI + 2.0 * M_PI * i / n;
  return r;
}

std::pair<double, double> sinh_cluster_map(double s, double delta) {
  if (!(delta > 0.0) || delta >= 0.5) return {s, 1.0};  // no clustering
  // kappa chosen so that s = 1/2 maps to u = delta:
  // sinh(kappa/2)/sinh(kappa) = delta  =>  kappa = 2 acosh(1/(2 delta)).
  const double kappa = 2.0 * std::acosh(1.0 / (2.0 * delta));
  const double sh = std::sinh(kappa);
  return {std::sinh(kappa * s) / sh, kappa * std::cosh(kappa * s) / sh};
}

std::vector<double> central_fd_weights(int d, int npts, double h) {
  if (npts % 2 == 0 || npts <= d)
    throw std::invalid_argument("central_fd_weights: need odd npts > d");
  // Fornberg's recursive algorithm for weights at x0 = 0 with nodes
  // a_i = (i - m) * h, specialised to what we need (single target order d).
  const int nn = npts;
  std::vector<double> a(nn);
  const int m = nn / 2;
  for (int i = 0; i < nn; ++i) a[i] = (i - m) * h;
  // delta[k][j] holds weights of derivative order k at node count j+1.
  std::vector<std::vector<double>> delta(d + 1, std::vector<double>(nn, 0.0));
  delta[0][0] = 1.0;
  double c1 = 1.0;
  for (int j = 1; j < nn; ++j) {
    double c2 = 1.0;
    std::vector<std::vector<double>> next = delta;
    for (int k = 0; k <= std::min(j, d); ++k) next[k][j] = 0.0;
    for (int i = 0; i < j; ++i) {
      double c3 = a[j] - a[i];
      c2 *= c3;
      for (int k = std::min(j, d); k >= 0; --k) {
        double prev = (k > 0) ? delta[k - 1][i] : 0.0;
        next[k][i] = (a[j] * delta[k][i] - k * prev) / c3;
      }
    }
    for (int k = std::min(j, d); k >= 0; --k) {
      double prev = (k > 0) ? delta[k - 1][j - 1] : 0.0;
      next[k][j] = c1 / c2 * (k * prev - a[j - 1] * delta[k][j - 1]);
    }
    c1 = c2;
    delta = next;
  }
  return delta[d];
}

cplx central_derivative(const std::function<cplx(double)>& f, double x0, int d,
                        double h, int extra) {
  if (d == 0) return f(x0);
  const int m = (d + 1) / 2 + std::max(1, extra);
  const int npts = 2 * m + 1;
  const auto w = central_fd_weights(d, npts, h);
  cplx acc = 0.0;
  for (int i = 0; i < npts; ++i) {
    if (w[i] == 0.0) continue;
    acc += w[i] * f(x0 + (i - m) * h);
  }
  return acc;
}

std::pair<double, double> fit_line(const std::vector<double>& x,
                                   const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("fit_line: need >= 2 points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double det = n * sxx - sx * sx;
  const double b = (n * sxy - sx * sy) / det;
  const double a = (sy - b * sx) / n;
  return {a, b};
}

double fit_loglog_slope(const std::vector<double>& grid,
                        const std::vector<double>& resid, double floor) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (resid[i] > floor) {
      lx.push_back(std::log(grid[i]));
      ly.push_back(std::log(resid[i]));
    }
  }
  if (lx.size() < 2) return 0.0;
  return fit_line(lx, ly).second;
}

cplx richardson_extrapolate(const std::vector<double>& grid,
                            const std::vector<cplx>& values) {
  if (grid.size() != values.size() || grid.empty())
    throw std::invalid_argument("richardson_extrapolate: bad input");
  // Neville tableau evaluated at 0.
  std::vector<cplx> t = values;
  const std::size_t n = grid.size();
  for (std::size_t k = 1; k < n; ++k)
    for (std::size_t i = 0; i + k < n; ++i)
      t[i] = (grid[i + k] * t[i] - grid[i] * t[i + 1]) / (grid[i + k] - grid[i]);
  return t[0];
}

int thread_count() {
  if (const char* env = std::getenv("BEREZIN_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<int>(std::min<long>(v, 64));
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return static_cast<int>(std::min(8u, hc == 0 ? 1u : hc));
}

cplx parallel_sum(std::int64_t count,
                  const std::function<cplx(std::int64_t)>& term) {
  if (count <= 0) return 0.0;
  // Fixed chunk layout independent of the worker count => bit-stable result.
  const std::int64_t nchunks = std::min<std::int64_t>(128, count);
  const std::int64_t per = (count + nchunks - 1) / nchunks;
  std::vector<cplx> partial(static_cast<std::size_t>(nchunks), 0.0);
  const int workers = std::min<int>(thread_count(), static_cast<int>(nchunks));

  auto run_chunk = [&](std::int64_t c) {
    const std::int64_t lo = c * per;
    const std::int64_t hi = std::min(count, lo + per);
    cplx acc = 0.0;
    for (std::int64_t i = lo; i < hi; ++i) acc += term(i);
    partial[static_cast<std::size_t>(c)] = acc;
  };

  if (workers <= 1) {
    for (std::int64_t c = 0; c < nchunks; ++c) run_chunk(c);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::atomic<std::int64_t> next{0};
    for (int t = 0; t < workers; ++t)
      pool.emplace_back([&] {
        for (;;) {
          const std::int64_t c = next.fetch_add(1);
          if (c >= nchunks) break;
          run_chunk(c);
        }
      });
    for (auto& th : pool) th.join();
  }
  // Combine in fixed (index) order.
  cplx total = 0.0;
  for (const cplx& v : partial) total += v;
  return total;
}

double u01(std::uint64_t raw) {
  return static_cast<double>(raw >> 11) * 0x1.0p-53;
}

}  // namespace bsphere::numerics
