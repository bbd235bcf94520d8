// Toolkit checks: quadrature nodes, finite differences, fits, reductions.
#include "doctest.h"

#include <cmath>
#include <cstdlib>

#include "bsphere/numerics.hpp"

using namespace bsphere;
using namespace bsphere::numerics;

TEST_CASE("gauss_legendre integrates polynomials exactly") {
  auto r = gauss_legendre(8);
  // degree 15 is the highest exact degree for 8 nodes
  double acc = 0.0;
  for (int i = 0; i < 8; ++i) acc += r.w[i] * std::pow(r.x[i], 14);
  CHECK(acc == doctest::Approx(2.0 / 15.0).epsilon(1e-13));
  double mass = 0.0;
  for (double w : r.w) mass += w;
  CHECK(mass == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("gauss_legendre handles large n") {
  auto r = gauss_legendre(64);
  double acc = 0.0;
  for (int i = 0; i < 64; ++i) acc += r.w[i] * std::cos(r.x[i]);
  CHECK(acc == doctest::Approx(2.0 * std::sin(1.0)).epsilon(1e-14));
}

TEST_CASE("sinh_cluster_map endpoints and center density") {
  auto [u1, du1] = sinh_cluster_map(1.0, 0.1);
  CHECK(u1 == doctest::Approx(1.0).epsilon(1e-12));
  auto [uh, duh] = sinh_cluster_map(0.5, 0.1);
  CHECK(uh == doctest::Approx(0.1).epsilon(1e-12));  // half-interval -> delta
  auto [u0, du0] = sinh_cluster_map(0.0, 0.1);
  CHECK(u0 == 0.0);
  CHECK(du0 < 1.0);  // denser than uniform at the peak
  CHECK(du0 > 0.0);
}

TEST_CASE("central differences reach stated order") {
  auto f = [](double x) { return cplx(std::sin(2.0 * x), 0.0); };
  const cplx d1 = central_derivative(f, 0.3, 1, 1e-2);
  CHECK(std::abs(d1 - 2.0 * std::cos(0.6)) < 1e-9);
  const cplx d2 = central_derivative(f, 0.3, 2, 1e-2);
  CHECK(std::abs(d2 - (-4.0 * std::sin(0.6))) < 1e-7);
  const cplx d4 = central_derivative(f, 0.3, 4, 5e-2);
  CHECK(std::abs(d4 - 16.0 * std::sin(0.6)) < 1e-4);
}

TEST_CASE("fornberg weights reproduce classic stencils") {
  auto w = central_fd_weights(2, 3, 1.0);
  CHECK(w[0] == doctest::Approx(1.0));
  CHECK(w[1] == doctest::Approx(-2.0));
  CHECK(w[2] == doctest::Approx(1.0));
  auto w5 = central_fd_weights(1, 5, 1.0);
  CHECK(w5[0] == doctest::Approx(1.0 / 12.0));
  CHECK(w5[1] == doctest::Approx(-2.0 / 3.0));
  CHECK(w5[4] == doctest::Approx(-1.0 / 12.0));
}

TEST_CASE("richardson extrapolation removes low orders") {
  std::vector<double> grid{0.4, 0.2, 0.1, 0.05};
  std::vector<cplx> vals;
  for (double h : grid) vals.push_back(cplx(3.0 + 2.0 * h + 5.0 * h * h, 0.0));
  CHECK(std::abs(richardson_extrapolate(grid, vals) - 3.0) < 1e-10);
}

TEST_CASE("loglog slope fit recovers power laws") {
  std::vector<double> grid{0.4, 0.2, 0.1, 0.05};
  std::vector<double> res;
  for (double h : grid) res.push_back(0.7 * h * h);
  CHECK(fit_loglog_slope(grid, res) == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("parallel_sum is bit-stable across thread counts") {
  auto term = [](std::int64_t i) {
    return cplx(std::sin(0.1 * i), std::cos(0.2 * i)) / (1.0 + i);
  };
  setenv("BEREZIN_THREADS", "1", 1);
  const cplx s1 = parallel_sum(100000, term);
  setenv("BEREZIN_THREADS", "7", 1);
  const cplx s7 = parallel_sum(100000, term);
  unsetenv("BEREZIN_THREADS");
  CHECK(s1.real() == s7.real());
  CHECK(s1.imag() == s7.imag());
}
