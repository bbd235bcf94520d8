// Stationary-phase expansion of the peaked spherical functional: geometric
// identities, exact constant-symbol values, chain-rule equivalence, decay.
#include "doctest.h"

#include <cmath>

#include "bsphere/numerics.hpp"
#include "bsphere/specfun.hpp"
#include "bsphere/stationary_phase.hpp"

using namespace bsphere;
using namespace bsphere::stationary_phase;

namespace {

double rel_err(cplx got, cplx want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

std::vector<double> theta0(int n) {
  std::vector<double> th(2 * n - 1, M_PI / 2);
  th[0] = 0.0;
  return th;
}

// exact closed form of A[1]: (r/(pi hbar))^{n-1/2} (2 pi)^n t^{1-n} e^{-t}
// I_{n-1}(t), t = 2 r/hbar
double a_one_exact(int n, double r, double hbar) {
  const double t = 2.0 * r / hbar;
  const cplx iv = specfun::bessel_i(n - 1.0, t);
  return std::pow(r / (M_PI * hbar), n - 0.5) * std::pow(2.0 * M_PI, n) *
         std::pow(t, 1.0 - n) * std::exp(-t) * std::real(iv);
}

}  // namespace

TEST_CASE("angular Jacobian and phase deficit at the critical point") {
  for (int n : {2, 3}) {
    const auto th = theta0(n);
    CHECK(jacobian_theta(n, th) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(phase_deficit(n, 1.3, th)) < 1e-15);
  }
  // J picks up sin^{j-1} factors away from the pole
  std::vector<double> th = theta0(2);
  th[1] = 1.0;
  th[2] = 2.0;
  CHECK(jacobian_theta(2, th) ==
        doctest::Approx(std::sin(1.0) * std::sin(2.0) * std::sin(2.0))
            .epsilon(1e-14));
}

TEST_CASE("sum of second angle-derivatives of J at the critical point") {
  // analytic value -(2n-1)(2n-2)/2
  for (int n : {2, 3}) {
    const auto th0 = theta0(n);
    const double h = 1e-3;
    const auto w = numerics::central_fd_weights(2, 5, h);
    double lap = 0.0;
    for (int d = 0; d < 2 * n - 1; ++d) {
      for (int j = -2; j <= 2; ++j) {
        auto th = th0;
        th[d] += j * h;
        lap += w[j + 2] * jacobian_theta(n, th);
      }
    }
    const double want = -(2.0 * n - 1.0) * (2.0 * n - 2.0) / 2.0;
    CHECK(lap == doctest::Approx(want).epsilon(1e-8));
  }
}

TEST_CASE("phase deficit is quartic with the expected bilaplacian") {
  const int n = 2;
  const double r = 1.3;
  const auto th0 = theta0(n);

  // p = O(|dtheta|^4): second derivatives vanish at the critical point
  const double h = 1e-2;
  const auto w2 = numerics::central_fd_weights(2, 5, h);
  for (int d = 0; d < 3; ++d) {
    cplx dd = 0.0;
    for (int j = -2; j <= 2; ++j) {
      auto th = th0;
      th[d] += j * h;
      dd += w2[j + 2] * phase_deficit(n, r, th);
    }
    CHECK(std::abs(dd) < 1e-7);
  }

  // (sum_d d^2)^2 p = -2 i r (2n-1)^2
  const double H = 0.05;
  const auto w4 = numerics::central_fd_weights(4, 9, H);
  const auto w22 = numerics::central_fd_weights(2, 7, H);
  cplx bilap = 0.0;
  for (int d = 0; d < 3; ++d) {  // pure 4th derivatives
    for (int j = -4; j <= 4; ++j) {
      auto th = th0;
      th[d] += j * H;
      bilap += w4[j + 4] * phase_deficit(n, r, th);
    }
  }
  for (int d = 0; d < 3; ++d) {  // mixed d^2 e^2, both orders
    for (int e = 0; e < 3; ++e) {
      if (e == d) continue;
      cplx acc = 0.0;
      for (int j = -3; j <= 3; ++j) {
        for (int k = -3; k <= 3; ++k) {
          auto th = th0;
          th[d] += j * H;
          th[e] += k * H;
          acc += w22[j + 3] * w22[k + 3] * phase_deficit(n, r, th);
        }
      }
      bilap += acc;
    }
  }
  const cplx want(0.0, -2.0 * r * 9.0);  // (2n-1)^2 = 9 at n = 2
  CHECK(std::abs(bilap - want) < 1e-5 * std::abs(want));
}

TEST_CASE("functional of the constant symbol matches the Bessel form") {
  auto one = [](const SpherePoint&) { return cplx(1.0); };
  for (int n : {2, 3}) {
    QuadSpec spec;
    spec.nodes_per_angle = (n == 2) ? 48 : 24;
    const cplx got = a_functional(n, 1.0, 0.3, one, spec);
    CHECK(rel_err(got, a_one_exact(n, 1.0, 0.3)) < 1e-8);
  }
  // r != 1 exercises the prefactor scaling
  QuadSpec spec;
  spec.nodes_per_angle = 48;
  const cplx got = a_functional(2, 1.7, 0.25, one, spec);
  CHECK(rel_err(got, a_one_exact(2, 1.7, 0.25)) < 1e-8);

  QuadSpec small;
  small.nodes_per_angle = 8;
  CHECK_THROWS_AS(a_functional(2, 1.0, 0.05, one, small),
                  std::invalid_argument);
}

TEST_CASE("expansion terms on the constant symbol") {
  auto one = [](const SpherePoint&) { return cplx(1.0); };
  for (int n : {2, 3}) {
    for (double r : {1.0, 1.6}) {
      CHECK(rel_err(m_ell_generic(n, r, one, 0), 1.0) < 1e-12);
      const double want1 = -(2.0 * n - 1.0) * (2.0 * n - 3.0) / (16.0 * r);
      CHECK(std::abs(m_ell_generic(n, r, one, 1) - want1) < 1e-7);
      CHECK(std::abs(m1_ambient(n, r, one) - want1) < 1e-10);
    }
  }
  // second-order term against its closed form (finite differences of order 8
  // limit the accuracy; this is a diagnostic-grade check)
  const cplx m2 = m_ell_generic(2, 1.0, one, 2);
  CHECK(std::abs(m2 - m2_constant_exact(2, 1.0)) <
        2e-3 * std::abs(m2_constant_exact(2, 1.0)) + 1e-6);

  CHECK_THROWS_AS(m_ell_generic(2, 1.0, one, 3), std::invalid_argument);
  CHECK_THROWS_AS(m_ell_generic(2, 1.0, one, 1, 100.0),
                  std::invalid_argument);
}

TEST_CASE("generic and ambient first-order terms agree on a corpus") {
  const int n = 2;
  const double r = 1.0;
  std::vector<SymbolFn> corpus = {
      [](const SpherePoint&) { return cplx(1.0); },
      [](const SpherePoint& w) { return cplx(w.y[0], 0.0); },
      [](const SpherePoint& w) { return cplx(w.y[1] * w.y[1], 0.0); },
      [](const SpherePoint& w) {
        return std::exp(cplx(0.3 * w.y[1] + 0.2 * w.y[3], 0.0));
      },
      [](const SpherePoint& w) {
        return std::real(w.x[0] * std::conj(w.x[1])) +
               cplx(0.0, 1.0) * std::norm(w.x[1]);
      }};
  for (const auto& psi : corpus) {
    const cplx generic = m_ell_generic(n, r, psi, 1);
    const cplx ambient = m1_ambient(n, r, psi);
    CHECK(std::abs(generic - ambient) <
          1e-6 * std::max(1.0, std::abs(ambient)));
  }
}

TEST_CASE("odd symbols are annihilated") {
  // psi = y_2 is odd across the peak: the functional and both expansion
  // terms vanish
  auto odd = [](const SpherePoint& w) { return cplx(w.y[1], 0.0); };
  CHECK(std::abs(m_ell_generic(2, 1.0, odd, 0)) < 1e-12);
  CHECK(std::abs(m_ell_generic(2, 1.0, odd, 1)) < 1e-9);
  QuadSpec spec;
  spec.nodes_per_angle = 40;
  CHECK(std::abs(a_functional(2, 1.0, 0.2, odd, spec)) < 1e-10);
}

TEST_CASE("two-term expansion leaves a second-order remainder") {
  auto psi = [](const SpherePoint& w) {
    return std::exp(cplx(0.4 * w.y[2], 0.0)) + 0.3 * w.y[0] * w.y[0];
  };
  QuadSpec spec;
  spec.nodes_per_angle = 40;
  const auto fit = stationary_expansion_check(2, 1.0, psi, {}, spec);
  CHECK(fit.fitted_slope > 1.8);
  CHECK(fit.fitted_slope < 2.2);
  // residuals decrease along the grid
  CHECK(fit.residuals.front() > fit.residuals.back());
}
