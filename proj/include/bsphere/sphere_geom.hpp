// Geometry and quadrature on the unit sphere S^n in C^n (= S^{2n-1} in R^2n):
// hyperspherical parametrisation, normalized surface integrals, monomial
// inner products.
#pragma once

#include <functional>

#include "bsphere/types.hpp"

namespace bsphere::sphere_geom {

/// Point on S^n: complex coordinates x in C^n and the identified real vector
/// y in R^{2n}, x_s = y_{2s-1} + i y_{2s}.
struct SpherePoint {
  CVec x;
  std::vector<double> y;

  int n() const { return static_cast<int>(x.size()); }

  static SpherePoint from_complex(CVec xc);
  static SpherePoint from_real(std::vector<double> yr);
};

/// Hyperspherical angles (theta_1, ..., theta_{2n-1}):
/// theta_1 in [-pi, pi), theta_j in [0, pi] for j >= 2, with
///   y_1 = cos(theta_1) prod_{j>=2} sin(theta_j),
///   y_2 = sin(theta_1) prod_{j>=2} sin(theta_j),
///   y_{k+1} = cos(theta_k) prod_{j>=k+1} sin(theta_j),  k = 2..2n-1.
/// The normalized measure has density prod_{j>=2} sin^{j-1}(theta_j) / N,
/// N = 2 pi^n / Gamma(n).
SpherePoint angles_to_point(const std::vector<double>& angles);

/// Angular quadrature specification.
struct QuadSpec {
  int nodes_per_angle = 32;
  /// theta_1 rule; the polar angles theta_j (j >= 2) always use
  /// Gauss-Legendre.
  enum class Scheme { trapezoid_periodic, gauss_legendre } scheme =
      Scheme::trapezoid_periodic;
  /// > 0 enables sinh clustering: half the nodes of each angle land within
  /// this angular half-width of the peak (theta_1 = 0, theta_j = pi/2).
  double cluster_delta = 0.0;
  /// Optional unit vector in R^{2n}; the grid is reflected so that the peak
  /// direction e_1 maps onto it (change of variables under the
  /// rotation-invariant measure).
  std::vector<double> align_y;
};

/// Tensor-product angular grid with per-dimension normalized weights.
struct SphereRule {
  int n = 0;
  std::vector<std::vector<double>> theta;   // [dim][node]
  std::vector<std::vector<double>> weight;  // [dim][node], each dim sums to 1
  std::vector<double> reflect_v;            // Householder vector (empty: none)

  std::int64_t total_nodes() const;
};
SphereRule build_rule(int n, const QuadSpec& spec);

/// Integral of f over S^n against the normalized surface measure.
cplx surface_integral(int n, const std::function<cplx(const SpherePoint&)>& f,
                      const QuadSpec& spec);

/// <phi, psi> = int phi conj(psi) dS (normalized measure).
cplx inner_product(int n, const std::function<cplx(const SpherePoint&)>& phi,
                   const std::function<cplx(const SpherePoint&)>& psi,
                   const QuadSpec& spec);

/// Closed form  int x^a conj(x^b) dS = delta_{ab} a! Gamma(n)/Gamma(n+|a|).
double monomial_inner(const MultiIndex& a, const MultiIndex& b, int n);

/// Surface area 2 pi^n / Gamma(n) of S^{2n-1}.
double sphere_area(int n);

}  // namespace bsphere::sphere_geom
