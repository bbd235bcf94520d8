// Laplace/stationary-phase machinery for the peaked spherical functional
//   A[psi] = (r/(pi hbar))^{n-1/2} int_{S^{2n-1}} psi(w) e^{(2r/hbar)(w_1 - 1)} dW
// (unnormalized angular measure): exact quadrature, the expansion terms
// A[psi] ~ sum_l hbar^l M_l psi, and cross-checkable geometric helpers.
#pragma once

#include <functional>

#include "bsphere/sphere_geom.hpp"
#include "bsphere/types.hpp"

namespace bsphere::stationary_phase {

using sphere_geom::QuadSpec;
using sphere_geom::SpherePoint;

using SymbolFn = std::function<cplx(const SpherePoint&)>;

/// Angular Jacobian J(theta) = prod_{j>=2} sin^{j-1}(theta_j); equals 1 at
/// the critical point theta_0 = (0, pi/2, ..., pi/2).
double jacobian_theta(int n, const std::vector<double>& theta);

/// Quartic phase deficit
///   p(theta) = -i r [ 2 (w_1(theta) - 1) + |theta - theta_0|^2 ],
/// even in each coordinate and O(|theta - theta_0|^4).
cplx phase_deficit(int n, double r, const std::vector<double>& theta);

/// The functional A[psi] by peak-adapted quadrature (grid clustered on the
/// sqrt(hbar/r) scale around theta_0; node floor 8/sqrt(hbar)).
cplx a_functional(int n, double r, double hbar, const SymbolFn& psi,
                  QuadSpec spec = {});

/// Expansion term M_l psi (l <= 2), assembled as
///   sum_{s=l}^{3l} i^{s-l}/((s-l)! (4r)^s) sum_{|alpha|=s} (1/alpha!)
///       d^{2 alpha} [ psi(w(theta)) J(theta) p(theta)^{s-l} ] |_{theta_0}
/// with nested central stencils; fd_scale multiplies the per-order default
/// steps (0 keeps them).
cplx m_ell_generic(int n, double r, const SymbolFn& psi, int ell,
                   double fd_scale = 0.0);

/// First-order term in ambient form:
///   M_1 psi = (1/4r) [ Delta_y - d^2/dy_1^2 - (2n-1) d/dy_1
///                      - (2n-1)(2n-3)/4 ] psi~ (e_1),
/// psi~ the degree-0 extension of psi.
cplx m1_ambient(int n, double r, const SymbolFn& psi, double fd_step = 1e-2);

/// Exact value of M_2 applied to the constant symbol 1:
///   (4(n-1)^2 - 1)(4(n-1)^2 - 9) / (512 r^2).
double m2_constant_exact(int n, double r);

/// Residuals |A[psi](hbar) - M_0 psi - hbar M_1 psi| over an hbar grid with a
/// fitted slope (second-order decay expected).
AsymptoticFit stationary_expansion_check(int n, double r, const SymbolFn& psi,
                                         std::vector<double> hbar_grid = {},
                                         QuadSpec spec = {});

}  // namespace bsphere::stationary_phase
