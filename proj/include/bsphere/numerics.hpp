// Small numerical toolkit: quadrature nodes, finite differences, fits,
// deterministic parallel reduction.
#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "bsphere/types.hpp"

namespace bsphere::numerics {

/// Gauss-Legendre nodes/weights on [-1, 1] (Newton iteration, n >= 1).
struct GaussRule {
  std::vector<double> x, w;
};
GaussRule gauss_legendre(int n);

/// Uniform periodic-trapezoid nodes on [-pi, pi): n nodes, weight 2*pi/n each.
GaussRule trapezoid_periodic(int n);

/// sinh-clustered reparametrisation of [-1,1]: half the parameter interval
/// maps into |u| <= delta (0 < delta < 1/2).  Returns u(s) and du/ds.
std::pair<double, double> sinh_cluster_map(double s, double delta);

/// Fornberg finite-difference weights: d-th derivative at 0 from equispaced
/// symmetric stencil points {-m*h, ..., m*h}; order of accuracy = npts - d
/// (even).  Returns the npts = 2m+1 weights already divided by h^d.
std::vector<double> central_fd_weights(int deriv_order, int npts, double h);

/// d-th derivative of f at x0 by central differences with 2m+1 points,
/// m = ceil(d/2) + extra (extra >= 1 gives >= 2nd-order accuracy).
cplx central_derivative(const std::function<cplx(double)>& f, double x0,
                        int deriv_order, double h, int extra = 2);

/// Least-squares line y = a + b x; returns {a, b}.
std::pair<double, double> fit_line(const std::vector<double>& x,
                                   const std::vector<double>& y);

/// Slope of log|resid| vs log(grid), ignoring entries below `floor`.
double fit_loglog_slope(const std::vector<double>& grid,
                        const std::vector<double>& resid,
                        double floor = 1e-300);

/// Richardson extrapolation to grid -> 0 of values v(grid_i) = L + c1*grid_i
/// + c2*grid_i^2 + ...; grid need not be nested.  Uses Neville's scheme on
/// polynomial interpolation through (grid_i, v_i) evaluated at 0.
cplx richardson_extrapolate(const std::vector<double>& grid,
                            const std::vector<cplx>& values);

/// Thread count: env BEREZIN_THREADS if set (>= 1), else hardware clamp.
int thread_count();

/// Deterministic parallel sum over [0, count): the index range is split into
/// fixed chunks whose partial sums are combined in index order, so the result
/// is bit-identical for any thread count.
cplx parallel_sum(std::int64_t count,
                  const std::function<cplx(std::int64_t)>& term);

/// Uniform double in [0, 1) from a raw 64-bit state (explicit mapping; avoids
/// implementation-defined std distributions).
double u01(std::uint64_t raw);

}  // namespace bsphere::numerics
