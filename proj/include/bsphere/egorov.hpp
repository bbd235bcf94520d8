// Chart atlas on S^{2n-1}, partition of unity, cotangent anchors, polynomial
// momentum symbols quantized chartwise (analytic and oscillatory paths), the
// assembled covariant symbol, and the principal-symbol comparison checks.
#pragma once

#include <cstdint>
#include <functional>

#include "bsphere/sphere_geom.hpp"
#include "bsphere/types.hpp"

namespace bsphere::egorov {

using sphere_geom::QuadSpec;
using sphere_geom::SpherePoint;

// --- atlas -------------------------------------------------------------------

/// 2n-1 rotated copies of the cylinder chart
///   kappa_1^{-1}(theta, v) = (r cos theta, r sin theta, v),
///   r = sqrt(1 - |v|^2),  -pi < theta < pi,  |v|^2 < V^2 = 1 - 1/(8(n-1)).
/// Chart a >= 2 applies the rotation R_a: e_1 -> -E_1, e_2 -> E_{a+1},
/// E_{a+1} -> ... (the slot swap 2 <-> a+1 with a sign flip on slot 1,
/// det R_a = +1).
struct ChartAtlas {
  int n = 2;
  double v_max_sq = 0.0;  // V^2

  // Partition radii in the chart radius rho = max(|theta|/pi, |v|/V).  The
  // worst point of the sphere sits at min-over-charts radius
  // W = sqrt(((2n-2)/(2n-1)) / V^2), so the inner support must exceed W; the
  // outer plateau exceeds the inner support by a stencil margin so that the
  // outer cutoff is identically 1 wherever the inner bump is positive.
  double part_inner_plateau = 0.0;
  double part_inner_support = 0.0;
  double part_outer_plateau = 0.0;
  double part_outer_support = 0.0;

  int chart_count() const { return 2 * n - 1; }
  int v_dim() const { return 2 * n - 2; }
};
ChartAtlas charts_build(int n);

struct ChartPoint {
  int chart = 1;
  double theta = 0.0;
  std::vector<double> v;  // length 2n-2
};

SpherePoint chart_to_sphere(const ChartAtlas& atlas, const ChartPoint& u);
bool chart_contains(const ChartAtlas& atlas, int chart, const SpherePoint& x);
ChartPoint sphere_to_chart(const ChartAtlas& atlas, int chart,
                           const SpherePoint& x);  // throws when outside

/// Chart radius rho = max(|theta|/pi, |v|/V) in [0,1); +infinity outside.
double chart_radius(const ChartAtlas& atlas, int chart, const SpherePoint& x);

/// Fallback chart for points outside chart 1: the slot j >= 3 carrying the
/// largest |y_j| lands the point in chart j-1 (chart 2 when all such slots
/// vanish).  Returns 1 for chart-1 members.
int chart_assign(const ChartAtlas& atlas, const SpherePoint& x);

/// Uniform sampling audit of the atlas: every sample must land in chart 1 or
/// be reassigned successfully; worst_radius tracks max over samples of
/// min_c rho_c (must stay below the partition support radius).
struct CoverReport {
  std::int64_t samples = 0;
  std::int64_t in_chart1 = 0;
  std::int64_t reassigned = 0;
  std::int64_t uncovered = 0;
  double worst_radius = 0.0;
};
CoverReport chart_cover_check(int n, std::int64_t samples,
                              std::uint64_t seed = 42);

// --- partition of unity -------------------------------------------------------

/// Smooth cutoff profile: 1 on [0, plateau], 0 on [support, inf), C-infinity
/// monotone bridge in between.
double cutoff_profile(double rho, double plateau, double support);

/// Partition weight t_c(x): normalized chart bumps built on the atlas inner
/// radii; sums to 1 over charts.
double partition_t(const ChartAtlas& atlas, int chart, const SpherePoint& x);

/// Outer cutoff rho_c built on the atlas outer radii; identically 1 on the
/// support of t_c (t_c rho_c = t_c exactly).
double partition_outer(const ChartAtlas& atlas, int chart,
                       const SpherePoint& x);

// --- cotangent anchor ---------------------------------------------------------

/// Ambient real covector attached to the anchor z: the gradient of the local
/// oscillation phase Im(x . z) of the coherent family, i.e. the pairing
/// v |-> Im(sum_s v_s conj(z_s)) with components (-Im z_1, Re z_1, ...).
/// Invariant under simultaneous unitary moves of v and z.
std::vector<double> ambient_covector(const CVec& z);

/// Chart components xi = (D kappa_c^{-1})^T eta at the chart coordinates of
/// x_0 = z/|z| (throws when x_0 is outside the chart).  For z = lambda u_1
/// the chart-1 result is (+lambda, 0, ..., 0).
std::vector<double> chart_covector(const ChartAtlas& atlas, int chart,
                                   const CVec& z);

// --- momentum-polynomial symbols and quantization -----------------------------

/// Function of chart coordinates (theta, v) packed as a real vector of
/// length 2n-1.
using ChartFn = std::function<cplx(const std::vector<double>&)>;

/// a(u, xi) = sum_terms coeff(u) xi^alpha over chart coordinates.
struct MomentumPolySymbol {
  struct Term {
    MultiIndex alpha;  // length 2n-1
    ChartFn coeff;
  };
  int dim = 0;
  std::vector<Term> terms;

  int degree() const;
  cplx value_at(const std::vector<double>& u,
                const std::vector<double>& xi) const;
};

struct PDOApplySpec {
  double t = 1.0;                // quantization parameter in [0, 1]
  double fd_step = 0.0;          // 0: auto (0.04 hbar, capped at 0.005)
  int k = 0;                     // oscillatory regularization power per
                                 // dimension; 0: max_d alpha_d + 2
  double momentum_cutoff = 0.0;  // optional |xi_d| cap (momentum units)
  int xi_nodes = 48;             // oscillatory nodes per dimension (floor;
                                 // raised automatically to resolve the
                                 // Fourier width)
};

/// Analytic quantization
///   Op^t(a) f(b) = sum_alpha (-i hbar)^{|alpha|}
///                  d_c^alpha [ coeff_alpha((1-t) b + t c) f(c) ] |_{c=b}
/// by nested central stencils of step fd_step.
cplx pdo_apply(const MomentumPolySymbol& a, const ChartFn& f,
               const std::vector<double>& b, double hbar,
               const PDOApplySpec& spec = {});

// --- separable oscillatory path ------------------------------------------------

/// One-dimensional factor P(x) exp(q2 x^2 + q1 x + q0), Re q2 < 0; closed
/// under differentiation, products, affine substitution, and the exact
/// Fourier transform  int g(x) e^{-i nu x} dx.
struct Factor1D {
  std::vector<cplx> poly = {1.0};  // coefficients in increasing powers of x
  cplx q2 = -1.0;
  cplx q1 = 0.0;
  cplx q0 = 0.0;

  cplx eval(double x) const;
  Factor1D derivative() const;
  Factor1D multiply(const Factor1D& other) const;
  Factor1D affine(double scale, double shift) const;  // x -> scale x + shift
  cplx fourier(double nu) const;
};

/// f(c) = prod_d factors[d](c_d).
struct SeparableFn {
  std::vector<Factor1D> factors;

  cplx eval(const std::vector<double>& c) const;
};

/// Symbol term coeff(u) xi^alpha with a separable coefficient (empty factors
/// mean the constant 1 scaled by `scale`).
struct SeparableSymbolTerm {
  MultiIndex alpha;
  SeparableFn coeff;  // empty -> constant 1
  cplx scale = 1.0;
};

/// Oscillatory-integral quantization of a separable symbol applied to a
/// separable function:
///   (2 pi hbar)^{-d} int e^{i(b-c).xi/hbar} a((1-t)b + tc, xi) f(c) dc dxi
/// regularized per dimension by (1+xi_d^2)^{-k} (1 - hbar xi_d i d_{c_d})^k,
/// which keeps the integral absolutely convergent and fully separable;
/// requires k >= max_d alpha_d + 2.  The c-integrals are exact per dimension
/// (closed-form Fourier transforms), the xi-integrals are independent 1-d
/// Gauss rules sized to the Fourier width of each factor.
cplx pdo_apply_oscillatory(const std::vector<SeparableSymbolTerm>& a,
                           const SeparableFn& f, const std::vector<double>& b,
                           double hbar, const PDOApplySpec& spec = {});

// --- assembled operator and covariant symbol -----------------------------------

/// Chartwise operator A = sum_c t_c Op_c(a_c) rho_c with one momentum
/// polynomial per chart (missing charts act as zero).
struct AssembledOperator {
  Params params;
  std::vector<MomentumPolySymbol> chart_symbols;  // index c-1
  PDOApplySpec pdo;
};

/// Principal symbol of the assembled operator at the anchor
/// (z/|z|, covector of z): sum_c t_c(x0) a_c(kappa_c(x0), xi_c(z)).
cplx principal_symbol_at(const AssembledOperator& op, const CVec& z);

/// Covariant symbol  <A K_p(., z), K_p(., z)> / T(z, z)  with the numerator
/// integrated chartwise on a peak-adapted grid; `move` (optional unitary,
/// row-major) evaluates A on the transported state x |-> K_p(Ux, z) instead.
cplx covariant_symbol_pdo(const AssembledOperator& op, const CVec& z,
                          QuadSpec qspec = {}, const SeriesControl& ctl = {},
                          const std::vector<CVec>& move = {});

/// Residuals |cov(hbar) - principal(z)| over an hbar grid with fitted decay
/// slope (first-order agreement expected).
AsymptoticFit egorov_check(const AssembledOperator& op, const CVec& z,
                           std::vector<double> hbar_grid = {},
                           QuadSpec qspec = {});

/// Conjugation coherence: |cov(T_U^{-1} A T_U, z) - cov(A, U^{-1} z)| with
/// T_U f = f o U; returns the absolute mismatch (quadrature-level for a
/// covariant atlas assembly).
double conjugation_check(const AssembledOperator& op, const CVec& z,
                         const std::vector<CVec>& U, QuadSpec qspec = {});

}  // namespace bsphere::egorov
