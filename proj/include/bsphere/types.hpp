// Shared value types for the covariant-symbol library.
#pragma once

#include <complex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace bsphere {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;

/// Ambient parameters: complex dimension n >= 2, weight p > -n, hbar > 0.
struct Params {
  int n = 2;
  double p = 0.0;
  double hbar = 1.0;

  void validate() const {
    if (n < 2) throw std::domain_error("Params: need n >= 2");
    if (!(p > -static_cast<double>(n)))
      throw std::domain_error("Params: need p > -n");
    if (!(hbar > 0.0)) throw std::domain_error("Params: need hbar > 0");
  }
};

/// Monomial exponent vector k = (k_1, ..., k_n), k_s >= 0.
struct MultiIndex {
  std::vector<int> k;

  int total() const { return std::accumulate(k.begin(), k.end(), 0); }
  int dim() const { return static_cast<int>(k.size()); }
  bool operator==(const MultiIndex& o) const { return k == o.k; }

  void validate(int n) const {
    if (dim() != n) throw std::invalid_argument("MultiIndex: wrong dimension");
    for (int ks : k)
      if (ks < 0) throw std::invalid_argument("MultiIndex: negative exponent");
  }
};

/// Hermitian pairing  x . z = sum_s x_s conj(z_s).
inline cplx cdot(const CVec& x, const CVec& z) {
  if (x.size() != z.size()) throw std::invalid_argument("cdot: size mismatch");
  cplx s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * std::conj(z[i]);
  return s;
}

inline double cnorm(const CVec& z) { return std::sqrt(std::real(cdot(z, z))); }

/// x^k = prod_s x_s^{k_s}  (integer powers by repeated multiplication).
inline cplx cpow_multi(const CVec& x, const MultiIndex& k) {
  cplx v = 1.0;
  for (std::size_t s = 0; s < x.size(); ++s)
    for (int j = 0; j < k.k[s]; ++j) v *= x[s];
  return v;
}

/// Truncation / branch-switch control for series evaluations.
struct SeriesControl {
  int max_terms = 400;
  double rel_tol = 1e-14;
  /// Modulus at which bessel_i switches from the ascending series to the
  /// large-argument expansion; <= 0 means the default 30*max(1, nu).
  double switch_threshold = 0.0;
};

/// Result of a grid-vs-model comparison: values on an hbar (or z) grid with a
/// fitted power law  residual ~ const * grid^slope.
struct AsymptoticFit {
  std::vector<double> grid;
  std::vector<double> residuals;
  double fitted_slope = 0.0;
  double fitted_log_constant = 0.0;
};

/// Report from an expansion check: numeric values along the grid, the model's
/// leading + first-order prediction, and the fitted behaviour of what is left.
struct ExpansionReport {
  std::vector<double> hbar_grid;
  std::vector<cplx> values;         // numeric transform values
  cplx leading = 0.0;               // model order-0 value
  cplx first_order_pred = 0.0;      // model coefficient of hbar
  double fitted_slope = 0.0;        // slope of log|residual| vs log(hbar)
  cplx fitted_constant = 0.0;       // empirical constant-term estimate (c-hat)
  bool constant_identifiable = true;
};

}  // namespace bsphere
