"""Covariant-symbol (Berezin) calculus on the complex unit sphere.

Thin wrapper over the compiled ``_bsphere`` module: coherent families and
reproducing kernels, closed-form and quadrature covariant symbols, chart
atlas audits, and the named verification suites.
"""

try:  # installed layout: _bsphere lives inside the package
    from . import _bsphere as _core
except ImportError:  # in-tree layout: _bsphere is on PYTHONPATH
    import _bsphere as _core

SpherePoint = _core.SpherePoint
kernel_T = _core.kernel_T
coherent_eval = _core.coherent_eval
measure_density = _core.measure_density
parseval_check = _core.parseval_check
berezin_monomial_p0 = _core.berezin_monomial_p0
covariant_symbol_monomial = _core.covariant_symbol_monomial
first_order_coefficient = _core.first_order_coefficient
berezin_numeric = _core.berezin_numeric
bessel_i = _core.bessel_i
sphere_area = _core.sphere_area
chart_cover = _core.chart_cover
suite_names = _core.suite_names
run_suite = _core.run_suite
build_id = _core.build_id

__version__ = _core.__version__
__all__ = [
    "SpherePoint",
    "kernel_T",
    "coherent_eval",
    "measure_density",
    "parseval_check",
    "berezin_monomial_p0",
    "covariant_symbol_monomial",
    "first_order_coefficient",
    "berezin_numeric",
    "bessel_i",
    "sphere_area",
    "chart_cover",
    "suite_names",
    "run_suite",
    "build_id",
]
