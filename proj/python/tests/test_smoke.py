"""Smoke tests for the python bindings: each exposed operation runs and
reproduces a value the C++ test suite pins independently."""

import cmath
import math

import pytest

import bsphere


def test_kernel_matches_bessel_value():
    # T(z, z) at n=2, p=0, hbar=1, z = (1, 0) equals I_1(2).
    val = bsphere.kernel_T(2, 0.0, 1.0, [1, 0], [1, 0])
    assert val == pytest.approx(1.5906368546373291, rel=1e-12)
    assert bsphere.bessel_i(1.0, 2.0 + 0.0j).real == pytest.approx(
        val.real, rel=1e-12
    )


def test_coherent_eval_reduces_to_exponential():
    # p = 0 makes every series coefficient 1: K = exp(x.z / hbar).
    x = [1 / math.sqrt(2), 1j / math.sqrt(2)]
    z = [0.3 - 0.1j, 0.2j]
    hbar = 0.7
    xz = sum(xs * zs.conjugate() for xs, zs in zip(x, z))
    assert bsphere.coherent_eval(2, 0.0, hbar, x, z) == pytest.approx(
        cmath.exp(xz / hbar), rel=1e-12
    )


def test_berezin_monomial_routes_agree():
    z = [0.55 + 0.2j, -0.35 + 0.45j]
    closed = bsphere.berezin_monomial_p0(2, 0.5, [1, 0], z)
    series = bsphere.covariant_symbol_monomial(2, 0.0, 0.5, [1, 0], z)
    assert closed == pytest.approx(series, rel=1e-10)

    numeric = bsphere.berezin_numeric(
        2, 0.0, 0.5, lambda pt: pt.x[0], z, nodes=24
    )
    assert numeric == pytest.approx(closed, rel=1e-8)


def test_first_order_coefficient():
    assert bsphere.first_order_coefficient(2, [1, 0]) == pytest.approx(-0.75)
    assert bsphere.first_order_coefficient(2, [2, 1]) == pytest.approx(-3.75)


def test_parseval_and_measure():
    assert bsphere.parseval_check(2, 0.0, 0.7, [1, 0], [1, 0]) < 1e-12
    assert bsphere.measure_density(2, 0.0, 1.0, [0.8, 0.0]) == pytest.approx(
        0.038087595881469535, rel=1e-12
    )


def test_sphere_area():
    # 2 pi^n / Gamma(n)
    assert bsphere.sphere_area(2) == pytest.approx(2 * math.pi**2)


def test_chart_cover():
    rep = bsphere.chart_cover(2, samples=2000, seed=7)
    assert rep["uncovered"] == 0
    assert rep["in_chart1"] + rep["reassigned"] == rep["samples"] == 2000
    assert 0 < rep["worst_radius"] < 1


def test_verify_suite_roundtrip():
    names = bsphere.suite_names()
    assert "bessel" in names and "all" in names
    checks = bsphere.run_suite("bessel")
    assert len(checks) == 2
    assert all(c["passed"] for c in checks)
    assert all(c["observed"] <= c["threshold"] for c in checks)

    with pytest.raises(Exception):
        bsphere.run_suite("not-a-suite")


def test_invalid_arguments_raise():
    with pytest.raises(Exception):
        bsphere.kernel_T(1, 0.0, 1.0, [1], [1])  # n must be >= 2
    with pytest.raises(Exception):
        bsphere.berezin_monomial_p0(2, 0.5, [1, 0, 0], [1, 0])  # k length


def test_build_id_present():
    assert bsphere.build_id().startswith("git:")
    assert isinstance(bsphere.__version__, str) and bsphere.__version__
