from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from staticflow.errors import DomainError
from staticflow.expansion import (
    EinsteinBoundary,
    _order_system,
    closed_form_order2,
    expand,
    parity_check,
    reconstruct,
    reduce_equations,
    solvability_determinant,
    special_gauge_of_ads,
)
from staticflow.geometry import residual_sup
from staticflow.grid import RadialGrid
from staticflow.series import TruncatedSeries


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7, 8])
def test_sphere_expansion_reproduces_ads(n):
    order = min(4, n - 1)
    res = expand(EinsteinBoundary.sphere(n), order)
    c, u = special_gauge_of_ads(n, order)
    np.testing.assert_allclose(res.c.to_floats(), c.to_floats(), atol=1e-12)
    np.testing.assert_allclose(res.u.to_floats(), u.to_floats(), atol=1e-12)


def test_ads_series_solve_reduced_equations_exactly():
    c = TruncatedSeries([Fraction(1), 0, Fraction(-1, 2), 0, Fraction(1, 16), 0, 0])
    u = TruncatedSeries([Fraction(1), 0, Fraction(1, 4), 0, 0, 0, 0])
    for n in (3, 5, 8):
        for E in reduce_equations(EinsteinBoundary.sphere(n), c, u):
            assert all(x == 0 for x in E)


def test_reduced_equations_forcing_term():
    one = TruncatedSeries([Fraction(1), Fraction(0)])
    Eg, Eu = reduce_equations(EinsteinBoundary.sphere(4), one, one)
    assert Eg.coeffs == (0,) and Eu.coeffs == (0,)
    one = TruncatedSeries([Fraction(1), 0, 0])
    Eg, _ = reduce_equations(EinsteinBoundary(4, 6), one, one)
    assert Eg[1] == -4  # -2 S / (n - 1)


def test_reduced_equations_input_checks():
    b = EinsteinBoundary.sphere(4)
    with pytest.raises(ValueError):
        reduce_equations(b, TruncatedSeries([1, 0, 0]), TruncatedSeries([1, 0]))
    with pytest.raises(ValueError):
        reduce_equations(b, TruncatedSeries([2, 0]), TruncatedSeries([1, 0]))


def test_closed_form_order2():
    assert closed_form_order2(EinsteinBoundary.sphere(5)) == pytest.approx((0.25, -0.5))
    for n in range(3, 9):
        b = EinsteinBoundary(n, 3.7)
        u2, c2 = closed_form_order2(b)
        res = expand(b, 2)
        assert res.u[2] == pytest.approx(u2, abs=1e-13)
        assert res.c[2] == pytest.approx(c2, abs=1e-13)


def test_determinant_examples():
    assert [solvability_determinant(5, m) for m in range(1, 6)] == [36, 24, 14, 6, 0]
    assert expand(EinsteinBoundary.sphere(5), 4).determinants == (36.0, 24.0, 14.0, 6.0, 0.0)
    assert expand(EinsteinBoundary.sphere(3), 2).determinants == (10.0, 4.0, 0.0)
    assert expand(EinsteinBoundary.sphere(6), 3).determinants[-1] != 0
    with pytest.raises(ValueError):
        solvability_determinant(5, 6)


@pytest.mark.parametrize("n", range(3, 10))
def test_internal_matrices_match_determinant(n):
    b = EinsteinBoundary(n, Fraction(7, 3))
    c_low, u_low = (Fraction(1),), (Fraction(1),)
    for m in range(1, n + 1):
        (a11, a12), (a21, a22) = _order_system(b, c_low, u_low, m)[0]
        assert a11 * a22 - a12 * a21 == m * m * solvability_determinant(n, m)
        assert (solvability_determinant(n, m) == 0) == (m == n)
        c_low += (Fraction(0),)
        u_low += (Fraction(0),)


def test_order_limits():
    with pytest.raises(ValueError):
        expand(EinsteinBoundary.sphere(5), 5)
    with pytest.raises(ValueError):
        expand(EinsteinBoundary.sphere(5), 0)
    with pytest.raises(ValueError):
        EinsteinBoundary(2, 0.0)


def test_flat_boundary_has_no_corrections():
    res = expand(EinsteinBoundary(6, 0.0), 5)
    assert res.c.to_floats() == [1.0, 0, 0, 0, 0, 0]
    assert res.u.to_floats() == [1.0, 0, 0, 0, 0, 0]


@settings(max_examples=40, deadline=None)
@given(st.floats(-10, 10, allow_nan=False), st.integers(3, 8))
def test_parity_for_random_boundaries(scal, n):
    assert parity_check(expand(EinsteinBoundary(n, scal), n - 1))


@settings(max_examples=30, deadline=None)
@given(st.floats(0.1, 10), st.floats(0.2, 3.0), st.integers(5, 8))
def test_coefficients_scale_with_curvature(scal, lam, n):
    a = expand(EinsteinBoundary(n, scal), 4)
    b = expand(EinsteinBoundary(n, lam * scal), 4)
    for k in (2, 4):
        assert b.c[k] == pytest.approx(lam ** (k // 2) * a.c[k], rel=1e-12, abs=1e-14)
        assert b.u[k] == pytest.approx(lam ** (k // 2) * a.u[k], rel=1e-12, abs=1e-14)


def test_parity_check_detects_odd_terms():
    res = expand(EinsteinBoundary.sphere(5), 4)
    broken = type(res)(res.n, res.scal, TruncatedSeries([1, 1e-6, -0.5, 0, 0.0625]), res.u, 4, res.determinants)
    assert not parity_check(broken)


def test_reconstruction_of_sphere_is_ads():
    grid = RadialGrid(0.05, 0.5, 1001)
    fine = RadialGrid(0.05, 0.5, 2001)
    res = expand(EinsteinBoundary.sphere(5), 4)
    sups = [max(residual_sup(reconstruct(res, g))) for g in (grid, fine)]
    assert 3.5 <= sups[0] / sups[1] <= 4.5
    t = reconstruct(res, grid)
    tau = grid.r
    np.testing.assert_allclose(t.metric.B.values, (1 - tau ** 2 / 4) ** 2 / tau ** 2, rtol=1e-13)
    np.testing.assert_allclose(t.V.values, (1 + tau ** 2 / 4) / tau, rtol=1e-13)


def test_reconstruction_domain_guard():
    res = expand(EinsteinBoundary.sphere(3), 2)  # c = 1 - tau^2 / 2
    with pytest.raises(DomainError):
        reconstruct(res, RadialGrid(0.1, 2.0, 21))


def test_order2_linear_in_scal_and_first_order_vanishes():
    pts = [expand(EinsteinBoundary(6, s), 3) for s in (-4.0, 1.0, 6.0)]
    for get in (lambda r: r.c[2], lambda r: r.u[2]):
        y = [get(r) for r in pts]
        assert (y[1] - y[0]) / 5.0 == pytest.approx((y[2] - y[1]) / 5.0, rel=1e-12)
    assert all(r.c[1] == 0 and r.u[1] == 0 for r in pts)


def test_reconstruction_residual_non_increasing_in_order():
    grid = RadialGrid(0.05, 0.5, 2001)
    sphere = EinsteinBoundary.sphere(5)
    sups = [max(residual_sup(reconstruct(expand(sphere, m), grid))) for m in (1, 2, 3, 4)]
    assert all(a >= b * (1 - 1e-9) for a, b in zip(sups, sups[1:]))
    assert sups[1] > 100 * sups[3]
