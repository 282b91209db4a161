import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from staticflow.errors import GridMismatchError, LapseError, SignatureError
from staticflow.geometry import (
    RotSymMetric,
    StaticTriple,
    as_defect,
    deturck_field,
    hessian_radial,
    interior_sup,
    laplacian_radial,
    lie_derivative_radial,
    lift_block_check,
    residual_sup,
    ricci,
    sectional_defect,
    static_residual,
)
from staticflow.grid import Profile, RadialGrid
from staticflow.solutions import ads, schwarzschild_ads

# smooth non-vacuum fixture used against the oracle
FA = lambda r: 1.0 + 0.2 * np.sin(r)
FB = lambda r: r * r * (1.0 + 0.1 * np.cos(2.0 * r))
FV = lambda r: np.cosh(r) * (1.0 + 0.1 * np.sin(1.5 * r))
PROBE = 1.75  # a node of every grid below


def _metric(n, grid, A=FA, B=FB, k=1.0):
    return RotSymMetric.from_arrays(n, grid, A(grid.r), B(grid.r), k)


def _node(grid, r=PROBE):
    i = int(round((r - grid.r_min) / grid.h))
    assert grid.r[i] == pytest.approx(r)
    return i


def _ratios(errs):
    return [a / b for a, b in zip(errs, errs[1:])]


@pytest.mark.parametrize("n,k", [(3, 1.0), (4, 1.0), (5, 0.0)])
def test_ricci_matches_oracle_at_second_order(n, k):
    x = oracles.base_point(n, PROBE, k)
    R = oracles.ricci(oracles.warped(FA, FB, k), x)
    sph0 = oracles.sphere_metric(x[1:], k)[0]
    errs = []
    for count in (41, 81, 161):
        grid = RadialGrid(1.0, 2.5, count)
        c = ricci(_metric(n, grid, k=k))
        i = _node(grid)
        errs.append(max(abs(c.ric_rr.values[i] - R[0, 0]), abs(c.ric_sph.values[i] - R[1, 1] / sph0)))
    assert all(3.5 <= q <= 4.5 for q in _ratios(errs)), errs


def test_scalar_curvature_is_trace():
    grid = RadialGrid(1.0, 3.0, 101)
    g = _metric(4, grid)
    c = ricci(g)
    trace = c.ric_rr.values / g.A.values + 3 * c.ric_sph.values / g.B.values
    np.testing.assert_allclose(c.scal.values, trace, rtol=1e-13)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_euclidean_ricci_vanishes(n):
    grid = RadialGrid(1.0, 3.0, 201)
    g = RotSymMetric.from_arrays(n, grid, np.ones(201), grid.r ** 2)
    c = ricci(g)
    for p in (c.ric_rr, c.ric_sph, c.scal):
        assert p.sup() < 1e-9
    np.testing.assert_allclose(sectional_defect(g).values, 1.0, atol=1e-9)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_ads_ricci_is_einstein(n):
    grid = RadialGrid(1.0, 4.0, 801)
    t = ads(n, grid)
    c = ricci(t.metric)
    bound = 50 * grid.h ** 2
    assert interior_sup(c.scal.values / (n * (n - 1)) + 1) < bound
    assert interior_sup(sectional_defect(t.metric).values) < bound


def test_sads_scalar_curvature():
    grid = RadialGrid(1.0, 6.0, 2001)
    c = ricci(schwarzschild_ads(3, 0.5, grid).metric)
    assert interior_sup(c.scal.values + 6.0) < 1e-3


def test_hessian_matches_oracle_and_laplacian_is_trace():
    n = 4
    x = oracles.base_point(n, PROBE)
    g_or = oracles.warped(FA, FB)
    H = oracles.hessian(g_or, lambda p: FV(p[0]), x)
    errs = []
    for count in (41, 81, 161):
        grid = RadialGrid(1.0, 2.5, count)
        g = _metric(n, grid)
        h_rr, h_sph = hessian_radial(g, grid.sample(FV))
        i = _node(grid)
        errs.append(max(abs(h_rr.values[i] - H[0, 0]), abs(h_sph.values[i] - H[1, 1])))
        lap = laplacian_radial(g, grid.sample(FV)).values
        np.testing.assert_allclose(lap, h_rr.values / g.A.values + 3 * h_sph.values / g.B.values)
    assert all(3.5 <= q <= 4.5 for q in _ratios(errs)), errs


def test_hessian_examples():
    grid = RadialGrid(1.0, 3.0, 401)
    t = ads(3, grid)
    h_rr, h_sph = hessian_radial(t.metric, t.V)
    V_g = np.cosh(grid.r) * np.sinh(grid.r) ** 2
    assert interior_sup(h_rr.values / np.cosh(grid.r) - 1) < 1e-4
    assert interior_sup(h_sph.values / V_g - 1) < 1e-4
    zero_rr, zero_sph = hessian_radial(t.metric, grid.sample(lambda r: 0 * r + 5.0))
    assert zero_rr.sup() == 0.0 and zero_sph.sup() == 0.0
    flat = RotSymMetric.from_arrays(3, grid, np.ones(401), grid.r ** 2)
    h_rr, h_sph = hessian_radial(flat, grid.sample(lambda r: r * r))
    np.testing.assert_allclose(h_rr.values, 2.0, atol=1e-9)
    np.testing.assert_allclose(h_sph.values, 2.0 * grid.r ** 2, rtol=1e-9)
    np.testing.assert_allclose(laplacian_radial(flat, grid.sample(lambda r: r * r)).values, 6.0, atol=1e-9)
    assert interior_sup(laplacian_radial(t.metric, t.V).values / (3 * np.cosh(grid.r)) - 1) < 1e-4


def test_grid_mismatch():
    g = ads(3, RadialGrid(1.0, 2.0, 11)).metric
    with pytest.raises(GridMismatchError):
        hessian_radial(g, RadialGrid(1.0, 2.0, 12).sample(np.cosh))


def test_signature_and_lapse_violations_carry_index():
    grid = RadialGrid(1.0, 2.0, 6)
    A = np.ones(6)
    A[3] = 0.0
    with pytest.raises(SignatureError) as err:
        RotSymMetric.from_arrays(3, grid, A, np.ones(6))
    assert err.value.index == 3
    V = np.ones(6)
    V[4] = -1.0
    with pytest.raises(LapseError) as err:
        StaticTriple(ads(3, grid).metric, Profile(grid, V))
    assert err.value.index == 4


@pytest.mark.parametrize("n", [3, 4, 5])
def test_static_residual_ads_second_order(n):
    sups = []
    for count in (201, 401, 801):
        sups.append(max(residual_sup(ads(n, RadialGrid(1.0, 6.0, count)))))
    assert all(3.5 <= q <= 4.5 for q in _ratios(sups)), sups


def test_static_residual_is_lapse_scale_invariant():
    grid = RadialGrid(1.0, 6.0, 401)
    t = ads(3, grid)
    t2 = StaticTriple(t.metric, t.V.with_values(2.0 * t.V.values))
    for a, b in zip(static_residual(t), static_residual(t2)):
        np.testing.assert_allclose(a.values, b.values, rtol=1e-12, atol=1e-12)


def test_as_defect():
    with pytest.raises(ValueError):
        as_defect(ads(3, RadialGrid(1.0, 4.0, 101)), a=1.5)
    exact, bad = [], []
    for r_max, count in ((4.0, 301), (5.0, 401)):  # same spacing on both grids
        grid = RadialGrid(1.0, r_max, count)
        t = ads(3, grid)
        exact.append(as_defect(t)[0])
        # a lapse with the wrong growth rate leaves an O(1) residual
        bad.append(as_defect(StaticTriple(t.metric, grid.sample(lambda r: np.cosh(1.2 * r))))[0])
    assert bad[1] / bad[0] == pytest.approx(np.exp(2.0), rel=0.05)
    assert exact[0] < 50 * (3.0 / 300) ** 2 * np.exp(8.0)
    assert bad[0] > 100 * exact[0]


def test_sectional_defect_sads():
    grid = RadialGrid(1.0, 6.0, 1001)
    heavy = sectional_defect(schwarzschild_ads(3, 0.5, grid).metric).values
    light = sectional_defect(schwarzschild_ads(3, 0.25, grid).metric).values
    half = grid.count // 2
    assert heavy[half:].max() < heavy[1:half].max()
    assert np.all(heavy[1:half] > light[1:half])


def test_deturck_identical_metrics_vanish():
    g = _metric(4, RadialGrid(1.0, 3.0, 51))
    assert deturck_field(g, g).sup() == 0.0


def test_deturck_rejects_mismatched_pair():
    a = _metric(4, RadialGrid(1.0, 3.0, 51))
    with pytest.raises(ValueError):
        deturck_field(a, _metric(3, RadialGrid(1.0, 3.0, 51)))
    with pytest.raises(ValueError):
        deturck_field(a, _metric(4, RadialGrid(1.0, 3.0, 51), k=0.0))


def test_deturck_linear_in_perturbation():
    grid = RadialGrid(1.0, 4.0, 201)
    g = ads(4, grid).metric
    w = []
    for eps in (1e-3, 5e-4):
        B = g.B.values * (1 + eps * np.exp(-2 * grid.r))
        w.append(deturck_field(g, RotSymMetric.from_arrays(4, grid, g.A.values, B)).values)
    np.testing.assert_allclose(w[0], 2 * w[1], rtol=2e-3, atol=1e-12)


def test_deturck_matches_christoffel_oracle():
    n = 4
    GA = lambda r: 1.0 + 0.1 * np.cos(r)
    GB = lambda r: np.sinh(r) ** 2
    x = oracles.base_point(n, PROBE)
    exact = oracles.deturck_radial(oracles.warped(FA, FB), oracles.warped(GA, GB), x)
    errs = []
    for count in (41, 81, 161):
        grid = RadialGrid(1.0, 2.5, count)
        w = deturck_field(_metric(n, grid), _metric(n, grid, GA, GB)).values
        errs.append(abs(w[_node(grid)] - exact))
    assert all(3.5 <= q <= 4.5 for q in _ratios(errs)), errs


def test_lie_derivative_examples():
    grid = RadialGrid(1.0, 3.0, 201)
    g = ads(3, grid).metric
    l_rr, l_sph = lie_derivative_radial(g, Profile(grid, np.zeros(201)))
    assert l_rr.sup() == 0 and l_sph.sup() == 0
    l_rr, l_sph = lie_derivative_radial(g, Profile(grid, np.ones(201)))
    assert l_rr.sup() < 1e-12
    assert interior_sup(l_sph.values / (2 * np.sinh(grid.r) * np.cosh(grid.r)) - 1) < 1e-4


def test_lie_derivative_matches_pullback():
    from scipy.integrate import solve_ivp

    wf = lambda r: 0.3 + 0.2 * np.sin(r)
    grid = RadialGrid(1.0, 2.5, 301)
    g = _metric(3, grid)
    l_rr, l_sph = lie_derivative_radial(g, grid.sample(wf))
    r = grid.r[100:201]
    eps = 1e-4

    def flow(s):
        return solve_ivp(lambda _, y: wf(y), (0, s), r, rtol=1e-13, atol=1e-13).y[:, -1]

    def flow_prime(s, dr=1e-5):
        return (
            solve_ivp(lambda _, y: wf(y), (0, s), r + dr, rtol=1e-13, atol=1e-13).y[:, -1]
            - solve_ivp(lambda _, y: wf(y), (0, s), r - dr, rtol=1e-13, atol=1e-13).y[:, -1]
        ) / (2 * dr)

    pull_A = lambda s: FA(flow(s)) * flow_prime(s) ** 2
    pull_B = lambda s: FB(flow(s))
    dA = (pull_A(eps) - pull_A(-eps)) / (2 * eps)
    dB = (pull_B(eps) - pull_B(-eps)) / (2 * eps)
    np.testing.assert_allclose(l_rr.values[100:201], dA, atol=1e-4)
    np.testing.assert_allclose(l_sph.values[100:201], dB, atol=1e-4)


@pytest.mark.parametrize("n", [3, 4])
def test_lift_block_check_matches_pointwise_oracle(n):
    """The lift chart's Ricci equals a full (n+1)-dimensional oracle computation."""
    grid = RadialGrid(1.0, 2.5, 161)
    t = StaticTriple(_metric(n, grid), grid.sample(FV))
    from staticflow.chart import warped_lift_ricci

    tt, rr, sph = warped_lift_ricci(n, 1.0, grid.h, t.V.values, t.metric.A.values, t.metric.B.values)
    i = _node(grid)
    x = np.concatenate([[0.3], oracles.base_point(n, PROBE)])
    R = oracles.ricci(oracles.lift(FV, oracles.warped(FA, FB)), x)
    assert tt[i] == pytest.approx(R[0, 0], rel=1e-6)
    assert rr[i] == pytest.approx(R[1, 1], rel=1e-6)
    assert sph[i] == pytest.approx(R[2, 2], rel=1e-6)


def _random_triple(seed, grid, n):
    rng = np.random.default_rng(seed)
    a, b, c = rng.uniform(-0.2, 0.2, 3)
    p, q, s = rng.uniform(0.5, 2.0, 3)
    r = grid.r
    g = RotSymMetric.from_arrays(n, grid, 1 + a * np.sin(p * r), np.sinh(r) ** 2 * (1 + b * np.cos(q * r)))
    return StaticTriple(g, Profile(grid, np.cosh(r) * (1 + c * np.sin(s * r))))


@settings(max_examples=8, deadline=None)
@given(st.integers(0, 10_000), st.sampled_from([3, 4, 5]))
def test_lift_block_identity_holds_for_random_triples(seed, n):
    sups = [
        max(interior_sup(p.values) for p in lift_block_check(_random_triple(seed, RadialGrid(1.0, 4.0, c), n)))
        for c in (201, 401)
    ]
    assert sups[1] < sups[0] / 3.0
    assert sups[1] < 2e-3


def test_lift_of_vacuum_is_einstein():
    from staticflow.chart import warped_lift_ricci

    grid = RadialGrid(1.0, 4.0, 801)
    t = schwarzschild_ads(3, 0.5, grid)
    A, B, V = t.metric.A.values, t.metric.B.values, t.V.values
    tt, rr, sph = warped_lift_ricci(3, 1.0, grid.h, V, A, B)
    sl = slice(1, -1)
    assert np.max(np.abs(tt / V ** 2 + 3)[sl]) < 1e-2
    assert np.max(np.abs(rr / A + 3)[sl]) < 1e-2
    assert np.max(np.abs(sph / B + 3)[sl]) < 1e-2
