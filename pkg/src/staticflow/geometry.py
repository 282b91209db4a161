"""Curvature of rotationally symmetric metrics ``g = A dr^2 + B sigma_k``.

``sigma_k`` is the constant-curvature metric of sectional curvature ``k`` on
the ``(n-1)``-dimensional cross-section (``k = 1`` is the unit round sphere).
All radial derivatives use the stencils of :mod:`staticflow.grid`, so every
operator here is second-order accurate in the grid spacing.

In terms of the warping function ``phi = sqrt(B)`` and arclength
``ds = sqrt(A) dr`` the two sectional curvatures are ``-phi_ss/phi``
(planes containing the radial direction) and ``(k - phi_s^2)/phi^2``
(planes tangent to the cross-section); the Ricci components below are
assembled from those two numbers.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .chart import warped_lift_ricci
from .errors import GridMismatchError, LapseError, SignatureError
from .grid import Profile, RadialGrid, d1, d2, same_grid, weighted_sup


@dataclass(frozen=True, eq=False)
class RotSymMetric:
    n: int
    A: Profile
    B: Profile
    k: float = 1.0

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 3:
            raise ValueError(f"dimension must be an integer >= 3, got {self.n}")
        object.__setattr__(self, "n", int(self.n))
        same_grid(self.A, self.B)
        check_signature(self.A.values, self.B.values)

    @property
    def grid(self) -> RadialGrid:
        return self.A.grid

    @classmethod
    def from_arrays(cls, n, grid, A, B, k=1.0) -> "RotSymMetric":
        return cls(n, Profile(grid, A), Profile(grid, B), k)


@dataclass(frozen=True, eq=False)
class StaticTriple:
    """A metric together with a lapse profile; a candidate static vacuum."""

    metric: RotSymMetric
    V: Profile

    def __post_init__(self):
        if self.V.grid != self.metric.grid:
            raise GridMismatchError("lapse and metric live on different grids")
        check_lapse(self.V.values)

    @property
    def grid(self) -> RadialGrid:
        return self.metric.grid

    @property
    def n(self) -> int:
        return self.metric.n


@dataclass(frozen=True, eq=False)
class CurvatureComponents:
    """``Ric = ric_rr dr^2 + ric_sph sigma_k`` and the scalar curvature."""

    ric_rr: Profile
    ric_sph: Profile
    scal: Profile


def check_signature(A: np.ndarray, B: np.ndarray) -> None:
    for name, values in (("A", A), ("B", B)):
        bad = np.flatnonzero(~(values > 0))
        if bad.size:
            i = int(bad[0])
            raise SignatureError(f"{name} is non-positive at node {i} ({values[i]!r})", i)


def check_lapse(V: np.ndarray) -> None:
    bad = np.flatnonzero(~(V > 0))
    if bad.size:
        i = int(bad[0])
        raise LapseError(f"lapse is non-positive at node {i} ({V[i]!r})", i)


# ---------------------------------------------------------------------------
# array kernels


def sectional_arrays(n, k, A, dA, B, dB, ddB):
    """Radial-tangential and tangential-tangential sectional curvatures."""
    k_rad = -(ddB / (2.0 * B) - dB * dB / (4.0 * B * B)) / A + dA * dB / (4.0 * A * A * B)
    k_tan = k / B - dB * dB / (4.0 * A * B * B)
    return k_rad, k_tan


def ricci_arrays(n, k, A, dA, B, dB, ddB):
    k_rad, k_tan = sectional_arrays(n, k, A, dA, B, dB, ddB)
    ric_rr = (n - 1) * A * k_rad
    ric_sph = B * (k_rad + (n - 2) * k_tan)
    scal = ric_rr / A + (n - 1) * ric_sph / B
    return ric_rr, ric_sph, scal


def hessian_arrays(A, dA, dB, df, ddf):
    h_rr = ddf - dA * df / (2.0 * A)
    h_sph = dB * df / (2.0 * A)
    return h_rr, h_sph


def laplacian_array(n, A, B, h_rr, h_sph):
    return h_rr / A + (n - 1) * h_sph / B


def deturck_arrays(n, A, dA, ddA, B, dB, ddB, Ah, dAh, ddAh, Bh, dBh, ddBh):
    """Radial DeTurck component ``w`` and its radial derivative ``w'``.

    ``w = (dA/A - dAh/Ah)/(2A) - (n-1)(dB/A - dBh/Ah)/(2B)``. The
    derivative is expanded analytically so the flow only ever sees compact
    three-point second-derivative stencils.
    """
    alpha = dA / A - dAh / Ah
    beta = dB / A - dBh / Ah
    w = alpha / (2.0 * A) - (n - 1) * beta / (2.0 * B)
    dalpha = (ddA / A - (dA / A) ** 2) - (ddAh / Ah - (dAh / Ah) ** 2)
    dbeta = (ddB / A - dB * dA / (A * A)) - (ddBh / Ah - dBh * dAh / (Ah * Ah))
    dw = (
        dalpha / (2.0 * A)
        - dA * alpha / (2.0 * A * A)
        - 0.5 * (n - 1) * (dbeta / B - dB * beta / (B * B))
    )
    return w, dw


def lie_arrays(A, dA, dB, w, dw):
    return w * dA + 2.0 * A * dw, w * dB


def frame_norm(n, A, B, t_rr, t_sph):
    """Pointwise ``|t|_g`` of ``t_rr dr^2 + t_sph sigma`` in a g-orthonormal frame."""
    return np.sqrt((t_rr / A) ** 2 + (n - 1) * (t_sph / B) ** 2)


def covariant_derivative_norm(n, A, dA, B, dB, t_rr, dt_rr, t_sph, dt_sph):
    """Pointwise ``|nabla_g t|_g`` for a rotationally symmetric symmetric 2-tensor.

    Non-zero frame components of ``nabla t`` are ``(r; r r)``,
    ``(r; a a)`` and ``(a; r a) = (a; a r)``.
    """
    c_rrr = (dt_rr - dA * t_rr / A) / A ** 1.5
    c_raa = (dt_sph - dB * t_sph / B) / (np.sqrt(A) * B)
    c_ara = 0.5 * dB * (t_rr / A - t_sph / B) / (np.sqrt(A) * B)
    return np.sqrt(c_rrr ** 2 + (n - 1) * c_raa ** 2 + 2 * (n - 1) * c_ara ** 2)


# ---------------------------------------------------------------------------
# public operators


def _derivs(p: Profile):
    h = p.grid.h
    return d1(p.values, h), d2(p.values, h)


def ricci(g: RotSymMetric) -> CurvatureComponents:
    """Finite-difference Ricci tensor and scalar curvature of ``g``."""
    h = g.grid.h
    A, B = g.A.values, g.B.values
    dB, ddB = _derivs(g.B)
    ric_rr, ric_sph, scal = ricci_arrays(g.n, g.k, A, d1(A, h), B, dB, ddB)
    grid = g.grid
    return CurvatureComponents(Profile(grid, ric_rr), Profile(grid, ric_sph), Profile(grid, scal))


def hessian_radial(g: RotSymMetric, f: Profile) -> tuple[Profile, Profile]:
    """``nabla^2 f = h_rr dr^2 + h_sph sigma`` for a radial function ``f``."""
    grid = same_grid(g.A, f)
    h = grid.h
    df, ddf = _derivs(f)
    h_rr, h_sph = hessian_arrays(g.A.values, d1(g.A.values, h), d1(g.B.values, h), df, ddf)
    return Profile(grid, h_rr), Profile(grid, h_sph)


def laplacian_radial(g: RotSymMetric, f: Profile) -> Profile:
    h_rr, h_sph = hessian_radial(g, f)
    return Profile(
        f.grid, laplacian_array(g.n, g.A.values, g.B.values, h_rr.values, h_sph.values)
    )


def _residual_arrays(t: StaticTriple):
    g = t.metric
    h = g.grid.h
    A, B, V = g.A.values, g.B.values, t.V.values
    dA = d1(A, h)
    dB, ddB = d1(B, h), d2(B, h)
    dV, ddV = d1(V, h), d2(V, h)
    ric_rr, ric_sph, _ = ricci_arrays(g.n, g.k, A, dA, B, dB, ddB)
    h_rr, h_sph = hessian_arrays(A, dA, dB, dV, ddV)
    res_rr = ric_rr + g.n * A - h_rr / V
    res_sph = ric_sph + g.n * B - h_sph / V
    lap_over_v = laplacian_array(g.n, A, B, h_rr, h_sph) / V
    return res_rr, res_sph, lap_over_v


def static_residual(t: StaticTriple) -> tuple[Profile, Profile, Profile]:
    """Residuals of the static vacuum equations.

    Returns the ``dr^2`` and ``sigma`` components of
    ``Ric + n g - V^{-1} nabla^2 V`` and the scalar residual
    ``V^{-1} Delta V - n``. All three are invariant under ``V -> lambda V``.
    """
    res_rr, res_sph, lap_over_v = _residual_arrays(t)
    grid = t.grid
    return Profile(grid, res_rr), Profile(grid, res_sph), Profile(grid, lap_over_v - t.n)


def interior_sup(values: np.ndarray) -> float:
    """Sup of ``|values|`` over interior nodes (boundary nodes use one-sided stencils)."""
    return float(np.max(np.abs(values[1:-1])))


def residual_sup(t: StaticTriple) -> tuple[float, float]:
    """Interior sup of the tensor residual's g-norm and of the scalar residual."""
    res_rr, res_sph, scalar = static_residual(t)
    g = t.metric
    tensor = frame_norm(g.n, g.A.values, g.B.values, res_rr.values, res_sph.values)
    return interior_sup(tensor), interior_sup(scalar.values)


def sectional_defect(g: RotSymMetric) -> Profile:
    """``max(|K_rad + 1|, |K_tan + 1|)``: distance of the sectional curvatures from -1."""
    h = g.grid.h
    A, B = g.A.values, g.B.values
    k_rad, k_tan = sectional_arrays(g.n, g.k, A, d1(A, h), B, d1(B, h), d2(B, h))
    return Profile(g.grid, np.maximum(np.abs(k_rad + 1.0), np.abs(k_tan + 1.0)))


def as_defect(t: StaticTriple, a: float = 2.0) -> tuple[float, float]:
    """Weighted decay defects of an asymptotically static triple.

    ``d2 = sup e^{2r} |Ric + n g - V^{-1} nabla^2 V|_g`` and
    ``da = sup e^{a r} |nabla_g (V^{-1} Delta_g V)|_g`` with ``r`` the node
    coordinate.
    """
    if a < 2:
        raise ValueError(f"decay order must be >= 2, got {a}")
    g = t.metric
    A, B = g.A.values, g.B.values
    res_rr, res_sph, lap_over_v = _residual_arrays(t)
    tensor = frame_norm(g.n, A, B, res_rr, res_sph)
    grad = np.abs(d1(lap_over_v, g.grid.h)) / np.sqrt(A)
    return weighted_sup(tensor, 2.0, g.grid.r), weighted_sup(grad, a, g.grid.r)


def _check_pair(g: RotSymMetric, g_hat: RotSymMetric) -> None:
    same_grid(g.A, g_hat.A)
    if g.n != g_hat.n:
        raise ValueError(f"dimension mismatch: {g.n} vs {g_hat.n}")
    if g.k != g_hat.k:
        raise ValueError(f"cross-section curvature mismatch: {g.k} vs {g_hat.k}")


def deturck_field(g: RotSymMetric, g_hat: RotSymMetric) -> Profile:
    """Radial component of ``W^k = g^{ij}(Gamma^k_ij - Gamma_hat^k_ij)``.

    The tangential components vanish identically by symmetry.
    """
    _check_pair(g, g_hat)
    h = g.grid.h
    arrays = []
    for p in (g.A, g.B, g_hat.A, g_hat.B):
        v = p.values
        arrays.append((v, d1(v, h), d2(v, h)))
    (A, dA, ddA), (B, dB, ddB), (Ah, dAh, ddAh), (Bh, dBh, ddBh) = arrays
    w, _ = deturck_arrays(g.n, A, dA, ddA, B, dB, ddB, Ah, dAh, ddAh, Bh, dBh, ddBh)
    return Profile(g.grid, w)


def lie_derivative_radial(g: RotSymMetric, w: Profile) -> tuple[Profile, Profile]:
    """``L_W g`` for ``W = w d/dr``: ``(w A' + 2 A w') dr^2 + w B' sigma``."""
    grid = same_grid(g.A, w)
    h = grid.h
    l_rr, l_sph = lie_arrays(
        g.A.values, d1(g.A.values, h), d1(g.B.values, h), w.values, d1(w.values, h)
    )
    return Profile(grid, l_rr), Profile(grid, l_sph)


def lift_block_check(t: StaticTriple) -> tuple[Profile, Profile, Profile]:
    """Residuals of the Ricci block identity for the circle lift ``h = V^2 dtheta^2 + g``.

    ``Ric(h)`` is computed from scratch on the ``(theta, r)`` chart by
    :func:`staticflow.chart.warped_lift_ricci`; it is compared against
    ``-V^{-1} Delta_g V`` (theta block, after dividing by ``V^2``) and
    ``Ric(g) - V^{-1} nabla^2 V`` (manifold block) built from this module's
    operators. All three residuals are frame components (divided by
    ``V^2``, ``A`` and ``B`` respectively).
    """
    g = t.metric
    h = g.grid.h
    A, B, V = g.A.values, g.B.values, t.V.values
    lift_tt, lift_rr, lift_sph = warped_lift_ricci(g.n, g.k, h, V, A, B)
    dA, dB, ddB = d1(A, h), d1(B, h), d2(B, h)
    ric_rr, ric_sph, _ = ricci_arrays(g.n, g.k, A, dA, B, dB, ddB)
    h_rr, h_sph = hessian_arrays(A, dA, dB, d1(V, h), d2(V, h))
    lap = laplacian_array(g.n, A, B, h_rr, h_sph)
    res_theta = np.abs(lift_tt / V ** 2 + lap / V)
    res_rr = np.abs(lift_rr - (ric_rr - h_rr / V)) / A
    res_sph = np.abs(lift_sph - (ric_sph - h_sph / V)) / B
    grid = g.grid
    return Profile(grid, res_theta), Profile(grid, res_rr), Profile(grid, res_sph)
