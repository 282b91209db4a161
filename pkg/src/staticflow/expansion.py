"""Boundary expansion of static vacua with an Einstein conformal infinity.

Near conformal infinity write ``g = tau^{-2}(dtau^2 + g_tau)`` and
``u = tau V``. For an Einstein boundary metric ``g_hat`` with
``Ric(g_hat) = S/(n-1) g_hat`` the ansatz ``g_tau = c(tau) g_hat`` closes:
the tangential static equation and the lapse equation both reduce to scalar
ODEs in ``c`` and ``u``. Their Taylor coefficients are solved order by order
from the ``tau^{m-1}`` coefficients of the two residual series; at order
``m`` the unknowns ``(c_m, u_m)`` enter through the matrix

    m * [[m - 2n + 1, -2], [-(n-1)/2, m - 1 - n]]

which is invertible for ``m < n`` and singular at ``m = n``.

All arithmetic runs on :class:`fractions.Fraction`, so determinants and
parity are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DegenerateSystemError, DomainError
from .geometry import RotSymMetric, StaticTriple
from .grid import Profile, RadialGrid
from .series import TruncatedSeries

PARITY_TOL = 1e-12


@dataclass(frozen=True)
class EinsteinBoundary:
    """Bulk dimension ``n`` and scalar curvature of the ``(n-1)``-dimensional boundary."""

    n: int
    scal: float

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 3:
            raise ValueError(f"bulk dimension must be an integer >= 3, got {self.n}")
        object.__setattr__(self, "n", int(self.n))

    @classmethod
    def sphere(cls, n: int) -> "EinsteinBoundary":
        return cls(n, (n - 1) * (n - 2))

    @property
    def curvature(self) -> float:
        """Sectional curvature of the constant-curvature boundary model with this ``scal``."""
        return self.scal / ((self.n - 1) * (self.n - 2))


@dataclass(frozen=True)
class ExpansionResult:
    n: int
    scal: float
    c: TruncatedSeries
    u: TruncatedSeries
    max_order: int
    determinants: tuple

    @property
    def boundary(self) -> EinsteinBoundary:
        return EinsteinBoundary(self.n, self.scal)


def _exact(x):
    return x if isinstance(x, Fraction) else Fraction(x)


def reduce_equations(b: EinsteinBoundary, c: TruncatedSeries, u: TruncatedSeries):
    """Residual series of the tangential static equation and the lapse equation.

    With ``g_tau = c g_hat``, Ricci of ``g_tau`` equals Ricci of ``g_hat``,
    ``tr(g_tau^{-1} g_tau') = (n-1) c'/c`` and the tangential Hessian and
    Laplacian of ``u(tau)`` vanish. The tangential equation (coefficient of
    ``g_hat``) and the lapse equation become::

        Eg = tau u c'' + (1-n) u c' - (n-1) u c' - tau u c'^2/c
             + (n-1)/2 tau u c'^2/c - 2 tau u S/(n-1) - 2 u' c + tau u' c'
        Eu = tau u'' - n u' + (n-1)/2 tau (c'/c) u' - (n-1)/2 (c'/c) u

    Given ``c, u`` through ``tau^M`` both residuals are known through
    ``tau^{M-1}``; that is the order returned.
    """
    if c.order != u.order:
        raise ValueError(f"series orders differ: {c.order} vs {u.order}")
    if c.order < 1:
        raise ValueError("residuals need series of order >= 1")
    if c[0] != 1 or u[0] != 1:
        raise ValueError("c and u must have unit constant term")
    n = b.n
    S = b.scal
    M = c.order
    dc, du = c.deriv(), u.deriv()  # order M-1
    # tau * (order-M-1 series) is known through tau^M; keep through M-1 below
    ddc = c.deriv().deriv().shift() if M >= 2 else TruncatedSeries.constant(c[0] * 0, M - 1)
    ddu = u.deriv().deriv().shift() if M >= 2 else TruncatedSeries.constant(u[0] * 0, M - 1)
    uu, cc = u.truncate(M - 1), c.truncate(M - 1)
    dc_over_c = dc / cc
    tau_dc2_over_c = (dc * dc_over_c).shift().truncate(M - 1)
    half = (n - 1) * Fraction(1, 2) if isinstance(c[0], Fraction) else (n - 1) / 2
    ric = S / (n - 1)
    Eg = (
        ddc.truncate(M - 1) * uu
        + (1 - n) * uu * dc
        - (n - 1) * uu * dc
        - uu * tau_dc2_over_c
        + half * uu * tau_dc2_over_c
        - 2 * ric * uu.shift().truncate(M - 1)
        - 2 * du * cc
        + (du * dc).shift().truncate(M - 1)
    )
    Eu = (
        ddu.truncate(M - 1)
        - n * du
        + half * (dc_over_c * du).shift().truncate(M - 1)
        - half * dc_over_c * uu
    )
    return Eg, Eu


def solvability_determinant(n: int, m: int) -> float:
    """``det [[m-2n+1, -2], [-(n-1)/2, m-1-n]] = (m-2n+1)(m-n-1) - (n-1)``."""
    if not 1 <= m <= n:
        raise ValueError(f"order must satisfy 1 <= m <= n, got m={m}, n={n}")
    return (m - 2 * n + 1) * (m - n - 1) - (n - 1)


def _order_system(b, c_low, u_low, m):
    """Affine system for ``(c_m, u_m)`` from the ``tau^{m-1}`` residual coefficients."""

    def residual(cm, um):
        c = TruncatedSeries(c_low + (cm,))
        u = TruncatedSeries(u_low + (um,))
        Eg, Eu = reduce_equations(b, c, u)
        return Eg[m - 1], Eu[m - 1]

    zero, one = Fraction(0), Fraction(1)
    g0, v0 = residual(zero, zero)
    g1, v1 = residual(one, zero)
    g2, v2 = residual(zero, one)
    matrix = ((g1 - g0, g2 - g0), (v1 - v0, v2 - v0))
    return matrix, (-g0, -v0)


def expand(b: EinsteinBoundary, order: int) -> ExpansionResult:
    """Taylor coefficients of ``c`` and ``u`` through ``tau^order``.

    ``order`` may not exceed ``n - 1``. The normalised determinant of each
    order's system is recorded, together with a probe of the next order's
    system, so the list ends at ``D(n) = 0`` exactly when ``order = n - 1``.
    """
    n = b.n
    if not 1 <= order <= n - 1:
        raise ValueError(f"order must lie in [1, n-1] = [1, {n - 1}], got {order}")
    exact_b = EinsteinBoundary(n, _exact(b.scal))
    c_low, u_low = (Fraction(1),), (Fraction(1),)
    dets = []
    for m in range(1, order + 2):
        if m > n:
            break
        matrix, rhs = _order_system(exact_b, c_low, u_low, m)
        (a11, a12), (a21, a22) = matrix
        det = a11 * a22 - a12 * a21
        dets.append(det / (m * m))
        if m > order:
            break
        if det == 0:
            raise DegenerateSystemError(f"order-{m} system is singular for n={n}")
        cm = (rhs[0] * a22 - a12 * rhs[1]) / det
        um = (a11 * rhs[1] - a21 * rhs[0]) / det
        c_low += (cm,)
        u_low += (um,)
    return ExpansionResult(
        n=n,
        scal=float(b.scal),
        c=TruncatedSeries([float(x) for x in c_low]),
        u=TruncatedSeries([float(x) for x in u_low]),
        max_order=order,
        determinants=tuple(float(d) for d in dets),
    )


def closed_form_order2(b: EinsteinBoundary) -> tuple[float, float]:
    """Second Taylor coefficients ``(u2, c2)`` from the known second derivatives at the boundary.

    ``u''(0) = S / (2(n-1)(n-2))`` and, for Einstein ``g_hat``,
    ``g''(0) = [S/(1-n) + 2S/(n-1)] g_hat / (2-n)``; Taylor coefficients are
    half of these.
    """
    n, S = b.n, b.scal
    u2 = S / (2 * (n - 1) * (n - 2)) / 2
    c2 = (S / (1 - n) + 2 * S / (n - 1)) / (2 - n) / 2
    return u2, c2


def special_gauge_of_ads(n: int, order: int) -> tuple[TruncatedSeries, TruncatedSeries]:
    """Exact hyperbolic-space coefficients in the special defining function ``tau = 2 e^{-r}``.

    ``sinh r = (1 - tau^2/4)/tau`` and ``cosh r = (1 + tau^2/4)/tau`` give
    ``c = (1 - tau^2/4)^2`` and ``u = 1 + tau^2/4``.
    """
    if order < 2:
        raise ValueError(f"order must be >= 2, got {order}")
    if n < 3:
        raise ValueError(f"dimension must be >= 3, got {n}")
    c = [1.0, 0.0, -0.5, 0.0, 0.0625] + [0.0] * max(0, order - 4)
    u = [1.0, 0.0, 0.25] + [0.0] * max(0, order - 2)
    return TruncatedSeries(c[: order + 1]), TruncatedSeries(u[: order + 1])


def parity_check(res: ExpansionResult, tol: float = PARITY_TOL) -> bool:
    """True iff every odd coefficient of ``c`` and ``u`` up to ``max_order`` vanishes."""
    for series in (res.c, res.u):
        top = min(res.max_order, series.order)
        if any(abs(series[k]) > tol for k in range(1, top + 1, 2)):
            return False
    return True


def reconstruct(res: ExpansionResult, tau_grid: RadialGrid) -> StaticTriple:
    """Bulk triple ``tau^{-2}(dtau^2 + c(tau) sigma_k)``, ``V = u(tau)/tau`` on ``tau_grid``.

    The cross-section is the constant-curvature model whose scalar curvature
    is the boundary's ``scal``.
    """
    tau = tau_grid.r
    c = res.c(tau)
    bad = np.flatnonzero(~(c > 0))
    if bad.size:
        i = int(bad[0])
        raise DomainError(f"c(tau) is non-positive at tau={tau[i]!r} (node {i})")
    metric = RotSymMetric.from_arrays(
        res.n, tau_grid, tau ** -2.0, c / tau ** 2, res.boundary.curvature
    )
    return StaticTriple(metric, Profile(tau_grid, res.u(tau) / tau))
