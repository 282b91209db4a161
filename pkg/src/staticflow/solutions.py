"""Exact static vacua and smooth perturbations of them."""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np
from scipy.optimize import brentq

from .errors import DomainError, LapseError, SignatureError
from .geometry import RotSymMetric, StaticTriple
from .grid import Profile, RadialGrid

HORIZON_MARGIN = 1.05


def ads(n: int, grid: RadialGrid) -> StaticTriple:
    """Hyperbolic space ``dr^2 + sinh^2 r sigma`` with lapse ``cosh r``."""
    r = grid.r
    metric = RotSymMetric.from_arrays(n, grid, np.ones_like(r), np.sinh(r) ** 2)
    return StaticTriple(metric, Profile(grid, np.cosh(r)))


def ads_area_radius(n: int, grid: RadialGrid) -> StaticTriple:
    """Hyperbolic space in the area-radius coordinate ``rho = sinh r``."""
    return schwarzschild_ads(n, 0.0, grid)


def horizon_radius(n: int, mass: float) -> float:
    """Largest root of ``1 + rho^2 - 2 m rho^(2-n)``; zero for ``m = 0``."""
    if mass < 0:
        raise ValueError(f"mass must be non-negative, got {mass}")
    if mass == 0:
        return 0.0
    f = lambda rho: 1.0 + rho * rho - 2.0 * mass * rho ** (2 - n)
    hi = max(1.0, (2.0 * mass) ** (1.0 / (n - 2)))
    return brentq(f, 1e-300 ** (1.0 / n), hi, xtol=1e-15, rtol=4 * np.finfo(float).eps)


def schwarzschild_ads(n: int, mass: float, grid: RadialGrid) -> StaticTriple:
    """Schwarzschild-AdS in area-radius gauge.

    ``g = V^{-2} drho^2 + rho^2 sigma`` and ``V = sqrt(1 + rho^2 - 2 m rho^(2-n))``.
    The grid must start at least :data:`HORIZON_MARGIN` times the horizon
    radius out, so that ``V^{-1}`` stays well conditioned.
    """
    if n < 3:
        raise ValueError(f"dimension must be >= 3, got {n}")
    rho_h = horizon_radius(n, mass)
    if grid.r_min < HORIZON_MARGIN * rho_h:
        raise DomainError(
            f"grid starts at rho={grid.r_min}, inside {HORIZON_MARGIN} x horizon radius {rho_h:.6g}"
        )
    rho = grid.r
    V2 = 1.0 + rho ** 2 - 2.0 * mass * rho ** (2 - n)
    metric = RotSymMetric.from_arrays(n, grid, 1.0 / V2, rho ** 2)
    return StaticTriple(metric, Profile(grid, np.sqrt(V2)))


@dataclass(frozen=True)
class PerturbationSpec:
    """A smooth multiplicative bump ``1 + eps * bump(r)`` on one profile.

    ``bump(r) = exp(-decay (r-center)^2 / width^2) * exp(-decay max(r-center, 0))``.
    The default center sits at the origin, so on any annulus grid the bump
    is dominated by ``exp(-decay r)``.
    """

    amplitude: float
    center: float = 0.0
    width: float = 2.0
    decay: float = 2.0
    target: str = "B"

    def __post_init__(self):
        if not self.width > 0:
            raise ValueError(f"width must be positive, got {self.width}")
        if not abs(self.amplitude) < 0.5:
            raise ValueError(f"|amplitude| must be below 0.5, got {self.amplitude}")
        if self.target not in ("A", "B", "V"):
            raise ValueError(f"target must be one of A, B, V; got {self.target!r}")

    def bump(self, r: np.ndarray) -> np.ndarray:
        x = r - self.center
        return np.exp(-self.decay * x ** 2 / self.width ** 2) * np.exp(
            -self.decay * np.maximum(x, 0.0)
        )


def perturb(t: StaticTriple, p: PerturbationSpec) -> StaticTriple:
    """Multiply the target profile of ``t`` by ``1 + p.amplitude * p.bump(r)``."""
    factor = 1.0 + p.amplitude * p.bump(t.grid.r)
    g = t.metric
    profiles = {"A": g.A.values, "B": g.B.values, "V": t.V.values}
    new = profiles[p.target] * factor
    bad = np.flatnonzero(~(new > 0))
    if bad.size:
        i = int(bad[0])
        err = LapseError if p.target == "V" else SignatureError
        raise err(f"perturbation makes {p.target} non-positive at node {i}", i)
    if p.target == "V":
        return StaticTriple(g, t.V.with_values(new))
    metric = replace(g, **{p.target: Profile(t.grid, new)})
    return StaticTriple(metric, t.V)
