"""Uniform radial grids, sampled profiles and second-order difference stencils."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable

import numpy as np

from .errors import GridMismatchError


@dataclass(frozen=True)
class RadialGrid:
    """Uniform nodes ``r_min + i*h`` for ``i = 0..count-1`` on an annulus ``r_min > 0``."""

    r_min: float
    r_max: float
    count: int

    def __post_init__(self):
        if not (np.isfinite(self.r_min) and np.isfinite(self.r_max)):
            raise ValueError("grid bounds must be finite")
        if self.r_min <= 0:
            raise ValueError(f"r_min must be positive, got {self.r_min}")
        if self.r_max <= self.r_min:
            raise ValueError(f"r_max ({self.r_max}) must exceed r_min ({self.r_min})")
        if int(self.count) != self.count or self.count < 5:
            raise ValueError(f"count must be an integer >= 5, got {self.count}")
        object.__setattr__(self, "count", int(self.count))

    @property
    def h(self) -> float:
        return (self.r_max - self.r_min) / (self.count - 1)

    @cached_property
    def r(self) -> np.ndarray:
        nodes = self.r_min + self.h * np.arange(self.count)
        nodes.flags.writeable = False
        return nodes

    def refine(self) -> "RadialGrid":
        """Same interval with the spacing halved; every old node stays a node."""
        return RadialGrid(self.r_min, self.r_max, 2 * self.count - 1)

    def sample(self, func: Callable[[np.ndarray], np.ndarray]) -> "Profile":
        return Profile(self, np.broadcast_to(func(self.r), (self.count,)))


@dataclass(frozen=True, eq=False)
class Profile:
    """A real function of the radial coordinate sampled at every grid node."""

    grid: RadialGrid
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        if values.shape != (self.grid.count,):
            raise ValueError(
                f"profile has shape {values.shape}, grid expects ({self.grid.count},)"
            )
        if not np.all(np.isfinite(values)):
            bad = int(np.flatnonzero(~np.isfinite(values))[0])
            raise ValueError(f"profile value at node {bad} is not finite")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    @property
    def r(self) -> np.ndarray:
        return self.grid.r

    def with_values(self, values) -> "Profile":
        return Profile(self.grid, values)

    def sup(self) -> float:
        return float(np.max(np.abs(self.values)))

    def __len__(self):
        return self.grid.count


def same_grid(*profiles: Profile) -> RadialGrid:
    """Return the common grid of ``profiles`` or raise :class:`GridMismatchError`."""
    grid = profiles[0].grid
    for p in profiles[1:]:
        if p.grid != grid:
            raise GridMismatchError(f"profiles live on different grids: {grid} vs {p.grid}")
    return grid


def d1(f: np.ndarray, h: float) -> np.ndarray:
    """First derivative: central in the interior, one-sided second order at both ends."""
    out = np.empty_like(f)
    out[1:-1] = (f[2:] - f[:-2]) / (2.0 * h)
    out[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h)
    out[-1] = (3.0 * f[-1] - 4.0 * f[-2] + f[-3]) / (2.0 * h)
    return out


def d2(f: np.ndarray, h: float) -> np.ndarray:
    """Second derivative: three-point interior stencil, four-point one-sided ends."""
    out = np.empty_like(f)
    h2 = h * h
    out[1:-1] = (f[2:] - 2.0 * f[1:-1] + f[:-2]) / h2
    out[0] = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) / h2
    out[-1] = (2.0 * f[-1] - 5.0 * f[-2] + 4.0 * f[-3] - f[-4]) / h2
    return out


def weighted_sup(f, mu: float, r: np.ndarray | None = None) -> float:
    """``max_i exp(mu*r_i) * |f_i|`` over grid nodes.

    ``f`` is a :class:`Profile` or a bare array; with a bare array the node
    coordinates ``r`` must be supplied.
    """
    if isinstance(f, Profile):
        values, r = f.values, f.r if r is None else r
    else:
        values = np.asarray(f, dtype=float)
        if r is None:
            raise ValueError("node coordinates are required for a bare array")
    if values.size == 0:
        return 0.0
    return float(np.max(np.exp(mu * np.asarray(r)) * np.abs(values)))
