"""Method-of-lines integration of the DeTurck-gauged static flow.

The metric evolves by ``-2 Ric - 2n g + 2 V^{-1} nabla^2 V + L_W g`` and the
lapse by ``Delta V - n V + dV(W)``, where ``W`` is the DeTurck field of ``g``
relative to the frozen initial metric. Deviations are pinned to zero at both
ends of the radial grid.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import cumulative_trapezoid

from .errors import LapseError, NonFiniteError, SignatureError, StabilityError
from .geometry import (
    RotSymMetric,
    StaticTriple,
    check_lapse,
    check_signature,
    covariant_derivative_norm,
    deturck_arrays,
    frame_norm,
    hessian_arrays,
    interior_sup,
    laplacian_array,
    lie_arrays,
    ricci_arrays,
)
from .grid import Profile, d1, d2, weighted_sup

log = logging.getLogger(__name__)

SCHEMES = ("explicit-rk4", "explicit-euler")


class Termination(str, enum.Enum):
    COMPLETED = "completed"
    BUDGET_EXCEEDED = "budget_exceeded"
    POSITIVITY_LOST = "positivity_lost"
    NONFINITE = "nonfinite"


@dataclass(frozen=True, eq=False)
class FlowState:
    g: RotSymMetric
    V: Profile
    t: float
    background: StaticTriple

    def __post_init__(self):
        if self.V.grid != self.g.grid or self.background.grid != self.g.grid:
            raise ValueError("state and background must share one grid")
        check_lapse(self.V.values)

    @classmethod
    def initial(cls, triple: StaticTriple) -> "FlowState":
        return cls(triple.metric, triple.V, 0.0, triple)

    @property
    def triple(self) -> StaticTriple:
        return StaticTriple(self.g, self.V)


@dataclass(frozen=True)
class FlowControls:
    t_end: float
    cfl: float = 0.25
    scheme: str = "explicit-rk4"
    monitor_every: int = 100
    deviation_budget: float = np.inf

    def __post_init__(self):
        if not self.t_end > 0:
            raise ValueError(f"t_end must be positive, got {self.t_end}")
        if not 0 < self.cfl <= 1:
            raise ValueError(f"cfl must lie in (0, 1], got {self.cfl}")
        if self.scheme not in SCHEMES:
            raise ValueError(f"scheme must be one of {SCHEMES}, got {self.scheme!r}")
        if int(self.monitor_every) != self.monitor_every or self.monitor_every < 1:
            raise ValueError(f"monitor_every must be a positive integer, got {self.monitor_every}")


@dataclass
class FlowReport:
    times: list = field(default_factory=list)
    weighted_dev: list = field(default_factory=list)
    min_lapse: list = field(default_factory=list)
    as_defect: list = field(default_factory=list)
    residual_norms: list = field(default_factory=list)
    terminated: Termination = Termination.COMPLETED
    steps: int = 0

    def __len__(self):
        return len(self.times)

    def rows(self):
        return zip(self.times, self.weighted_dev, self.min_lapse, self.as_defect, self.residual_norms)


class _Background:
    """Derivatives of the frozen background, computed once per run."""

    def __init__(self, triple: StaticTriple):
        g = triple.metric
        self.n, self.k, self.h = g.n, g.k, g.grid.h
        self.r = g.grid.r
        h = self.h
        self.A, self.B, self.V = g.A.values, g.B.values, triple.V.values
        self.dA, self.ddA = d1(self.A, h), d2(self.A, h)
        self.dB, self.ddB = d1(self.B, h), d2(self.B, h)
        # e^{2 r} with r the background distance measured from the origin of
        # the radial coordinate's inner end; equals the node coordinate for
        # metrics with A = 1.
        dist = self.r[0] + cumulative_trapezoid(np.sqrt(self.A), self.r, initial=0.0)
        self.weight = np.exp(2.0 * dist)
        self.distance = dist


def _rhs_arrays(bg: _Background, A, B, V):
    n, k, h = bg.n, bg.k, bg.h
    dA, ddA = d1(A, h), d2(A, h)
    dB, ddB = d1(B, h), d2(B, h)
    dV, ddV = d1(V, h), d2(V, h)
    ric_rr, ric_sph, _ = ricci_arrays(n, k, A, dA, B, dB, ddB)
    h_rr, h_sph = hessian_arrays(A, dA, dB, dV, ddV)
    w, dw = deturck_arrays(n, A, dA, ddA, B, dB, ddB, bg.A, bg.dA, bg.ddA, bg.B, bg.dB, bg.ddB)
    l_rr, l_sph = lie_arrays(A, dA, dB, w, dw)
    rate_A = -2.0 * ric_rr - 2.0 * n * A + 2.0 * h_rr / V + l_rr
    rate_B = -2.0 * ric_sph - 2.0 * n * B + 2.0 * h_sph / V + l_sph
    rate_V = laplacian_array(n, A, B, h_rr, h_sph) - n * V + w * dV
    return rate_A, rate_B, rate_V


def _check_finite(*arrays):
    for arr in arrays:
        bad = np.flatnonzero(~np.isfinite(arr))
        if bad.size:
            i = int(bad[0])
            raise NonFiniteError(f"non-finite time derivative at node {i}", i)


def rhs(s: FlowState) -> tuple[Profile, Profile, Profile]:
    """Time derivatives ``(dA, dB, dV)`` of the gauged flow at state ``s``."""
    check_signature(s.g.A.values, s.g.B.values)
    check_lapse(s.V.values)
    bg = _Background(s.background)
    rates = _rhs_arrays(bg, s.g.A.values, s.g.B.values, s.V.values)
    _check_finite(*rates)
    grid = s.g.grid
    return tuple(Profile(grid, x) for x in rates)


def max_stable_dt(h: float, A: np.ndarray, cfl: float = 1.0) -> float:
    """Explicit parabolic bound ``cfl * h^2 / (2 max g^rr) = cfl * h^2 min(A) / 2``."""
    return cfl * h * h * float(np.min(A)) / 2.0


def _advance(bg: _Background, y: np.ndarray, dt: float, scheme: str) -> np.ndarray:
    """One explicit step of the stacked state ``y = [A, B, V]``; ends stay fixed."""

    def f(state):
        rates = np.array(_rhs_arrays(bg, state[0], state[1], state[2]))
        rates[:, 0] = 0.0
        rates[:, -1] = 0.0
        return rates

    if scheme == "explicit-euler":
        return y + dt * f(y)
    k1 = f(y)
    k2 = f(y + 0.5 * dt * k1)
    k3 = f(y + 0.5 * dt * k2)
    k4 = f(y + dt * k3)
    return y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def step(s: FlowState, dt: float, scheme: str = "explicit-rk4", cfl: float = 1.0) -> FlowState:
    """Advance ``s`` by ``dt``.

    Raises :class:`StabilityError` before doing any work if ``dt`` exceeds
    :func:`max_stable_dt`.
    """
    if scheme not in SCHEMES:
        raise ValueError(f"unknown scheme {scheme!r}")
    if dt < 0:
        raise StabilityError(f"time step must be non-negative, got {dt}")
    if dt == 0:
        return s
    limit = max_stable_dt(s.g.grid.h, s.g.A.values, cfl)
    if dt > limit:
        raise StabilityError(f"dt={dt:.6g} exceeds the explicit stability bound {limit:.6g}")
    bg = _Background(s.background)
    y = np.array([s.g.A.values, s.g.B.values, s.V.values])
    y = _advance(bg, y, dt, scheme)
    _check_finite(*y)
    check_signature(y[0], y[1])
    g = RotSymMetric.from_arrays(s.g.n, s.g.grid, y[0], y[1], s.g.k)
    return FlowState(g, Profile(s.g.grid, y[2]), s.t + dt, s.background)


def weighted_deviation(bg: _Background, A, B) -> float:
    """``sup e^{2r} (|g - g0|_{g0} + |nabla_{g0} g|_{g0})`` with ``r`` the g0-distance."""
    n, h = bg.n, bg.h
    a, b = A - bg.A, B - bg.B
    dev = frame_norm(n, bg.A, bg.B, a, b)
    grad = covariant_derivative_norm(n, bg.A, bg.dA, bg.B, bg.dB, a, d1(a, h), b, d1(b, h))
    return float(np.max(bg.weight * (dev + grad)))


def lapse_growth(V: Profile) -> float:
    """``sup e^{-r} (|V| + |V'| + |V''|)``, a chart-free proxy for the initial-lapse growth condition."""
    h = V.grid.h
    v = V.values
    return weighted_sup(np.abs(v) + np.abs(d1(v, h)) + np.abs(d2(v, h)), -1.0, V.grid.r)


def _monitors(bg: _Background, A, B, V):
    """Weighted deviation, minimum lapse, AS defect and residual sup of a state."""
    n, k, h = bg.n, bg.k, bg.h
    dA = d1(A, h)
    dB, ddB = d1(B, h), d2(B, h)
    ric_rr, ric_sph, _ = ricci_arrays(n, k, A, dA, B, dB, ddB)
    h_rr, h_sph = hessian_arrays(A, dA, dB, d1(V, h), d2(V, h))
    res = frame_norm(n, A, B, ric_rr + n * A - h_rr / V, ric_sph + n * B - h_sph / V)
    return (
        weighted_deviation(bg, A, B),
        float(np.min(V)),
        weighted_sup(res, 2.0, bg.r),
        interior_sup(res),
    )


def evolve(initial, controls: FlowControls) -> FlowReport:
    """Integrate the gauged flow from ``initial`` up to ``controls.t_end``.

    ``initial`` is a :class:`StaticTriple`, or a ``(metric, V)`` pair whose
    lapse has not been validated; a non-positive lapse ends the run at
    ``t = 0`` with :attr:`Termination.POSITIVITY_LOST`. A report is always
    returned.
    """
    if isinstance(initial, StaticTriple):
        metric, V0 = initial.metric, initial.V
    else:
        metric, V0 = initial
    report = FlowReport()
    y = np.array([metric.A.values, metric.B.values, V0.values], dtype=float)

    if not np.all(np.isfinite(y)):
        report.terminated = Termination.NONFINITE
        return report
    if not np.all(y > 0):
        report.times.append(0.0)
        report.weighted_dev.append(0.0)
        report.min_lapse.append(float(np.min(y[2])))
        report.as_defect.append(np.nan)
        report.residual_norms.append(np.nan)
        report.terminated = Termination.POSITIVITY_LOST
        return report

    bg = _Background(StaticTriple(metric, V0))
    t, steps = 0.0, 0

    def record():
        dev, vmin, defect, res = _monitors(bg, y[0], y[1], y[2])
        report.times.append(t)
        report.weighted_dev.append(dev)
        report.min_lapse.append(vmin)
        report.as_defect.append(defect)
        report.residual_norms.append(res)
        return dev

    record()
    while t < controls.t_end:
        dt = min(max_stable_dt(bg.h, y[0], controls.cfl), controls.t_end - t)
        y = _advance(bg, y, dt, controls.scheme)
        steps += 1
        t = controls.t_end if controls.t_end - t <= dt else t + dt
        if not np.all(np.isfinite(y)):
            report.terminated = Termination.NONFINITE
            break
        if not (np.min(y) > 0):
            record()
            report.terminated = Termination.POSITIVITY_LOST
            break
        if steps % controls.monitor_every == 0 or t >= controls.t_end:
            if record() > controls.deviation_budget:
                report.terminated = Termination.BUDGET_EXCEEDED
                break
    report.steps = steps
    log.debug("flow finished after %d steps at t=%g: %s", steps, t, report.terminated.value)
    return report


def stationarity_drift(t: StaticTriple, horizon: float, controls: FlowControls | None = None) -> float:
    """Largest weighted deviation seen while flowing ``t`` for time ``horizon``."""
    if controls is None:
        controls = FlowControls(t_end=horizon)
    else:
        controls = FlowControls(
            t_end=horizon,
            cfl=controls.cfl,
            scheme=controls.scheme,
            monitor_every=controls.monitor_every,
            deviation_budget=controls.deviation_budget,
        )
    report = evolve(t, controls)
    return float(np.max(report.weighted_dev))
