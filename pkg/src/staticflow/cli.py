"""Command-line entry point: ``staticflow <command> --config <path> [--out <path>]``.

Commands are ``flow``, ``expand``, ``residual`` and ``verify``. The run is
described by a single JSON file (see :class:`RunConfig`). Exit codes:

====  ==========================================================
0     success
1     unexpected internal error (a bug; traceback on stderr)
2     unreadable or invalid configuration, or unwritable output
3     a flow run terminated early (budget, positivity, non-finite)
4     an internal oracle disagreed with the computed result
====  ==========================================================
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import io
from .errors import StaticFlowError
from .expansion import EinsteinBoundary, closed_form_order2, expand, parity_check
from .flow import FlowControls, Termination, evolve
from .geometry import interior_sup, lift_block_check, residual_sup, sectional_defect, static_residual
from .grid import RadialGrid
from .solutions import PerturbationSpec, ads, perturb, schwarzschild_ads

log = logging.getLogger(__name__)

COMMANDS = ("flow", "expand", "residual", "verify")
KINDS = ("ads", "schwarzschild_ads", "perturbed")
FORMATS = ("csv", "json")

EXIT_OK, EXIT_INTERNAL, EXIT_CONFIG, EXIT_EARLY, EXIT_ORACLE = 0, 1, 2, 3, 4
ORACLE_TOL = 1e-3
ORDER2_TOL = 1e-12


class ConfigError(StaticFlowError):
    """Config could not be read or failed validation; ``field`` names the culprit."""

    def __init__(self, msg, field=None):
        super().__init__(f"{field}: {msg}" if field else msg)
        self.field = field


@dataclass(frozen=True)
class RunConfig:
    command: str
    n: int
    grid: RadialGrid | None = None
    kind: str = "ads"
    masses: tuple = ()
    perturbation: PerturbationSpec | None = None
    base: str = "ads"
    flow: FlowControls | None = None
    scal: float | None = None
    order: int | None = None
    out: Path | None = None
    fmt: str = "json"
    every: int = 1
    tolerance: float = ORACLE_TOL
    workers: int = 1


def _section(data, key, required=False):
    value = data.get(key)
    if value is None:
        if required:
            raise ConfigError("missing required section", key)
        return {}
    if not isinstance(value, dict):
        raise ConfigError("expected an object", key)
    return value


def _build(where, ctor, **kwargs):
    try:
        return ctor(**kwargs)
    except TypeError as exc:
        raise ConfigError(str(exc), where) from None
    except ValueError as exc:
        raise ConfigError(str(exc), where) from None


def parse_config(data: dict, command: str | None = None, out: str | None = None) -> RunConfig:
    """Validate a decoded JSON config; raises :class:`ConfigError`."""
    if not isinstance(data, dict):
        raise ConfigError("top level must be a JSON object")
    cfg_cmd = data.get("command")
    if command and cfg_cmd and command != cfg_cmd:
        raise ConfigError(f"config says {cfg_cmd!r} but {command!r} was requested", "command")
    command = command or cfg_cmd
    if command not in COMMANDS:
        raise ConfigError(f"must be one of {COMMANDS}, got {command!r}", "command")
    n = data.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 3:
        raise ConfigError(f"must be an integer >= 3, got {n!r}", "n")

    output = _section(data, "output")
    fmt = output.get("format", "csv" if command == "flow" else "json")
    if fmt not in FORMATS:
        raise ConfigError(f"must be one of {FORMATS}, got {fmt!r}", "output.format")
    if command == "expand" and fmt != "json":
        raise ConfigError("expand writes json only", "output.format")
    every = output.get("every", 1)
    if not isinstance(every, int) or every < 1:
        raise ConfigError(f"must be a positive integer, got {every!r}", "output.every")
    path = out if out is not None else output.get("path")
    kwargs = dict(command=command, n=n, fmt=fmt, every=every, out=Path(path) if path else None)

    if command == "expand":
        exp = _section(data, "expansion", required=True)
        for key in ("scal", "order"):
            if key not in exp:
                raise ConfigError("missing", f"expansion.{key}")
        if not isinstance(exp["order"], int) or not 1 <= exp["order"] <= n - 1:
            raise ConfigError(f"must be an integer in [1, {n - 1}]", "expansion.order")
        if not isinstance(exp["scal"], (int, float)) or not np.isfinite(exp["scal"]):
            raise ConfigError("must be a finite number", "expansion.scal")
        return RunConfig(scal=float(exp["scal"]), order=exp["order"], **kwargs)

    grid = _build("grid", RadialGrid, **_section(data, "grid", required=True))
    initial = _section(data, "initial")
    kind = initial.get("kind", "ads")
    if kind not in KINDS:
        raise ConfigError(f"must be one of {KINDS}, got {kind!r}", "initial.kind")
    base = initial.get("base", "ads")
    if base not in ("ads", "schwarzschild_ads"):
        raise ConfigError(f"must be ads or schwarzschild_ads, got {base!r}", "initial.base")
    mass = initial.get("mass")
    needs_mass = kind == "schwarzschild_ads" or (kind == "perturbed" and base == "schwarzschild_ads")
    if needs_mass and mass is None:
        raise ConfigError("required for Schwarzschild-AdS data", "initial.mass")
    masses = tuple(mass) if isinstance(mass, list) else ((mass,) if mass is not None else ())
    for m in masses:
        if not isinstance(m, (int, float)) or isinstance(m, bool) or not m >= 0:
            raise ConfigError(f"masses must be non-negative numbers, got {m!r}", "initial.mass")
    perturbation = None
    if kind == "perturbed":
        perturbation = _build(
            "initial.perturbation", PerturbationSpec, **_section(initial, "perturbation", required=True)
        )
    if len(masses) > 1 and command != "flow":
        raise ConfigError("mass sweeps are only supported by the flow command", "initial.mass")

    controls = None
    if command == "flow":
        controls = _build("flow", FlowControls, **_section(data, "flow", required=True))
    verify = _section(data, "verify")
    tolerance = verify.get("tolerance", ORACLE_TOL)
    if not isinstance(tolerance, (int, float)) or not tolerance > 0:
        raise ConfigError("must be a positive number", "verify.tolerance")
    workers = data.get("workers", 1)
    if not isinstance(workers, int) or workers < 1:
        raise ConfigError("must be a positive integer", "workers")
    return RunConfig(
        grid=grid,
        kind=kind,
        masses=tuple(float(m) for m in masses),
        perturbation=perturbation,
        base=base,
        flow=controls,
        tolerance=float(tolerance),
        workers=workers,
        **kwargs,
    )


def load_config(path, command=None, out=None) -> RunConfig:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc.strerror}", str(path)) from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return parse_config(data, command, out)


def build_initial(cfg: RunConfig, mass=None):
    """The fixture named by ``cfg.kind`` (``mass`` overrides the first configured one)."""
    if mass is None and cfg.masses:
        mass = cfg.masses[0]
    kind = cfg.base if cfg.kind == "perturbed" else cfg.kind
    if kind == "ads":
        t = ads(cfg.n, cfg.grid)
    else:
        t = schwarzschild_ads(cfg.n, mass, cfg.grid)
    if cfg.perturbation is not None:
        t = perturb(t, cfg.perturbation)
    return t


def _indexed(path: Path, i: int) -> Path:
    return path.with_name(f"{path.stem}_{i}{path.suffix}")


def _emit_json(payload, path):
    text = json.dumps(payload, indent=1) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        io.atomic_write(path, text)


def _run_flow(cfg: RunConfig) -> int:
    masses = cfg.masses if len(cfg.masses) > 1 else (None,)
    initials = [build_initial(cfg, m) for m in masses]

    def one(t):
        return evolve(t, cfg.flow)

    if len(initials) > 1 and cfg.workers > 1:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            reports = list(pool.map(one, initials))
    else:
        reports = [one(t) for t in initials]

    for i, report in enumerate(reports):
        text = (io.flow_csv_text if cfg.fmt == "csv" else io.flow_json_text)(report, cfg.every)
        if cfg.out is None:
            sys.stdout.write(text)
        else:
            io.atomic_write(_indexed(cfg.out, i) if len(reports) > 1 else cfg.out, text)
    early = [r.terminated for r in reports if r.terminated is not Termination.COMPLETED]
    for term in early:
        log.warning("flow terminated early: %s", term.value)
    return EXIT_EARLY if early else EXIT_OK


def _run_expand(cfg: RunConfig) -> int:
    b = EinsteinBoundary(cfg.n, cfg.scal)
    res = expand(b, cfg.order)
    payload = io.expansion_payload(res)
    if cfg.out is None:
        _emit_json(payload, None)
    else:
        io.emit_expansion_json(res, cfg.out)
    if cfg.order >= 2:
        u2, c2 = closed_form_order2(b)
        if abs(res.u[2] - u2) > ORDER2_TOL * max(1.0, abs(u2)) or abs(res.c[2] - c2) > ORDER2_TOL * max(
            1.0, abs(c2)
        ):
            log.error("order-2 coefficients disagree with the closed form")
            return EXIT_ORACLE
    if not payload["parity_ok"]:
        log.error("odd coefficients do not vanish")
        return EXIT_ORACLE
    return EXIT_OK


def _run_residual(cfg: RunConfig) -> int:
    t = build_initial(cfg)
    res_rr, res_sph, scalar = static_residual(t)
    r = t.grid.r
    if cfg.fmt == "csv":
        lines = ["r,res_rr,res_sph,scalar_res"]
        for i in range(0, t.grid.count, cfg.every):
            lines.append(",".join(repr(float(x)) for x in (r[i], res_rr.values[i], res_sph.values[i], scalar.values[i])))
        text = "\n".join(lines) + "\n"
        if cfg.out is None:
            sys.stdout.write(text)
        else:
            io.atomic_write(cfg.out, text)
        return EXIT_OK
    sl = slice(None, None, cfg.every)
    tensor_sup, scalar_sup = residual_sup(t)
    payload = {
        "r": r[sl].tolist(),
        "res_rr": res_rr.values[sl].tolist(),
        "res_sph": res_sph.values[sl].tolist(),
        "scalar_res": scalar.values[sl].tolist(),
        "tensor_sup": tensor_sup,
        "scalar_sup": scalar_sup,
    }
    _emit_json(payload, cfg.out)
    return EXIT_OK


def verify_report(t, tolerance: float = ORACLE_TOL) -> dict:
    """Sup-norms of the geometry checks on a triple, and whether the lift oracle agrees."""
    tensor_sup, scalar_sup = residual_sup(t)
    lift = [interior_sup(p.values) for p in lift_block_check(t)]
    return {
        "static_residual": {"tensor_sup": tensor_sup, "scalar_sup": scalar_sup},
        "sectional_defect_sup": interior_sup(sectional_defect(t.metric).values),
        "lift_block_check": {"theta_sup": lift[0], "rr_sup": lift[1], "sph_sup": lift[2]},
        "tolerance": tolerance,
        "oracle_ok": bool(max(lift) <= tolerance),
    }


def _run_verify(cfg: RunConfig) -> int:
    report = verify_report(build_initial(cfg), cfg.tolerance)
    _emit_json(report, cfg.out)
    return EXIT_OK if report["oracle_ok"] else EXIT_ORACLE


_DISPATCH = {"flow": _run_flow, "expand": _run_expand, "residual": _run_residual, "verify": _run_verify}


def run(cfg: RunConfig) -> int:
    """Dispatch a validated config; returns the exit status."""
    try:
        return _DISPATCH[cfg.command](cfg)
    except OSError as exc:
        log.error("cannot write output: %s", exc)
        return EXIT_CONFIG
    except StaticFlowError as exc:
        # domain, signature and lapse errors raised while building fixtures
        log.error("%s", exc)
        return EXIT_CONFIG


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="staticflow", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", required=True, help="JSON run configuration")
    parser.add_argument("--out", help="output path (overrides output.path; stdout if neither)")
    parser.add_argument("-v", "--verbose", action="store_true")
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        cfg = load_config(args.config, args.command, args.out)
    except ConfigError as exc:
        print(f"staticflow: invalid config: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
