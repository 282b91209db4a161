"""Report files: flow monitor CSV/JSON and expansion JSON.

Floats are written with ``repr``, the shortest decimal string that parses
back to the same double, so output is byte-stable and round-trips exactly.
Every file is written to a temporary sibling and renamed into place.
"""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path

from .expansion import ExpansionResult, parity_check
from .flow import FlowReport
from .series import TruncatedSeries

FLOW_CSV_HEADER = "t,weighted_dev,min_lapse,as_defect_2,residual_sup"


def atomic_write(path, text: str) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _fmt(x) -> str:
    return repr(float(x))


def flow_csv_text(report: FlowReport, every: int = 1) -> str:
    lines = [FLOW_CSV_HEADER]
    for i, row in enumerate(report.rows()):
        if i % every == 0:
            lines.append(",".join(_fmt(x) for x in row))
    return "\n".join(lines) + "\n"


def emit_flow_csv(report: FlowReport, path, every: int = 1) -> None:
    """One row per monitor sample under :data:`FLOW_CSV_HEADER`."""
    atomic_write(path, flow_csv_text(report, every))


def flow_json_text(report: FlowReport, every: int = 1) -> str:
    keep = lambda seq: [float(x) for i, x in enumerate(seq) if i % every == 0]
    payload = {
        "terminated": report.terminated.value,
        "steps": report.steps,
        "t": keep(report.times),
        "weighted_dev": keep(report.weighted_dev),
        "min_lapse": keep(report.min_lapse),
        "as_defect_2": keep(report.as_defect),
        "residual_sup": keep(report.residual_norms),
    }
    return json.dumps(payload, indent=1) + "\n"


def emit_flow_json(report: FlowReport, path, every: int = 1) -> None:
    atomic_write(path, flow_json_text(report, every))


def expansion_payload(res: ExpansionResult) -> dict:
    return {
        "n": res.n,
        "scal": float(res.scal),
        "max_order": res.max_order,
        "c": res.c.to_floats(),
        "u": res.u.to_floats(),
        "determinants": [float(d) for d in res.determinants],
        "parity_ok": parity_check(res),
    }


def emit_expansion_json(res: ExpansionResult, path) -> None:
    """Keys ``n, scal, max_order, c, u, determinants, parity_ok``; arrays indexed by tau-power."""
    atomic_write(path, json.dumps(expansion_payload(res), indent=1) + "\n")


def read_expansion_json(path) -> ExpansionResult:
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    return ExpansionResult(
        n=data["n"],
        scal=data["scal"],
        c=TruncatedSeries(data["c"]),
        u=TruncatedSeries(data["u"]),
        max_order=data["max_order"],
        determinants=tuple(data["determinants"]),
    )
