"""Serializable run records.

JSON is the lossless format.  CSV has one row per trial with the run metadata
repeated on every row; its columns, in order, are :data:`CSV_COLUMNS`.  Gross
values (and float objective values, written as ``d@0``) use the ``digit@power``
literal form; floats are written with ``repr`` so they read back bit-exactly.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass

from .grossone import GrossNumber, parse
from .solver import RunReport

SCHEMA_VERSION = 1

CSV_COLUMNS = (
    "schema_version",
    "problem",
    "method",
    "alpha",
    "beta",
    "r",
    "lipschitz",
    "epsilon_fraction",
    "max_iterations",
    "stop_reason",
    "x_best",
    "z_best",
    "trial_count",
    "k",
    "x",
    "z",
)


def _g(v) -> GrossNumber:
    return v if isinstance(v, GrossNumber) else GrossNumber.from_real(v)


@dataclass(frozen=True)
class ReportRecord:
    problem: str
    method: str
    alpha: GrossNumber
    beta: GrossNumber
    r: float
    lipschitz: GrossNumber | None
    epsilon_fraction: float
    max_iterations: int
    trials: tuple[tuple[int, float, GrossNumber], ...]
    x_best: float
    z_best: GrossNumber
    trial_count: int
    stop_reason: str
    schema_version: int = SCHEMA_VERSION

    @classmethod
    def from_report(cls, rep: RunReport) -> "ReportRecord":
        cfg = rep.config
        return cls(
            problem=rep.problem,
            method=rep.method,
            alpha=_g(rep.alpha),
            beta=_g(rep.beta),
            r=cfg.r,
            lipschitz=None if cfg.lipschitz is None else _g(cfg.lipschitz),
            epsilon_fraction=cfg.epsilon_fraction,
            max_iterations=cfg.max_iterations,
            trials=tuple((k, x, _g(z)) for k, (x, z) in enumerate(rep.trials, start=1)),
            x_best=rep.x_best,
            z_best=_g(rep.z_best),
            trial_count=rep.trial_count,
            stop_reason=rep.stop_reason.value,
        )

    # -- JSON -----------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "problem": self.problem,
            "method": self.method,
            "scale": {"alpha": str(self.alpha), "beta": str(self.beta)},
            "config": {
                "r": self.r,
                "lipschitz": None if self.lipschitz is None else str(self.lipschitz),
                "epsilon_fraction": self.epsilon_fraction,
                "max_iterations": self.max_iterations,
            },
            "trials": [{"k": k, "x": x, "z": str(z)} for k, x, z in self.trials],
            "x_best": self.x_best,
            "z_best": str(self.z_best),
            "trial_count": self.trial_count,
            "stop_reason": self.stop_reason,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ReportRecord":
        if d.get("schema_version") != SCHEMA_VERSION:
            raise ValueError(f"unsupported schema_version {d.get('schema_version')!r}")
        cfg = d["config"]
        return cls(
            problem=d["problem"],
            method=d["method"],
            alpha=parse(d["scale"]["alpha"]),
            beta=parse(d["scale"]["beta"]),
            r=float(cfg["r"]),
            lipschitz=None if cfg["lipschitz"] is None else parse(cfg["lipschitz"]),
            epsilon_fraction=float(cfg["epsilon_fraction"]),
            max_iterations=int(cfg["max_iterations"]),
            trials=tuple((int(t["k"]), float(t["x"]), parse(t["z"])) for t in d["trials"]),
            x_best=float(d["x_best"]),
            z_best=parse(d["z_best"]),
            trial_count=int(d["trial_count"]),
            stop_reason=d["stop_reason"],
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_json(cls, text: str) -> "ReportRecord":
        return cls.from_dict(json.loads(text))

    # -- CSV ------------------------------------------------------------

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        meta = [
            self.schema_version,
            self.problem,
            self.method,
            str(self.alpha),
            str(self.beta),
            repr(self.r),
            "" if self.lipschitz is None else str(self.lipschitz),
            repr(self.epsilon_fraction),
            self.max_iterations,
            self.stop_reason,
            repr(self.x_best),
            str(self.z_best),
            self.trial_count,
        ]
        for k, x, z in self.trials:
            w.writerow(meta + [k, repr(x), str(z)])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "ReportRecord":
        rows = list(csv.DictReader(io.StringIO(text)))
        if not rows:
            raise ValueError("CSV report has no trial rows")
        m = rows[0]
        if int(m["schema_version"]) != SCHEMA_VERSION:
            raise ValueError(f"unsupported schema_version {m['schema_version']!r}")
        return cls(
            problem=m["problem"],
            method=m["method"],
            alpha=parse(m["alpha"]),
            beta=parse(m["beta"]),
            r=float(m["r"]),
            lipschitz=parse(m["lipschitz"]) if m["lipschitz"] else None,
            epsilon_fraction=float(m["epsilon_fraction"]),
            max_iterations=int(m["max_iterations"]),
            trials=tuple((int(row["k"]), float(row["x"]), parse(row["z"])) for row in rows),
            x_best=float(m["x_best"]),
            z_best=parse(m["z_best"]),
            trial_count=int(m["trial_count"]),
            stop_reason=m["stop_reason"],
        )

    def dumps(self, fmt: str) -> str:
        if fmt == "json":
            return self.to_json()
        if fmt == "csv":
            return self.to_csv()
        raise ValueError(f"unknown format {fmt!r}")

    @classmethod
    def loads(cls, text: str, fmt: str) -> "ReportRecord":
        return cls.from_json(text) if fmt == "json" else cls.from_csv(text)
