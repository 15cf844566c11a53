"""Verification reports and their JSON / CSV serialization.

Exact rationals are written as ``"p/q"`` text so they round-trip bit for bit;
high-precision reals become ``{"real": "<decimal>", "prec": <bits>}``.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable

import mpmath

__all__ = ["ReportDocument", "VerificationReport", "decode_value", "dumps_roundtrip", "encode_value", "iter_reports"]

FORMAT_VERSION = 1


def _is_real(v) -> bool:
    return isinstance(v, mpmath.mpf) or type(v).__name__ == "mpf"


def encode_value(v) -> Any:
    """Plain-JSON form of a scalar, vector or real."""
    if v is None or isinstance(v, (bool, str)):
        return v
    if isinstance(v, int):
        return v
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    if _is_real(v):
        prec = v.context.prec
        # enough digits that decimal -> binary recovers the value exactly
        digits = math.ceil(prec * math.log10(2)) + 1
        return {"real": mpmath.libmp.to_str(v._mpf_, digits), "prec": prec}
    if isinstance(v, (tuple, list)):
        return [encode_value(x) for x in v]
    if isinstance(v, dict):
        return {str(k): encode_value(x) for k, x in v.items()}
    if isinstance(v, float):
        return repr(v)
    return str(v)


def decode_value(v):
    """Inverse of :func:`encode_value` for rationals and tagged reals."""
    if isinstance(v, str) and "/" in v:
        p, q = v.split("/")
        return Fraction(int(p), int(q))
    if isinstance(v, dict) and set(v) == {"real", "prec"}:
        from .numeric.series import context
        return context(v["prec"]).mpf(v["real"])
    if isinstance(v, list):
        return [decode_value(x) for x in v]
    return v


@dataclass
class VerificationReport:
    """Outcome of checking one instance of one identity.

    ``status`` is one of ``pass``, ``fail``, ``xfail`` (a documented printed
    typo reproduced under the printed forms), ``error`` or ``report`` (an
    exploratory probe that carries no verdict).
    """

    id: str
    instance: dict
    backend: str
    lhs: Any = None
    rhs: Any = None
    equal: bool | None = None
    residual: Any = None
    tolerance: Any = None
    tail_bound: Any = None
    status: str = "pass"
    note: str = ""
    errata: list = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status in ("pass", "xfail", "report")

    def body(self) -> dict:
        """Everything except timing, as plain JSON values."""
        out = {
            "id": self.id,
            "instance": encode_value(self.instance),
            "backend": self.backend,
            "lhs": encode_value(self.lhs),
            "rhs": encode_value(self.rhs),
            "status": self.status,
        }
        for key in ("equal", "residual", "tolerance", "tail_bound"):
            val = getattr(self, key)
            if val is not None:
                out[key] = encode_value(val)
        if self.note:
            out["note"] = self.note
        if self.errata:
            out["errata"] = list(self.errata)
        return out

    @classmethod
    def from_dict(cls, d: dict) -> "VerificationReport":
        """Inverse of :meth:`to_dict`; exact values and tagged reals are decoded."""
        kw = {key: d[key] for key in ("id", "backend", "status") if key in d}
        kw["instance"] = d.get("instance", {})
        for key in ("lhs", "rhs", "residual", "tolerance", "tail_bound"):
            if key in d:
                kw[key] = decode_value(d[key])
        kw["equal"] = d.get("equal")
        kw["note"] = d.get("note", "")
        kw["errata"] = list(d.get("errata", []))
        kw["elapsed"] = d.get("elapsed", 0.0)
        return cls(**kw)

    def to_dict(self, timing: bool = True) -> dict:
        out = self.body()
        if timing:
            out["elapsed"] = round(self.elapsed, 6)
        return out


@dataclass
class ReportDocument:
    config: dict
    reports: list
    version: str = ""

    def summary(self) -> dict:
        counts = {"pass": 0, "fail": 0, "xfail": 0, "error": 0, "report": 0}
        worst = None
        for r in self.reports:
            counts[r.status] = counts.get(r.status, 0) + 1
            if r.residual is not None and (worst is None or float(r.residual) > float(worst)):
                worst = r.residual
        counts["total"] = len(self.reports)
        counts["max_residual"] = encode_value(worst)
        return counts

    def errata(self) -> list:
        seen = []
        for r in self.reports:
            for e in r.errata:
                if e not in seen:
                    seen.append(e)
        return seen

    def to_dict(self, timing: bool = True) -> dict:
        return {
            "format": FORMAT_VERSION,
            "tool_version": self.version,
            "config": encode_value(self.config),
            "reports": [r.to_dict(timing) for r in self.reports],
            "summary": self.summary(),
            "errata": self.errata(),
        }

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), indent=2, sort_keys=True) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        cols = ["id", "status", "backend", "instance", "lhs", "rhs", "equal", "residual", "tail_bound", "note"]
        w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        w.writeheader()
        for r in self.reports:
            b = r.body()
            row = {c: b.get(c, "") for c in cols}
            for c in ("instance", "lhs", "rhs", "residual", "tail_bound"):
                if isinstance(row[c], (dict, list)):
                    row[c] = json.dumps(row[c], sort_keys=True)
            w.writerow(row)
        return buf.getvalue()


def dumps_roundtrip(text: str) -> str:
    """Parse an emitted JSON report and serialize it again with the same layout."""
    return json.dumps(json.loads(text), indent=2, sort_keys=True) + "\n"


def iter_reports(doc: dict) -> Iterable[dict]:
    return iter(doc.get("reports", []))
