"""Structured check reports and their text/JSON emission."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field


@dataclass
class CheckReport:
    """Outcome of a single identity check."""

    check_id: str
    params: dict
    passed: bool
    first_failing_monomial: str | None = None
    millis: float = 0.0
    notes: str = ""

    def as_dict(self):
        return {
            "id": self.check_id,
            "params": {k: str(v) for k, v in sorted(self.params.items())},
            "status": "pass" if self.passed else "fail",
            "first_failing_monomial": self.first_failing_monomial,
            "millis": round(self.millis, 3),
            "notes": self.notes,
        }


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        self.millis = 0.0
        return self

    def __exit__(self, *exc):
        self.millis = (time.perf_counter() - self.start) * 1000.0


def compare_report(
    check_id, params, lhs, rhs, timer=None, notes="", passed=None, failure=None
):
    """Build a CheckReport from an exact comparison.

    Compares truncated graded series by default; also accepts sparse
    polynomials, or a precomputed outcome via ``passed``/``failure``.
    """
    if passed is None:
        from .poly import Poly

        if isinstance(lhs, Poly) or isinstance(rhs, Poly):
            passed = lhs == rhs
            if not passed:
                d = lhs - rhs
                e, c = min(d.terms.items())
                mono = "*".join(
                    f"{n}^{p}" for n, p in zip(d.vars, e) if p
                ) or "1"
                failure = f"{mono} (coeff {c})"
        else:
            from .series import first_difference

            diff = first_difference(lhs, rhs)
            passed = diff is None
            if not passed:
                failure = f"{diff[2]} (weight {diff[0]}, coeff {diff[3]})"
    return CheckReport(
        check_id=check_id,
        params=params,
        passed=passed,
        first_failing_monomial=failure,
        millis=timer.millis if timer is not None else 0.0,
        notes=notes,
    )


def emit_text(reports, stream):
    width = max((len(r.check_id) for r in reports), default=10)
    npass = sum(1 for r in reports if r.passed)
    for r in sorted(reports, key=lambda r: r.check_id):
        status = "PASS" if r.passed else "FAIL"
        line = f"{r.check_id:<{width}}  {status}  {r.millis:9.1f} ms"
        if not r.passed and r.first_failing_monomial:
            line += f"  first-diff: {r.first_failing_monomial}"
        if r.notes:
            line += f"  [{r.notes}]"
        stream.write(line + "\n")
    stream.write(f"{npass}/{len(reports)} checks passed\n")


def emit_json(reports, stream):
    payload = {
        "checks": [r.as_dict() for r in sorted(reports, key=lambda r: r.check_id)],
        "passed": sum(1 for r in reports if r.passed),
        "total": len(reports),
    }
    json.dump(payload, stream, indent=2)
    stream.write("\n")
