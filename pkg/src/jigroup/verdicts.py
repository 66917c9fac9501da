"""Verdict objects: every definite status carries a checkable witness."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

JI = "ji"
NOT_JI = "not_ji"
HJI = "hji"
NOT_HJI = "not_hji"
HYPOTHESIS_FAILED = "hypothesis_failed"
UNKNOWN = "unknown"

REDUCIBLE = "reducible"
IRREDUCIBLE = "irreducible"


@dataclass(frozen=True)
class Verdict:
    status: str
    witness: Any = None
    provenance: str = ""
    shadow: bool = False  # verdicts on finite shadow models are labeled

    def definite(self):
        return self.status != UNKNOWN

    def to_report(self):
        out = {
            "status": self.status,
            "provenance": self.provenance,
            "witness": _describe(self.witness),
        }
        if self.shadow:
            out["shadow_verdict"] = True
        return out


def _describe(w):
    if w is None:
        return None
    if hasattr(w, "to_report"):
        return w.to_report()
    if isinstance(w, dict):
        return {k: _describe(v) for k, v in sorted(w.items())}
    if isinstance(w, (list, tuple)):
        return [_describe(x) for x in w]
    if isinstance(w, (str, int, bool)):
        return w
    from fractions import Fraction

    if isinstance(w, Fraction):
        return f"{w.numerator}/{w.denominator}" if w.denominator != 1 else str(
            w.numerator
        )
    return repr(w)
