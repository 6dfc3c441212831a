"""CSV / JSON serialization of fuzzy numbers and reports."""
from __future__ import annotations

import json
from dataclasses import dataclass

from .core import DEFAULT_LEVELS, AlphaCutNumber, LRNumber, alpha_grid, level_endpoints
from .errors import InvalidParameterError
from .shape import TheoremReport

FORMATS = ("csv", "json")


@dataclass(frozen=True)
class CompareResult:
    equal: bool
    max_distance: float
    tolerance: float

    def to_dict(self) -> dict:
        return {"equal": self.equal, "max_distance": self.max_distance, "tolerance": self.tolerance}


def g17(x: float) -> str:
    x = float(x) + 0.0  # folds -0.0 into 0.0
    return format(x, ".17g")


def _j(x: float) -> float:
    return float(x) + 0.0


def level_rows(A: LRNumber | AlphaCutNumber, levels: int) -> list[tuple[float, float, float]]:
    alphas = alpha_grid(levels)
    lo, hi = level_endpoints(A, alphas)
    return [(float(a), float(l), float(h)) for a, l, h in zip(alphas, lo, hi)]


def emit(value, fmt: str = "csv", levels: int = DEFAULT_LEVELS) -> str:
    """Serialize a fuzzy number, :class:`TheoremReport` or :class:`CompareResult`.

    Output is newline-terminated and depends only on the arguments.
    """
    if fmt not in FORMATS:
        raise InvalidParameterError(f"format must be one of {FORMATS}, got {fmt!r}")
    if isinstance(value, (LRNumber, AlphaCutNumber)):
        rows = level_rows(value, levels)
        if fmt == "csv":
            return "alpha,lo,hi\n" + "".join(f"{g17(a)},{g17(l)},{g17(h)}\n" for a, l, h in rows)
        doc = {"levels": [{"alpha": _j(a), "lo": _j(l), "hi": _j(h)} for a, l, h in rows]}
        return json.dumps(doc) + "\n"
    if isinstance(value, TheoremReport):
        if fmt == "json":
            return json.dumps(_clean(value.to_dict())) + "\n"
        head = "alpha,expected_lo,expected_hi,observed_lo,observed_hi\n"
        return head + "".join(
            f"{g17(a)},{g17(e.lo)},{g17(e.hi)},{g17(o.lo)},{g17(o.hi)}\n"
            for a, e, o in value.per_level)
    if isinstance(value, CompareResult):
        if fmt == "json":
            return json.dumps(_clean(value.to_dict())) + "\n"
        return (f"equal,max_distance,tolerance\n"
                f"{str(value.equal).lower()},{g17(value.max_distance)},{g17(value.tolerance)}\n")
    raise InvalidParameterError(f"cannot emit a {type(value).__name__}")


def _clean(obj):
    if isinstance(obj, float):
        return obj + 0.0
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_clean(v) for v in obj]
    return obj
