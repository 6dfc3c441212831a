"""Shape propagation under complete correlation and endpoint verification."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import (
    AlphaCutNumber,
    FuzzyNumber,
    Interval,
    LRNumber,
    ShapeFunction,
    alpha_grid,
    level_endpoints,
    level_distance,
    trap,
    tri,
)
from .correlation import CorrelationFunction, FCorrelated
from .errors import InvalidParameterError
from .extension import OracleOptions, oracle_extend, oracle_tolerance


def _check_q(q: float) -> float:
    q = float(q)
    if q == 0.0:
        raise InvalidParameterError("complete correlation needs q != 0")
    return q


def propagate_lr_linear(A: LRNumber, q: float, r: float) -> LRNumber:
    """LR parameters of the number completely correlated to ``A`` through ``q*x + r``.

    A negative ``q`` reflects the number: modal values and spreads swap
    sides, and so do the shape functions.
    """
    q, r = _check_q(q), float(r)
    if not A.is_strict:
        raise InvalidParameterError("closed-form propagation needs strictly decreasing L and R")
    if q > 0:
        return LRNumber(q * A.q_minus + r, q * A.q_plus + r, q * A.a, q * A.b, A.L, A.R)
    return LRNumber(q * A.q_plus + r, q * A.q_minus + r, -q * A.b, -q * A.a, A.R, A.L)


def _vertices_of(A: LRNumber, n: int) -> list[float]:
    if not A.is_linear:
        raise InvalidParameterError("expected a number with linear shapes")
    if n == 3:
        if not A.is_triangular:
            raise InvalidParameterError("expected a triangular number")
        return [A.q_minus - A.a, A.q_minus, A.q_plus + A.b]
    return [A.q_minus - A.a, A.q_minus, A.q_plus, A.q_plus + A.b]


def tri_complete_corr(A: LRNumber, q: float, r: float) -> LRNumber:
    """Triangle with vertices ``q*v + r`` for the vertices ``v`` of ``A``."""
    q = _check_q(q)
    return tri(*sorted(q * v + r for v in _vertices_of(A, 3)))


def trap_complete_corr(A: LRNumber, q: float, r: float) -> LRNumber:
    q = _check_q(q)
    return trap(*sorted(q * v + r for v in _vertices_of(A, 4)))


def lr_refit(B: FuzzyNumber, L: ShapeFunction | None = None, R: ShapeFunction | None = None,
             alphas=None) -> tuple[LRNumber, float]:
    """Best LR number with shapes ``(L, R)`` through the peak and support of ``B``.

    Returns the fitted number and its sup-Hausdorff distance to ``B``; a
    non-negligible residual means ``B`` is not of that LR type.
    """
    L = L or ShapeFunction.linear()
    R = R or ShapeFunction.linear()
    lo, hi = level_endpoints(B, [0.0, 1.0])
    fit = LRNumber(lo[1], hi[1], lo[1] - lo[0], hi[0] - hi[1], L, R)
    if alphas is None:
        alphas = B.alphas if isinstance(B, AlphaCutNumber) else alpha_grid()
    return fit, level_distance(fit, B, alphas)


@dataclass(frozen=True)
class TheoremReport:
    """Endpoint comparison between ``f`` applied to ``[A]^alpha`` and the extension oracle."""

    max_endpoint_deviation: float
    worst_alpha: float
    passed: bool
    tolerance: float
    per_level: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "max_endpoint_deviation": self.max_endpoint_deviation,
            "worst_alpha": self.worst_alpha,
            "passed": self.passed,
            "tolerance": self.tolerance,
            "per_level": [
                {"alpha": a,
                 "expected": {"lo": e.lo, "hi": e.hi},
                 "observed": {"lo": o.lo, "hi": o.hi}}
                for a, e, o in self.per_level
            ],
        }


def verify_endpoint_theorem(A: FuzzyNumber, f: CorrelationFunction, tol: float | None = None,
                            opts: OracleOptions | None = None, alphas=None) -> TheoremReport:
    """Check that the levels of the f-correlated marginal have ``f``-mapped endpoints.

    The marginal is computed independently by :func:`oracle_extend`; ``tol``
    defaults to the oracle's discretization bound.
    """
    opts = opts or OracleOptions()
    if alphas is None:
        alphas = A.alphas if isinstance(A, AlphaCutNumber) else alpha_grid()
    alphas = np.asarray(alphas, dtype=float)
    J = FCorrelated(A, f)
    project = lambda x, y: y
    observed = oracle_extend(J, project, opts, alphas)
    if tol is None:
        tol = oracle_tolerance(J, project, opts)

    alo, ahi = level_endpoints(A, alphas)
    elo, ehi = f(alo), f(ahi)
    if not f.increasing:
        elo, ehi = ehi, elo
    dev = np.maximum(np.abs(elo - observed.lo), np.abs(ehi - observed.hi))
    k = int(np.argmax(dev))
    per_level = [(float(a), Interval(l, h), Interval(ol, oh))
                 for a, l, h, ol, oh in zip(alphas, elo, ehi, observed.lo, observed.hi)]
    return TheoremReport(float(dev[k]), float(alphas[k]), bool(dev[k] <= tol), float(tol), per_level)
