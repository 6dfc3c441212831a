"""Correlation functions and bivariate joint possibility distributions."""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .core import (
    AlphaCutNumber,
    FuzzyNumber,
    Interval,
    as_alpha_cut,
    level_endpoints,
)
from .errors import DomainViolationError, InvalidParameterError

MONOTONE_PROBES = 1024
MARGINAL_PROBES = 512
GRAPH_RTOL = 1e-9

_REAL_LINE = Interval(-math.inf, math.inf)


@dataclass(frozen=True)
class CorrelationFunction:
    """Monotone injective continuous map defining an interactivity.

    Built-in kinds: ``linear`` is ``q*x + r``; ``hyperbolic`` is
    ``q/(x - shift) + r`` (``shift`` is 0 for the usual ``q/x + r`` and is
    only non-zero for inverses). ``user`` wraps an arbitrary evaluator with
    a declared direction and domain.
    """

    kind: str
    q: float = 1.0
    r: float = 0.0
    shift: float = 0.0
    evaluator: Callable | None = field(default=None, compare=False)
    increasing: bool = True
    domain: Interval = _REAL_LINE

    @property
    def direction(self) -> str:
        return "increasing" if self.increasing else "decreasing"

    @property
    def pole(self) -> float | None:
        return self.shift if self.kind == "hyperbolic" else None

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        if self.kind == "linear":
            out = self.q * x + self.r
        elif self.kind == "hyperbolic":
            with np.errstate(divide="ignore", invalid="ignore"):
                out = self.q / (x - self.shift) + self.r
        else:
            out = _call_vectorized(self.evaluator, x)
        out = np.asarray(out, dtype=float)
        return out if out.ndim else float(out)

    def check_domain(self, interval: Interval) -> None:
        """Raise :class:`DomainViolationError` unless ``interval`` lies where ``self`` is monotone."""
        pole = self.pole
        if pole is not None and interval.lo <= pole <= interval.hi:
            raise DomainViolationError(
                f"hyperbolic correlation is undefined at {pole:g}, which lies in {interval}")
        if not self.domain.contains_interval(interval):
            raise DomainViolationError(f"{interval} is outside the correlation domain {self.domain}")

    def image(self, interval: Interval) -> Interval:
        self.check_domain(interval)
        a, b = self(interval.lo), self(interval.hi)
        return Interval(a, b) if self.increasing else Interval(b, a)

    def inverse(self) -> "CorrelationFunction":
        if self.kind == "linear":
            return linear(1.0 / self.q, -self.r / self.q)
        if self.kind == "hyperbolic":
            # y = q/(x - s) + r  <=>  x = q/(y - r) + s
            return CorrelationFunction("hyperbolic", self.q, self.shift, shift=self.r,
                                       increasing=self.increasing)
        return _numeric_inverse(self)

    def __str__(self) -> str:
        if self.kind == "linear":
            return f"linear({self.q:g}, {self.r:g})"
        if self.kind == "hyperbolic":
            return f"hyper({self.q:g}, {self.r:g})"
        return f"user({self.direction}, {self.domain})"


def _call_vectorized(func, x):
    try:
        with warnings.catch_warnings():
            # math.* on a size-1 array only warns; treat it as scalar-only
            warnings.simplefilter("error", DeprecationWarning)
            out = np.asarray(func(x), dtype=float)
        if out.shape == x.shape:
            return out
    except (TypeError, ValueError, DeprecationWarning):
        pass
    return np.vectorize(lambda v: float(func(float(v))), otypes=[float])(x)


def linear(q: float, r: float = 0.0) -> CorrelationFunction:
    q, r = float(q), float(r)
    if q == 0 or not (math.isfinite(q) and math.isfinite(r)):
        raise InvalidParameterError(f"linear correlation needs finite q != 0 and r, got q={q!r}, r={r!r}")
    return CorrelationFunction("linear", q, r, increasing=q > 0)


def hyperbolic(q: float, r: float = 0.0) -> CorrelationFunction:
    q, r = float(q), float(r)
    if q == 0 or not (math.isfinite(q) and math.isfinite(r)):
        raise InvalidParameterError(f"hyperbolic correlation needs finite q != 0 and r, got q={q!r}, r={r!r}")
    # q/x is decreasing on each half-line when q > 0
    return CorrelationFunction("hyperbolic", q, r, increasing=q < 0)


def identity() -> CorrelationFunction:
    return linear(1.0, 0.0)


def user(func: Callable, direction: str, domain: Interval | tuple[float, float],
         n_probe: int = MONOTONE_PROBES) -> CorrelationFunction:
    """Wrap ``func`` after probing it for strict monotonicity on ``domain``."""
    if direction not in ("increasing", "decreasing"):
        raise InvalidParameterError(f"direction must be 'increasing' or 'decreasing', got {direction!r}")
    domain = domain if isinstance(domain, Interval) else Interval(*domain)
    if not (math.isfinite(domain.lo) and math.isfinite(domain.hi)) or domain.width <= 0:
        raise InvalidParameterError(f"user correlation needs a bounded non-degenerate domain, got {domain}")
    xs = np.linspace(domain.lo, domain.hi, n_probe)
    ys = _call_vectorized(func, xs)
    if not np.all(np.isfinite(ys)):
        k = int(np.argmin(np.isfinite(ys)))
        raise InvalidParameterError(f"correlation is not finite at x={xs[k]!r}")
    steps = np.diff(ys) if direction == "increasing" else -np.diff(ys)
    bad = np.flatnonzero(steps <= 0)
    if bad.size:
        k = int(bad[0])
        raise InvalidParameterError(
            f"correlation is not strictly {direction}: f({xs[k]!r}) = {ys[k]!r}, "
            f"f({xs[k + 1]!r}) = {ys[k + 1]!r}")
    return CorrelationFunction("user", evaluator=func, increasing=direction == "increasing",
                               domain=domain)


def make_correlation(kind: str, *params, **kwargs) -> CorrelationFunction:
    """Build a correlation by name: ``linear``, ``hyperbolic``/``hyper``, ``identity`` or ``user``."""
    builders = {"linear": linear, "hyperbolic": hyperbolic, "hyper": hyperbolic,
                "identity": identity, "user": user}
    try:
        builder = builders[kind]
    except KeyError:
        raise InvalidParameterError(f"unknown correlation kind {kind!r}") from None
    return builder(*params, **kwargs)


def _numeric_inverse(f: CorrelationFunction) -> CorrelationFunction:
    img = f.image(f.domain)

    def inv(y):
        y = np.asarray(y, dtype=float)
        lo = np.full_like(y, f.domain.lo)
        hi = np.full_like(y, f.domain.hi)
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            below = (f(mid) < y) if f.increasing else (f(mid) > y)
            lo = np.where(below, mid, lo)
            hi = np.where(below, hi, mid)
            if np.all(hi - lo <= 1e-15 * np.maximum(1.0, np.abs(mid))):
                break
        return 0.5 * (lo + hi)

    return CorrelationFunction("user", evaluator=inv, increasing=f.increasing, domain=img)


# ---------------------------------------------------------------------------
# joint distributions


def induced_marginal(A: FuzzyNumber, f: CorrelationFunction, alphas=None) -> AlphaCutNumber:
    """Second marginal of the f-correlated joint: ``[B]^alpha = f([A]^alpha)``."""
    stair = as_alpha_cut(A, alphas)
    f.check_domain(stair.support)
    flo, fhi = f(stair.lo), f(stair.hi)
    if not f.increasing:
        flo, fhi = fhi, flo
    return AlphaCutNumber(stair.alphas, flo, fhi, generalized_inverse=stair.generalized_inverse)


class JointDistribution:
    """Bivariate possibility distribution with fuzzy-number marginals."""

    A: FuzzyNumber

    def membership(self, x, y):
        raise NotImplementedError

    @property
    def marginal_x(self) -> FuzzyNumber:
        return self.A

    @property
    def marginal_y(self) -> FuzzyNumber:
        raise NotImplementedError

    def support_box(self) -> tuple[Interval, Interval]:
        return (level_endpoints_interval(self.marginal_x, 0.0),
                level_endpoints_interval(self.marginal_y, 0.0))

    # points guaranteed to be probed besides the uniform grid
    def _y_candidates(self, x):
        return None

    def _x_candidates(self, y):
        return None


def level_endpoints_interval(A: FuzzyNumber, alpha: float) -> Interval:
    lo, hi = level_endpoints(A, [alpha])
    return Interval(lo[0], hi[0])


_TNORMS = {
    "min": np.minimum,
    "product": np.multiply,
}


class TNorm(JointDistribution):
    """Joint distribution ``T(A(x), B(y))`` for a t-norm ``T`` in {min, product}."""

    def __init__(self, A: FuzzyNumber, B: FuzzyNumber, tnorm: str = "min"):
        if tnorm not in _TNORMS:
            raise InvalidParameterError(f"t-norm must be one of {sorted(_TNORMS)}, got {tnorm!r}")
        self.A, self.B, self.tnorm = A, B, tnorm

    @property
    def marginal_y(self) -> FuzzyNumber:
        return self.B

    def membership(self, x, y):
        out = _TNORMS[self.tnorm](np.asarray(self.A.membership(x)), np.asarray(self.B.membership(y)))
        return out if np.ndim(out) else float(out)

    def __repr__(self) -> str:
        return f"TNorm({self.A!r}, {self.B!r}, {self.tnorm!r})"


class NonInteractive(TNorm):
    """``min(A(x), B(y))``: values of the two marginals can be taken independently."""

    def __init__(self, A: FuzzyNumber, B: FuzzyNumber):
        super().__init__(A, B, "min")

    def __repr__(self) -> str:
        return f"NonInteractive({self.A!r}, {self.B!r})"


class FCorrelated(JointDistribution):
    """Joint possibility ``A(x)`` on the graph ``y = f(x)`` and 0 elsewhere."""

    def __init__(self, A: FuzzyNumber, f: CorrelationFunction, alphas=None):
        f.check_domain(level_endpoints_interval(A, 0.0))
        self.A, self.f = A, f
        self._alphas = alphas
        self._B = None

    @property
    def marginal_y(self) -> AlphaCutNumber:
        if self._B is None:
            self._B = induced_marginal(self.A, self.f, self._alphas)
        return self._B

    def on_graph(self, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        with np.errstate(invalid="ignore"):
            return np.abs(y - self.f(x)) <= GRAPH_RTOL * np.maximum(1.0, np.abs(y))

    def membership(self, x, y):
        x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
        out = np.where(self.on_graph(x, y), self.A.membership(x), 0.0)
        return out if out.ndim else float(out)

    def _y_candidates(self, x):
        return self.f(x)

    def _x_candidates(self, y):
        with np.errstate(divide="ignore", invalid="ignore"):
            return self.f.inverse()(y)

    def __repr__(self) -> str:
        return f"FCorrelated({self.A!r}, {self.f})"


def joint_membership(J: JointDistribution, x, y):
    return J.membership(x, y)


@dataclass(frozen=True)
class MarginalReport:
    max_deviation: float
    worst_axis: str
    worst_point: float
    sup_joint: float
    passed: bool


def _axis_probes(iv: Interval, peak: Interval, n: int) -> np.ndarray:
    pts = np.linspace(iv.lo, iv.hi, n) if iv.width > 0 else np.array([iv.lo])
    return np.union1d(pts, [peak.lo, peak.hi])


def check_marginal_consistency(J: JointDistribution, tol: float = 1e-9,
                               n_probe: int = MARGINAL_PROBES) -> MarginalReport:
    """Compare axis-wise maxima of ``J`` on a probe grid with its declared marginals."""
    box_x, box_y = J.support_box()
    xs = _axis_probes(box_x, level_endpoints_interval(J.marginal_x, 1.0), n_probe)
    ys = _axis_probes(box_y, level_endpoints_interval(J.marginal_y, 1.0), n_probe)

    grid = np.asarray(J.membership(xs[:, None], ys[None, :]), dtype=float)
    grid = np.broadcast_to(grid, (len(xs), len(ys)))
    row_max = grid.max(axis=1)
    col_max = grid.max(axis=0)
    cy = J._y_candidates(xs)
    if cy is not None:
        row_max = np.maximum(row_max, np.nan_to_num(J.membership(xs, cy)))
    cx = J._x_candidates(ys)
    if cx is not None:
        cx = np.nan_to_num(cx, nan=np.inf, posinf=np.inf, neginf=-np.inf)
        vals = np.where(np.isfinite(cx), J.membership(np.where(np.isfinite(cx), cx, 0.0), ys), 0.0)
        col_max = np.maximum(col_max, vals)

    dev_x = np.abs(row_max - np.asarray(J.marginal_x.membership(xs)))
    dev_y = np.abs(col_max - np.asarray(J.marginal_y.membership(ys)))
    kx, ky = int(np.argmax(dev_x)), int(np.argmax(dev_y))
    if dev_x[kx] >= dev_y[ky]:
        worst, axis, point = float(dev_x[kx]), "x", float(xs[kx])
    else:
        worst, axis, point = float(dev_y[ky]), "y", float(ys[ky])
    sup_joint = float(max(row_max.max(), col_max.max()))
    return MarginalReport(worst, axis, point, sup_joint, worst <= tol)
