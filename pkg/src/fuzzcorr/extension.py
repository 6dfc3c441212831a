"""Sup-based extension principle over alpha-levels.

Three routes compute the image of fuzzy numbers under a function:

* ``extend_monotone`` maps level endpoints directly (monotone correlations);
* ``range_extend`` finds ``[min g, max g]`` on every level by dense sampling
  plus golden-section refinement, for arbitrary continuous ``g``;
* ``oracle_extend`` enumerates the joint distribution on a grid and takes the
  binned supremum. It shares no code with the other two and serves as the
  reference they are checked against.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import (
    AlphaCutNumber,
    FuzzyNumber,
    alpha_grid,
    as_alpha_cut,
    common_alphas,
    level_endpoints,
)
from .correlation import (
    CorrelationFunction,
    FCorrelated,
    JointDistribution,
    TNorm,
    induced_marginal,
    level_endpoints_interval,
)
from .errors import DomainViolationError, InvalidParameterError, NumericDomainError

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0
# 2-D oracle rows processed per block
_ORACLE_BLOCK = 256


@dataclass(frozen=True)
class RangeFinderOptions:
    samples: int = 1025
    refine_iters: int = 60

    def __post_init__(self):
        if self.samples < 3:
            raise InvalidParameterError("range finder needs at least 3 samples")
        if self.refine_iters < 0:
            raise InvalidParameterError("refine_iters must be non-negative")


@dataclass(frozen=True)
class OracleOptions:
    input_grid: int = 2001
    output_bins: int = 512

    def __post_init__(self):
        if self.input_grid < 2 or self.output_bins < 2:
            raise InvalidParameterError("oracle grid and bin counts must be at least 2")


_OPS: dict[str, Callable] = {
    "+": np.add,
    "-": np.subtract,
    "*": np.multiply,
    "/": np.true_divide,
}
_OP_ALIASES = {"add": "+", "sub": "-", "mul": "*", "div": "/",
               "−": "-", "×": "*", "÷": "/"}


def _op(op: str) -> str:
    op = _OP_ALIASES.get(op, op)
    if op not in _OPS:
        raise InvalidParameterError(f"unknown arithmetic operator {op!r}")
    return op


def _vectorized(g: Callable) -> Callable:
    def call(x):
        x = np.asarray(x, dtype=float)
        try:
            with np.errstate(all="ignore"), warnings.catch_warnings():
                warnings.simplefilter("error", DeprecationWarning)
                out = np.asarray(g(x), dtype=float)
            if out.shape == x.shape:
                return out
            if out.ndim == 0:
                return np.full(x.shape, float(out))
        except (TypeError, ValueError, ZeroDivisionError, OverflowError, DeprecationWarning):
            pass
        return np.vectorize(lambda v: _safe_scalar(g, v), otypes=[float])(x)
    return call


def _safe_scalar(g, v):
    try:
        return float(g(float(v)))
    except (ZeroDivisionError, OverflowError, ValueError):
        return math.nan


# ---------------------------------------------------------------------------
# analytic routes


def extend_monotone(A: FuzzyNumber, f: CorrelationFunction, alphas=None) -> AlphaCutNumber:
    """Image of ``A`` under a monotone ``f`` by mapping level endpoints.

    This is the same object as the second marginal of the f-correlated
    joint distribution.
    """
    return induced_marginal(A, f, alphas)


def _golden(func, a: float, b: float, iters: int, sign: float) -> tuple[float, float]:
    # minimizes sign*func on [a, b]; returns (x, func(x)) of the best probe
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = sign * func(c), sign * func(d)
    for _ in range(iters):
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = sign * func(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = sign * func(d)
    return (c, sign * fc) if fc < fd else (d, sign * fd)


def _level_range(gv, lo: float, hi: float, opts: RangeFinderOptions) -> tuple[float, float]:
    if hi <= lo:
        v = gv(np.array([lo]))
        if not np.isfinite(v[0]):
            raise NumericDomainError(f"function is not finite at x={lo!r}")
        return float(v[0]), float(v[0])
    xs = np.linspace(lo, hi, opts.samples)
    vs = gv(xs)
    if not np.all(np.isfinite(vs)):
        k = int(np.argmin(np.isfinite(vs)))
        raise NumericDomainError(f"function is not finite at x={xs[k]!r} on level [{lo!r}, {hi!r}]")
    vmin, vmax = float(vs.min()), float(vs.max())
    if opts.refine_iters:
        scalar = lambda x: float(gv(np.array([x]))[0])
        n = len(xs)
        for sign, k in ((1.0, int(np.argmin(vs))), (-1.0, int(np.argmax(vs)))):
            a, b = xs[max(k - 1, 0)], xs[min(k + 1, n - 1)]
            _, v = _golden(scalar, a, b, opts.refine_iters, sign)
            if math.isfinite(v):
                vmin, vmax = (min(vmin, v), vmax) if sign > 0 else (vmin, max(vmax, v))
    return vmin, vmax


def range_extend(A: FuzzyNumber, g: Callable, opts: RangeFinderOptions | None = None,
                 alphas=None) -> AlphaCutNumber:
    """Levels ``[min g, max g]`` over each level of ``A`` for a continuous ``g``."""
    opts = opts or RangeFinderOptions()
    stair = as_alpha_cut(A, alphas)
    gv = _vectorized(g)
    lo = np.empty(stair.n_levels)
    hi = np.empty(stair.n_levels)
    for k, (a, b) in enumerate(zip(stair.lo, stair.hi)):
        lo[k], hi[k] = _level_range(gv, float(a), float(b), opts)
    # values found on an inner level are attained on every outer level
    lo = np.minimum.accumulate(lo[::-1])[::-1]
    hi = np.maximum.accumulate(hi[::-1])[::-1]
    return AlphaCutNumber(stair.alphas, lo, hi, generalized_inverse=stair.generalized_inverse)


def monotone_direction(g: Callable, lo: float, hi: float, n_probe: int = 1025) -> int:
    """+1 / -1 if ``g`` is non-decreasing / non-increasing on a probe grid, else 0."""
    gv = _vectorized(g)
    xs = np.linspace(lo, hi, n_probe) if hi > lo else np.array([lo])
    vs = gv(xs)
    if not np.all(np.isfinite(vs)):
        k = int(np.argmin(np.isfinite(vs)))
        raise NumericDomainError(f"function is not finite at x={xs[k]!r}")
    d = np.diff(vs)
    if np.all(d >= 0):
        return 1
    if np.all(d <= 0):
        return -1
    return 0


def extend_function(A: FuzzyNumber, g: Callable, opts: RangeFinderOptions | None = None,
                    alphas=None) -> AlphaCutNumber:
    """Image of ``A`` under ``g``: endpoint fast path if ``g`` probes monotone, else range finding."""
    opts = opts or RangeFinderOptions()
    stair = as_alpha_cut(A, alphas)
    direction = monotone_direction(g, stair.lo[0], stair.hi[0], opts.samples)
    if direction == 0:
        return range_extend(stair, g, opts)
    gv = _vectorized(g)
    glo, ghi = gv(stair.lo), gv(stair.hi)
    if not (np.all(np.isfinite(glo)) and np.all(np.isfinite(ghi))):
        raise NumericDomainError("function is not finite on a level endpoint")
    if direction < 0:
        glo, ghi = ghi, glo
    return AlphaCutNumber(stair.alphas, glo, ghi, generalized_inverse=stair.generalized_inverse)


# ---------------------------------------------------------------------------
# arithmetic


def correlated_binop(base: FuzzyNumber, left: CorrelationFunction | Callable | None,
                     right: CorrelationFunction | Callable | None, op: str,
                     opts: RangeFinderOptions | None = None, alphas=None) -> AlphaCutNumber:
    """``left(x) op right(x)`` for ``x`` ranging along the levels of ``base``.

    Both operands are functions of one underlying number, so the joint level is
    the curve ``{(left(x), right(x)) : x in [base]^alpha}``. ``None`` stands
    for the identity.
    """
    op = _op(op)
    stair = as_alpha_cut(base, alphas)
    support = stair.support
    for h in (left, right):
        if isinstance(h, CorrelationFunction):
            h.check_domain(support)
    lf = _vectorized(left) if left is not None else (lambda x: np.asarray(x, dtype=float))
    rf = _vectorized(right) if right is not None else (lambda x: np.asarray(x, dtype=float))
    if op == "/":
        denom = extend_function(stair, rf, opts)
        if denom.lo[0] <= 0.0 <= denom.hi[0]:
            raise DomainViolationError(
                f"divisor takes the value 0 on the support: its range is {denom.support}")
    fn = _OPS[op]
    return extend_function(stair, lambda x: fn(lf(x), rf(x)), opts)


def interactive_binop(A: FuzzyNumber, f: CorrelationFunction, op: str,
                      opts: RangeFinderOptions | None = None, alphas=None) -> AlphaCutNumber:
    """``A op B`` where ``B`` is f-correlated to ``A``: the range of ``x op f(x)``."""
    return correlated_binop(A, None, f, op, opts, alphas)


def noninteractive_binop(A: FuzzyNumber, B: FuzzyNumber, op: str, alphas=None) -> AlphaCutNumber:
    """Levelwise interval arithmetic (the min-based extension principle)."""
    op = _op(op)
    if alphas is None:
        alphas = common_alphas(A, B)
    alo, ahi = level_endpoints(A, alphas)
    blo, bhi = level_endpoints(B, alphas)
    if op == "+":
        lo, hi = alo + blo, ahi + bhi
    elif op == "-":
        lo, hi = alo - bhi, ahi - blo
    else:
        if op == "/" and blo[0] <= 0.0 <= bhi[0]:
            raise DomainViolationError(
                f"division by a fuzzy number whose support [{blo[0]:g}, {bhi[0]:g}] contains 0")
        fn = _OPS[op]
        cands = np.stack([fn(alo, blo), fn(alo, bhi), fn(ahi, blo), fn(ahi, bhi)])
        lo, hi = cands.min(axis=0), cands.max(axis=0)
    return AlphaCutNumber(alphas, lo, hi)


# ---------------------------------------------------------------------------
# brute-force oracle


def _axis(A: FuzzyNumber, n: int) -> np.ndarray:
    sup = level_endpoints_interval(A, 0.0)
    peak = level_endpoints_interval(A, 1.0)
    pts = np.linspace(sup.lo, sup.hi, n) if sup.width > 0 else np.array([sup.lo])
    return np.union1d(pts, [peak.lo, peak.hi])


def _oracle_samples(J: JointDistribution, func: Callable, opts: OracleOptions):
    """Yield ``(values, possibilities)`` blocks covering the joint's support grid."""
    if isinstance(J, FCorrelated):
        xs = _axis(J.A, opts.input_grid)
        ys = J.f(xs)
        with np.errstate(all="ignore"):
            vals = np.asarray(func(xs, ys), dtype=float) * np.ones_like(xs)
        yield vals, np.asarray(J.A.membership(xs), dtype=float)
        return
    if not isinstance(J, TNorm):
        raise InvalidParameterError(f"oracle does not support {type(J).__name__}")
    xs = _axis(J.A, opts.input_grid)
    ys = _axis(J.B, opts.input_grid)
    my = np.asarray(J.B.membership(ys), dtype=float)
    mx = np.asarray(J.A.membership(xs), dtype=float)
    tn = np.minimum if J.tnorm == "min" else np.multiply
    for start in range(0, len(xs), _ORACLE_BLOCK):
        bx = xs[start:start + _ORACLE_BLOCK, None]
        with np.errstate(all="ignore"):
            vals = np.asarray(func(bx, ys[None, :]), dtype=float) * np.ones((len(bx), len(ys)))
        poss = tn(mx[start:start + _ORACLE_BLOCK, None], my[None, :])
        yield vals.ravel(), poss.ravel()


def _adjacent_jump(J: JointDistribution, func: Callable, opts: OracleOptions) -> float:
    if isinstance(J, FCorrelated):
        xs = _axis(J.A, opts.input_grid)
        with np.errstate(all="ignore"):
            v = np.asarray(func(xs, J.f(xs)), dtype=float) * np.ones_like(xs)
        return float(np.max(np.abs(np.diff(v)))) if len(v) > 1 else 0.0
    xs = _axis(J.A, opts.input_grid)
    ys = _axis(J.B, opts.input_grid)
    jump = 0.0
    for start in range(0, len(xs), _ORACLE_BLOCK):
        # one overlapping row so differences across block borders are seen
        bx = xs[max(start - 1, 0):start + _ORACLE_BLOCK, None]
        with np.errstate(all="ignore"):
            v = np.asarray(func(bx, ys[None, :]), dtype=float) * np.ones((len(bx), len(ys)))
        if v.shape[0] > 1:
            jump = max(jump, float(np.max(np.abs(np.diff(v, axis=0)))))
        if v.shape[1] > 1:
            jump = max(jump, float(np.max(np.abs(np.diff(v, axis=1)))))
    return jump


def oracle_extend(J: JointDistribution, func: Callable, opts: OracleOptions | None = None,
                  alphas=None) -> AlphaCutNumber:
    """Brute-force ``sup_{v = func(x, y)} J(x, y)`` rebuilt into alpha-levels.

    The joint support is enumerated on a grid (along the curve for an
    f-correlated joint, over the box otherwise), ``func`` values are binned
    and each bin keeps the largest possibility seen. The level at ``alpha`` is
    the smallest interval of bin edges covering every bin whose possibility
    reaches ``alpha``.
    """
    opts = opts or OracleOptions()
    alphas = alpha_grid() if alphas is None else np.asarray(alphas, dtype=float)

    vmin, vmax = math.inf, -math.inf
    for vals, _ in _oracle_samples(J, func, opts):
        if not np.all(np.isfinite(vals)):
            raise NumericDomainError("function is not finite on the joint support")
        vmin, vmax = min(vmin, float(vals.min())), max(vmax, float(vals.max()))
    if vmax <= vmin:
        v = np.full_like(alphas, vmin)
        return AlphaCutNumber(alphas, v, v)

    nb = opts.output_bins
    edges = np.linspace(vmin, vmax, nb + 1)
    profile = np.full(nb, -1.0)
    for vals, poss in _oracle_samples(J, func, opts):
        idx = np.clip(((vals - vmin) / (vmax - vmin) * nb).astype(np.int64), 0, nb - 1)
        np.maximum.at(profile, idx, poss)

    top = profile.max()
    lo = np.empty_like(alphas)
    hi = np.empty_like(alphas)
    for k, a in enumerate(alphas):
        hit = np.flatnonzero(profile >= min(a, top))
        lo[k], hi[k] = edges[hit[0]], edges[hit[-1] + 1]
    return AlphaCutNumber(alphas, lo, hi)


def oracle_tolerance(J: JointDistribution, func: Callable, opts: OracleOptions | None = None) -> float:
    """Discretization bound of :func:`oracle_extend`: two input steps plus one bin.

    The input step is measured in output units as the largest change of
    ``func`` between neighbouring grid points.
    """
    opts = opts or OracleOptions()
    jump = _adjacent_jump(J, func, opts)
    vmin, vmax = math.inf, -math.inf
    for vals, _ in _oracle_samples(J, func, opts):
        vmin, vmax = min(vmin, float(vals.min())), max(vmax, float(vals.max()))
    return 2.0 * jump + (vmax - vmin) / opts.output_bins
