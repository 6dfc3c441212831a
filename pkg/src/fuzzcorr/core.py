"""Fuzzy numbers as alpha-cut staircases and as parametric LR-type numbers.

Two representations are provided:

* :class:`LRNumber` -- the parametric ``(q_minus, q_plus, a, b)_LR`` form with
  left/right shape functions. Levels are computed from the inverse shapes.
* :class:`AlphaCutNumber` -- a finite, nested staircase of alpha-levels with
  linear interpolation of the endpoints between stored alphas. Every
  operation in the package can produce or consume this form.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence, Union

import numpy as np

from .errors import DomainViolationError, InvalidParameterError

DEFAULT_LEVELS = 101
INVERSE_TOL = 1e-12
# relative slack when validating nestedness of computed staircases
_NEST_RTOL = 1e-9


@dataclass(frozen=True)
class Interval:
    """Closed bounded real interval ``[lo, hi]``; ``lo == hi`` is a crisp value."""

    lo: float
    hi: float

    def __post_init__(self):
        lo, hi = float(self.lo), float(self.hi)
        if math.isnan(lo) or math.isnan(hi):
            raise InvalidParameterError("interval endpoints must not be NaN")
        if lo > hi:
            raise InvalidParameterError(f"interval lower bound {lo!r} exceeds upper bound {hi!r}")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi

    def contains_interval(self, other: "Interval", tol: float = 0.0) -> bool:
        return self.lo - tol <= other.lo and other.hi <= self.hi + tol

    def hausdorff(self, other: "Interval") -> float:
        return max(abs(self.lo - other.lo), abs(self.hi - other.hi))

    def __iter__(self) -> Iterator[float]:
        yield self.lo
        yield self.hi

    def __add__(self, other: "Interval") -> "Interval":
        return Interval(self.lo + other.lo, self.hi + other.hi)

    def __sub__(self, other: "Interval") -> "Interval":
        return Interval(self.lo - other.hi, self.hi - other.lo)

    def __mul__(self, other: "Interval") -> "Interval":
        p = (self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi)
        return Interval(min(p), max(p))

    def __truediv__(self, other: "Interval") -> "Interval":
        if other.lo <= 0.0 <= other.hi:
            raise DomainViolationError(f"division by an interval containing 0: {other}")
        p = (self.lo / other.lo, self.lo / other.hi, self.hi / other.lo, self.hi / other.hi)
        return Interval(min(p), max(p))

    def __str__(self) -> str:
        return f"[{self.lo:g}, {self.hi:g}]"


# ---------------------------------------------------------------------------
# shape functions


@dataclass(frozen=True)
class ShapeFunction:
    """A reference function on ``[0, 1]`` with value 1 at 0 and 0 at 1.

    ``linear`` is ``1 - z``, ``power(k)`` is ``1 - z**k`` and ``tabulated``
    interpolates the given ``(z, value)`` samples linearly.
    """

    kind: str = "linear"
    exponent: float = 1.0
    samples: tuple = ()

    def __post_init__(self):
        if self.kind == "linear":
            return
        if self.kind == "power":
            k = float(self.exponent)
            if not (k > 0 and math.isfinite(k)):
                raise InvalidParameterError(f"power shape needs a positive exponent, got {self.exponent!r}")
            object.__setattr__(self, "exponent", k)
            return
        if self.kind != "tabulated":
            raise InvalidParameterError(f"unknown shape kind {self.kind!r}")
        pts = tuple((float(z), float(v)) for z, v in self.samples)
        if len(pts) < 2:
            raise InvalidParameterError("tabulated shape needs at least two samples")
        z = np.array([p[0] for p in pts])
        v = np.array([p[1] for p in pts])
        if z[0] != 0.0 or z[-1] != 1.0 or np.any(np.diff(z) <= 0):
            raise InvalidParameterError("tabulated shape abscissae must increase strictly from 0 to 1")
        if v[0] != 1.0 or v[-1] != 0.0:
            raise InvalidParameterError("tabulated shape must take value 1 at 0 and 0 at 1")
        if np.any(np.diff(v) > 0) or np.any(v < 0) or np.any(v > 1):
            raise InvalidParameterError("tabulated shape must be non-increasing with values in [0, 1]")
        object.__setattr__(self, "samples", pts)

    @classmethod
    def linear(cls) -> "ShapeFunction":
        return cls("linear")

    @classmethod
    def power(cls, k: float) -> "ShapeFunction":
        return cls("power", exponent=k)

    @classmethod
    def tabulated(cls, samples: Sequence[tuple[float, float]]) -> "ShapeFunction":
        return cls("tabulated", samples=tuple(samples))

    @property
    def strictly_decreasing(self) -> bool:
        if self.kind != "tabulated":
            return True
        return all(v1 > v2 for (_, v1), (_, v2) in zip(self.samples, self.samples[1:]))

    def __call__(self, z):
        z = np.clip(np.asarray(z, dtype=float), 0.0, 1.0)
        if self.kind == "linear":
            out = 1.0 - z
        elif self.kind == "power":
            out = 1.0 - z ** self.exponent
        else:
            zs, vs = zip(*self.samples)
            out = np.interp(z, zs, vs)
        return out if out.ndim else float(out)

    def inverse(self, alpha: float) -> float:
        """Largest ``z`` with ``self(z) >= alpha``; for ``alpha == 0`` the sup of ``{self > 0}``.

        This is the ordinary inverse for strictly decreasing shapes and the
        generalized one (largest preimage) otherwise.
        """
        alpha = float(alpha)
        if alpha <= 0.0:
            if self.kind != "tabulated":
                return 1.0
            return _bisect_last_true(lambda z: self(z) > 0.0)
        if alpha >= 1.0 and self.kind != "tabulated":
            return 0.0
        if self.kind == "linear":
            return 1.0 - alpha
        if self.kind == "power":
            return (1.0 - alpha) ** (1.0 / self.exponent)
        return _bisect_last_true(lambda z: self(z) >= alpha)

    def __str__(self) -> str:
        if self.kind == "power":
            return f"power({_fmt_num(self.exponent)})"
        return self.kind


def _bisect_last_true(pred, tol: float = INVERSE_TOL) -> float:
    # pred is true on [0, z*] and false on (z*, 1]; pred(0) is assumed true
    if pred(1.0):
        return 1.0
    lo, hi = 0.0, 1.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if pred(mid):
            lo = mid
        else:
            hi = mid
    return lo


def _fmt_num(x: float) -> str:
    return np.format_float_positional(float(x), trim="-")


# ---------------------------------------------------------------------------
# LR numbers


@dataclass(frozen=True)
class LRNumber:
    """Parametric fuzzy number ``(q_minus, q_plus, a, b)_LR``.

    ``[q_minus, q_plus]`` is the peak, ``a`` and ``b`` the left and right
    spreads. Zero spreads give vertical edges.
    """

    q_minus: float
    q_plus: float
    a: float = 0.0
    b: float = 0.0
    L: ShapeFunction = ShapeFunction()
    R: ShapeFunction = ShapeFunction()

    def __post_init__(self):
        vals = [float(v) for v in (self.q_minus, self.q_plus, self.a, self.b)]
        if not all(math.isfinite(v) for v in vals):
            raise InvalidParameterError(f"LR parameters must be finite, got {vals}")
        qm, qp, a, b = vals
        if qm > qp:
            raise InvalidParameterError(f"lower modal value {qm!r} exceeds upper modal value {qp!r}")
        if a < 0 or b < 0:
            raise InvalidParameterError(f"spreads must be non-negative, got a={a!r}, b={b!r}")
        for name, v in zip(("q_minus", "q_plus", "a", "b"), vals):
            object.__setattr__(self, name, v)

    @property
    def support(self) -> Interval:
        """Closure of the support (the level at alpha = 0)."""
        return self.alpha_level(0.0)

    @property
    def peak(self) -> Interval:
        return Interval(self.q_minus, self.q_plus)

    @property
    def is_strict(self) -> bool:
        return self.L.strictly_decreasing and self.R.strictly_decreasing

    @property
    def is_linear(self) -> bool:
        return self.L.kind == "linear" and self.R.kind == "linear"

    @property
    def is_triangular(self) -> bool:
        return self.is_linear and self.q_minus == self.q_plus

    def membership(self, x):
        x = np.asarray(x, dtype=float)
        qm, qp, a, b = self.q_minus, self.q_plus, self.a, self.b
        out = np.zeros_like(x)
        out[(x >= qm) & (x <= qp)] = 1.0
        # off the peak a strict shape stays below 1 even when z rounds to 0
        below_one = np.nextafter(1.0, 0.0)
        if a > 0:
            left = (x >= qm - a) & (x < qm)
            v = self.L((qm - x[left]) / a)
            out[left] = np.minimum(v, below_one) if self.L.strictly_decreasing else v
        if b > 0:
            right = (x > qp) & (x <= qp + b)
            v = self.R((x[right] - qp) / b)
            out[right] = np.minimum(v, below_one) if self.R.strictly_decreasing else v
        return out if out.ndim else float(out)

    def alpha_level(self, alpha: float) -> Interval:
        alpha = _check_alpha(alpha)
        return Interval(self.q_minus - self.a * self.L.inverse(alpha),
                        self.q_plus + self.b * self.R.inverse(alpha))

    def __str__(self) -> str:
        return (f"LR({_fmt_num(self.q_minus)}, {_fmt_num(self.q_plus)}, "
                f"{_fmt_num(self.a)}, {_fmt_num(self.b)}; {self.L}, {self.R})")


def tri(a: float, u: float, b: float) -> LRNumber:
    """Triangular number with vertices ``(a, 0)``, ``(u, 1)``, ``(b, 0)``."""
    if not (a <= u <= b):
        raise InvalidParameterError(f"triangular vertices must satisfy a <= u <= b, got ({a}, {u}, {b})")
    return LRNumber(u, u, u - a, b - u)


def trap(a: float, b: float, c: float, d: float) -> LRNumber:
    """Trapezoidal number with peak ``[b, c]`` and support ``[a, d]``."""
    if not (a <= b <= c <= d):
        raise InvalidParameterError(
            f"trapezoidal vertices must satisfy a <= b <= c <= d, got ({a}, {b}, {c}, {d})")
    return LRNumber(b, c, b - a, d - c)


def crisp(value: float) -> LRNumber:
    return LRNumber(value, value, 0.0, 0.0)


# ---------------------------------------------------------------------------
# staircases


def alpha_grid(n_levels: int = DEFAULT_LEVELS) -> np.ndarray:
    n_levels = int(n_levels)
    if n_levels < 2:
        raise InvalidParameterError(f"need at least 2 levels, got {n_levels}")
    # i/(n-1) is correctly rounded, unlike the i*step of linspace
    return np.arange(n_levels) / (n_levels - 1)


class AlphaCutNumber:
    """Fuzzy number stored as nested levels at strictly increasing alphas.

    ``alphas`` must start at 0 and end at 1. Endpoints between stored
    alphas are linearly interpolated. Instances are immutable; the arrays
    are exposed read-only.
    """

    __slots__ = ("_alphas", "_lo", "_hi", "generalized_inverse")

    def __init__(self, alphas, lo, hi, *, generalized_inverse: bool = False):
        alphas = np.array(alphas, dtype=float)
        lo = np.array(lo, dtype=float)
        hi = np.array(hi, dtype=float)
        if alphas.ndim != 1 or lo.shape != alphas.shape or hi.shape != alphas.shape:
            raise InvalidParameterError("alphas, lo and hi must be 1-D arrays of equal length")
        if len(alphas) < 2:
            raise InvalidParameterError("a staircase needs at least the levels 0 and 1")
        if alphas[0] != 0.0 or alphas[-1] != 1.0 or np.any(np.diff(alphas) <= 0):
            raise InvalidParameterError("alphas must increase strictly from 0 to 1")
        if not (np.all(np.isfinite(lo)) and np.all(np.isfinite(hi))):
            raise InvalidParameterError("level endpoints must be finite")
        scale = max(1.0, float(np.max(np.abs(lo))), float(np.max(np.abs(hi))))
        slack = _NEST_RTOL * scale
        if np.any(lo > hi + slack):
            k = int(np.argmax(lo - hi))
            raise InvalidParameterError(f"empty level at alpha={alphas[k]}: [{lo[k]}, {hi[k]}]")
        if np.any(np.diff(lo) < -slack) or np.any(np.diff(hi) > slack):
            raise InvalidParameterError("levels are not nested")
        # absorb rounding-level violations so the invariants hold exactly
        lo = np.minimum.accumulate(lo[::-1])[::-1]
        hi = np.maximum.accumulate(hi[::-1])[::-1]
        hi = np.maximum(hi, lo)
        for arr in (alphas, lo, hi):
            arr.setflags(write=False)
        self._alphas, self._lo, self._hi = alphas, lo, hi
        self.generalized_inverse = bool(generalized_inverse)

    @classmethod
    def from_cuts(cls, cuts: Sequence[tuple[float, Interval | tuple[float, float]]]) -> "AlphaCutNumber":
        alphas = [float(a) for a, _ in cuts]
        lo = [float(iv[0]) if not isinstance(iv, Interval) else iv.lo for _, iv in cuts]
        hi = [float(iv[1]) if not isinstance(iv, Interval) else iv.hi for _, iv in cuts]
        return cls(alphas, lo, hi)

    @classmethod
    def crisp(cls, value: float, n_levels: int = 2) -> "AlphaCutNumber":
        alphas = alpha_grid(n_levels)
        v = np.full_like(alphas, float(value))
        return cls(alphas, v, v)

    @property
    def alphas(self) -> np.ndarray:
        return self._alphas

    @property
    def lo(self) -> np.ndarray:
        return self._lo

    @property
    def hi(self) -> np.ndarray:
        return self._hi

    @property
    def n_levels(self) -> int:
        return len(self._alphas)

    @property
    def support(self) -> Interval:
        return Interval(self._lo[0], self._hi[0])

    @property
    def peak(self) -> Interval:
        return Interval(self._lo[-1], self._hi[-1])

    @property
    def cuts(self) -> list[tuple[float, Interval]]:
        return [(float(a), Interval(l, h)) for a, l, h in zip(self._alphas, self._lo, self._hi)]

    def endpoints(self, alphas) -> tuple[np.ndarray, np.ndarray]:
        """Interpolated level endpoints at each of ``alphas``."""
        alphas = np.asarray(alphas, dtype=float)
        if np.any((alphas < 0) | (alphas > 1)):
            raise InvalidParameterError("alpha must lie in [0, 1]")
        return np.interp(alphas, self._alphas, self._lo), np.interp(alphas, self._alphas, self._hi)

    def alpha_level(self, alpha: float) -> Interval:
        alpha = _check_alpha(alpha)
        lo, hi = self.endpoints(alpha)
        return Interval(float(lo), max(float(lo), float(hi)))

    def resample(self, alphas) -> "AlphaCutNumber":
        lo, hi = self.endpoints(alphas)
        return AlphaCutNumber(alphas, lo, hi, generalized_inverse=self.generalized_inverse)

    def membership(self, x):
        """``sup{alpha : x in level(alpha)}`` on the interpolated staircase."""
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        al, lo, hi = self._alphas, self._lo, self._hi
        out[(x >= lo[-1]) & (x <= hi[-1])] = 1.0

        left = (x >= lo[0]) & (x < lo[-1])
        if np.any(left):
            out[left] = _invert_staircase_side(x[left], lo, al)
        right = (x > hi[-1]) & (x <= hi[0])
        if np.any(right):
            # hi is non-increasing; mirror it to reuse the left-side search
            out[right] = _invert_staircase_side(-x[right], -hi, al)
        return out if out.ndim else float(out)

    def __repr__(self) -> str:
        return f"AlphaCutNumber(n_levels={self.n_levels}, support={self.support}, peak={self.peak})"


def _invert_staircase_side(x, ends, alphas):
    # ends non-decreasing in alpha and x in [ends[0], ends[-1]);
    # largest alpha with ends(alpha) <= x
    k = np.searchsorted(ends, x, side="right") - 1
    k = np.clip(k, 0, len(ends) - 2)
    e0, e1 = ends[k], ends[k + 1]
    a0, a1 = alphas[k], alphas[k + 1]
    span = e1 - e0
    with np.errstate(divide="ignore", invalid="ignore"):
        t = np.where(span > 0, (x - e0) / span, 0.0)
    return a0 + np.clip(t, 0.0, 1.0) * (a1 - a0)


FuzzyNumber = Union[LRNumber, AlphaCutNumber]


def _check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not (0.0 <= alpha <= 1.0):
        raise InvalidParameterError(f"alpha must lie in [0, 1], got {alpha!r}")
    return alpha


# ---------------------------------------------------------------------------
# module-level operations


def membership(A: FuzzyNumber, x):
    """Membership degree of ``x`` (scalar or array) in ``A``."""
    return A.membership(x)


def alpha_level(A: FuzzyNumber, alpha: float) -> Interval:
    return A.alpha_level(alpha)


def level_endpoints(A: FuzzyNumber, alphas) -> tuple[np.ndarray, np.ndarray]:
    """Vectorised ``alpha_level`` returning the lower and upper endpoint arrays."""
    if isinstance(A, AlphaCutNumber):
        return A.endpoints(alphas)
    alphas = np.asarray(alphas, dtype=float)
    lo = np.array([A.q_minus - A.a * A.L.inverse(al) for al in alphas])
    hi = np.array([A.q_plus + A.b * A.R.inverse(al) for al in alphas])
    return lo, hi


def from_lr(A: LRNumber, n_levels: int = DEFAULT_LEVELS) -> AlphaCutNumber:
    """Sample ``A`` at ``n_levels`` uniformly spaced alphas, 0 and 1 included.

    Shapes that are not strictly decreasing are inverted with the generalized
    (largest preimage) inverse; the result is flagged through
    ``generalized_inverse``.
    """
    alphas = alpha_grid(n_levels)
    lo, hi = level_endpoints(A, alphas)
    return AlphaCutNumber(alphas, lo, hi, generalized_inverse=not A.is_strict)


def as_alpha_cut(A: FuzzyNumber, alphas=None) -> AlphaCutNumber:
    """Coerce to a staircase, on ``alphas`` if given (else the number's own grid)."""
    if isinstance(A, AlphaCutNumber):
        return A if alphas is None else A.resample(alphas)
    if alphas is None:
        return from_lr(A)
    alphas = np.asarray(alphas, dtype=float)
    lo, hi = level_endpoints(A, alphas)
    return AlphaCutNumber(alphas, lo, hi, generalized_inverse=not A.is_strict)


def common_alphas(*numbers: FuzzyNumber, n_levels: int = DEFAULT_LEVELS) -> np.ndarray:
    """Union of the stored grids of any staircases, or the default uniform grid."""
    grids = [A.alphas for A in numbers if isinstance(A, AlphaCutNumber)]
    if not grids:
        return alpha_grid(n_levels)
    return np.unique(np.concatenate(grids))


def level_distance(A: FuzzyNumber, B: FuzzyNumber, alphas=None) -> float:
    """Sup over sampled alphas of the Hausdorff distance between the levels."""
    if alphas is None:
        alphas = common_alphas(A, B)
    alo, ahi = level_endpoints(A, alphas)
    blo, bhi = level_endpoints(B, alphas)
    return float(max(np.max(np.abs(alo - blo)), np.max(np.abs(ahi - bhi))))


def equals_by_levels(A: FuzzyNumber, B: FuzzyNumber, tol: float = 1e-9, alphas=None) -> bool:
    if tol < 0:
        raise InvalidParameterError("tolerance must be non-negative")
    return level_distance(A, B, alphas) <= tol
