"""Execution of parsed scripts against the library."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import dsl
from .core import DEFAULT_LEVELS, LRNumber, ShapeFunction, alpha_grid, level_distance, trap, tri
from .correlation import CorrelationFunction, hyperbolic, linear
from .emit import CompareResult, emit
from .errors import FuzzyError
from .extension import OracleOptions, correlated_binop, extend_monotone, noninteractive_binop
from .shape import verify_endpoint_theorem

_OPS = {"add": np.add, "sub": np.subtract, "mul": np.multiply, "div": np.true_divide}


class ScriptRuntimeError(dsl.ScriptError):
    """A library operation failed while executing a statement."""

    exit_code = 3


@dataclass(frozen=True)
class RunConfig:
    levels: int = DEFAULT_LEVELS
    format: str = "csv"
    tol: float = 1e-9
    oracle_grid: int = 2001
    # "eval" emits every statement's output, "check" only check/compare reports
    mode: str = "eval"


@dataclass
class RunResult:
    outputs: list[str] = field(default_factory=list)
    failures: list[str] = field(default_factory=list)
    # CSV blocks are separated by a blank line, JSON documents are one per line
    separator: str = "\n"

    @property
    def text(self) -> str:
        return self.separator.join(self.outputs)

    @property
    def exit_code(self) -> int:
        return 1 if self.failures else 0


@dataclass(eq=False)
class FuzzyValue:
    """A fuzzy number plus its lineage: ``number = mapping(root)`` levelwise.

    Values built from the same root are interactive with each other; the
    mapping is ``None`` for roots.
    """

    number: object
    root: "FuzzyValue | None" = None
    mapping: Callable | None = None

    @property
    def base(self) -> "FuzzyValue":
        return self.root if self.root is not None else self


def _shape(s: dsl.Shape) -> ShapeFunction:
    return ShapeFunction.power(s.exponent) if s.kind == "power" else ShapeFunction.linear()


def _compose(outer: Callable, inner: Callable | None) -> Callable:
    if inner is None:
        return outer
    return lambda x: outer(inner(x))


class Interpreter:
    def __init__(self, config: RunConfig | None = None):
        self.config = config or RunConfig()
        self.alphas = alpha_grid(self.config.levels)
        self.env: dict[str, object] = {}

    def run(self, script: dsl.Script) -> RunResult:
        result = RunResult(separator="" if self.config.format == "json" else "\n")
        for stmt in script.statements:
            try:
                self.execute(stmt, result)
            except FuzzyError as exc:
                line, col = stmt.pos
                raise ScriptRuntimeError(str(exc), line, col) from exc
        return result

    def execute(self, stmt, result: RunResult) -> None:
        cfg = self.config
        if isinstance(stmt, dsl.Let):
            self.env[stmt.name] = self.evaluate(stmt.expr)
        elif isinstance(stmt, dsl.Print):
            if cfg.mode == "eval":
                value = self.env[stmt.target.name]
                result.outputs.append(emit(value.number, cfg.format, stmt.levels or cfg.levels))
        elif isinstance(stmt, dsl.Check):
            A = self.env[stmt.number.name]
            f = self.env[stmt.f.name]
            report = verify_endpoint_theorem(A.number, f, opts=OracleOptions(input_grid=cfg.oracle_grid),
                                             alphas=self.alphas)
            result.outputs.append(emit(report, cfg.format))
            if not report.passed:
                result.failures.append(
                    f"{stmt.pos[0]}:{stmt.pos[1]}: check failed: endpoint deviation "
                    f"{report.max_endpoint_deviation:.3g} exceeds {report.tolerance:.3g}")
        elif isinstance(stmt, dsl.Compare):
            left = self.evaluate(stmt.left).number
            right = self.evaluate(stmt.right).number
            d = level_distance(left, right, self.alphas)
            cmp = CompareResult(d <= cfg.tol, d, cfg.tol)
            result.outputs.append(emit(cmp, cfg.format))
            if not cmp.equal:
                result.failures.append(
                    f"{stmt.pos[0]}:{stmt.pos[1]}: compare failed: distance {d:.3g} exceeds {cfg.tol:.3g}")

    def evaluate(self, expr):
        try:
            return self._evaluate(expr)
        except FuzzyError as exc:
            line, col = expr.pos
            raise ScriptRuntimeError(str(exc), line, col) from exc

    def _evaluate(self, expr):
        if isinstance(expr, dsl.Ref):
            return self.env[expr.name]
        if isinstance(expr, dsl.Tri):
            return FuzzyValue(tri(expr.a, expr.u, expr.b))
        if isinstance(expr, dsl.Trap):
            return FuzzyValue(trap(expr.a, expr.b, expr.c, expr.d))
        if isinstance(expr, dsl.LR):
            return FuzzyValue(LRNumber(expr.q_minus, expr.q_plus, expr.a, expr.b,
                                       _shape(expr.left), _shape(expr.right)))
        if isinstance(expr, dsl.Corr):
            return (linear if expr.kind == "linear" else hyperbolic)(expr.q, expr.r)
        if isinstance(expr, dsl.Apply):
            f: CorrelationFunction = self.env[expr.f.name]
            A: FuzzyValue = self.env[expr.arg.name]
            number = extend_monotone(A.number, f, self.alphas)
            return FuzzyValue(number, A.base, _compose(f, A.mapping))
        if isinstance(expr, dsl.BinOp):
            return self._binop(expr)
        raise TypeError(f"unknown expression node {expr!r}")

    def _binop(self, expr: dsl.BinOp) -> FuzzyValue:
        A: FuzzyValue = self.env[expr.left.name]
        B: FuzzyValue = self.env[expr.right.name]
        if not expr.corr:
            return FuzzyValue(noninteractive_binop(A.number, B.number, expr.op, self.alphas))
        if A.base is not B.base:
            line, col = expr.pos
            raise dsl.ScriptTypeError(
                f"{expr.left.name!r} and {expr.right.name!r} are not derived from a common "
                "number, so no correlation links them", line, col, expr.op)
        base = A.base
        number = correlated_binop(base.number, A.mapping, B.mapping, expr.op, alphas=self.alphas)
        lm = A.mapping or (lambda x: x)
        rm = B.mapping or (lambda x: x)
        fn = _OPS[expr.op]
        return FuzzyValue(number, base, lambda x: fn(lm(x), rm(x)))


def run(script: dsl.Script, config: RunConfig | None = None) -> RunResult:
    return Interpreter(config).run(script)
