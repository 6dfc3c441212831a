"""Parser for the fuzzy-arithmetic script language.

A script is a sequence of ``;``-terminated statements::

    let A = tri(0, 1, 2);
    let f = linear(2, 3);
    let B = apply(f, A);
    print(B, 11);
    check(A, f);
    compare(B, tri(3, 5, 7));

``#`` starts a comment running to the end of the line. Parsing also resolves
names: every identifier must be bound before use, bindings cannot be
rebound, and the kind of each binding (fuzzy number or correlation) is
checked where it is used.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Union

import numpy as np


class ScriptError(Exception):
    """Error attributable to a position in a script."""

    exit_code = 2

    def __init__(self, message: str, line: int = 0, col: int = 0, token: str | None = None):
        self.message, self.line, self.col, self.token = message, line, col, token
        where = f"{line}:{col}: " if line else ""
        near = f" (at {token!r})" if token is not None else ""
        super().__init__(f"{where}{message}{near}")


class ParseError(ScriptError):
    pass


class ScriptNameError(ScriptError):
    pass


class ScriptTypeError(ScriptError):
    pass


# ---------------------------------------------------------------------------
# lexer


@dataclass(frozen=True)
class Token:
    kind: str  # NUM, IDENT, PUNCT, EOF
    text: str
    line: int
    col: int


_TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<num>\d+(?:\.\d*)?|\.\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<punct>[(),;=+\-])
""", re.VERBOSE)


def tokenize(source: str) -> list[Token]:
    tokens = []
    line, line_start, pos = 1, 0, 0
    while pos < len(source):
        m = _TOKEN_RE.match(source, pos)
        col = pos - line_start + 1
        if m is None:
            raise ParseError("unexpected character", line, col, source[pos])
        kind = m.lastgroup
        if kind == "nl":
            line, line_start = line + 1, m.end()
        elif kind == "num":
            tokens.append(Token("NUM", m.group(), line, col))
        elif kind == "ident":
            tokens.append(Token("IDENT", m.group(), line, col))
        elif kind == "punct":
            tokens.append(Token("PUNCT", m.group(), line, col))
        pos = m.end()
    tokens.append(Token("EOF", "", line, pos - line_start + 1))
    return tokens


# ---------------------------------------------------------------------------
# syntax tree


def _pos():
    return field(default=(0, 0), compare=False, repr=False)


def fmt_number(x: float) -> str:
    """Positional decimal form that the lexer reads back to the same float."""
    s = np.format_float_positional(float(x), trim="-")
    return "0" if s == "-0" else s


@dataclass(frozen=True)
class Ref:
    name: str
    pos: tuple = _pos()

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Shape:
    kind: str  # "linear" | "power"
    exponent: float = 1.0

    def __str__(self):
        return f"power({fmt_number(self.exponent)})" if self.kind == "power" else "linear"


@dataclass(frozen=True)
class Tri:
    a: float
    u: float
    b: float
    pos: tuple = _pos()

    def __str__(self):
        return f"tri({', '.join(map(fmt_number, (self.a, self.u, self.b)))})"


@dataclass(frozen=True)
class Trap:
    a: float
    b: float
    c: float
    d: float
    pos: tuple = _pos()

    def __str__(self):
        return f"trap({', '.join(map(fmt_number, (self.a, self.b, self.c, self.d)))})"


@dataclass(frozen=True)
class LR:
    q_minus: float
    q_plus: float
    a: float
    b: float
    left: Shape
    right: Shape
    pos: tuple = _pos()

    def __str__(self):
        nums = ", ".join(map(fmt_number, (self.q_minus, self.q_plus, self.a, self.b)))
        return f"lr({nums}, {self.left}, {self.right})"


@dataclass(frozen=True)
class Corr:
    kind: str  # "linear" | "hyper"
    q: float
    r: float
    pos: tuple = _pos()

    def __str__(self):
        return f"{self.kind}({fmt_number(self.q)}, {fmt_number(self.r)})"


@dataclass(frozen=True)
class Apply:
    f: Ref
    arg: Ref
    pos: tuple = _pos()

    def __str__(self):
        return f"apply({self.f}, {self.arg})"


@dataclass(frozen=True)
class BinOp:
    op: str  # "add" | "sub" | "mul" | "div"
    left: Ref
    right: Ref
    corr: bool = False
    pos: tuple = _pos()

    def __str__(self):
        tail = ", corr" if self.corr else ""
        return f"{self.op}({self.left}, {self.right}{tail})"


Expr = Union[Ref, Tri, Trap, LR, Corr, Apply, BinOp]


@dataclass(frozen=True)
class Let:
    name: str
    expr: Expr
    pos: tuple = _pos()

    def __str__(self):
        return f"let {self.name} = {self.expr};"


@dataclass(frozen=True)
class Print:
    target: Ref
    levels: int | None = None
    pos: tuple = _pos()

    def __str__(self):
        tail = f", {self.levels}" if self.levels is not None else ""
        return f"print({self.target}{tail});"


@dataclass(frozen=True)
class Check:
    number: Ref
    f: Ref
    pos: tuple = _pos()

    def __str__(self):
        return f"check({self.number}, {self.f});"


@dataclass(frozen=True)
class Compare:
    left: Expr
    right: Expr
    pos: tuple = _pos()

    def __str__(self):
        return f"compare({self.left}, {self.right});"


Statement = Union[Let, Print, Check, Compare]


@dataclass(frozen=True)
class Script:
    statements: tuple

    def __str__(self):
        return "".join(f"{s}\n" for s in self.statements)


KEYWORDS = frozenset({"let", "print", "check", "compare", "tri", "trap", "lr", "linear", "hyper",
                      "power", "apply", "add", "sub", "mul", "div", "corr"})
BINOPS = ("add", "sub", "mul", "div")

FUZZY, CORRELATION = "fuzzy number", "correlation"


# ---------------------------------------------------------------------------
# parser


class _Parser:
    def __init__(self, source: str):
        self.tokens = tokenize(source)
        self.i = 0
        self.kinds: dict[str, str] = {}

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def error(self, message: str, tok: Token | None = None) -> ParseError:
        tok = tok or self.tok
        return ParseError(message, tok.line, tok.col, tok.text or "end of input")

    def expect(self, text: str) -> Token:
        if self.tok.text != text or self.tok.kind == "NUM":
            raise self.error(f"expected {text!r}")
        return self.advance()

    def number(self) -> float:
        sign = 1.0
        if self.tok.kind == "PUNCT" and self.tok.text in "+-":
            sign = -1.0 if self.advance().text == "-" else 1.0
        if self.tok.kind != "NUM":
            raise self.error("expected a number")
        return sign * float(self.advance().text)

    def integer(self) -> int:
        tok = self.tok
        if tok.kind != "NUM" or not tok.text.isdigit():
            raise self.error("expected an integer")
        self.advance()
        return int(tok.text)

    def numbers(self, n: int) -> list[float]:
        out = [self.number()]
        for _ in range(n - 1):
            self.expect(",")
            out.append(self.number())
        return out

    def ref(self, kind: str | None = None) -> Ref:
        tok = self.tok
        if tok.kind != "IDENT" or tok.text in KEYWORDS:
            raise self.error("expected an identifier")
        self.advance()
        if tok.text not in self.kinds:
            raise ScriptNameError(f"unknown identifier {tok.text!r}", tok.line, tok.col, tok.text)
        if kind is not None and self.kinds[tok.text] != kind:
            raise ScriptTypeError(f"{tok.text!r} is a {self.kinds[tok.text]}, expected a {kind}",
                                  tok.line, tok.col, tok.text)
        return Ref(tok.text, (tok.line, tok.col))

    # expr returns (node, kind)
    def expr(self):
        tok = self.tok
        pos = (tok.line, tok.col)
        if tok.kind != "IDENT":
            raise self.error("expected an expression")
        if tok.text not in KEYWORDS:
            r = self.ref()
            return r, self.kinds[r.name]
        head = self.advance().text
        if head in ("tri", "trap"):
            self.expect("(")
            nums = self.numbers(3 if head == "tri" else 4)
            self.expect(")")
            return (Tri(*nums, pos=pos) if head == "tri" else Trap(*nums, pos=pos)), FUZZY
        if head == "lr":
            self.expect("(")
            nums = self.numbers(4)
            self.expect(",")
            left = self.shape()
            self.expect(",")
            right = self.shape()
            self.expect(")")
            return LR(*nums, left, right, pos=pos), FUZZY
        if head in ("linear", "hyper"):
            self.expect("(")
            q, r = self.numbers(2)
            self.expect(")")
            return Corr(head, q, r, pos=pos), CORRELATION
        if head == "apply":
            self.expect("(")
            f = self.ref(CORRELATION)
            self.expect(",")
            arg = self.ref(FUZZY)
            self.expect(")")
            return Apply(f, arg, pos=pos), FUZZY
        if head in BINOPS:
            self.expect("(")
            left = self.ref(FUZZY)
            self.expect(",")
            right = self.ref(FUZZY)
            corr = False
            if self.tok.text == ",":
                self.advance()
                self.expect("corr")
                corr = True
            self.expect(")")
            return BinOp(head, left, right, corr, pos=pos), FUZZY
        raise self.error("expected an expression", tok)

    def shape(self) -> Shape:
        if self.tok.text == "linear" and self.tok.kind == "IDENT":
            self.advance()
            return Shape("linear")
        if self.tok.text == "power" and self.tok.kind == "IDENT":
            self.advance()
            self.expect("(")
            k = self.number()
            self.expect(")")
            return Shape("power", k)
        raise self.error("expected a shape ('linear' or 'power(k)')")

    def statement(self) -> Statement:
        tok = self.tok
        pos = (tok.line, tok.col)
        word = tok.text if tok.kind == "IDENT" else None
        if word == "let":
            self.advance()
            name_tok = self.tok
            if name_tok.kind != "IDENT" or name_tok.text in KEYWORDS:
                raise self.error("expected an identifier")
            self.advance()
            self.expect("=")
            node, kind = self.expr()
            self.expect(";")
            if name_tok.text in self.kinds:
                raise ScriptNameError(f"{name_tok.text!r} is already bound", name_tok.line,
                                      name_tok.col, name_tok.text)
            self.kinds[name_tok.text] = kind
            return Let(name_tok.text, node, pos=pos)
        if word == "print":
            self.advance()
            self.expect("(")
            target = self.ref(FUZZY)
            levels = None
            if self.tok.text == ",":
                self.advance()
                ltok = self.tok
                levels = self.integer()
                if levels < 2:
                    raise ParseError("print needs at least 2 levels", ltok.line, ltok.col, ltok.text)
            self.expect(")")
            self.expect(";")
            return Print(target, levels, pos=pos)
        if word == "check":
            self.advance()
            self.expect("(")
            number = self.ref(FUZZY)
            self.expect(",")
            f = self.ref(CORRELATION)
            self.expect(")")
            self.expect(";")
            return Check(number, f, pos=pos)
        if word == "compare":
            self.advance()
            self.expect("(")
            operands = []
            for sep in (",", ")"):
                etok = self.tok
                node, kind = self.expr()
                if kind != FUZZY:
                    raise ScriptTypeError("compare needs fuzzy numbers", etok.line, etok.col, etok.text)
                operands.append(node)
                self.expect(sep)
            self.expect(";")
            return Compare(*operands, pos=pos)
        raise self.error("expected a statement ('let', 'print', 'check' or 'compare')")

    def script(self) -> Script:
        stmts = []
        while self.tok.kind != "EOF":
            stmts.append(self.statement())
        return Script(tuple(stmts))


def parse(source: str) -> Script:
    """Parse and name-check ``source``; raises :class:`ScriptError` subclasses."""
    return _Parser(source).script()
