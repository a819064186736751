"""A small expression language for sets, e.g. ``thin(periodic(2, [0, 1)), squares)``.

Grammar (LL(1))::

    expr     := NAME [ "(" [ arg ("," arg)* ] ")" ]
    arg      := expr | number | interval
    interval := "[" number "," number ")"
    number   := INT [ "/" INT ] | DECIMAL

Numbers are kept as exact fractions.  :func:`parse` returns an AST and,
unless told otherwise, also checks that it describes a valid set.
:func:`to_text` prints the canonical form and :func:`build` turns the AST
into a :class:`~unidensity.intervals.SetSpec`.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import UnidensityError
from .families import LogBlocks, PowerBlocks, Squares
from .intervals import (
    EXACT,
    Complement,
    DisjointUnion,
    Finite,
    Periodic,
    Scale,
    SetSpec,
    Thin,
    Translate,
    as_real,
    log_image,
    tail,
)


class DSLError(UnidensityError, ValueError):
    def __init__(self, message: str, line: int = 1, col: int = 1, expected: tuple = ()):
        self.line, self.col, self.expected = line, col, tuple(expected)
        where = f"line {line}, column {col}"
        hint = f" (expected one of: {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{where}: {message}{hint}")


class DSLSyntaxError(DSLError):
    pass


@dataclass(frozen=True)
class Num:
    value: Fraction
    line: int = 0
    col: int = 0

    def __eq__(self, other):
        return isinstance(other, Num) and self.value == other.value

    def __hash__(self):
        return hash(self.value)


@dataclass(frozen=True)
class IntervalLit:
    lo: Num
    hi: Num

    def __eq__(self, other):
        return isinstance(other, IntervalLit) and (self.lo, self.hi) == (other.lo, other.hi)

    def __hash__(self):
        return hash((self.lo, self.hi))


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple = ()
    line: int = 0
    col: int = 0

    def __eq__(self, other):
        return isinstance(other, Call) and (self.name, self.args) == (other.name, other.args)

    def __hash__(self):
        return hash((self.name, self.args))


Expr = Union[Call, Num, IntervalLit]

# name -> argument kinds; "e" expression, "n" number, "i*" one or more intervals, "i+" zero or more
SIGNATURES = {
    "periodic": ("n", "i+"),
    "finite": ("i*",),
    "logblocks": ("n", "n"),
    "powerblocks": ("n", "n"),
    "squares": (),
    "tail": ("n",),
    "compl": ("e",),
    "union": ("e", "e"),
    "translate": ("e", "n"),
    "scale": ("e", "n"),
    "log": ("e",),
    "thin": ("e", "e"),
}

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<number>(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<punct>[()\[\],/-])
""", re.VERBOSE)


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list:
    toks, pos, line, col = [], 0, 1, 1
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise DSLSyntaxError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        chunk = m.group()
        if kind != "ws":
            toks.append(_Tok(chunk if kind == "punct" else kind, chunk, line, col))
        for ch in chunk:
            if ch == "\n":
                line, col = line + 1, 1
            else:
                col += 1
        pos = m.end()
    toks.append(_Tok("eof", "", line, col))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def fail(self, expected, message=None):
        t = self.tok
        shown = "end of input" if t.kind == "eof" else repr(t.text)
        raise DSLSyntaxError(message or f"unexpected {shown}", t.line, t.col, tuple(expected))

    def eat(self, kind) -> _Tok:
        if self.tok.kind != kind:
            self.fail((kind,))
        t = self.tok
        self.i += 1
        return t

    def parse(self) -> Call:
        e = self.expr()
        if self.tok.kind != "eof":
            self.fail(("end of input",))
        return e

    def expr(self) -> Call:
        if self.tok.kind != "name":
            self.fail(("set name",))
        t = self.eat("name")
        if t.text not in SIGNATURES:
            raise DSLSyntaxError(f"unknown set constructor {t.text!r}", t.line, t.col, tuple(sorted(SIGNATURES)))
        args = []
        if self.tok.kind == "(":
            self.eat("(")
            if self.tok.kind != ")":
                args.append(self.arg())
                while self.tok.kind == ",":
                    self.eat(",")
                    args.append(self.arg())
            if self.tok.kind != ")":
                self.fail((",", ")"))
            self.eat(")")
        call = Call(t.text, tuple(args), t.line, t.col)
        _check_signature(call)
        return call

    def arg(self) -> Expr:
        k = self.tok.kind
        if k == "name":
            return self.expr()
        if k in ("number", "-"):
            return self.number()
        if k == "[":
            return self.interval()
        self.fail(("set name", "number", "["))

    def number(self) -> Num:
        start = self.tok
        sign = 1
        if self.tok.kind == "-":
            self.eat("-")
            sign = -1
        t = self.eat("number")
        value = Fraction(t.text)
        if self.tok.kind == "/":
            self.eat("/")
            d = self.eat("number")
            if not d.text.isdigit() or not t.text.isdigit():
                raise DSLSyntaxError("rational literals need integer parts", d.line, d.col)
            if int(d.text) == 0:
                raise DSLSyntaxError("zero denominator", d.line, d.col)
            value = Fraction(int(t.text), int(d.text))
        return Num(sign * value, start.line, start.col)

    def interval(self) -> IntervalLit:
        self.eat("[")
        lo = self.number()
        self.eat(",")
        hi = self.number()
        if self.tok.kind != ")":
            self.fail((")",), "intervals are half-open and must close with ')'")
        self.eat(")")
        return IntervalLit(lo, hi)


def _kind(a: Expr) -> str:
    return {Call: "e", Num: "n", IntervalLit: "i"}[type(a)]


def _check_signature(call: Call):
    sig = SIGNATURES[call.name]
    kinds = [_kind(a) for a in call.args]
    fixed = [s for s in sig if s in ("e", "n")]
    rest = sig[len(fixed):]
    ok = kinds[:len(fixed)] == fixed
    tail_kinds = kinds[len(fixed):]
    if rest:
        need = 1 if rest[0] == "i+" else 0
        ok = ok and len(tail_kinds) >= need and all(k == "i" for k in tail_kinds)
    else:
        ok = ok and not tail_kinds
    if not ok:
        pretty = {"e": "set", "n": "number", "i+": "interval...", "i*": "interval..."}
        want = f"{call.name}(" + ", ".join(pretty[s] for s in sig) + ")"
        raise DSLSyntaxError(f"bad arguments for {call.name}; usage: {want}", call.line, call.col)


def _num_text(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def to_text(e: Expr) -> str:
    """Canonical printer; ``parse(to_text(e)) == e``."""
    if isinstance(e, Num):
        return _num_text(e.value)
    if isinstance(e, IntervalLit):
        return f"[{_num_text(e.lo.value)}, {_num_text(e.hi.value)})"
    if not e.args and e.name == "squares":
        return "squares"
    return f"{e.name}(" + ", ".join(to_text(a) for a in e.args) + ")"


def _promote(*specs: SetSpec) -> tuple:
    if len({s.mode for s in specs}) > 1:
        return tuple(as_real(s) for s in specs)
    return specs


def _pos_err(node, exc):
    return DSLError(str(exc), getattr(node, "line", 0) or 1, getattr(node, "col", 0) or 1)


def build(e: Call) -> SetSpec:
    """Turn an AST into a set description.  Exact and real operands are promoted to real."""
    try:
        return _build(e)
    except DSLError:
        raise
    except UnidensityError as exc:
        raise _pos_err(e, exc) from exc


def _build(e: Call) -> SetSpec:
    a = e.args
    try:
        if e.name == "periodic":
            return Periodic(a[0].value, [(i.lo.value, i.hi.value) for i in a[1:]])
        if e.name == "finite":
            return Finite([(i.lo.value, i.hi.value) for i in a])
        if e.name == "logblocks":
            return LogBlocks(a[0].value, a[1].value)
        if e.name == "powerblocks":
            k = a[1].value
            if k.denominator != 1:
                raise DSLError("powerblocks exponent must be an integer", a[1].line, a[1].col)
            return PowerBlocks(a[0].value, int(k))
        if e.name == "squares":
            return Squares()
        if e.name == "tail":
            return tail(a[0].value)
        if e.name == "compl":
            return Complement(_build(a[0]))
        if e.name == "union":
            return DisjointUnion(*_promote(_build(a[0]), _build(a[1])))
        if e.name == "translate":
            inner = _build(a[0])
            return Translate(inner, a[1].value if inner.mode == EXACT else float(a[1].value))
        if e.name == "scale":
            inner = _build(a[0])
            return Scale(inner, a[1].value if inner.mode == EXACT else float(a[1].value))
        if e.name == "log":
            return log_image(_build(a[0]))
        if e.name == "thin":
            return Thin(*_promote(_build(a[0]), _build(a[1])))
    except DSLError:
        raise
    except UnidensityError as exc:
        raise _pos_err(e, exc) from exc
    raise DSLError(f"unknown constructor {e.name!r}", e.line, e.col)


def parse(text: str, validate: bool = True) -> Call:
    """Parse ``text``; with ``validate`` the set is also constructed to catch bad parameters."""
    ast = _Parser(text).parse()
    if validate:
        build(ast)
    return ast


def compile_expr(text: str) -> SetSpec:
    return build(parse(text, validate=False))
