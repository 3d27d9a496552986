"""Parsers for ``.geo`` construction files and polynomial expressions.

A construction file is a sequence of statements separated by ``;`` or
newlines, with ``#`` starting a comment::

    encoding direct          # or: translation
    point A, B, C
    bc = line(B, C)
    ha = perpendicular(A, bc)
    E = midpoint(B, C)
    G = intersect(ha, hb)
    thesis on_line(G, hc)

See ``docs/dsl.md`` for the full grammar.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import (
    DSLSyntaxError,
    DuplicateName,
    MissingThesis,
    UnknownReference,
    UnknownVariable,
)
from .polycore import Polynomial, Ring

ENCODINGS = ("direct", "translation")
MAX_EXPONENT = 512

# step kind -> (argument kinds, result kind)
STEP_SIGNATURES = {
    "midpoint": (("point", "point"), "point"),
    "line": (("point", "point"), "line"),
    "perpendicular": (("point", "line"), "line"),
    "parallel": (("point", "line"), "line"),
    "intersect": (("line", "line"), "point"),
    "on_line": (("line",), "point"),
}

PREDICATE_SIGNATURES = {
    "collinear": ("point", "point", "point"),
    "equal_length": ("point", "point", "point", "point"),
    "perpendicular": ("line", "line"),
    "parallel": ("line", "line"),
    "on_line": ("point", "line"),
    "on_circle": ("point", "point", "point"),
}


@dataclass(frozen=True)
class Step:
    """One construction step; ``kind`` is ``"point"`` for a free point."""

    kind: str
    name: str
    args: tuple = ()
    line: int = 0

    @property
    def produces(self) -> str:
        return "point" if self.kind == "point" else STEP_SIGNATURES[self.kind][1]

    def __str__(self):
        if self.kind == "point":
            return f"point {self.name}"
        return f"{self.name} = {self.kind}({', '.join(self.args)})"


@dataclass(frozen=True)
class Predicate:
    kind: str
    args: tuple

    def __post_init__(self):
        if self.kind not in PREDICATE_SIGNATURES:
            raise ValueError(f"unknown predicate {self.kind!r}")
        if len(self.args) != len(PREDICATE_SIGNATURES[self.kind]):
            raise ValueError(f"{self.kind} takes {len(PREDICATE_SIGNATURES[self.kind])} arguments")

    def __str__(self):
        return f"{self.kind}({', '.join(self.args)})"


@dataclass
class Construction:
    steps: list
    thesis: Predicate
    encoding: Optional[str] = None
    name: str = ""
    kinds: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if not self.kinds:
            self.kinds = {s.name: s.produces for s in self.steps}

    @property
    def points(self) -> list:
        return [s.name for s in self.steps if s.produces == "point"]

    @property
    def lines(self) -> list:
        return [s.name for s in self.steps if s.produces == "line"]

    @property
    def free_points(self) -> list:
        return [s.name for s in self.steps if s.kind == "point"]

    def step(self, name: str) -> Step:
        for s in self.steps:
            if s.name == name:
                return s
        raise KeyError(name)

    def render(self) -> str:
        out = []
        if self.encoding:
            out.append(f"encoding {self.encoding}")
        out.extend(str(s) for s in self.steps)
        out.append(f"thesis {self.thesis}")
        return "\n".join(out) + "\n"


# -- tokenizer ----------------------------------------------------------------

_TOKEN = re.compile(
    r"(?P<ws>[ \t\r\f\v]+)|(?P<comment>\#[^\n]*)|(?P<nl>\n)"
    r"|(?P<ident>[A-Za-z][A-Za-z0-9_]*)|(?P<number>[0-9]+)"
    r"|(?P<op>[=(),;/*^+\-])"
)


@dataclass(frozen=True)
class Token:
    kind: str  # ident, number, op, sep, eof
    text: str
    line: int
    column: int


def tokenize(source: str, newline_is_separator: bool = True) -> list:
    tokens = []
    pos, line, col_start = 0, 1, 0
    n = len(source)
    while pos < n:
        m = _TOKEN.match(source, pos)
        column = pos - col_start + 1
        if m is None:
            raise DSLSyntaxError(f"unexpected character {source[pos]!r}", line, column)
        kind = m.lastgroup
        text = m.group()
        if kind == "nl":
            if newline_is_separator:
                tokens.append(Token("sep", "\n", line, column))
            line += 1
            col_start = m.end()
        elif kind == "op" and text == ";":
            tokens.append(Token("sep", ";", line, column))
        elif kind not in ("ws", "comment"):
            tokens.append(Token(kind, text, line, column))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - col_start + 1))
    return tokens


class _Cursor:
    def __init__(self, tokens):
        self.tokens = tokens
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        t = self.tokens[self.i]
        if t.kind != "eof":
            self.i += 1
        return t

    def fail(self, expected, tok=None):
        tok = tok or self.tok
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        exp = " or ".join(expected)
        raise DSLSyntaxError(f"expected {exp}, found {found}", tok.line, tok.column, expected)

    def expect_op(self, op) -> Token:
        if self.tok.kind == "op" and self.tok.text == op:
            return self.advance()
        self.fail([repr(op)])

    def expect_ident(self, what="identifier") -> Token:
        if self.tok.kind == "ident":
            return self.advance()
        self.fail([what])

    def at_op(self, op) -> bool:
        return self.tok.kind == "op" and self.tok.text == op


# -- construction parser -------------------------------------------------------

_KEYWORDS = {"point", "thesis", "encoding"}


def parse_construction(source: str, name: str = "") -> Construction:
    """Parse ``.geo`` text into a well-formed :class:`Construction`.

    Raises a :class:`~geoprove.errors.ParseError` subclass carrying the line
    and column of the offending token.
    """
    cur = _Cursor(tokenize(source))
    steps, kinds = [], {}
    thesis = None
    encoding = None
    thesis_tok = None

    def define(tok, kind):
        if tok.text in kinds or tok.text in _KEYWORDS:
            raise DuplicateName(tok.text, tok.line, tok.column)
        kinds[tok.text] = kind

    def reference(tok, want):
        if tok.text not in kinds:
            raise UnknownReference(tok.text, tok.line, tok.column)
        if kinds[tok.text] != want:
            raise DSLSyntaxError(
                f"{tok.text!r} is a {kinds[tok.text]}, expected a {want}",
                tok.line,
                tok.column,
                [want],
            )
        return tok.text

    def call_args(signature):
        cur.expect_op("(")
        toks = []
        for k, want in enumerate(signature):
            if k:
                cur.expect_op(",")
            toks.append(cur.expect_ident(f"{want} name"))
        cur.expect_op(")")
        return tuple(reference(t, want) for t, want in zip(toks, signature))

    while True:
        tok = cur.tok
        if tok.kind == "eof":
            break
        if tok.kind == "sep":
            cur.advance()
            continue
        if tok.kind != "ident":
            cur.fail(["statement"])
        head = cur.advance()
        if head.text == "point":
            while True:
                t = cur.expect_ident("point name")
                define(t, "point")
                steps.append(Step("point", t.text, (), t.line))
                if not cur.at_op(","):
                    break
                cur.advance()
        elif head.text == "encoding":
            t = cur.expect_ident("'direct' or 'translation'")
            if t.text not in ENCODINGS:
                cur.fail(["'direct'", "'translation'"], t)
            if encoding is not None:
                raise DSLSyntaxError("encoding declared twice", head.line, head.column)
            encoding = t.text
        elif head.text == "thesis":
            if thesis is not None:
                raise DSLSyntaxError("a construction has exactly one thesis", head.line, head.column)
            k = cur.expect_ident("predicate")
            if k.text not in PREDICATE_SIGNATURES:
                cur.fail(sorted(PREDICATE_SIGNATURES), k)
            thesis = Predicate(k.text, call_args(PREDICATE_SIGNATURES[k.text]))
            thesis_tok = head
        else:
            cur.expect_op("=")
            k = cur.expect_ident("construction")
            if k.text not in STEP_SIGNATURES:
                cur.fail(sorted(STEP_SIGNATURES), k)
            sig, produces = STEP_SIGNATURES[k.text]
            args = call_args(sig)
            define(head, produces)
            steps.append(Step(k.text, head.text, args, head.line))
        if cur.tok.kind not in ("sep", "eof"):
            cur.fail(["';'", "newline"])
    if thesis is None:
        tok = cur.tok
        raise MissingThesis("construction has no thesis", tok.line, tok.column)
    if not any(s.kind == "point" for s in steps):
        raise DSLSyntaxError(
            "construction needs at least one free point", thesis_tok.line, thesis_tok.column
        )
    return Construction(steps, thesis, encoding, name, kinds)


def load_construction(path) -> Construction:
    from pathlib import Path

    path = Path(path)
    return parse_construction(path.read_text(encoding="utf-8"), name=path.stem)


# -- polynomial expressions --------------------------------------------------


def parse_polynomial(source: str, universe: Ring) -> Polynomial:
    """Parse an expression such as ``2*x^2*y - 3*y + 1`` over ``universe``.

    Products of sums are expanded, so ``(x+1)*(x-1)`` gives ``x^2 - 1``.
    Division is allowed only by a nonzero constant.
    """
    if not len(universe):
        raise ValueError("variable universe must be nonempty")
    cur = _Cursor(tokenize(source, newline_is_separator=False))
    try:
        result = _expr(cur, universe)
    except RecursionError:
        tok = cur.tok
        raise DSLSyntaxError("expression nested too deeply", tok.line, tok.column) from None
    if cur.tok.kind != "eof":
        cur.fail(["operator", "end of input"])
    return result


def _expr(cur, R):
    total = _term(cur, R)
    while cur.tok.kind == "op" and cur.tok.text in "+-":
        op = cur.advance().text
        rhs = _term(cur, R)
        total = total + rhs if op == "+" else total - rhs
    return total


def _term(cur, R):
    value = _factor(cur, R)
    while cur.tok.kind == "op" and cur.tok.text in "*/":
        op = cur.advance()
        rhs = _factor(cur, R)
        if op.text == "*":
            value = value * rhs
        else:
            if not rhs.is_constant() or rhs.is_zero():
                raise DSLSyntaxError(
                    "division only by a nonzero constant", op.line, op.column, ["constant"]
                )
            value = value / rhs.coefficient(R.unit)
    return value


def _factor(cur, R):
    if cur.tok.kind == "op" and cur.tok.text in "+-":
        op = cur.advance().text
        inner = _factor(cur, R)
        return -inner if op == "-" else inner
    base = _atom(cur, R)
    if cur.at_op("^"):
        cur.advance()
        tok = cur.tok
        if tok.kind != "number":
            cur.fail(["integer exponent"])
        cur.advance()
        e = int(tok.text)
        if e > MAX_EXPONENT:
            raise DSLSyntaxError(f"exponent {e} too large", tok.line, tok.column)
        base = base ** e
    return base


def _atom(cur, R):
    tok = cur.tok
    if tok.kind == "number":
        cur.advance()
        return R.const(int(tok.text))
    if tok.kind == "ident":
        cur.advance()
        if tok.text not in R:
            raise UnknownVariable(tok.text, tok.line, tok.column)
        return R.var(tok.text)
    if cur.at_op("("):
        cur.advance()
        inner = _expr(cur, R)
        cur.expect_op(")")
        return inner
    cur.fail(["number", "variable", "'('"])


# -- specialization lists ------------------------------------------------------

_RATIONAL = r"\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*"
_ENTRY = re.compile(rf"\s*([A-Za-z][A-Za-z0-9_]*)\s*=\s*\({_RATIONAL},{_RATIONAL}\)\s*")


def _rational(num, den):
    den = int(den) if den else 1
    if den == 0:
        raise ZeroDivisionError
    return Fraction(int(num), den)


def parse_point_assignments(text: str) -> dict:
    """Parse ``A=(0,0),B=(0,1/2)`` into ``{"A": (0, 0), "B": (0, 1/2)}``."""
    out = {}
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _ENTRY.match(text, pos)
        if m is None:
            raise DSLSyntaxError("expected NAME=(p/q,r/s)", 1, pos + 1, ["NAME=(p/q,r/s)"])
        try:
            value = (_rational(m.group(2), m.group(3)), _rational(m.group(4), m.group(5)))
        except ZeroDivisionError:
            raise DSLSyntaxError("zero denominator", 1, pos + 1) from None
        if m.group(1) in out:
            raise DuplicateName(m.group(1), 1, pos + 1)
        out[m.group(1)] = value
        pos = m.end()
        if pos < len(text):
            if text[pos] != ",":
                raise DSLSyntaxError("expected ','", 1, pos + 1, ["','"])
            pos += 1
    return out
