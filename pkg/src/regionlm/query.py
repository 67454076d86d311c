"""Region query language: AST, parser, printer and evaluator.

Grammar (operator keywords are case-insensitive)::

    expr  := or
    or    := and ("OR" and)*
    and   := cont ("AND" cont)*
    cont  := unary (("CONTAINING" | "CONTAINED_BY") unary)*
    unary := NUMBER "SCALE" unary | atom
    atom  := WORD | "<" NAME ">" | "$" NAME | "(" expr ")"

All binary operators are left-associative.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Union

from . import algebra
from .errors import QuerySyntaxError
from .index import CorpusIndex
from .regions import Region, RegionSet


@dataclass(frozen=True)
class Word:
    token: str


@dataclass(frozen=True)
class Element:
    tag: str


@dataclass(frozen=True)
class StoredSet:
    name: str


@dataclass(frozen=True)
class Scale:
    factor: float
    expr: "QueryExpr"

    def __post_init__(self):
        if not (math.isfinite(self.factor) and self.factor > 0):
            raise ValueError(f"SCALE factor must be finite and positive, got {self.factor!r}")


@dataclass(frozen=True)
class Containing:
    lhs: "QueryExpr"
    rhs: "QueryExpr"


@dataclass(frozen=True)
class ContainedBy:
    lhs: "QueryExpr"
    rhs: "QueryExpr"


@dataclass(frozen=True)
class And:
    lhs: "QueryExpr"
    rhs: "QueryExpr"


@dataclass(frozen=True)
class Or:
    lhs: "QueryExpr"
    rhs: "QueryExpr"


QueryExpr = Union[Word, Element, StoredSet, Scale, Containing, ContainedBy, And, Or]

BINARY = (Containing, ContainedBy, And, Or)
LEAVES = (Word, Element, StoredSet)
KEYWORDS = {
    Containing: "CONTAINING",
    ContainedBy: "CONTAINED_BY",
    And: "AND",
    Or: "OR",
}


# -- lexer -----------------------------------------------------------------

_LEX = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<elem><\s*(?P<tag>[A-Za-z_][\w.\-:]*)\s*>)
  | (?P<stored>\$(?P<name>[A-Za-z_][A-Za-z0-9_]*))
  | (?P<lparen>\()
  | (?P<rparen>\))
  | (?P<bare>[^\s()<>$]+)
    """,
    re.VERBOSE,
)
_NUMBER = re.compile(r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?\Z")
_WORD = re.compile(r"[^\W_]+\Z")
_OPS = {"CONTAINING", "CONTAINED_BY", "AND", "OR", "SCALE"}


@dataclass
class _Tok:
    kind: str  # elem, stored, lparen, rparen, op, number, word, end
    value: str
    pos: int


def _lex(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _LEX.match(text, pos)
        if m is None:
            raise QuerySyntaxError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        if kind in ("tag", "name"):
            kind = "elem" if m.group("elem") else "stored"
        if kind == "elem":
            toks.append(_Tok("elem", m.group("tag"), pos))
        elif kind == "stored":
            toks.append(_Tok("stored", m.group("name"), pos))
        elif kind in ("lparen", "rparen"):
            toks.append(_Tok(kind, m.group(), pos))
        elif kind == "bare":
            raw = m.group()
            if raw.upper() in _OPS:
                toks.append(_Tok("op", raw.upper(), pos))
            elif _NUMBER.match(raw):
                toks.append(_Tok("number", raw, pos))
            elif _WORD.match(raw):
                toks.append(_Tok("word", raw.lower(), pos))
            else:
                raise QuerySyntaxError(f"invalid word {raw!r}", pos)
        pos = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text):
        self.toks = _lex(text)
        self.i = 0

    def peek(self, offset=0):
        return self.toks[min(self.i + offset, len(self.toks) - 1)]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def at_op(self, *names):
        tok = self.peek()
        return tok.kind == "op" and tok.value in names

    def parse(self):
        expr = self.parse_or()
        tok = self.peek()
        if tok.kind != "end":
            raise QuerySyntaxError(f"unexpected {tok.value!r}", tok.pos)
        return expr

    def parse_or(self):
        lhs = self.parse_and()
        while self.at_op("OR"):
            self.take()
            lhs = Or(lhs, self.parse_and())
        return lhs

    def parse_and(self):
        lhs = self.parse_cont()
        while self.at_op("AND"):
            self.take()
            lhs = And(lhs, self.parse_cont())
        return lhs

    def parse_cont(self):
        lhs = self.parse_unary()
        while self.at_op("CONTAINING", "CONTAINED_BY"):
            op = self.take().value
            rhs = self.parse_unary()
            lhs = Containing(lhs, rhs) if op == "CONTAINING" else ContainedBy(lhs, rhs)
        return lhs

    def parse_unary(self):
        tok = self.peek()
        if tok.kind == "number":
            nxt = self.peek(1)
            if nxt.kind == "op" and nxt.value == "SCALE":
                self.take()
                self.take()
                factor = float(tok.value)
                if not (math.isfinite(factor) and factor > 0):
                    raise QuerySyntaxError(f"SCALE factor must be positive, got {tok.value}", tok.pos)
                return Scale(factor, self.parse_unary())
            if _WORD.match(tok.value):
                self.take()
                return Word(tok.value)
            raise QuerySyntaxError("expected SCALE after number", nxt.pos)
        return self.parse_atom()

    def parse_atom(self):
        tok = self.take()
        if tok.kind == "word":
            return Word(tok.value)
        if tok.kind == "elem":
            return Element(tok.value)
        if tok.kind == "stored":
            return StoredSet(tok.value)
        if tok.kind == "lparen":
            expr = self.parse_or()
            close = self.take()
            if close.kind != "rparen":
                raise QuerySyntaxError("expected ')'", close.pos)
            return expr
        if tok.kind == "end":
            raise QuerySyntaxError("unexpected end of query", tok.pos)
        raise QuerySyntaxError(f"unexpected {tok.value!r}", tok.pos)


def parse_query(text: str) -> QueryExpr:
    return _Parser(text).parse()


# -- printer ---------------------------------------------------------------

def _fmt_number(f: float) -> str:
    return repr(float(f))


def format_query(expr: QueryExpr) -> str:
    """Print ``expr`` with every compound operand parenthesized.

    The output reparses to an identical AST.
    """

    def operand(e):
        s = format_query(e)
        return s if isinstance(e, LEAVES) else f"({s})"

    if isinstance(expr, Word):
        return expr.token
    if isinstance(expr, Element):
        return f"<{expr.tag}>"
    if isinstance(expr, StoredSet):
        return f"${expr.name}"
    if isinstance(expr, Scale):
        return f"{_fmt_number(expr.factor)} SCALE {operand(expr.expr)}"
    if isinstance(expr, BINARY):
        return f"{operand(expr.lhs)} {KEYWORDS[type(expr)]} {operand(expr.rhs)}"
    raise TypeError(f"not a query expression: {expr!r}")


def walk(expr: QueryExpr):
    """Yield every node of ``expr`` in pre-order."""
    stack = [expr]
    while stack:
        node = stack.pop()
        yield node
        if isinstance(node, Scale):
            stack.append(node.expr)
        elif isinstance(node, BINARY):
            stack.append(node.rhs)
            stack.append(node.lhs)


# -- evaluation ------------------------------------------------------------

_OPERATORS = {
    Containing: algebra.containing,
    ContainedBy: algebra.contained_by,
    And: algebra.and_,
    Or: algebra.or_,
}


def evaluate(expr: QueryExpr, index: CorpusIndex) -> RegionSet:
    """Evaluate ``expr`` against ``index``; shared subexpressions run once."""
    memo: dict = {}

    def ev(e):
        hit = memo.get(e)
        if hit is not None:
            return hit
        if isinstance(e, Word):
            out = index.word_regions(e.token)
        elif isinstance(e, Element):
            out = index.element_regions(e.tag)
        elif isinstance(e, StoredSet):
            out = index.stored_set(e.name)
        elif isinstance(e, Scale):
            out = algebra.scale(e.factor, ev(e.expr))
        elif isinstance(e, BINARY):
            out = _OPERATORS[type(e)](ev(e.lhs), ev(e.rhs))
        else:
            raise TypeError(f"not a query expression: {e!r}")
        memo[e] = out
        return out

    return ev(expr)


def rank(regions: RegionSet, k: int) -> list[Region]:
    """Top ``k`` regions by descending score, then ascending start and end."""
    if k < 0:
        raise ValueError("k must be non-negative")
    ordered = sorted(regions, key=lambda r: (-r.score, r.start, r.end))
    return ordered[:k]


def format_ranked(ranked: list[Region]) -> str:
    return "".join(
        f"{i}\t{r.start}\t{r.end}\t{r.score:.9g}\n" for i, r in enumerate(ranked, 1)
    )
