"""Translation of a small NEXI subset into region queries.

Supported::

    path   := "//" NAME pred? path?
    pred   := "[" "about(" target "," words ")" "]"
    target := "." | ".//" NAME | ".//(" NAME ("|" NAME)* ")"

A step ``//E[about(., w1 w2)]`` becomes ``(<E> CONTAINING w1) CONTAINING w2``;
a descendant target ``.//(a|b)`` filters ``<E>`` by
``((<a> OR <b>) CONTAINING w1) CONTAINING w2``. Each further step ``S`` is
placed under the path so far as ``S' CONTAINED_BY prefix``. Anything else is
rejected rather than approximated.
"""

from __future__ import annotations

import re

from .errors import QuerySyntaxError, UnsupportedNexi
from .index import tokenize
from .query import ContainedBy, Containing, Element, Or, QueryExpr, Word

_NAME = re.compile(r"[A-Za-z_][\w.\-]*")


class _Cursor:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def startswith(self, s):
        return self.text.startswith(s, self.pos)

    def at_end(self):
        self.skip_ws()
        return self.pos >= len(self.text)

    def expect(self, s, what=None):
        self.skip_ws()
        if not self.startswith(s):
            raise QuerySyntaxError(f"expected {what or repr(s)}", self.pos)
        self.pos += len(s)

    def name(self):
        self.skip_ws()
        if self.startswith("*"):
            raise UnsupportedNexi("wildcard name '*'", self.pos)
        if self.startswith("@"):
            raise UnsupportedNexi("attribute step '@'", self.pos)
        m = _NAME.match(self.text, self.pos)
        if not m:
            raise QuerySyntaxError("expected an element name", self.pos)
        self.pos = m.end()
        return m.group()


def _chain(base: QueryExpr, words) -> QueryExpr:
    for w in words:
        base = Containing(base, Word(w))
    return base


def _about_words(cur: _Cursor):
    start = cur.pos
    depth = 0
    while cur.pos < len(cur.text):
        c = cur.text[cur.pos]
        if c == "(":
            depth += 1
        elif c == ")":
            if depth == 0:
                break
            depth -= 1
        cur.pos += 1
    raw = cur.text[start:cur.pos]
    if '"' in raw or "'" in raw:
        raise UnsupportedNexi("quoted phrase in about()", start)
    m = re.search(r"(?:^|\s)([+-])\S", raw)
    if m:
        raise UnsupportedNexi(f"term modifier '{m.group(1)}'", start + m.start(1))
    if "(" in raw or "//" in raw:
        raise UnsupportedNexi("nested expression in about() terms", start)
    words = tokenize(raw)
    if not words:
        raise QuerySyntaxError("about() needs at least one term", start)
    return words


def _about_target(cur: _Cursor):
    """Descendant filter expression, or ``None`` for the context node."""
    cur.expect(".", "'.' (context node) as about() target")
    if not cur.startswith("//"):
        if cur.startswith("/"):
            raise UnsupportedNexi("child axis '/' in about() target", cur.pos)
        return None
    cur.pos += 2
    cur.skip_ws()
    if cur.startswith("("):
        cur.pos += 1
        names = [cur.name()]
        while True:
            cur.skip_ws()
            if cur.startswith("|"):
                cur.pos += 1
                names.append(cur.name())
            else:
                break
        cur.expect(")")
        inner: QueryExpr = Element(names[0])
        for n in names[1:]:
            inner = Or(inner, Element(n))
    else:
        inner = Element(cur.name())
    cur.skip_ws()
    if cur.startswith("/"):
        raise UnsupportedNexi("multi-step path in about() target", cur.pos)
    return inner


def _step(cur: _Cursor) -> QueryExpr:
    cur.skip_ws()
    if not cur.startswith("//"):
        if cur.startswith("/"):
            raise UnsupportedNexi("child axis step '/'", cur.pos)
        raise QuerySyntaxError("expected '//'", cur.pos)
    cur.pos += 2
    tag = cur.name()
    cur.skip_ws()
    if not cur.startswith("["):
        return Element(tag)
    cur.pos += 1
    cur.skip_ws()
    if cur.startswith("@"):
        raise UnsupportedNexi("attribute predicate '@'", cur.pos)
    fn = _NAME.match(cur.text, cur.pos)
    if not fn or fn.group() != "about":
        what = fn.group() if fn else cur.text[cur.pos:cur.pos + 1]
        raise UnsupportedNexi(f"predicate {what!r} (only about() is supported)", cur.pos)
    cur.pos = fn.end()
    cur.expect("(")
    target = _about_target(cur)
    cur.expect(",", "',' after about() target")
    words = _about_words(cur)
    cur.expect(")")
    cur.skip_ws()
    m = _NAME.match(cur.text, cur.pos)
    if m and m.group().lower() in ("and", "or"):
        raise UnsupportedNexi(f"boolean '{m.group()}' between predicates", cur.pos)
    cur.expect("]")
    cur.skip_ws()
    if cur.startswith("["):
        raise UnsupportedNexi("multiple predicates on one step", cur.pos)
    if target is None:
        return _chain(Element(tag), words)
    return Containing(Element(tag), _chain(target, words))


def translate_nexi(query: str) -> QueryExpr:
    """Translate a NEXI path query into a region query expression."""
    cur = _Cursor(query)
    expr = _step(cur)
    while not cur.at_end():
        expr = ContainedBy(_step(cur), expr)
    return expr
