"""Equivalence-preserving rewrites of region queries, and an empirical checker.

Rules (each strictly reduces the node count, so exhaustive rewriting
terminates):

``eliminate_contained_by``
    ``<z> CONTAINED_BY X`` becomes ``X`` when every region ``X`` can produce
    is a ``<z>`` region. Exact when ``<z>`` regions do not nest.
``chain_and``
    ``X AND chain(<a>)`` becomes ``chain(X)`` when ``X`` only produces
    ``<a>`` regions, where ``chain(<a>)`` is a left-deep CONTAINING /
    CONTAINED_BY chain rooted at the unit-score element ``<a>``.
``hoist_left``
    ``(a SCALE (E1 CONTAINING t)) OR (b SCALE (E2 CONTAINING t))`` becomes
    ``((a SCALE E1) OR (b SCALE E2)) CONTAINING t``. Always exact.
``hoist_right``
    ``(a SCALE (E CONTAINING t1)) OR (b SCALE (E CONTAINING t2))`` becomes
    ``E CONTAINING ((a SCALE t1) OR (b SCALE t2))``. Always exact.
``unit_scale``
    ``1 SCALE X`` becomes ``X``.
``fuse_prior``
    ``$p AND chain(<a>)`` becomes ``chain($p)``. Exact when ``$p`` only holds
    ``<a>`` regions.

Side conditions that depend on the data rather than the query (non-nesting
targets, stored sets over target regions) are assumed, and
:func:`check_equivalent` tests them on random corpora that satisfy them.
"""

from __future__ import annotations

import math
import random
from collections import deque
from dataclasses import dataclass
from typing import Optional

from .generate import FILLER, order_levels, random_corpus, random_prior
from .index import ROOT_TAG, CorpusIndex, build_index
from .query import (
    And,
    ContainedBy,
    Containing,
    Element,
    Or,
    QueryExpr,
    Scale,
    StoredSet,
    Word,
    evaluate,
    walk,
)

_CHAIN = (Containing, ContainedBy)


def chain_base(expr):
    """Leaf reached by following left operands of containment operators."""
    while isinstance(expr, _CHAIN):
        expr = expr.lhs
    return expr


def replace_base(expr, new):
    if isinstance(expr, _CHAIN):
        return type(expr)(replace_base(expr.lhs, new), expr.rhs)
    return new


def result_tag(expr) -> Optional[str]:
    """Tag ``z`` if every region ``expr`` can produce is a ``<z>`` region."""
    if isinstance(expr, Element):
        return expr.tag
    if isinstance(expr, Scale):
        return result_tag(expr.expr)
    if isinstance(expr, _CHAIN):
        return result_tag(expr.lhs)
    if isinstance(expr, And):
        return result_tag(expr.lhs) or result_tag(expr.rhs)
    if isinstance(expr, Or):
        tag = result_tag(expr.lhs)
        return tag if tag is not None and tag == result_tag(expr.rhs) else None
    return None


# -- rules ---------------------------------------------------------------------
# Each rule maps a node to the rewrites applicable at that node.

def eliminate_contained_by(e):
    if isinstance(e, ContainedBy) and isinstance(e.lhs, Element):
        if result_tag(e.rhs) == e.lhs.tag:
            yield e.rhs


def _and_roles(e):
    if isinstance(e, And):
        yield e.lhs, e.rhs
        if e.lhs != e.rhs:
            yield e.rhs, e.lhs


def chain_and(e):
    for x, chain in _and_roles(e):
        if not isinstance(chain, _CHAIN):
            continue
        base = chain_base(chain)
        if isinstance(base, Element) and result_tag(x) == base.tag:
            yield replace_base(chain, x)


def fuse_prior(e):
    for x, chain in _and_roles(e):
        if isinstance(x, StoredSet) and isinstance(chain, _CHAIN):
            if isinstance(chain_base(chain), Element):
                yield replace_base(chain, x)


def _split_left(e):
    """``(lhs_with_weight, t)`` for ``[a SCALE] (E CONTAINING t)``."""
    if isinstance(e, Containing):
        return e.lhs, e.rhs
    if isinstance(e, Scale) and isinstance(e.expr, Containing):
        return Scale(e.factor, e.expr.lhs), e.expr.rhs
    return None


def _split_right(e):
    """``(E, rhs_with_weight)`` for ``[a SCALE] (E CONTAINING t)``."""
    if isinstance(e, Containing):
        return e.lhs, e.rhs
    if isinstance(e, Scale) and isinstance(e.expr, Containing):
        return e.expr.lhs, Scale(e.factor, e.expr.rhs)
    return None


def hoist_left(e):
    if isinstance(e, Or):
        a, b = _split_left(e.lhs), _split_left(e.rhs)
        if a and b and a[1] == b[1]:
            yield Containing(Or(a[0], b[0]), a[1])


def hoist_right(e):
    if isinstance(e, Or):
        a, b = _split_right(e.lhs), _split_right(e.rhs)
        if a and b and a[0] == b[0]:
            yield Containing(a[0], Or(a[1], b[1]))


def unit_scale(e):
    if isinstance(e, Scale) and e.factor == 1.0:
        yield e.expr


RULES = {
    "eliminate_contained_by": eliminate_contained_by,
    "chain_and": chain_and,
    "hoist_left": hoist_left,
    "hoist_right": hoist_right,
    "unit_scale": unit_scale,
    "fuse_prior": fuse_prior,
}


def one_step(expr: QueryExpr, rules=RULES.values()):
    """Every expression obtained by applying one rule at one position."""
    for rule in rules:
        yield from rule(expr)
    if isinstance(expr, Scale):
        for sub in one_step(expr.expr, rules):
            yield Scale(expr.factor, sub)
    elif isinstance(expr, (Containing, ContainedBy, And, Or)):
        cls = type(expr)
        for sub in one_step(expr.lhs, rules):
            yield cls(sub, expr.rhs)
        for sub in one_step(expr.rhs, rules):
            yield cls(expr.lhs, sub)


def rewrite_all(expr: QueryExpr, limit=20000) -> list[QueryExpr]:
    """All distinct expressions reachable from ``expr``, in breadth-first order.

    ``expr`` itself is not included; an expression no rule applies to yields
    an empty list.
    """
    seen = {expr}
    out = []
    queue = deque([expr])
    while queue and len(out) < limit:
        current = queue.popleft()
        for nxt in one_step(current):
            if nxt not in seen:
                seen.add(nxt)
                out.append(nxt)
                queue.append(nxt)
    return out


# -- empirical equivalence -------------------------------------------------------

@dataclass
class Counterexample:
    trial: int
    corpus: str
    index: CorpusIndex
    region: tuple[int, int]
    score1: Optional[float]
    score2: Optional[float]

    def describe(self):
        fmt = lambda s: "absent" if s is None else repr(s)
        return (
            f"trial {self.trial}: region {self.region} scores {fmt(self.score1)} vs "
            f"{fmt(self.score2)} on corpus {self.corpus}"
        )


@dataclass
class Verdict:
    equivalent: bool
    trials: int
    counterexample: Optional[Counterexample] = None

    def __bool__(self):
        return self.equivalent


def compare_sets(a, b, rel_tol):
    """First differing ``(extent, score_a, score_b)``, or ``None``."""
    da, db = a.as_dict(), b.as_dict()
    for ext in sorted(set(da) | set(db)):
        sa, sb = da.get(ext), db.get(ext)
        if sa is None or sb is None or not math.isclose(sa, sb, rel_tol=rel_tol, abs_tol=0.0):
            return ext, sa, sb
    return None


def _vocabulary(exprs):
    tags, words, stored = set(), set(), set()
    for e in exprs:
        for node in walk(e):
            if isinstance(node, Element):
                tags.add(node.tag)
            elif isinstance(node, Word):
                words.add(node.token)
            elif isinstance(node, StoredSet):
                stored.add(node.name)
    tags.discard(ROOT_TAG)
    return order_levels(tags), sorted(words), sorted(stored)


def random_index_for(exprs, rng, levels=None):
    """Random ``(corpus_text, index)`` exercising the names used in ``exprs``.

    Stored sets are populated over the innermost level's elements.
    """
    found_levels, words, stored = _vocabulary(exprs)
    levels = list(levels) if levels is not None else found_levels
    present = [w for w in words if rng.random() < 0.9]
    vocab = present + list(FILLER[: rng.randint(1, 2)])
    max_top = 5 if len(levels) <= 1 else 2
    text = random_corpus(rng, levels, vocab, max_top=max_top)
    index = build_index(text)
    target = levels[-1] if levels else ROOT_TAG
    for name in stored:
        index = index.register_stored_set(name, random_prior(rng, index, target, noise=False))
    return text, index


def check_equivalent(
    e1: QueryExpr,
    e2: QueryExpr,
    trials: int,
    seed=0,
    levels=None,
    rel_tol=1e-9,
) -> Verdict:
    """Evaluate both expressions on ``trials`` random corpora and compare.

    Memberships must match exactly and scores within ``rel_tol``. Returns
    the first counterexample found, if any.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    rng = random.Random(f"equivalence:{seed}")
    for trial in range(trials):
        text, index = random_index_for((e1, e2), rng, levels)
        diff = compare_sets(evaluate(e1, index), evaluate(e2, index), rel_tol)
        if diff is not None:
            ext, s1, s2 = diff
            return Verdict(False, trial + 1, Counterexample(trial, text, index, ext, s1, s2))
    return Verdict(True, trials)
