"""Language-model ranking specifications and their compilation to queries.

A spec ranks occurrences of a target element by

    prior(D) * prod_i node_i(D)

where each per-term node is either a term probability ``P(t | scope)``,
with the scope instance being the enclosing element of that tag, or a
positive weighted sum of nodes. Smoothing, multi-level video mixtures and
translation models are all weighted sums; the collection model is the
``root`` scope.

:func:`compile_lm` turns a spec into a region query. :func:`direct_score`
computes the same quantity by plain arithmetic on word counts and is the
independent check on the compiler.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from typing import Callable, Optional, Union

from .errors import ScopeError, SpecError
from .index import ROOT_TAG, CorpusIndex, tokenize
from .query import And, ContainedBy, Containing, Element, Or, QueryExpr, Scale, StoredSet, Word
from .regions import Region

_NAME_RE = re.compile(r"[A-Za-z_][\w.\-:]*\Z")
_STORED_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class TermProb:
    token: str
    scope: str = ROOT_TAG


@dataclass(frozen=True)
class WeightedSum:
    parts: tuple[tuple[float, "MixtureNode"], ...]

    def __post_init__(self):
        if not self.parts:
            raise SpecError("weighted sum must not be empty")
        for w, _ in self.parts:
            if not (math.isfinite(w) and w > 0):
                raise SpecError(f"weight must be positive, got {w!r}")


MixtureNode = Union[TermProb, WeightedSum]


@dataclass(frozen=True)
class LMSpec:
    target: str
    terms: tuple[MixtureNode, ...]
    prior: Optional[str] = None

    def __post_init__(self):
        if not self.terms:
            raise SpecError("at least one query term is required", "terms")


# -- convenience constructors for the common model families -----------------

def unigram(target, tokens, prior=None) -> LMSpec:
    return LMSpec(target, tuple(TermProb(t, target) for t in tokens), prior)


def smoothed(target, tokens, lam, prior=None) -> LMSpec:
    """Linear interpolation of document and collection models with weight ``lam``."""
    # rounded so that 1 - 0.8 is 0.2 rather than 0.19999999999999996
    rest = round(1.0 - lam, 12)
    terms = tuple(
        WeightedSum(((rest, TermProb(t, ROOT_TAG)), (lam, TermProb(t, target))))
        for t in tokens
    )
    return LMSpec(target, terms, prior)


def mixture(target, tokens, weighted_scopes, prior=None) -> LMSpec:
    """One weighted sum over ``(weight, scope)`` pairs per query token."""
    terms = tuple(
        WeightedSum(tuple((w, TermProb(t, scope)) for w, scope in weighted_scopes))
        for t in tokens
    )
    return LMSpec(target, terms, prior)


def translation(target, translations, prior=None) -> LMSpec:
    """Per source word, a list of ``(P(source | target_word), target_word)``."""
    terms = tuple(
        WeightedSum(tuple((w, TermProb(t, target)) for w, t in options))
        for options in translations
    )
    return LMSpec(target, terms, prior)


# -- compilation -------------------------------------------------------------

def compile_node(node: MixtureNode) -> QueryExpr:
    if isinstance(node, TermProb):
        return Containing(Element(node.scope), Word(node.token))
    expr = None
    for weight, child in node.parts:
        part = Scale(float(weight), compile_node(child))
        expr = part if expr is None else Or(expr, part)
    return expr


def compile_lm(spec: LMSpec) -> QueryExpr:
    """Rewrite a spec into a region query.

    Each term becomes ``<target> CONTAINED_BY node``; terms are joined with
    AND from the left, and a prior is ANDed in front.
    """
    target = Element(spec.target)
    body = None
    for node in spec.terms:
        part = ContainedBy(target, compile_node(node))
        body = part if body is None else And(body, part)
    if spec.prior is not None:
        body = And(StoredSet(spec.prior), body)
    return body


# -- direct arithmetic ------------------------------------------------------

Counter = Callable[[str, int, int], int]


def scope_instance(index: CorpusIndex, tag: str, region) -> tuple[int, int]:
    """The unique ``tag`` element containing (or equal to) ``region``."""
    hits = [
        (s, e) for s, e in index.elements.get(tag, ()) if s <= region[0] and e >= region[1]
    ]
    if len(hits) != 1:
        what = "no" if not hits else f"{len(hits)}"
        raise ScopeError(f"region ({region[0]}, {region[1]}) has {what} enclosing <{tag}>")
    return hits[0]


def node_probability(node, index, region, counter: Counter) -> float:
    if isinstance(node, TermProb):
        s, e = scope_instance(index, node.scope, region)
        return counter(node.token, s, e) / (e - s)
    return sum(w * node_probability(child, index, region, counter) for w, child in node.parts)


def direct_score(spec: LMSpec, index: CorpusIndex, region, counter: Counter | None = None) -> float:
    """Score ``region`` (an occurrence of the target element) arithmetically.

    ``counter(token, start, end)`` counts occurrences in ``[start, end)``;
    it defaults to the index postings.
    """
    start, end = region[0], region[1]
    if (start, end) not in index.elements.get(spec.target, ()):
        raise ScopeError(f"({start}, {end}) is not a <{spec.target}> element")
    if counter is None:
        counter = index.count
    score = 1.0
    if spec.prior is not None:
        score = index.stored_set(spec.prior).score(start, end, 0.0)
    for node in spec.terms:
        score *= node_probability(node, index, (start, end), counter)
    return score


def direct_ranking(spec: LMSpec, index: CorpusIndex, counter: Counter | None = None) -> dict:
    """``{(start, end): score}`` for every target element, zeros included."""
    return {
        ext: direct_score(spec, index, Region(*ext), counter)
        for ext in index.elements.get(spec.target, ())
    }


# -- JSON interchange --------------------------------------------------------

def _node_from_json(obj, path):
    if not isinstance(obj, dict):
        raise SpecError("expected an object", path)
    if "term" in obj:
        extra = set(obj) - {"term", "scope"}
        if extra:
            raise SpecError(f"unexpected keys {sorted(extra)}", path)
        token = obj["term"]
        if not isinstance(token, str) or tokenize(token) != [token.lower()]:
            raise SpecError(f"term must be a single word, got {token!r}", f"{path}.term")
        scope = obj.get("scope", ROOT_TAG)
        if not isinstance(scope, str) or not _NAME_RE.match(scope):
            raise SpecError(f"invalid scope {scope!r}", f"{path}.scope")
        return TermProb(token.lower(), scope)
    if "sum" in obj:
        extra = set(obj) - {"sum"}
        if extra:
            raise SpecError(f"unexpected keys {sorted(extra)}", path)
        items = obj["sum"]
        if not isinstance(items, list) or not items:
            raise SpecError("must be a non-empty list", f"{path}.sum")
        parts = []
        for i, item in enumerate(items):
            ipath = f"{path}.sum[{i}]"
            if not isinstance(item, dict) or set(item) != {"weight", "node"}:
                raise SpecError("expected {\"weight\": number, \"node\": node}", ipath)
            w = item["weight"]
            if isinstance(w, bool) or not isinstance(w, (int, float)):
                raise SpecError(f"must be a number, got {w!r}", f"{ipath}.weight")
            if not (math.isfinite(w) and w > 0):
                raise SpecError(f"must be positive, got {w!r}", f"{ipath}.weight")
            parts.append((float(w), _node_from_json(item["node"], f"{ipath}.node")))
        return WeightedSum(tuple(parts))
    raise SpecError("node needs a \"term\" or a \"sum\" key", path)


def spec_from_json(obj) -> LMSpec:
    if isinstance(obj, (str, bytes)):
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError as exc:
            raise SpecError(f"invalid JSON: {exc}") from None
    if not isinstance(obj, dict):
        raise SpecError("spec must be a JSON object")
    extra = set(obj) - {"target", "prior", "terms"}
    if extra:
        raise SpecError(f"unexpected keys {sorted(extra)}")
    target = obj.get("target")
    if not isinstance(target, str) or not _NAME_RE.match(target):
        raise SpecError(f"invalid element name {target!r}", "target")
    prior = obj.get("prior")
    if prior is not None and (not isinstance(prior, str) or not _STORED_RE.match(prior)):
        raise SpecError(f"invalid stored set name {prior!r}", "prior")
    terms = obj.get("terms")
    if not isinstance(terms, list) or not terms:
        raise SpecError("must be a non-empty list", "terms")
    nodes = tuple(_node_from_json(t, f"terms[{i}]") for i, t in enumerate(terms))
    return LMSpec(target, nodes, prior)


def _node_to_json(node):
    if isinstance(node, TermProb):
        return {"term": node.token, "scope": node.scope}
    return {"sum": [{"weight": w, "node": _node_to_json(c)} for w, c in node.parts]}


def spec_to_json(spec: LMSpec) -> dict:
    return {
        "target": spec.target,
        "prior": spec.prior,
        "terms": [_node_to_json(n) for n in spec.terms],
    }


def load_spec(path) -> LMSpec:
    with open(path, encoding="utf-8") as fh:
        return spec_from_json(fh.read())
