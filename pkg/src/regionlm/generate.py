"""Seeded random inputs for the verification suites.

Generated corpora satisfy the preconditions under which compiled language
models and their rewrites are expected to agree: elements of one tag never
nest inside each other, and every element lies inside exactly one element
of each enclosing level.
"""

from __future__ import annotations

import random

from .index import ROOT_TAG, CorpusIndex, build_index
from .lm import LMSpec, TermProb, WeightedSum, mixture, smoothed, translation, unigram
from .regions import RegionSet

FILLER = ("zz", "yy", "xx", "ww")

# outermost first; unknown tags are nested below these in sorted order
_KNOWN_ORDER = ("collection", "video", "article", "scene", "doc", "sec", "shot", "atl", "kwd", "p")


def random_regionset(rng: random.Random, max_regions=50, max_position=100) -> RegionSet:
    """Random canonical set of at most ``max_regions`` regions within ``[1, max_position]``."""
    n = rng.randint(0, max_regions)
    rows = []
    for _ in range(n):
        start = rng.randint(1, max_position - 1)
        # bias towards short regions so containment is frequent
        if rng.random() < 0.5:
            end = min(max_position, start + rng.randint(1, 3))
        else:
            end = rng.randint(start + 1, max_position)
        rows.append((start, end, random_score(rng)))
    merged = {}
    for s, e, v in rows:
        merged.setdefault((s, e), v)
    return RegionSet((s, e, v) for (s, e), v in merged.items())


def random_score(rng: random.Random) -> float:
    kind = rng.random()
    if kind < 0.2:
        return 1.0
    if kind < 0.4:
        return rng.choice((0.5, 0.25, 0.2, 0.1, 2.0))
    return rng.uniform(1e-3, 3.0)


def order_levels(tags) -> list[str]:
    known = [t for t in _KNOWN_ORDER if t in tags]
    rest = sorted(t for t in tags if t not in _KNOWN_ORDER and t != ROOT_TAG)
    return known + rest


def random_corpus(
    rng: random.Random,
    levels,
    vocab,
    max_words=30,
    max_children=3,
    max_top=5,
    loose=0.25,
) -> str:
    """XML text with nested ``levels`` (outermost first) under ``<root>``.

    Words are drawn uniformly from ``vocab``. With probability ``loose``
    words are also placed between child elements at any level.
    """
    budget = [max_words]

    def words(k):
        out = []
        while k > 0 and budget[0] > 0:
            out.append(rng.choice(vocab))
            budget[0] -= 1
            k -= 1
        return " ".join(out)

    def element(depth):
        tag = levels[depth]
        parts = []
        if depth + 1 == len(levels):
            parts.append(words(rng.randint(1, 4)))
        else:
            for _ in range(rng.randint(1, max_children)):
                if rng.random() < loose:
                    parts.append(words(rng.randint(1, 2)))
                parts.append(element(depth + 1))
            if rng.random() < loose:
                parts.append(words(1))
        return f"<{tag}>{' '.join(p for p in parts if p)}</{tag}>"

    top = []
    if not levels:
        top.append(words(rng.randint(1, max_words)))
    else:
        for _ in range(rng.randint(1, max_top)):
            if rng.random() < loose:
                top.append(words(rng.randint(1, 2)))
            top.append(element(0))
    body = " ".join(p for p in top if p)
    if budget[0] == max_words:
        body += " " + rng.choice(vocab)
    return f"<{ROOT_TAG}>{body}</{ROOT_TAG}>"


def random_prior(rng: random.Random, index: CorpusIndex, tag: str, noise=True) -> RegionSet:
    """Random positive scores on a random subset of ``tag`` elements."""
    rows = [(s, e, random_score(rng)) for s, e in index.elements.get(tag, ()) if rng.random() < 0.8]
    if noise and rng.random() < 0.3:
        # a region that is not a target element; AND must drop it
        rows.append((1, index.word_count + 1, random_score(rng)))
    merged = {}
    for s, e, v in rows:
        merged.setdefault((s, e), v)
    return RegionSet((s, e, v) for (s, e), v in merged.items())


# -- language-model families ----------------------------------------------

QUERY_WORDS = ("db", "ir", "xml", "lm")
VIDEO_WEIGHTS = ((0.18, ROOT_TAG), (0.02, "video"), (0.4, "scene"), (0.4, "shot"))
CLIR_TRANSLATIONS = (((1.0, "broken"), (0.2, "fractured")), ((0.5, "heart"), (0.1, "ticker")))
LAMBDAS = (0.2, 0.5, 0.8)
FAMILIES = ("unigram", "smoothing", "video", "prior", "translation")


def _vocab(rng, tokens):
    # occasionally leave a query word out of the corpus entirely
    present = [t for t in tokens if rng.random() < 0.85]
    return sorted(set(present)) + list(FILLER[: rng.randint(1, len(FILLER))])


def random_lm_case(rng: random.Random, family: str):
    """Return ``(corpus_text, index, spec)`` for one trial of ``family``."""
    if family == "unigram":
        tokens = rng.sample(QUERY_WORDS, rng.randint(1, 3))
        spec = unigram("doc", tokens)
        levels = ["doc"]
    elif family == "smoothing":
        tokens = rng.sample(QUERY_WORDS, rng.randint(1, 3))
        spec = smoothed("doc", tokens, rng.choice(LAMBDAS))
        levels = ["doc"]
    elif family == "video":
        tokens = ["ni"] if rng.random() < 0.5 else rng.sample(("ni", "knight", "shrubbery"), 2)
        if rng.random() < 0.5:
            weights = VIDEO_WEIGHTS
        else:
            weights = tuple((rng.uniform(0.01, 1.0), scope) for _, scope in VIDEO_WEIGHTS)
        spec = mixture("shot", tokens, weights)
        levels = ["video", "scene", "shot"]
    elif family == "prior":
        tokens = rng.sample(QUERY_WORDS, rng.randint(1, 2))
        if rng.random() < 0.5:
            spec = unigram("doc", tokens, prior="PageRank")
        else:
            spec = smoothed("doc", tokens, rng.choice(LAMBDAS), prior="PageRank")
        levels = ["doc"]
    elif family == "translation":
        if rng.random() < 0.5:
            options = CLIR_TRANSLATIONS
        else:
            pool = ["broken", "fractured", "heart", "ticker", "cracked"]
            options = tuple(
                tuple((rng.uniform(0.05, 1.0), w) for w in rng.sample(pool, rng.randint(1, 3)))
                for _ in range(rng.randint(1, 2))
            )
        spec = translation("doc", options)
        tokens = sorted({w for opts in options for _, w in opts})
        levels = ["doc"]
    else:
        raise ValueError(f"unknown family {family!r}")

    max_top = 5 if levels == ["doc"] else 2
    text = random_corpus(rng, levels, _vocab(rng, tokens), max_top=max_top)
    index = build_index(text)
    if spec.prior is not None:
        index = index.register_stored_set(spec.prior, random_prior(rng, index, spec.target))
    return text, index, spec


def random_mixture_spec(rng: random.Random, target="doc", depth=2) -> LMSpec:
    """Arbitrary nested mixture over ``root`` and ``target`` scopes."""

    def node(d):
        if d == 0 or rng.random() < 0.4:
            return TermProb(rng.choice(QUERY_WORDS), rng.choice((ROOT_TAG, target)))
        return WeightedSum(tuple((rng.uniform(0.05, 1.0), node(d - 1)) for _ in range(rng.randint(1, 3))))

    return LMSpec(target, tuple(node(depth) for _ in range(rng.randint(1, 3))))
