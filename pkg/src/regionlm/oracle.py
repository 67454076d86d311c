"""Deliberately naive reference implementations, used only for testing.

Nothing here imports the engine's operators or tokenizer. Each operator is a
literal transcription of its SQL definition: a nested loop over the cross
product, a WHERE filter, then an explicit GROUP BY.
"""

from __future__ import annotations

import html
import math

from .errors import RegionError
from .regions import RegionSet


def _rows(rs):
    return [(r.start, r.end, r.score) for r in rs]


def naive_containing(r1, r2):
    # SELECT R1.start, R1.end, R1.score * SUM((R2.score * (R2.end - R2.start))
    #        / (R1.end - R1.start))
    # FROM R1, R2 WHERE R1.start <= R2.start AND R1.end >= R2.end
    # GROUP BY R1.start, R1.end, R1.score
    groups = {}
    for s1, e1, v1 in _rows(r1):
        for s2, e2, v2 in _rows(r2):
            if s1 <= s2 and e1 >= e2:
                groups.setdefault((s1, e1, v1), []).append((v2 * (e2 - s2)) / (e1 - s1))
    return RegionSet((s, e, v * sum(terms)) for (s, e, v), terms in groups.items())


def naive_contained_by(r1, r2):
    # SELECT R1.start, R1.end, R1.score * SUM(R2.score)
    # FROM R1, R2 WHERE R1.start >= R2.start AND R1.end <= R2.end
    # GROUP BY R1.start, R1.end, R1.score
    groups = {}
    for s1, e1, v1 in _rows(r1):
        for s2, e2, v2 in _rows(r2):
            if s1 >= s2 and e1 <= e2:
                groups.setdefault((s1, e1, v1), []).append(v2)
    return RegionSet((s, e, v * sum(terms)) for (s, e, v), terms in groups.items())


def naive_scale(f, r):
    if isinstance(f, bool) or not isinstance(f, (int, float)) or not math.isfinite(f) or f <= 0:
        raise RegionError(f"SCALE factor must be finite and positive, got {f!r}")
    return RegionSet((s, e, f * v) for s, e, v in _rows(r))


def naive_and(r1, r2):
    # SELECT R1.start, R1.end, R1.score * R2.score FROM R1, R2
    # WHERE R1.start = R2.start AND R1.end = R2.end
    out = []
    for s1, e1, v1 in _rows(r1):
        for s2, e2, v2 in _rows(r2):
            if s1 == s2 and e1 == e2:
                out.append((s1, e1, v1 * v2))
    return RegionSet(out)


def naive_or(r1, r2):
    # SELECT R.start, R.end, SUM(R.score)
    # FROM (SELECT * FROM R1 UNION ALL SELECT * FROM R2) AS R
    # GROUP BY R.start, R.end
    union_all = _rows(r1) + _rows(r2)
    groups = {}
    for s, e, v in union_all:
        groups.setdefault((s, e), []).append(v)
    return RegionSet((s, e, sum(vs)) for (s, e), vs in groups.items())


NAIVE_OPS = {
    "CONTAINING": naive_containing,
    "CONTAINED_BY": naive_contained_by,
    "SCALE": lambda r, f: naive_scale(f, r),
    "AND": naive_and,
    "OR": naive_or,
}


def naive_op(op: str, r1: RegionSet, other) -> RegionSet:
    """Apply operator ``op`` naively; for SCALE, ``other`` is the factor."""
    try:
        fn = NAIVE_OPS[op.upper()]
    except KeyError:
        raise ValueError(f"unknown operator {op!r}") from None
    return fn(r1, other)


# -- raw-text word counting --------------------------------------------------

def naive_words(corpus_text: str) -> list[str]:
    """Word sequence of an XML text, recomputed character by character.

    Start and end tags separate words; comments and processing instructions
    do not. Character entities are decoded, CDATA is taken verbatim, then
    the text is lowercased and split wherever a character is not
    alphanumeric.
    """
    if isinstance(corpus_text, bytes):
        corpus_text = corpus_text.decode("utf-8")
    runs = [[]]  # text between tags, as lists of decoded fragments
    chunk = []
    i = 0
    while i < len(corpus_text):
        c = corpus_text[i]
        if c != "<":
            chunk.append(c)
            i += 1
            continue
        runs[-1].append(html.unescape("".join(chunk)))
        chunk = []
        if corpus_text.startswith("<![CDATA[", i):
            j = corpus_text.index("]]>", i)
            runs[-1].append(corpus_text[i + 9:j])
            i = j + 3
        elif corpus_text.startswith("<!--", i):
            i = corpus_text.index("-->", i) + 3
        elif corpus_text.startswith("<?", i):
            i = corpus_text.index("?>", i) + 2
        elif corpus_text.startswith("<!", i):
            i = corpus_text.index(">", i) + 1
        else:
            runs.append([])
            i = corpus_text.index(">", i) + 1
    runs[-1].append(html.unescape("".join(chunk)))

    words = []
    for run in runs:
        current = []
        for c in "".join(run).lower():
            if c.isalnum():
                current.append(c)
            elif current:
                words.append("".join(current))
                current = []
        if current:
            words.append("".join(current))
    return words


def naive_count(corpus_text: str, token: str, interval=None) -> int:
    """Occurrences of ``token`` at word positions in ``[start, end)``."""
    words = naive_words(corpus_text)
    start, end = interval if interval is not None else (1, len(words) + 1)
    count = 0
    for position, w in enumerate(words, 1):
        if start <= position < end and w == token:
            count += 1
    return count


class NaiveCounter:
    """Caches the word sequence of one corpus text for repeated counting."""

    def __init__(self, corpus_text):
        self.words = naive_words(corpus_text)

    def __call__(self, token, start, end):
        count = 0
        for position in range(start, end):
            if self.words[position - 1] == token:
                count += 1
        return count
