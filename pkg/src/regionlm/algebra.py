"""The five scored-region operators.

CONTAINING and CONTAINED_BY are evaluated as plane sweeps over the operands'
start positions, with a Fenwick tree keyed on end positions accumulating the
witness scores, so a join costs ``O((|R1| + |R2|) log |R2|)``.
"""

from __future__ import annotations

import math
from bisect import bisect_left, bisect_right

from .errors import RegionError
from .regions import EMPTY, Region, RegionSet


class _Fenwick:
    """Prefix sums of (count, weight) over ranks ``0..n-1``."""

    __slots__ = ("n", "count", "weight")

    def __init__(self, n):
        self.n = n
        self.count = [0] * (n + 1)
        self.weight = [0.0] * (n + 1)

    def add(self, rank, weight):
        i = rank + 1
        while i <= self.n:
            self.count[i] += 1
            self.weight[i] += weight
            i += i & -i

    def prefix(self, k):
        """Totals over ranks ``0..k-1``."""
        c, w = 0, 0.0
        i = k
        while i > 0:
            c += self.count[i]
            w += self.weight[i]
            i -= i & -i
        return c, w


def containing(r1: RegionSet, r2: RegionSet) -> RegionSet:
    """Regions of ``r1`` containing at least one region of ``r2``.

    Each survivor is scored ``r1.score * sum(r2.score * len(r2)) / len(r1)``
    over its contained ``r2`` regions.
    """
    if not r1 or not r2:
        return EMPTY
    ends = sorted({r.end for r in r2})
    tree = _Fenwick(len(ends))
    witnesses = sorted(r2, key=lambda r: r.start, reverse=True)
    j = 0
    out = []
    for a in reversed(r1.regions):
        # insert every witness starting at or after a.start
        while j < len(witnesses) and witnesses[j].start >= a.start:
            b = witnesses[j]
            tree.add(bisect_left(ends, b.end), b.score * (b.end - b.start))
            j += 1
        count, mass = tree.prefix(bisect_right(ends, a.end))
        if count:
            out.append(Region(a.start, a.end, a.score * mass / (a.end - a.start)))
    out.reverse()
    return RegionSet._trusted(out)


def contained_by(r1: RegionSet, r2: RegionSet) -> RegionSet:
    """Regions of ``r1`` inside at least one region of ``r2``.

    Each survivor is scored ``r1.score * sum(r2.score)`` over the ``r2``
    regions containing it.
    """
    if not r1 or not r2:
        return EMPTY
    # negated ends: ranks of "end >= x" form a prefix, avoiding total - prefix
    neg_ends = sorted({-r.end for r in r2})
    tree = _Fenwick(len(neg_ends))
    witnesses = r2.regions  # ascending start
    j = 0
    out = []
    for a in r1:
        while j < len(witnesses) and witnesses[j].start <= a.start:
            b = witnesses[j]
            tree.add(bisect_left(neg_ends, -b.end), b.score)
            j += 1
        count, mass = tree.prefix(bisect_right(neg_ends, -a.end))
        if count:
            out.append(Region(a.start, a.end, a.score * mass))
    return RegionSet._trusted(out)


def scale(f: float, r: RegionSet) -> RegionSet:
    if isinstance(f, bool) or not isinstance(f, (int, float)):
        raise RegionError(f"SCALE factor must be a number, got {f!r}")
    f = float(f)
    if not (math.isfinite(f) and f > 0.0):
        raise RegionError(f"SCALE factor must be finite and positive, got {f!r}")
    return RegionSet._trusted(Region(x.start, x.end, f * x.score) for x in r)


def and_(r1: RegionSet, r2: RegionSet) -> RegionSet:
    """Extents present in both operands, scored by the product."""
    if len(r2) < len(r1):
        small, other, swapped = r2, r1, True
    else:
        small, other, swapped = r1, r2, False
    table = other.as_dict()
    out = []
    for x in small:
        y = table.get((x.start, x.end))
        if y is not None:
            s = y * x.score if swapped else x.score * y
            out.append(Region(x.start, x.end, s))
    return RegionSet._trusted(out)


def or_(r1: RegionSet, r2: RegionSet) -> RegionSet:
    """Extents present in either operand; shared extents sum their scores."""
    if not r2:
        return r1
    if not r1:
        return r2
    out = []
    a, b = r1.regions, r2.regions
    i = j = 0
    while i < len(a) and j < len(b):
        ka, kb = (a[i].start, a[i].end), (b[j].start, b[j].end)
        if ka == kb:
            out.append(Region(ka[0], ka[1], a[i].score + b[j].score))
            i += 1
            j += 1
        elif ka < kb:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return RegionSet._trusted(out)
