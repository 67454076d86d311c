"""Scored regions and canonical region sets.

A region is a contiguous extent of word positions ``[start, end)`` carrying a
positive score. A :class:`RegionSet` holds at most one region per
``(start, end)`` pair and iterates in ascending ``(start, end)`` order.
"""

from __future__ import annotations

import math
from typing import Iterable, Iterator, NamedTuple

from .errors import RegionError


class Region(NamedTuple):
    start: int
    end: int
    score: float = 1.0

    @property
    def extent(self):
        return (self.start, self.end)

    @property
    def length(self):
        return self.end - self.start

    def contains(self, other):
        return self.start <= other.start and self.end >= other.end


def check_region(region) -> Region:
    """Validate a region-like triple and return it as a :class:`Region`."""
    try:
        start, end, score = region
    except (TypeError, ValueError):
        raise RegionError(f"not a (start, end, score) triple: {region!r}") from None
    if isinstance(start, bool) or isinstance(end, bool):
        raise RegionError(f"region bounds must be integers: {region!r}")
    if not (isinstance(start, int) and isinstance(end, int)):
        if float(start).is_integer() and float(end).is_integer():
            start, end = int(start), int(end)
        else:
            raise RegionError(f"region bounds must be integers: {region!r}")
    if not 1 <= start < end:
        raise RegionError(f"region ({start}, {end}) violates 1 <= start < end")
    score = float(score)
    if not (math.isfinite(score) and score > 0.0):
        raise RegionError(f"region ({start}, {end}) has non-positive score {score!r}")
    return Region(start, end, score)


class RegionSet:
    """An immutable canonical set of scored regions.

    Construction validates every region and merges duplicates on
    ``(start, end)`` by summing their scores.
    """

    __slots__ = ("_regions", "_lookup")

    def __init__(self, regions: Iterable = ()):
        merged: dict[tuple[int, int], float] = {}
        for raw in regions:
            r = check_region(raw)
            key = (r.start, r.end)
            merged[key] = merged.get(key, 0.0) + r.score
        self._regions = tuple(Region(s, e, v) for (s, e), v in sorted(merged.items()))
        self._lookup = None

    @classmethod
    def _trusted(cls, regions) -> "RegionSet":
        # Caller guarantees validity, uniqueness and sorted order.
        obj = cls.__new__(cls)
        obj._regions = tuple(regions)
        obj._lookup = None
        return obj

    @property
    def regions(self) -> tuple[Region, ...]:
        return self._regions

    def __iter__(self) -> Iterator[Region]:
        return iter(self._regions)

    def __len__(self):
        return len(self._regions)

    def __bool__(self):
        return bool(self._regions)

    def _table(self):
        if self._lookup is None:
            self._lookup = {(r.start, r.end): r.score for r in self._regions}
        return self._lookup

    def __contains__(self, extent):
        return tuple(extent[:2]) in self._table()

    def score(self, start, end, default=None):
        return self._table().get((start, end), default)

    def extents(self):
        return [(r.start, r.end) for r in self._regions]

    def as_dict(self):
        return dict(self._table())

    def __eq__(self, other):
        if not isinstance(other, RegionSet):
            return NotImplemented
        return self._regions == other._regions

    def __hash__(self):
        return hash(self._regions)

    def __repr__(self):
        inner = ", ".join(f"({r.start},{r.end},{r.score!r})" for r in self._regions[:8])
        more = ", ..." if len(self._regions) > 8 else ""
        return f"RegionSet({{{inner}{more}}})"

    def isclose(self, other: "RegionSet", rel_tol=1e-12) -> bool:
        """Same extents, and scores equal within ``rel_tol`` relative error."""
        if len(self) != len(other):
            return False
        for a, b in zip(self._regions, other._regions):
            if (a.start, a.end) != (b.start, b.end):
                return False
            if not math.isclose(a.score, b.score, rel_tol=rel_tol, abs_tol=0.0):
                return False
        return True

    def to_tsv(self) -> str:
        return "".join(f"{r.start}\t{r.end}\t{r.score!r}\n" for r in self._regions)

    @classmethod
    def from_tsv(cls, text: str) -> "RegionSet":
        rows = []
        for lineno, line in enumerate(text.splitlines(), 1):
            if not line.strip() or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 3:
                raise RegionError(f"line {lineno}: expected start<TAB>end<TAB>score")
            try:
                rows.append((int(parts[0]), int(parts[1]), float(parts[2])))
            except ValueError:
                raise RegionError(f"line {lineno}: malformed number in {line!r}") from None
        return cls(rows)


EMPTY = RegionSet._trusted(())


def canonicalize(raw: Iterable) -> RegionSet:
    """Merge duplicate extents by score sum and sort; invalid regions raise."""
    return RegionSet(raw)
