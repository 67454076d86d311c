"""Positional index over an XML-tagged corpus.

Words receive consecutive positions ``1..n`` in document order; tags consume
no positions. Every non-empty element becomes a ``(start, end)`` region
where ``end`` is the position following its last word. The document root is
also registered under the reserved tag ``root``.
"""

from __future__ import annotations

import re
import xml.etree.ElementTree as ET
from bisect import bisect_left
from dataclasses import dataclass, field, replace
from pathlib import Path

from .errors import CorpusError, IndexFormatError, RegionError, UnknownStoredSet
from .regions import Region, RegionSet

ROOT_TAG = "root"
FORMAT_VERSION = 1

_TOKEN_RE = re.compile(r"[^\W_]+")
_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def tokenize(text: str) -> list[str]:
    """Lowercase, then split on maximal runs of non-alphanumeric characters."""
    return _TOKEN_RE.findall(text.lower())


@dataclass(frozen=True, eq=False)
class CorpusIndex:
    word_count: int
    postings: dict[str, tuple[int, ...]]
    elements: dict[str, tuple[tuple[int, int], ...]]
    stored_sets: dict[str, RegionSet] = field(default_factory=dict)

    def __eq__(self, other):
        if not isinstance(other, CorpusIndex):
            return NotImplemented
        return (
            self.word_count == other.word_count
            and self.postings == other.postings
            and self.elements == other.elements
            and self.stored_sets == other.stored_sets
        )

    __hash__ = None

    @property
    def root(self) -> Region:
        return Region(1, self.word_count + 1, 1.0)

    def word_regions(self, token: str) -> RegionSet:
        positions = self.postings.get(token, ())
        return RegionSet._trusted(Region(p, p + 1, 1.0) for p in positions)

    def element_regions(self, tag: str) -> RegionSet:
        extents = self.elements.get(tag, ())
        return RegionSet._trusted(Region(s, e, 1.0) for s, e in extents)

    def stored_set(self, name: str) -> RegionSet:
        try:
            return self.stored_sets[name]
        except KeyError:
            raise UnknownStoredSet(name) from None

    def register_stored_set(self, name: str, regions) -> "CorpusIndex":
        """Return a copy of the index with ``$name`` bound to ``regions``."""
        if not isinstance(name, str) or not _NAME_RE.match(name):
            raise RegionError(f"invalid stored set name {name!r}")
        rs = regions if isinstance(regions, RegionSet) else RegionSet(regions)
        limit = self.word_count + 1
        for r in rs:
            if r.end > limit:
                raise RegionError(
                    f"stored set ${name}: region ({r.start}, {r.end}) exceeds corpus bound {limit}"
                )
        stored = dict(self.stored_sets)
        stored[name] = rs
        return replace(self, stored_sets=stored)

    def count(self, token: str, start: int, end: int) -> int:
        """Occurrences of ``token`` at positions in ``[start, end)``."""
        positions = self.postings.get(token, ())
        return bisect_left(positions, end) - bisect_left(positions, start)


def word_regions(index: CorpusIndex, token: str) -> RegionSet:
    return index.word_regions(token)


def element_regions(index: CorpusIndex, tag: str) -> RegionSet:
    return index.element_regions(tag)


def register_stored_set(index: CorpusIndex, name: str, regions) -> CorpusIndex:
    return index.register_stored_set(name, regions)


class _Builder:
    """``XMLParser`` target assigning word positions as text streams past."""

    def __init__(self):
        self.position = 1
        self.postings: dict[str, list[int]] = {}
        self.elements: dict[str, set[tuple[int, int]]] = {}
        self.stack: list[tuple[str, int]] = []
        self.buffer: list[str] = []

    def _flush(self):
        if not self.buffer:
            return
        text = "".join(self.buffer)
        self.buffer.clear()
        for tok in tokenize(text):
            self.postings.setdefault(tok, []).append(self.position)
            self.position += 1

    def start(self, tag, attrib):
        # element boundaries always separate words
        self._flush()
        tag = tag.rsplit("}", 1)[-1]
        self.stack.append((tag, self.position))

    def end(self, tag):
        self._flush()
        name, start = self.stack.pop()
        if self.position > start:
            self.elements.setdefault(name, set()).add((start, self.position))

    def data(self, text):
        self.buffer.append(text)

    def close(self):
        self._flush()


def build_index(corpus: str | bytes) -> CorpusIndex:
    """Index a well-formed XML document with a single root element."""
    builder = _Builder()
    parser = ET.XMLParser(target=builder)
    try:
        parser.feed(corpus)
        parser.close()
    except ET.ParseError as exc:
        line, column = getattr(exc, "position", (None, None))
        msg = str(exc).split(": line")[0]
        raise CorpusError(f"malformed XML: {msg}", line, column) from None
    n = builder.position - 1
    if n == 0:
        raise CorpusError("corpus contains no words")
    elements = {tag: tuple(sorted(ext)) for tag, ext in builder.elements.items()}
    # the single root covers every word, since text outside it is not XML
    elements[ROOT_TAG] = ((1, n + 1),)
    postings = {tok: tuple(ps) for tok, ps in builder.postings.items()}
    return CorpusIndex(n, postings, elements)


def build_index_from_file(path) -> CorpusIndex:
    with open(path, "rb") as fh:
        return build_index(fh.read())


# -- persistence -----------------------------------------------------------

def save_index(index: CorpusIndex, directory) -> None:
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    (d / "meta.tsv").write_text(
        f"version\t{FORMAT_VERSION}\nword_count\t{index.word_count}\n", encoding="utf-8"
    )
    with open(d / "postings.tsv", "w", encoding="utf-8") as fh:
        for tok in sorted(index.postings):
            fh.write(f"{tok}\t{' '.join(map(str, index.postings[tok]))}\n")
    with open(d / "elements.tsv", "w", encoding="utf-8") as fh:
        for tag in sorted(index.elements):
            for s, e in index.elements[tag]:
                fh.write(f"{tag}\t{s}\t{e}\n")
    stored = d / "stored"
    if stored.is_dir():
        for old in stored.glob("*.tsv"):
            old.unlink()
    if index.stored_sets:
        stored.mkdir(exist_ok=True)
        for name, rs in index.stored_sets.items():
            (stored / f"{name}.tsv").write_text(rs.to_tsv(), encoding="utf-8")


def _read(path: Path) -> str:
    try:
        return path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise IndexFormatError(f"missing index file {path}") from None
    except UnicodeDecodeError:
        raise IndexFormatError(f"{path} is not valid UTF-8") from None


def load_index(directory) -> CorpusIndex:
    d = Path(directory)
    if not d.is_dir():
        raise IndexFormatError(f"{d} is not a directory")

    meta = {}
    for line in _read(d / "meta.tsv").splitlines():
        if line:
            key, _, value = line.partition("\t")
            meta[key] = value
    if meta.get("version") != str(FORMAT_VERSION):
        raise IndexFormatError(
            f"unsupported index version {meta.get('version')!r} (expected {FORMAT_VERSION})"
        )
    try:
        n = int(meta["word_count"])
    except (KeyError, ValueError):
        raise IndexFormatError("meta.tsv: missing or malformed word_count") from None

    postings = {}
    seen = 0
    for lineno, line in enumerate(_read(d / "postings.tsv").splitlines(), 1):
        tok, sep, rest = line.partition("\t")
        try:
            positions = tuple(int(p) for p in rest.split())
        except ValueError:
            positions = ()
        if not sep or not tok or not positions or list(positions) != sorted(set(positions)):
            raise IndexFormatError(f"postings.tsv line {lineno}: corrupt entry")
        if positions[0] < 1 or positions[-1] > n:
            raise IndexFormatError(f"postings.tsv line {lineno}: position out of range")
        postings[tok] = positions
        seen += len(positions)
    if seen != n:
        raise IndexFormatError(f"postings cover {seen} positions, word_count is {n}")

    elements: dict[str, list[tuple[int, int]]] = {}
    for lineno, line in enumerate(_read(d / "elements.tsv").splitlines(), 1):
        parts = line.split("\t")
        try:
            tag, s, e = parts[0], int(parts[1]), int(parts[2])
        except (IndexError, ValueError):
            raise IndexFormatError(f"elements.tsv line {lineno}: corrupt entry") from None
        if len(parts) != 3 or not (1 <= s < e <= n + 1):
            raise IndexFormatError(f"elements.tsv line {lineno}: corrupt entry")
        elements.setdefault(tag, []).append((s, e))

    index = CorpusIndex(n, postings, {t: tuple(sorted(v)) for t, v in elements.items()})
    stored = d / "stored"
    if stored.is_dir():
        for path in sorted(stored.glob("*.tsv")):
            try:
                rs = RegionSet.from_tsv(_read(path))
                index = index.register_stored_set(path.stem, rs)
            except RegionError as exc:
                raise IndexFormatError(f"{path}: {exc}") from None
    return index


def read_stored_set(path) -> RegionSet:
    """Read a ``start<TAB>end<TAB>score`` import file."""
    with open(path, encoding="utf-8") as fh:
        return RegionSet.from_tsv(fh.read())

