"""Worked ranking queries for the five model families.

Each entry pairs a language-model spec with its hand-written region query
and a cheaper alternative form that should produce identical results.
"""

from __future__ import annotations

from dataclasses import dataclass

from .lm import LMSpec, mixture, smoothed, translation, unigram
from .generate import CLIR_TRANSLATIONS, VIDEO_WEIGHTS


@dataclass(frozen=True)
class WorkedQuery:
    name: str
    spec: LMSpec
    original: str
    alternative: str
    levels: tuple[str, ...]


WORKED = (
    WorkedQuery(
        "unigram",
        unigram("doc", ["db", "ir"]),
        "(<doc> CONTAINING db) AND (<doc> CONTAINING ir)",
        "(<doc> CONTAINING db) CONTAINING ir",
        ("doc",),
    ),
    WorkedQuery(
        "smoothing",
        smoothed("doc", ["db", "ir"], 0.8),
        "(<doc> CONTAINED_BY ((0.2 SCALE (<root> CONTAINING db)) OR (0.8 SCALE (<doc> CONTAINING db))))"
        " AND (<doc> CONTAINED_BY ((0.2 SCALE (<root> CONTAINING ir)) OR (0.8 SCALE (<doc> CONTAINING ir))))",
        "(<doc> CONTAINED_BY (((0.2 SCALE <root>) OR (0.8 SCALE <doc>)) CONTAINING db))"
        " CONTAINED_BY (((0.2 SCALE <root>) OR (0.8 SCALE <doc>)) CONTAINING ir)",
        ("doc",),
    ),
    WorkedQuery(
        "video",
        mixture("shot", ["ni"], VIDEO_WEIGHTS),
        "<shot> CONTAINED_BY ((0.18 SCALE (<root> CONTAINING ni)) OR (0.02 SCALE (<video> CONTAINING ni))"
        " OR (0.4 SCALE (<scene> CONTAINING ni)) OR (0.4 SCALE (<shot> CONTAINING ni)))",
        "<shot> CONTAINED_BY (((0.18 SCALE <root>) OR (0.02 SCALE <video>) OR (0.4 SCALE <scene>)"
        " OR (0.4 SCALE <shot>)) CONTAINING ni)",
        ("video", "scene", "shot"),
    ),
    WorkedQuery(
        "prior",
        unigram("doc", ["google"], prior="PageRank"),
        "$PageRank AND (<doc> CONTAINING google)",
        "$PageRank CONTAINING google",
        ("doc",),
    ),
    WorkedQuery(
        "translation",
        translation("doc", CLIR_TRANSLATIONS),
        "((1.0 SCALE (<doc> CONTAINING broken)) OR (0.2 SCALE (<doc> CONTAINING fractured)))"
        " AND ((0.5 SCALE (<doc> CONTAINING heart)) OR (0.1 SCALE (<doc> CONTAINING ticker)))",
        "(<doc> CONTAINING (broken OR (0.2 SCALE fractured)))"
        " CONTAINING ((0.5 SCALE heart) OR (0.1 SCALE ticker))",
        ("doc",),
    ),
)

BY_NAME = {w.name: w for w in WORKED}
