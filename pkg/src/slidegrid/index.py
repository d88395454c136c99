"""In-memory corpus index answering exact top-k similar-layout queries.

At corpus scale (hundreds of slides) an exhaustive scan of unit-vector dot
products is microseconds, so no approximate structure is used; ranking is a
deterministic total order (score descending, id ascending on ties). Indexes
are immutable snapshots: upsert builds a new one, readers never block.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .descriptor import DEFAULT_DESCRIPTOR_G, EmptyLayoutError, FeatureVector, embed
from .heatmap import EmptyCorpusError
from .layout import SlideLayout

logger = logging.getLogger(__name__)

DEFAULT_K = 8


class EmptyQueryError(ValueError):
    """A query draft must contain at least one element."""


class DuplicateIdError(ValueError):
    """Two corpus layouts share an id."""

    def __init__(self, layout_id: str):
        super().__init__(f"duplicate layout id {layout_id!r}")
        self.layout_id = layout_id


@dataclass(frozen=True, eq=False)
class IndexEntry:
    """One indexed layout: id, descriptor, and the layout snapshot."""

    id: str
    vector: FeatureVector
    layout: SlideLayout | None


@dataclass(frozen=True, eq=False)
class CorpusIndex:
    """Immutable snapshot of embedded corpus layouts."""

    entries: tuple[IndexEntry, ...]
    g: int
    revision: int
    skipped: int
    matrix: np.ndarray  # (len(entries), 3 * g * g) stacked unit vectors

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True, eq=False)
class RetrievedSlide:
    """One ranked hit."""

    id: str
    score: float
    layout: SlideLayout | None
    image_ref: str | None


@dataclass(frozen=True, eq=False)
class RetrievalResult:
    """Top-k hits (score desc, id asc on ties), the query, and the revision."""

    results: tuple[RetrievedSlide, ...]
    query: SlideLayout
    revision: int


def _assemble(
    entries: list[IndexEntry], g: int, revision: int, skipped: int
) -> CorpusIndex:
    if entries:
        matrix = np.stack([entry.vector.values for entry in entries])
    else:
        matrix = np.zeros((0, 3 * g * g), dtype=np.float64)
    return CorpusIndex(
        entries=tuple(entries), g=g, revision=revision, skipped=skipped, matrix=matrix
    )


def build_index(
    corpus: list[SlideLayout] | tuple[SlideLayout, ...],
    g: int = DEFAULT_DESCRIPTOR_G,
    revision: int = 1,
) -> CorpusIndex:
    """Embed every indexable layout once, in ascending-id order.

    Layouts without elements are skipped (counted, logged); duplicate ids
    raise DuplicateIdError naming the id.
    """
    seen: set[str] = set()
    for layout in corpus:
        if layout.id in seen:
            raise DuplicateIdError(layout.id)
        seen.add(layout.id)
    indexable = sorted((l for l in corpus if l.elements), key=lambda l: l.id)
    skipped = len(corpus) - len(indexable)
    if skipped:
        logger.warning("skipped %d layouts with no elements", skipped)
    entries = [IndexEntry(l.id, embed(l, g), l) for l in indexable]
    return _assemble(entries, g, revision, skipped)


def build_index_from_features(
    features: list[tuple[str, np.ndarray]],
    g: int,
    layouts: dict[str, SlideLayout] | None = None,
    revision: int = 1,
) -> CorpusIndex:
    """Index precomputed descriptors (the external-feature import path).

    Vectors are re-normalized defensively; all-zero vectors are unindexable
    and skipped. Layout snapshots attach when provided by id.
    """
    layouts = layouts or {}
    seen: set[str] = set()
    entries: list[IndexEntry] = []
    skipped = 0
    for layout_id, values in sorted(features, key=lambda pair: pair[0]):
        if layout_id in seen:
            raise DuplicateIdError(layout_id)
        seen.add(layout_id)
        values = np.asarray(values, dtype=np.float64)
        norm = np.linalg.norm(values)
        if norm == 0.0:
            skipped += 1
            continue
        vector = FeatureVector(values / norm, g)
        entries.append(IndexEntry(layout_id, vector, layouts.get(layout_id)))
    if skipped:
        logger.warning("skipped %d all-zero feature vectors", skipped)
    return _assemble(entries, g, revision, skipped)


def query(index: CorpusIndex, draft: SlideLayout, k: int = DEFAULT_K) -> RetrievalResult:
    """Exhaustively score a draft against the corpus and return the top k.

    Any nonempty draft is a valid query; incomplete drafts are first-class.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if not draft.elements:
        raise EmptyQueryError("query draft has no elements")
    if not index.entries:
        raise EmptyCorpusError("index holds no layouts")
    vector = embed(draft, index.g)
    scores = np.clip(index.matrix @ vector.values, 0.0, 1.0)
    order = sorted(range(len(index.entries)), key=lambda i: (-scores[i], index.entries[i].id))
    hits = []
    for i in order[: min(k, len(order))]:
        entry = index.entries[i]
        image_ref = entry.layout.image_ref if entry.layout is not None else None
        hits.append(RetrievedSlide(entry.id, float(scores[i]), entry.layout, image_ref))
    return RetrievalResult(results=tuple(hits), query=draft, revision=index.revision)


def upsert(index: CorpusIndex, layout: SlideLayout) -> CorpusIndex:
    """New snapshot with the layout replaced (same id) or appended; revision + 1."""
    if not layout.elements:
        raise EmptyLayoutError(f"layout {layout.id!r} has no elements")
    entry = IndexEntry(layout.id, embed(layout, index.g), layout)
    entries = list(index.entries)
    for i, existing in enumerate(entries):
        if existing.id == layout.id:
            entries[i] = entry
            break
    else:
        entries.append(entry)
    return _assemble(entries, index.g, index.revision + 1, index.skipped)
