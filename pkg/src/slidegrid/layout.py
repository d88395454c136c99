"""Domain types for slide layouts and exact rectangle-to-grid rasterization.

A slide layout is a set of labeled axis-aligned boxes in normalized
coordinates (fractions of the canvas, so corpora built from mixed-resolution
sources stay comparable). Rasterization produces the per-category occupancy
grids that both the retrieval descriptor and the guidance heatmap are built
from.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

# Annotation values may miss the unit square by this much before they are
# rejected instead of clamped (absorbs float noise in hand-written files).
INGEST_TOLERANCE = 1e-6


class LayoutValidationError(ValueError):
    """An annotation record violates the layout schema."""


class ElementCategory(Enum):
    """The three element kinds a slide layout is split into."""

    TITLE = "title"
    TEXT = "text"
    FIGURE = "figure"

    @classmethod
    def parse(cls, name: object) -> "ElementCategory":
        """Canonicalize a category name case-insensitively."""
        if isinstance(name, str):
            try:
                return cls(name.strip().lower())
            except ValueError:
                pass
        raise LayoutValidationError(
            f"unknown category {name!r}; expected one of title, text, figure"
        )


CATEGORIES: tuple[ElementCategory, ...] = (
    ElementCategory.TITLE,
    ElementCategory.TEXT,
    ElementCategory.FIGURE,
)


@dataclass(frozen=True)
class Rect:
    """Axis-aligned box as fractions of the canvas: x, y top-left, w, h extent."""

    x: float
    y: float
    w: float
    h: float

    @property
    def x2(self) -> float:
        return self.x + self.w

    @property
    def y2(self) -> float:
        return self.y + self.h


@dataclass(frozen=True)
class LayoutElement:
    """One labeled box on a slide."""

    category: ElementCategory
    rect: Rect


@dataclass(frozen=True)
class SlideLayout:
    """An identified, ordered set of layout elements; the retrieval unit.

    ``elements`` may be empty on ingest but such layouts cannot be indexed.
    """

    id: str
    source: str = ""
    image_ref: str | None = None
    elements: tuple[LayoutElement, ...] = field(default_factory=tuple)

    def elements_of(self, category: ElementCategory) -> tuple[LayoutElement, ...]:
        return tuple(el for el in self.elements if el.category is category)


def _clamp01(value: float) -> float:
    return min(max(value, 0.0), 1.0)


def _validate_rect(bbox: object, where: str) -> Rect:
    if (
        not isinstance(bbox, (list, tuple))
        or len(bbox) != 4
        or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in bbox)
    ):
        raise LayoutValidationError(f"{where}: bbox must be [x, y, w, h] numbers, got {bbox!r}")
    x, y, w, h = (float(v) for v in bbox)
    if not all(math.isfinite(v) for v in (x, y, w, h)):
        raise LayoutValidationError(f"{where}: bbox values must be finite")
    if w <= 0:
        raise LayoutValidationError(f"{where}: zero or negative width {w}")
    if h <= 0:
        raise LayoutValidationError(f"{where}: zero or negative height {h}")
    for name, v in (("x", x), ("y", y)):
        if v < -INGEST_TOLERANCE or v > 1.0 + INGEST_TOLERANCE:
            raise LayoutValidationError(f"{where}: {name}={v} outside [0, 1]")
    x = _clamp01(x)
    y = _clamp01(y)
    # Extents past the far edge are clamped back to it, whatever the excess;
    # hand-drawn drafts routinely overshoot the canvas.
    w = min(w, 1.0 - x)
    h = min(h, 1.0 - y)
    if w <= 0:
        raise LayoutValidationError(f"{where}: zero width after clamping to the canvas")
    if h <= 0:
        raise LayoutValidationError(f"{where}: zero height after clamping to the canvas")
    return Rect(x, y, w, h)


def validate_layout(raw: dict) -> SlideLayout:
    """Turn a decoded annotation record into a validated SlideLayout.

    Record shape: ``{"id": str, "source": str, "image": str|null,
    "elements": [{"category": ..., "bbox": [x, y, w, h]}]}``. Categories are
    canonicalized case-insensitively; rects are clamped to the unit square.
    Raises LayoutValidationError on missing id, unknown category, degenerate
    boxes, or coordinates outside [0, 1] beyond the ingest tolerance.
    """
    if not isinstance(raw, dict):
        raise LayoutValidationError(f"record must be an object, got {type(raw).__name__}")
    layout_id = raw.get("id")
    if not isinstance(layout_id, str) or not layout_id:
        raise LayoutValidationError("missing id")
    source = raw.get("source") or ""
    if not isinstance(source, str):
        raise LayoutValidationError(f"id {layout_id!r}: source must be a string")
    image_ref = raw.get("image")
    if image_ref is not None and not isinstance(image_ref, str):
        raise LayoutValidationError(f"id {layout_id!r}: image must be a string or null")
    raw_elements = raw.get("elements", [])
    if not isinstance(raw_elements, list):
        raise LayoutValidationError(f"id {layout_id!r}: elements must be a list")
    elements = []
    for i, item in enumerate(raw_elements):
        where = f"id {layout_id!r}, element {i}"
        if not isinstance(item, dict):
            raise LayoutValidationError(f"{where}: element must be an object")
        category = ElementCategory.parse(item.get("category"))
        rect = _validate_rect(item.get("bbox"), where)
        elements.append(LayoutElement(category, rect))
    return SlideLayout(
        id=layout_id, source=source, image_ref=image_ref, elements=tuple(elements)
    )


def layout_to_record(layout: SlideLayout) -> dict:
    """Inverse of validate_layout: the corpus annotation record for a layout."""
    return {
        "id": layout.id,
        "source": layout.source,
        "image": layout.image_ref,
        "elements": [
            {
                "category": el.category.value,
                "bbox": [el.rect.x, el.rect.y, el.rect.w, el.rect.h],
            }
            for el in layout.elements
        ],
    }


def rasterize(layout: SlideLayout, category: ElementCategory, g: int) -> np.ndarray:
    """Exact G x G coverage grid for one category of a layout.

    Cell (r, c) spans x in [c/G, (c+1)/G], y in [r/G, (r+1)/G] and holds the
    fraction of its area covered by the *best* covering box of the category
    (max over boxes, never sum, so values stay in [0, 1] without polygon
    unions). Cells a box only shares an edge with get 0. Computed with exact
    axis-aligned interval arithmetic; identical input yields bit-identical
    grids.
    """
    if g < 1:
        raise ValueError(f"grid size must be >= 1, got {g}")
    grid = np.zeros((g, g), dtype=np.float64)
    edges = np.arange(g + 1, dtype=np.float64) / g
    lo, hi = edges[:-1], edges[1:]
    for el in layout.elements:
        if el.category is not category:
            continue
        r = el.rect
        overlap_x = np.clip(np.minimum(r.x2, hi) - np.maximum(r.x, lo), 0.0, None)
        overlap_y = np.clip(np.minimum(r.y2, hi) - np.maximum(r.y, lo), 0.0, None)
        coverage = np.outer(overlap_y, overlap_x) * (g * g)
        np.maximum(grid, coverage, out=grid)
    # Guard the [0, 1] bound against last-ulp rounding in the cell area.
    np.clip(grid, 0.0, 1.0, out=grid)
    return grid
