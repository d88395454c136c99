"""Shared builders for synthetic layouts, corpora, and hash-exact frames."""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np
import pytest

from slidegrid.layout import CATEGORIES, ElementCategory, LayoutElement, Rect, SlideLayout


def make_layout(layout_id: str, *elements, source: str = "", image: str | None = None) -> SlideLayout:
    """Layout from (category_name, x, y, w, h) tuples."""
    parsed = tuple(
        LayoutElement(ElementCategory(cat), Rect(x, y, w, h)) for cat, x, y, w, h in elements
    )
    return SlideLayout(id=layout_id, source=source, image_ref=image, elements=parsed)


def random_layout(rng: np.random.Generator, layout_id: str, max_elements: int = 4) -> SlideLayout:
    """Random valid layout with 1..max_elements boxes."""
    n = int(rng.integers(1, max_elements + 1))
    elements = []
    for _ in range(n):
        category = CATEGORIES[int(rng.integers(0, 3))]
        x = float(rng.uniform(0.0, 0.85))
        y = float(rng.uniform(0.0, 0.85))
        w = float(rng.uniform(0.05, 1.0 - x))
        h = float(rng.uniform(0.05, 1.0 - y))
        elements.append(LayoutElement(category, Rect(x, y, w, h)))
    return SlideLayout(id=layout_id, elements=tuple(elements))


def random_corpus(n: int, seed: int = 0) -> list[SlideLayout]:
    rng = np.random.default_rng(seed)
    return [random_layout(rng, f"s{i:04}") for i in range(n)]


def layout_record(layout: SlideLayout) -> dict:
    return {
        "id": layout.id,
        "source": layout.source,
        "image": layout.image_ref,
        "elements": [
            {"category": el.category.value, "bbox": [el.rect.x, el.rect.y, el.rect.w, el.rect.h]}
            for el in layout.elements
        ],
    }


def write_corpus_file(layouts: list[SlideLayout], path: Path) -> Path:
    path.write_text(
        "".join(json.dumps(layout_record(l)) + "\n" for l in layouts), encoding="utf-8"
    )
    return path


def frame_with_hash(bits: int, base: int = 128, step: int = 4) -> np.ndarray:
    """9x8 RGB frame whose dhash is exactly ``bits``.

    The downsample grid matches the frame size one-to-one, so each cell is a
    single pixel; a 1-bit drops the next pixel by ``step`` gray levels, a
    0-bit repeats it.
    """
    img = np.zeros((8, 9, 3), dtype=np.uint8)
    for r in range(8):
        v = base
        img[r, 0] = v
        for c in range(8):
            if (bits >> (63 - (r * 8 + c))) & 1:
                v -= step
            img[r, c + 1] = v
    return img


@pytest.fixture
def corpus_file(tmp_path: Path):
    def _write(layouts: list[SlideLayout], name: str = "corpus.jsonl") -> Path:
        return write_corpus_file(layouts, tmp_path / name)

    return _write
