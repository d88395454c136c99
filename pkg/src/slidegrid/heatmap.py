"""Corpus layout-density heatmaps: the numeric side of shadow guidance.

Each mode aggregates the mean occupancy of corpus layouts on a G x G grid
and rescales it so the densest cell is exactly 1.0, giving clients a stable
color scale ("the deeper the shade, the more layouts put something there").
Color mapping itself is the UI's job; this module emits numbers only.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .layout import CATEGORIES, ElementCategory, SlideLayout, rasterize

DEFAULT_HEATMAP_G = 32


class EmptyCorpusError(ValueError):
    """Heatmaps and queries need at least one corpus layout."""


class HeatmapMode(Enum):
    """One category's distribution, or all three stacked."""

    TITLE = "title"
    TEXT = "text"
    FIGURE = "figure"
    ALL = "all"

    @classmethod
    def parse(cls, name: object) -> "HeatmapMode":
        if isinstance(name, str):
            try:
                return cls(name.strip().lower())
            except ValueError:
                pass
        raise ValueError(f"unknown mode {name!r}; expected title, text, figure, or all")


@dataclass(frozen=True, eq=False)
class HeatmapGrid:
    """Normalized density grid plus the pre-normalization mean it came from.

    ``cells`` is max-normalized to [0, 1] (all zeros when nothing relevant
    exists); ``raw`` keeps the mean occupancy so a draft can be folded in
    incrementally and tests can check additivity across modes.
    """

    mode: HeatmapMode
    g: int
    cells: np.ndarray
    raw: np.ndarray
    count: int


def layout_density(layout: SlideLayout, mode: HeatmapMode, g: int) -> np.ndarray:
    """One layout's contribution to a mode: its occupancy grid.

    For ALL the three category grids are summed, so a cell under both a text
    and a figure box counts twice (raw grids are unbounded; normalization
    happens corpus-wide).
    """
    if mode is HeatmapMode.ALL:
        total = np.zeros((g, g), dtype=np.float64)
        for category in CATEGORIES:
            total += rasterize(layout, category, g)
        return total
    return rasterize(layout, ElementCategory(mode.value), g)


def _normalized(mode: HeatmapMode, g: int, raw: np.ndarray, count: int) -> HeatmapGrid:
    peak = float(raw.max()) if raw.size else 0.0
    cells = raw / peak if peak > 0.0 else np.zeros_like(raw)
    return HeatmapGrid(mode=mode, g=g, cells=cells, raw=raw, count=count)


def compute_heatmap(
    corpus: list[SlideLayout] | tuple[SlideLayout, ...],
    mode: HeatmapMode,
    g: int = DEFAULT_HEATMAP_G,
) -> HeatmapGrid:
    """Mean layout density over a corpus, max-normalized to [0, 1]."""
    if not corpus:
        raise EmptyCorpusError("cannot compute a heatmap over an empty corpus")
    stack = np.stack([layout_density(layout, mode, g) for layout in corpus])
    raw = stack.mean(axis=0)
    return _normalized(mode, g, raw, len(corpus))


def overlay_heatmap(corpus_grid: HeatmapGrid, draft: SlideLayout) -> HeatmapGrid:
    """Fold a user's in-progress layout into a corpus heatmap.

    The draft weighs in as one more corpus member, shifting the displayed
    distribution as the user edits. An empty draft returns the corpus grid
    unchanged (exactly).
    """
    if not draft.elements:
        return corpus_grid
    contribution = layout_density(draft, corpus_grid.mode, corpus_grid.g)
    raw = (corpus_grid.raw * corpus_grid.count + contribution) / (corpus_grid.count + 1)
    return _normalized(corpus_grid.mode, corpus_grid.g, raw, corpus_grid.count + 1)


def grid_to_record(grid: HeatmapGrid, raw: bool = False) -> dict:
    """Wire record for a heatmap grid: {"mode", "g", "cells"} with row-major rows."""
    cells = grid.raw if raw else grid.cells
    return {"mode": grid.mode.value, "g": grid.g, "cells": cells.tolist()}
