"""Fixed-length layout descriptors and the retrieval similarity score.

A layout embeds as the concatenation of its three per-category occupancy
grids (title, text, figure channels, row-major), L2-normalized as a whole so
the relative area mass between categories stays meaningful. Similarity is
the cosine of two descriptors; with non-negative entries it lives in [0, 1].
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .layout import CATEGORIES, SlideLayout, rasterize

DEFAULT_DESCRIPTOR_G = 16


class EmptyLayoutError(ValueError):
    """A layout without elements cannot be embedded."""


@dataclass(frozen=True, eq=False)
class FeatureVector:
    """Unit-norm descriptor: 3 category channels of g*g cells each."""

    values: np.ndarray
    g: int

    def __post_init__(self) -> None:
        if self.values.shape != (3 * self.g * self.g,):
            raise ValueError(
                f"expected {3 * self.g * self.g} values for g={self.g}, "
                f"got shape {self.values.shape}"
            )


def embed(layout: SlideLayout, g: int = DEFAULT_DESCRIPTOR_G) -> FeatureVector:
    """Embed a layout as a unit-norm occupancy-grid descriptor."""
    if not layout.elements:
        raise EmptyLayoutError(f"layout {layout.id!r} has no elements")
    channels = [rasterize(layout, category, g).ravel() for category in CATEGORIES]
    values = np.concatenate(channels)
    # Any valid element covers positive area, so the norm is positive.
    values /= np.linalg.norm(values)
    return FeatureVector(values=values, g=g)


def similarity(a: FeatureVector, b: FeatureVector) -> float:
    """Cosine similarity of two unit descriptors, in [0, 1].

    Symmetric; 1.0 for identical nonzero layouts; exactly 0.0 when the
    occupied cells and categories are disjoint.
    """
    if a.values.shape != b.values.shape:
        raise ValueError(f"dimension mismatch: {a.values.shape} vs {b.values.shape}")
    value = float(np.dot(a.values, b.values))
    # Unit vectors bound the true value by 1; clip last-ulp excess only.
    return min(max(value, 0.0), 1.0)
