"""Layouts in, occupancy grids out.

A slide layout is a handful of labeled boxes in normalized coordinates.
Rasterizing one category gives the exact fraction of each grid cell the
boxes cover; that grid is the building block for descriptors and heatmaps.
"""

import numpy as np

from slidegrid import ElementCategory, rasterize, validate_layout

record = {
    "id": "demo-slide",
    "source": "demo-deck",
    "image": None,
    "elements": [
        {"category": "title", "bbox": [0.05, 0.04, 0.90, 0.12]},
        {"category": "text", "bbox": [0.05, 0.25, 0.42, 0.62]},
        {"category": "figure", "bbox": [0.55, 0.28, 0.40, 0.55]},
    ],
}

layout = validate_layout(record)
print(f"validated layout {layout.id!r} with {len(layout.elements)} elements")

np.set_printoptions(precision=2, suppress=True)
for category in ElementCategory:
    grid = rasterize(layout, category, g=8)
    print(f"\n{category.value} occupancy at G=8 (covered area fraction per cell):")
    print(grid)

# Values are exact: a box spanning half a cell reports exactly 0.5.
half_cell = validate_layout(
    {"id": "half", "elements": [{"category": "title", "bbox": [0.0, 0.0, 0.25, 0.5]}]}
)
print("\nhalf-height box at G=2, title channel:")
print(rasterize(half_cell, ElementCategory.TITLE, g=2))

# Clamping: coordinates may overshoot the canvas by float noise.
noisy = validate_layout(
    {"id": "noisy", "elements": [{"category": "figure", "bbox": [0.5, 0.5, 0.5000000001, 0.4]}]}
)
rect = noisy.elements[0].rect
print(f"\novershooting box clamped so x + w = {rect.x + rect.w}")
