"""Shadow guidance: where does a corpus put its titles, text, and figures?

Computes the per-category density grids over a structured corpus and renders
them as ASCII shading (the HTTP client maps the same numbers to colors).
Then overlays a draft to show the distribution shifting with the user's edit.
"""

import numpy as np

from slidegrid import (
    HeatmapMode,
    SlideLayout,
    compute_heatmap,
    overlay_heatmap,
)
from slidegrid.layout import ElementCategory, LayoutElement, Rect

SHADES = " .:-=+*#%@"


def ascii_grid(cells: np.ndarray) -> str:
    rows = []
    for row in cells:
        rows.append("".join(SHADES[min(int(v * (len(SHADES) - 1) + 0.5), 9)] for v in row))
    return "\n".join(rows)


def typical_slide(rng: np.random.Generator, layout_id: str) -> SlideLayout:
    """Title on top, text bottom-left, figure bottom-right, all jittered."""
    def jitter(value, spread=0.04):
        return float(np.clip(value + rng.uniform(-spread, spread), 0.0, 0.9))

    elements = (
        LayoutElement(ElementCategory.TITLE, Rect(jitter(0.08), jitter(0.05), 0.8, 0.1)),
        LayoutElement(ElementCategory.TEXT, Rect(jitter(0.08), jitter(0.28), 0.38, 0.55)),
        LayoutElement(ElementCategory.FIGURE, Rect(jitter(0.55), jitter(0.3), 0.35, 0.5)),
    )
    return SlideLayout(id=layout_id, elements=elements)


rng = np.random.default_rng(5)
corpus = [typical_slide(rng, f"slide-{i:02}") for i in range(12)]

for mode in HeatmapMode:
    grid = compute_heatmap(corpus, mode, g=24)
    print(f"\n=== {mode.value} distribution (G=24, deepest shade = densest cell) ===")
    print(ascii_grid(grid.cells))

draft = SlideLayout(
    id="draft",
    elements=(LayoutElement(ElementCategory.FIGURE, Rect(0.1, 0.55, 0.3, 0.3)),),
)
base = compute_heatmap(corpus, HeatmapMode.FIGURE, g=24)
shifted = overlay_heatmap(base, draft)
print("\n=== figure distribution with the draft folded in ===")
print(ascii_grid(shifted.cells))
changed = int(np.count_nonzero(shifted.cells != base.cells))
print(
    f"\n(the draft's bottom-left figure box lights {changed} cells; "
    f"aggregated layouts {base.count} -> {shifted.count})"
)
