"""From layouts to unit descriptors to similarity scores.

The descriptor concatenates the three category grids and L2-normalizes the
whole vector. Cosine similarity then ranks layouts: 1.0 for an identical
layout, 0.0 for one occupying disjoint cells and categories, and something
in between for a partial sketch of a corpus slide.
"""

import numpy as np

from slidegrid import embed, similarity, validate_layout

full = validate_layout(
    {
        "id": "corpus-slide",
        "elements": [
            {"category": "title", "bbox": [0.05, 0.04, 0.9, 0.12]},
            {"category": "text", "bbox": [0.05, 0.25, 0.42, 0.62]},
            {"category": "figure", "bbox": [0.55, 0.28, 0.4, 0.55]},
        ],
    }
)
partial = validate_layout(
    {
        "id": "half-drawn sketch",
        "elements": [{"category": "title", "bbox": [0.05, 0.04, 0.9, 0.12]}],
    }
)
elsewhere = validate_layout(
    {
        "id": "different-world",
        "elements": [{"category": "figure", "bbox": [0.05, 0.6, 0.3, 0.3]}],
    }
)

g = 16
vector = embed(full, g)
print(f"descriptor: {vector.values.size} dims, L2 norm {np.linalg.norm(vector.values):.12f}")

print(f"\nfull vs itself:      {similarity(vector, vector):.6f}")
print(f"full vs partial:     {similarity(vector, embed(partial, g)):.6f}")
print(f"full vs elsewhere:   {similarity(vector, embed(elsewhere, g)):.6f}")

# An incomplete drawing still scores against its superset layout; that is
# what keeps retrieval useful while the user is mid-sketch. The sketch holds
# only the (small) title box, so the score reflects the title's share of the
# full slide's ink, but it is solidly positive while unrelated layouts sit
# at exactly zero.
titles_only = similarity(embed(partial, g), vector)
assert titles_only > 0.0
print(f"\na one-box sketch still reaches {titles_only:.2f} against the full slide")
