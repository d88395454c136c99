"""Top-k layout retrieval over a synthetic corpus.

Builds a few hundred random layouts, indexes them, and queries with both a
complete layout and a deliberately incomplete sketch of it.
"""

import numpy as np

from slidegrid import SlideLayout, build_index, query, upsert
from slidegrid.layout import CATEGORIES, LayoutElement, Rect


def random_layout(rng: np.random.Generator, layout_id: str) -> SlideLayout:
    elements = []
    for _ in range(int(rng.integers(1, 5))):
        x, y = rng.uniform(0.0, 0.8, size=2)
        w = rng.uniform(0.05, 1.0 - x)
        h = rng.uniform(0.05, 1.0 - y)
        elements.append(
            LayoutElement(CATEGORIES[int(rng.integers(0, 3))], Rect(float(x), float(y), float(w), float(h)))
        )
    return SlideLayout(id=layout_id, elements=tuple(elements))


rng = np.random.default_rng(7)
corpus = [random_layout(rng, f"slide-{i:03}") for i in range(300)]
index = build_index(corpus)
print(f"indexed {len(index)} layouts at revision {index.revision}")

target = corpus[42]
print(f"\nquerying with corpus layout {target.id!r} itself:")
for rank, hit in enumerate(query(index, target, k=5).results, start=1):
    print(f"  {rank} {hit.id} {hit.score:.6f}")

sketch = SlideLayout(id="sketch", elements=target.elements[:1])
print(f"\nquerying with just the first of its {len(target.elements)} boxes:")
for rank, hit in enumerate(query(index, sketch, k=5).results, start=1):
    print(f"  {rank} {hit.id} {hit.score:.6f}")

novel = random_layout(np.random.default_rng(12345), "just-added")
index = upsert(index, novel)
result = query(index, novel, k=1)
print(
    f"\nafter upsert (revision {index.revision}): querying the new layout "
    f"returns {result.results[0].id!r} at {result.results[0].score:.6f}"
)
