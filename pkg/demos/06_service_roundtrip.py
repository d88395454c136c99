"""The full client loop against a live HTTP service.

Writes a corpus file, starts the service on a local port, then plays the
drawing client: retrieve with a sketch, fetch heatmaps, overlay a draft,
read slide records, and check /api/stats. Shuts the server down cleanly.
"""

import json
import tempfile
import threading
import time
from pathlib import Path

import httpx
import numpy as np
import uvicorn

from slidegrid.service import ServiceConfig, ServiceState, create_app

workdir = Path(tempfile.mkdtemp(prefix="slidegrid-demo-"))
corpus_path = workdir / "corpus.jsonl"

rng = np.random.default_rng(17)
records = []
for i in range(40):
    elements = []
    for _ in range(int(rng.integers(1, 4))):
        x, y = rng.uniform(0.0, 0.7, size=2)
        elements.append(
            {
                "category": ["title", "text", "figure"][int(rng.integers(0, 3))],
                "bbox": [float(x), float(y), float(rng.uniform(0.1, 1.0 - x)), float(rng.uniform(0.1, 1.0 - y))],
            }
        )
    records.append({"id": f"s{i:03}", "source": "demo", "image": None, "elements": elements})
corpus_path.write_text("\n".join(json.dumps(r) for r in records) + "\n")

config = ServiceConfig(corpus=str(corpus_path), port=8741)
state = ServiceState(config)
server = uvicorn.Server(
    uvicorn.Config(create_app(state), host=config.host, port=config.port, log_level="warning")
)
thread = threading.Thread(target=server.run, daemon=True)
thread.start()
while not server.started:
    time.sleep(0.02)

base = f"http://{config.host}:{config.port}"
print(f"service up at {base}")
print("stats:", httpx.get(f"{base}/api/stats").json())

sketch = {"elements": records[5]["elements"][:1], "k": 3}
hits = httpx.post(f"{base}/api/retrieve", json=sketch).json()
print(f"\nretrieve with a one-box sketch of {records[5]['id']}:")
for hit in hits["results"]:
    print(f"  {hit['id']} score={hit['score']}")

grid = httpx.get(f"{base}/api/heatmap", params={"mode": "all"}).json()
cells = np.asarray(grid["cells"])
print(f"\nheatmap mode=all: {cells.shape[0]}x{cells.shape[1]} grid, peak {cells.max()}")

overlay = httpx.post(
    f"{base}/api/heatmap/overlay",
    json={"mode": "all", "elements": [{"category": "title", "bbox": [0.1, 0.1, 0.5, 0.1]}]},
).json()
print("overlay with a draft differs from the corpus grid:",
      bool(np.any(np.asarray(overlay["cells"]) != cells)))

slide = httpx.get(f"{base}/api/slides/s005").json()
print(f"\nslide record s005 has {len(slide['elements'])} elements")

server.should_exit = True
thread.join(timeout=5)
print("server stopped")
