"""Turning a frame sequence into deduplicated slide images.

We synthesize a tiny "presentation video": three slides shown for a while,
noisy transition frames between them, and a flip back to the first slide at
the end. The extractor hashes every frame, waits for stability, and refuses
to emit a slide it has already seen.
"""

import tempfile
from pathlib import Path

import numpy as np
from PIL import Image

from slidegrid import ExtractorConfig, extract_directory, hamming

rng = np.random.default_rng(99)


def slide_image(seed: int) -> np.ndarray:
    """A 90x160 'slide': ramped background with darkened content regions.

    Content darkens the ramp instead of flattening it, so neighboring hash
    cells always differ by several gray levels and jitter cannot flip
    gradient signs; band height and block placement make slides distinct.
    """
    local = np.random.default_rng(seed)
    ramp = 175.0 + np.arange(160) * 0.45
    img = np.repeat(ramp[None, :], 90, axis=0)
    band = 12 + 12 * (seed % 3)  # title band height differs per slide
    img[5 : 5 + band, 10:150] -= 110.0
    for _ in range(4):
        x = int(local.integers(10, 100))
        y = int(local.integers(35, 65))
        img[y : y + 20, x : x + 55] -= float(local.integers(50, 90))
    img = np.clip(img, 0, 255).astype(np.uint8)
    return np.stack([img] * 3, axis=-1)


def with_noise(img: np.ndarray) -> np.ndarray:
    """Codec-like jitter: global exposure flicker plus sparse speckles.

    Flicker shifts every hash cell equally (gradient signs unchanged);
    speckles move cell means by well under a gray level, so intra-slide
    hash distances stay inside the dedup threshold.
    """
    jittered = img.astype(np.int16) + int(rng.integers(-2, 3))
    ys = rng.integers(0, img.shape[0], size=30)
    xs = rng.integers(0, img.shape[1], size=30)
    jittered[ys, xs] += rng.integers(-25, 26, size=30).astype(np.int16)[:, None]
    return np.clip(jittered, 0, 255).astype(np.uint8)


slides = [slide_image(s) for s in (1, 2, 3)]
sequence = []
for current in [0, 1, 2, 0]:  # the presenter flips back to slide 0 at the end
    sequence.extend(with_noise(slides[current]) for _ in range(25))
    sequence.extend(rng.integers(0, 256, size=(90, 160, 3), dtype=np.uint8) for _ in range(3))

workdir = Path(tempfile.mkdtemp(prefix="slidegrid-demo-"))
frames_dir = workdir / "frames"
frames_dir.mkdir()
for i, frame in enumerate(sequence):
    Image.fromarray(frame).save(frames_dir / f"frame_{i:05}.png")

out_dir = workdir / "slides"
extracted = extract_directory(frames_dir, out_dir, ExtractorConfig())

assert len(extracted) == 3, f"expected 3 distinct slides, got {len(extracted)}"
print(f"{len(sequence)} frames -> {len(extracted)} slides (the revisit was deduplicated)")
for slide in extracted:
    print(f"  slide {slide.index}: captured frame {slide.frame_number}, "
          f"hash {slide.hash:016x}, saved as {slide.image_ref}")

print(f"\npairwise hash distances between captured slides:")
for i, a in enumerate(extracted):
    for b in extracted[i + 1 :]:
        print(f"  {a.index} <-> {b.index}: {hamming(a.hash, b.hash)} bits")

print(f"\nmanifest: {out_dir / 'manifest.jsonl'}")
print((out_dir / "manifest.jsonl").read_text(), end="")
