"""Slide extraction from decoded presentation-video frame sequences.

Frames are fingerprinted with a 64-bit difference hash (8x9 grayscale
downsample, horizontal gradient signs) and a threshold state machine turns
the hash stream into a deduplicated list of captured slides. Video decoding
stays outside this module: the input is an ordered sequence of frame images.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator

import numpy as np
from PIL import Image

logger = logging.getLogger(__name__)

HASH_ROWS = 8
HASH_COLS = 9
HASH_BITS = 64

# Strict gradient comparisons tolerate this much float noise so that flat
# regions never produce spurious bits (box-filter weight sums round in the
# last ulp).
_GRADIENT_EPS = 1e-7

MANIFEST_NAME = "manifest.jsonl"
_FRAME_SUFFIXES = {".png", ".ppm"}


class EmptyFrameSourceError(ValueError):
    """The frame sequence or directory contained no frames."""


@dataclass(frozen=True)
class ExtractorConfig:
    """Thresholds for the change-detection state machine.

    transition_threshold: Hamming distance above which the frame no longer
        shows the captured slide. stability_window: consecutive mutually
        similar frames required before capturing. dedup_threshold: distance
        at or below which frames count as "the same slide".
    """

    transition_threshold: int = 10
    stability_window: int = 5
    dedup_threshold: int = 4

    def __post_init__(self) -> None:
        if not 0 <= self.dedup_threshold <= self.transition_threshold <= HASH_BITS:
            raise ValueError(
                "thresholds must satisfy 0 <= dedup <= transition <= "
                f"{HASH_BITS}, got dedup={self.dedup_threshold} "
                f"transition={self.transition_threshold}"
            )
        if self.stability_window < 1:
            raise ValueError(f"stability window must be >= 1, got {self.stability_window}")


@dataclass(frozen=True)
class ExtractedSlide:
    """One captured slide: ordinal, source frame, hash, and optional pixels."""

    index: int
    frame_number: int
    hash: int
    image: np.ndarray | None = None
    image_ref: str | None = None


def _axis_weights(n_src: int, n_dst: int) -> np.ndarray:
    """Box-filter weight matrix mapping n_src pixels onto n_dst cells.

    Row d holds, for every source pixel, the length of its overlap with the
    span [d * n_src/n_dst, (d+1) * n_src/n_dst]; fractional overlaps are
    weighted exactly.
    """
    edges = np.arange(n_dst + 1, dtype=np.float64) * (n_src / n_dst)
    lo = edges[:-1, None]
    hi = edges[1:, None]
    px = np.arange(n_src, dtype=np.float64)[None, :]
    return np.clip(np.minimum(hi, px + 1.0) - np.maximum(lo, px), 0.0, None)


def dhash(frame: np.ndarray) -> int:
    """64-bit difference hash of an RGB (or grayscale) raster.

    Grayscale via luma 0.299 R + 0.587 G + 0.114 B, area-average downsample
    to 9 columns x 8 rows, then bit(r, c) = 1 iff cell (r, c) is brighter
    than its right neighbor, packed row-major (first bit most significant).
    """
    arr = np.asarray(frame, dtype=np.float64)
    if arr.ndim == 3:
        if arr.shape[2] < 3:
            raise ValueError(f"expected RGB frame, got shape {arr.shape}")
        gray = arr[:, :, 0] * 0.299 + arr[:, :, 1] * 0.587 + arr[:, :, 2] * 0.114
    elif arr.ndim == 2:
        gray = arr
    else:
        raise ValueError(f"expected a 2-D or 3-D raster, got shape {arr.shape}")
    height, width = gray.shape
    if width < HASH_COLS or height < HASH_ROWS:
        raise ValueError(
            f"frame must be at least {HASH_COLS}x{HASH_ROWS} pixels, got {width}x{height}"
        )
    w_rows = _axis_weights(height, HASH_ROWS)
    w_cols = _axis_weights(width, HASH_COLS)
    sums = w_rows @ gray @ w_cols.T
    cells = sums / ((height / HASH_ROWS) * (width / HASH_COLS))
    bits = cells[:, :-1] > cells[:, 1:] + _GRADIENT_EPS
    value = 0
    for bit in bits.ravel():
        value = (value << 1) | int(bit)
    return value


def hamming(a: int, b: int) -> int:
    """Bit distance between two 64-bit hashes."""
    return (a ^ b).bit_count()


def hash_to_hex(value: int) -> str:
    return f"{value:016x}"


def extract_slides(
    frames: Iterable[np.ndarray], config: ExtractorConfig | None = None
) -> list[ExtractedSlide]:
    """Run change detection over an ordered frame sequence.

    A slide is captured as the last frame of the first window of
    ``stability_window`` consecutive frames whose consecutive hash distances
    all stay at or below ``dedup_threshold``. After a capture, a frame whose
    distance to the on-screen slide exceeds ``transition_threshold`` starts a
    new transition. Candidates within ``dedup_threshold`` of any previously
    emitted slide are dropped (a presenter flipping back), but still become
    the on-screen reference so the following slide is detected. Deterministic
    for a given sequence and config.
    """
    config = config or ExtractorConfig()
    slides: list[ExtractedSlide] = []
    run = 0
    prev_hash: int | None = None
    reference: int | None = None
    in_transition = True
    saw_frames = False
    for frame_number, frame in enumerate(frames):
        saw_frames = True
        h = dhash(frame)
        if prev_hash is not None and hamming(h, prev_hash) <= config.dedup_threshold:
            run += 1
        else:
            run = 1
        prev_hash = h
        if not in_transition:
            assert reference is not None
            if hamming(h, reference) > config.transition_threshold:
                in_transition = True
        if in_transition and run >= config.stability_window:
            reference = h
            in_transition = False
            if all(hamming(h, s.hash) > config.dedup_threshold for s in slides):
                slides.append(
                    ExtractedSlide(
                        index=len(slides),
                        frame_number=frame_number,
                        hash=h,
                        image=np.array(frame, copy=True),
                    )
                )
    if not saw_frames:
        raise EmptyFrameSourceError("frame source is empty")
    return slides


def iter_frame_paths(frames_dir: Path) -> list[Path]:
    """Frame image files under a directory, ordered by filename."""
    frames_dir = Path(frames_dir)
    if not frames_dir.is_dir():
        raise EmptyFrameSourceError(f"not a directory: {frames_dir}")
    paths = sorted(
        p for p in frames_dir.iterdir() if p.suffix.lower() in _FRAME_SUFFIXES and p.is_file()
    )
    if not paths:
        raise EmptyFrameSourceError(f"no PNG or PPM frames in {frames_dir}")
    return paths


def load_frame(path: Path) -> np.ndarray:
    """Decode one frame image to an RGB array."""
    with Image.open(path) as img:
        return np.asarray(img.convert("RGB"))


def extract_directory(
    frames_dir: Path, out_dir: Path, config: ExtractorConfig | None = None
) -> list[ExtractedSlide]:
    """Extract slides from a frame directory, writing PNGs plus a manifest.

    Slide images land in ``out_dir`` as slide_{index:04}.png; the manifest
    (manifest.jsonl) holds one record per slide:
    ``{"index": n, "frame": n, "hash": 16-hex, "image": filename}``.
    """
    paths = iter_frame_paths(frames_dir)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    def frames() -> Iterator[np.ndarray]:
        for path in paths:
            yield load_frame(path)

    slides = extract_slides(frames(), config)
    written: list[ExtractedSlide] = []
    manifest_path = out_dir / MANIFEST_NAME
    with manifest_path.open("w", encoding="utf-8") as manifest:
        for slide in slides:
            name = f"slide_{slide.index:04}.png"
            assert slide.image is not None
            Image.fromarray(slide.image.astype(np.uint8)).save(out_dir / name)
            record = {
                "index": slide.index,
                "frame": slide.frame_number,
                "hash": hash_to_hex(slide.hash),
                "image": name,
            }
            manifest.write(json.dumps(record) + "\n")
            written.append(
                ExtractedSlide(
                    index=slide.index,
                    frame_number=slide.frame_number,
                    hash=slide.hash,
                    image=slide.image,
                    image_ref=name,
                )
            )
    logger.info("extracted %d slides from %d frames", len(written), len(paths))
    return written
