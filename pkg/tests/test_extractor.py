"""Difference-hash and slide change-detection tests.

Synthetic sequences are built from 9x8 frames whose dhash equals a chosen
64-bit pattern exactly (see conftest.frame_with_hash), so expected capture
points can be hand-simulated and frozen.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from PIL import Image

from slidegrid.extractor import (
    EmptyFrameSourceError,
    ExtractorConfig,
    dhash,
    extract_directory,
    extract_slides,
    hamming,
    hash_to_hex,
)

from conftest import frame_with_hash

# Pairwise Hamming distances: A-B 20, A-C 24, B-C 28 (all > default T=10).
HASH_A = 0x0000000000000000
HASH_B = 0x00000000000FFFFF
HASH_C = 0xFFFFFF0000000000

u64 = st.integers(min_value=0, max_value=2**64 - 1)


class TestDhash:
    def test_constant_frame_hashes_to_zero(self):
        frame = np.full((48, 64, 3), 77, dtype=np.uint8)
        assert dhash(frame) == 0

    def test_decreasing_ramp_sets_every_bit(self):
        ramp = np.repeat(np.arange(255, 0, -2, dtype=np.uint8)[None, :], 40, axis=0)
        frame = np.stack([ramp] * 3, axis=-1)
        assert dhash(frame) == 2**64 - 1
        assert hamming(dhash(frame), dhash(np.full((40, 128, 3), 9, dtype=np.uint8))) == 64

    def test_frame_matches_itself(self):
        rng = np.random.default_rng(7)
        frame = rng.integers(0, 256, size=(30, 45, 3), dtype=np.uint8)
        assert hamming(dhash(frame), dhash(frame)) == 0

    def test_too_small_frame_rejected(self):
        with pytest.raises(ValueError, match="at least"):
            dhash(np.zeros((7, 9, 3), dtype=np.uint8))
        with pytest.raises(ValueError, match="at least"):
            dhash(np.zeros((8, 8, 3), dtype=np.uint8))

    def test_grayscale_weights(self):
        # A pure-green frame must hash like a gray frame of its luma.
        green = np.zeros((16, 18, 3), dtype=np.uint8)
        green[:, :, 1] = 200
        gray = np.full((16, 18), 200 * 0.587)
        assert dhash(green) == dhash(gray)

    def test_resolution_independent_for_uniform_blocks(self):
        # Upscaling a 9x8 pattern by integer factors leaves the hash unchanged.
        base = frame_with_hash(0xDEADBEEF12345678)
        scaled = np.kron(base, np.ones((5, 3, 1))).astype(np.uint8)
        assert dhash(scaled) == dhash(base) == 0xDEADBEEF12345678

    @given(u64)
    def test_round_trip_through_synthetic_frame(self, bits):
        assert dhash(frame_with_hash(bits)) == bits


class TestHamming:
    @given(u64, u64)
    def test_symmetry_and_identity(self, a, b):
        assert hamming(a, b) == hamming(b, a)
        assert (hamming(a, b) == 0) == (a == b)

    @given(u64, u64, u64)
    def test_triangle_inequality(self, a, b, c):
        assert hamming(a, c) <= hamming(a, b) + hamming(b, c)


class TestExtractorConfig:
    def test_defaults(self):
        config = ExtractorConfig()
        assert (config.transition_threshold, config.stability_window, config.dedup_threshold) == (10, 5, 4)

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"dedup_threshold": 11},          # D > T
            {"transition_threshold": 65},     # T > 64
            {"dedup_threshold": -1},
            {"stability_window": 0},
        ],
    )
    def test_invalid_thresholds(self, kwargs):
        with pytest.raises(ValueError):
            ExtractorConfig(**kwargs)


def frames_for(hashes: list[int]) -> list[np.ndarray]:
    return [frame_with_hash(h) for h in hashes]


class TestExtractSlides:
    def test_single_steady_slide(self):
        slides = extract_slides(frames_for([HASH_A] * 30))
        assert len(slides) == 1
        # Hand simulation: stability window of 5 fills at frame index 4.
        assert slides[0].frame_number == 4
        assert slides[0].hash == HASH_A

    def test_two_slides_capture_points(self):
        slides = extract_slides(frames_for([HASH_A] * 30 + [HASH_B] * 30))
        # Hand simulation: slide 0 at the end of the first stable window
        # (frame 4); the transition fires at frame 30 and slide 1's window
        # fills at frame 34.
        assert [(s.index, s.frame_number, s.hash) for s in slides] == [
            (0, 4, HASH_A),
            (1, 34, HASH_B),
        ]

    def test_revisited_slide_deduplicated(self):
        slides = extract_slides(frames_for([HASH_A] * 30 + [HASH_B] * 30 + [HASH_A] * 30))
        assert [s.hash for s in slides] == [HASH_A, HASH_B]

    def test_slide_after_a_revisit_is_still_captured(self):
        sequence = [HASH_A] * 30 + [HASH_B] * 30 + [HASH_A] * 30 + [HASH_C] * 30
        slides = extract_slides(frames_for(sequence))
        assert [s.hash for s in slides] == [HASH_A, HASH_B, HASH_C]

    def test_noisy_transition_frames_never_emitted(self):
        rng = np.random.default_rng(3)
        noise = [int(rng.integers(0, 2**63)) for _ in range(3)]
        assert all(hamming(n, HASH_A) > 10 and hamming(n, HASH_B) > 10 for n in noise)
        slides = extract_slides(frames_for([HASH_A] * 30 + noise + [HASH_B] * 30))
        assert [s.hash for s in slides] == [HASH_A, HASH_B]

    def test_codec_noise_within_dedup_threshold_yields_one_slide(self):
        rng = np.random.default_rng(11)
        hashes = []
        for _ in range(60):
            jitter = HASH_A
            for bit in rng.choice(64, size=2, replace=False):
                jitter ^= 1 << int(bit)
            hashes.append(jitter)  # pairwise distance <= 4 = D
        slides = extract_slides(frames_for(hashes))
        assert len(slides) == 1

    def test_deterministic_and_monotone(self):
        sequence = frames_for([HASH_A] * 20 + [HASH_B] * 20 + [HASH_C] * 20)
        first = extract_slides(sequence)
        second = extract_slides(sequence)
        assert [(s.frame_number, s.hash) for s in first] == [
            (s.frame_number, s.hash) for s in second
        ]
        numbers = [s.frame_number for s in first]
        assert numbers == sorted(numbers) and len(set(numbers)) == len(numbers)

    def test_emitted_hashes_pairwise_beyond_dedup_threshold(self):
        config = ExtractorConfig()
        slides = extract_slides(
            frames_for([HASH_A] * 15 + [HASH_B] * 15 + [HASH_A] * 15 + [HASH_C] * 15), config
        )
        for i, a in enumerate(slides):
            for b in slides[i + 1 :]:
                assert hamming(a.hash, b.hash) > config.dedup_threshold

    def test_short_stability_window(self):
        slides = extract_slides(frames_for([HASH_A] * 10), ExtractorConfig(stability_window=1))
        assert slides[0].frame_number == 0

    def test_sequence_shorter_than_window_yields_nothing(self):
        assert extract_slides(frames_for([HASH_A] * 3)) == []

    def test_empty_source_rejected(self):
        with pytest.raises(EmptyFrameSourceError):
            extract_slides([])


class TestExtractDirectory:
    @pytest.fixture
    def frame_dir(self, tmp_path: Path) -> Path:
        frames_dir = tmp_path / "frames"
        frames_dir.mkdir()
        sequence = [HASH_A] * 12 + [HASH_B] * 12
        for i, frame in enumerate(frames_for(sequence)):
            Image.fromarray(frame).save(frames_dir / f"frame_{i:05}.png")
        return frames_dir

    def test_writes_slides_and_manifest(self, frame_dir: Path, tmp_path: Path):
        out = tmp_path / "slides"
        slides = extract_directory(frame_dir, out)
        assert [s.image_ref for s in slides] == ["slide_0000.png", "slide_0001.png"]
        rows = [
            json.loads(line)
            for line in (out / "manifest.jsonl").read_text().splitlines()
        ]
        assert rows == [
            {"index": 0, "frame": 4, "hash": hash_to_hex(HASH_A), "image": "slide_0000.png"},
            {"index": 1, "frame": 16, "hash": hash_to_hex(HASH_B), "image": "slide_0001.png"},
        ]
        for row in rows:
            saved = np.asarray(Image.open(out / row["image"]).convert("RGB"))
            assert dhash(saved) == int(row["hash"], 16)

    def test_rerun_is_byte_identical(self, frame_dir: Path, tmp_path: Path):
        out1, out2 = tmp_path / "a", tmp_path / "b"
        extract_directory(frame_dir, out1)
        extract_directory(frame_dir, out2)
        assert (out1 / "manifest.jsonl").read_bytes() == (out2 / "manifest.jsonl").read_bytes()

    def test_ppm_frames_supported(self, tmp_path: Path):
        frames_dir = tmp_path / "ppm_frames"
        frames_dir.mkdir()
        for i, frame in enumerate(frames_for([HASH_A] * 8)):
            Image.fromarray(frame).save(frames_dir / f"f{i:03}.ppm")
        slides = extract_directory(frames_dir, tmp_path / "out")
        assert len(slides) == 1 and slides[0].hash == HASH_A

    def test_missing_directory_rejected(self, tmp_path: Path):
        with pytest.raises(EmptyFrameSourceError):
            extract_directory(tmp_path / "absent", tmp_path / "out")

    def test_empty_directory_rejected(self, tmp_path: Path):
        empty = tmp_path / "empty"
        empty.mkdir()
        with pytest.raises(EmptyFrameSourceError):
            extract_directory(empty, tmp_path / "out")
