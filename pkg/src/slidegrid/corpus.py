"""Reading and writing the line-delimited corpus and feature-record files.

The corpus annotation file (one UTF-8 JSON record per line) is the source of
truth for a served index; it is rebuilt from file at startup rather than
persisted in a binary format.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .layout import LayoutValidationError, SlideLayout, layout_to_record, validate_layout


class CorpusFormatError(ValueError):
    """A corpus file contains invalid records; message cites line numbers."""

    def __init__(self, problems: list[tuple[int, str]]):
        self.problems = problems
        super().__init__(
            "; ".join(f"line {line}: {message}" for line, message in problems)
        )


@dataclass
class CorpusScan:
    """Everything a corpus file parse produced: layouts plus per-line problems."""

    layouts: list[SlideLayout]
    problems: list[tuple[int, str]]

    @property
    def ok(self) -> bool:
        return not self.problems


def scan_corpus(path: Path) -> CorpusScan:
    """Parse every line of a corpus file, collecting all problems.

    Blank lines are ignored. Duplicate ids are reported against both lines
    involved; only the first occurrence is kept.
    """
    layouts: list[SlideLayout] = []
    problems: list[tuple[int, str]] = []
    seen: dict[str, int] = {}
    with Path(path).open("r", encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                problems.append((line_no, f"invalid JSON: {exc.msg}"))
                continue
            try:
                layout = validate_layout(record)
            except LayoutValidationError as exc:
                problems.append((line_no, str(exc)))
                continue
            if layout.id in seen:
                first = seen[layout.id]
                problems.append(
                    (line_no, f"duplicate id {layout.id!r} (first used on line {first})")
                )
                problems.append(
                    (first, f"duplicate id {layout.id!r} (reused on line {line_no})")
                )
                continue
            seen[layout.id] = line_no
            layouts.append(layout)
    problems.sort()
    return CorpusScan(layouts=layouts, problems=problems)


def load_corpus(path: Path) -> list[SlideLayout]:
    """Strictly load a corpus file, raising CorpusFormatError on any problem."""
    scan = scan_corpus(path)
    if not scan.ok:
        raise CorpusFormatError(scan.problems)
    return scan.layouts


def write_corpus(layouts: list[SlideLayout], path: Path) -> None:
    """Write layouts as line-delimited annotation records."""
    with Path(path).open("w", encoding="utf-8") as handle:
        for layout in layouts:
            handle.write(json.dumps(layout_to_record(layout)) + "\n")


def parse_draft(record: dict) -> SlideLayout:
    """Validate a query draft record; the id is optional for drafts."""
    if not isinstance(record, dict):
        raise LayoutValidationError("draft must be a JSON object")
    if "id" not in record or record.get("id") is None:
        record = {**record, "id": "draft"}
    return validate_layout(record)


def load_draft(path: Path) -> SlideLayout:
    """Load a draft layout from a single-record JSON file."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        record = json.loads(text)
    except json.JSONDecodeError as exc:
        raise LayoutValidationError(f"draft file is not valid JSON: {exc.msg}") from exc
    return parse_draft(record)


def write_feature_records(
    features: list[tuple[str, int, np.ndarray]], path: Path
) -> None:
    """Export descriptors as line-delimited {"id", "g", "values"} records."""
    with Path(path).open("w", encoding="utf-8") as handle:
        for layout_id, g, values in features:
            record = {"id": layout_id, "g": g, "values": np.asarray(values).tolist()}
            handle.write(json.dumps(record) + "\n")


def load_feature_records(path: Path) -> list[tuple[str, int, np.ndarray]]:
    """Import descriptors from line-delimited feature records."""
    records: list[tuple[str, int, np.ndarray]] = []
    with Path(path).open("r", encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusFormatError([(line_no, f"invalid JSON: {exc.msg}")]) from exc
            layout_id = record.get("id")
            g = record.get("g")
            values = record.get("values")
            if not isinstance(layout_id, str) or not isinstance(g, int) or not isinstance(values, list):
                raise CorpusFormatError(
                    [(line_no, 'feature record needs "id": str, "g": int, "values": list')]
                )
            array = np.asarray(values, dtype=np.float64)
            if array.shape != (3 * g * g,):
                raise CorpusFormatError(
                    [(line_no, f"expected {3 * g * g} values for g={g}, got {array.size}")]
                )
            records.append((layout_id, g, array))
    return records
