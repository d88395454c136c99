"""HTTP service binding corpus, index, and heatmaps for the drawing client.

Endpoints (JSON in/out, errors always {"error": code, "message": text}):

    POST /api/retrieve          {"elements": [...], "k"?: int}
    GET  /api/heatmap           ?mode=title|text|figure|all[&raw=1]
    POST /api/heatmap/overlay   {"mode": ..., "elements": [...]}
    GET  /api/slides/{id}       layout record
    GET  /api/slides/{id}/image PNG bytes
    GET  /api/stats             corpus counters

Corpus state lives in an immutable snapshot swapped atomically on reload, so
concurrent requests always see one consistent revision.
"""

from __future__ import annotations

import json
import logging
import threading
import time
from dataclasses import dataclass, field
from pathlib import Path

from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from starlette.exceptions import HTTPException as StarletteHTTPException

from .corpus import load_corpus, parse_draft
from .descriptor import DEFAULT_DESCRIPTOR_G
from .heatmap import (
    DEFAULT_HEATMAP_G,
    HeatmapGrid,
    HeatmapMode,
    compute_heatmap,
    grid_to_record,
    overlay_heatmap,
)
from .index import DEFAULT_K, CorpusIndex, build_index, query
from .layout import LayoutValidationError, SlideLayout, layout_to_record

logger = logging.getLogger(__name__)

SCORE_DECIMALS = 6  # transport rounding only; internal scores stay full precision


class ConfigError(ValueError):
    """The service configuration is unusable."""


@dataclass
class ServiceConfig:
    """Startup configuration; the config file is a flat JSON object with
    exactly these field names."""

    corpus: str
    image_dir: str | None = None
    host: str = "127.0.0.1"
    port: int = 8000
    descriptor_g: int = DEFAULT_DESCRIPTOR_G
    heatmap_g: int = DEFAULT_HEATMAP_G
    default_k: int = DEFAULT_K
    cors_origin: str = "*"

    @classmethod
    def from_file(cls, path: Path) -> "ServiceConfig":
        try:
            raw = json.loads(Path(path).read_text(encoding="utf-8"))
        except OSError as exc:
            raise ConfigError(f"cannot read config file {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config file {path} is not valid JSON: {exc.msg}") from exc
        if not isinstance(raw, dict):
            raise ConfigError("config file must hold a flat JSON object")
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(raw) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
        if "corpus" not in raw:
            raise ConfigError('config is missing required key "corpus"')
        return cls(**raw)

    def validate(self) -> None:
        if not Path(self.corpus).is_file():
            raise ConfigError(f"corpus file does not exist: {self.corpus}")
        if self.image_dir is not None and not Path(self.image_dir).is_dir():
            raise ConfigError(f"image directory does not exist: {self.image_dir}")
        if self.descriptor_g < 1 or self.heatmap_g < 1:
            raise ConfigError("grid sizes must be >= 1")
        if self.default_k < 1:
            raise ConfigError("default_k must be >= 1")
        if not isinstance(self.port, int) or not 0 <= self.port <= 65535:
            raise ConfigError(f"invalid port: {self.port}")


@dataclass(frozen=True, eq=False)
class CorpusSnapshot:
    """One immutable revision of everything a request can read."""

    index: CorpusIndex
    layouts: dict[str, SlideLayout]
    heatmaps: dict[HeatmapMode, HeatmapGrid] = field(default_factory=dict)

    @property
    def revision(self) -> int:
        return self.index.revision


def _build_snapshot(config: ServiceConfig, revision: int) -> CorpusSnapshot:
    layouts = load_corpus(Path(config.corpus))
    index = build_index(layouts, g=config.descriptor_g, revision=revision)
    heatmaps: dict[HeatmapMode, HeatmapGrid] = {}
    indexed = [entry.layout for entry in index.entries if entry.layout is not None]
    if indexed:
        for mode in HeatmapMode:
            heatmaps[mode] = compute_heatmap(indexed, mode, config.heatmap_g)
    return CorpusSnapshot(index=index, layouts={l.id: l for l in layouts}, heatmaps=heatmaps)


class ServiceState:
    """Owns the current snapshot; reload() rebuilds and swaps it atomically.

    In-flight requests keep the snapshot they grabbed, so a query never mixes
    entries from two revisions.
    """

    def __init__(self, config: ServiceConfig):
        config.validate()
        self.config = config
        self._reload_lock = threading.Lock()
        self._snapshot = _build_snapshot(config, revision=1)

    @property
    def snapshot(self) -> CorpusSnapshot:
        return self._snapshot

    def reload(self) -> CorpusSnapshot:
        """Re-read the corpus file into a new snapshot with revision + 1."""
        with self._reload_lock:
            snapshot = _build_snapshot(self.config, self._snapshot.revision + 1)
            self._snapshot = snapshot
            logger.info(
                "corpus reloaded: %d slides, revision %d", len(snapshot.index), snapshot.revision
            )
            return snapshot


def _error(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"error": code, "message": message})


def _parse_elements(elements: object) -> SlideLayout:
    """Parse a request's elements list into a draft layout (may be empty)."""
    if not isinstance(elements, list):
        raise LayoutValidationError("elements must be a list")
    return parse_draft({"id": "draft", "elements": elements})


def _image_url(layout: SlideLayout | None) -> str | None:
    if layout is None or layout.image_ref is None:
        return None
    return f"/api/slides/{layout.id}/image"


def create_app(state: ServiceState) -> FastAPI:
    """Build the FastAPI app over a service state."""
    app = FastAPI(title="slidegrid", docs_url=None, redoc_url=None)
    app.state.service = state

    @app.exception_handler(StarletteHTTPException)
    async def http_error_shape(request: Request, exc: StarletteHTTPException) -> JSONResponse:
        # Framework-level 404/405 must use the same error record as the API.
        code = {404: "not_found", 405: "method_not_allowed"}.get(exc.status_code, "http_error")
        return _error(exc.status_code, code, str(exc.detail))

    if state.config.cors_origin:
        app.add_middleware(
            CORSMiddleware,
            allow_origins=[state.config.cors_origin],
            allow_methods=["*"],
            allow_headers=["*"],
        )

    @app.middleware("http")
    async def log_requests(request: Request, call_next):
        started = time.perf_counter()
        response = await call_next(request)
        elapsed_ms = (time.perf_counter() - started) * 1000.0
        logger.info(
            "%s %s %d %.1fms", request.method, request.url.path, response.status_code, elapsed_ms
        )
        return response

    async def _json_body(request: Request) -> dict:
        try:
            body = json.loads(await request.body())
        except (json.JSONDecodeError, UnicodeDecodeError) as exc:
            raise LayoutValidationError(f"request body is not valid JSON: {exc}") from exc
        if not isinstance(body, dict):
            raise LayoutValidationError("request body must be a JSON object")
        return body

    @app.post("/api/retrieve")
    async def retrieve(request: Request) -> Response:
        snapshot = state.snapshot
        try:
            body = await _json_body(request)
        except LayoutValidationError as exc:
            return _error(400, "malformed_body", str(exc))
        k = body.get("k", state.config.default_k)
        if not isinstance(k, int) or isinstance(k, bool) or k < 1:
            return _error(400, "invalid_k", f"k must be a positive integer, got {k!r}")
        elements = body.get("elements")
        if not isinstance(elements, list):
            return _error(400, "malformed_body", 'body must carry an "elements" list')
        if not elements:
            return _error(400, "empty_query", "draw at least one element to search")
        try:
            draft = _parse_elements(elements)
        except LayoutValidationError as exc:
            return _error(400, "invalid_element", str(exc))
        if not snapshot.index.entries:
            return _error(503, "empty_corpus", "the corpus index holds no layouts")
        result = query(snapshot.index, draft, k)
        payload = {
            "revision": result.revision,
            "results": [
                {
                    "id": hit.id,
                    "score": round(hit.score, SCORE_DECIMALS),
                    "elements": layout_to_record(hit.layout)["elements"]
                    if hit.layout is not None
                    else [],
                    "image_url": _image_url(hit.layout),
                }
                for hit in result.results
            ],
        }
        return JSONResponse(payload)

    @app.get("/api/heatmap")
    async def heatmap(request: Request) -> Response:
        snapshot = state.snapshot
        try:
            mode = HeatmapMode.parse(request.query_params.get("mode"))
        except ValueError as exc:
            return _error(400, "unknown_mode", str(exc))
        if not snapshot.heatmaps:
            return _error(503, "empty_corpus", "no layouts to aggregate")
        raw = request.query_params.get("raw") == "1"
        return JSONResponse(grid_to_record(snapshot.heatmaps[mode], raw=raw))

    @app.post("/api/heatmap/overlay")
    async def heatmap_overlay(request: Request) -> Response:
        snapshot = state.snapshot
        try:
            body = await _json_body(request)
        except LayoutValidationError as exc:
            return _error(400, "malformed_body", str(exc))
        try:
            mode = HeatmapMode.parse(body.get("mode"))
        except ValueError as exc:
            return _error(400, "unknown_mode", str(exc))
        try:
            draft = _parse_elements(body.get("elements", []))
        except LayoutValidationError as exc:
            return _error(400, "invalid_element", str(exc))
        if not snapshot.heatmaps:
            return _error(503, "empty_corpus", "no layouts to aggregate")
        grid = overlay_heatmap(snapshot.heatmaps[mode], draft)
        return JSONResponse(grid_to_record(grid))

    @app.get("/api/slides/{slide_id}")
    async def slide_record(slide_id: str) -> Response:
        snapshot = state.snapshot
        layout = snapshot.layouts.get(slide_id)
        if layout is None:
            return _error(404, "unknown_id", f"no slide with id {slide_id!r}")
        record = layout_to_record(layout)
        return JSONResponse(
            {
                "id": record["id"],
                "source": record["source"],
                "image_url": _image_url(layout),
                "elements": record["elements"],
            }
        )

    @app.get("/api/slides/{slide_id}/image")
    async def slide_image(slide_id: str) -> Response:
        snapshot = state.snapshot
        layout = snapshot.layouts.get(slide_id)
        if layout is None:
            return _error(404, "unknown_id", f"no slide with id {slide_id!r}")
        if layout.image_ref is None:
            return _error(404, "no_image", f"slide {slide_id!r} has no stored image")
        path = Path(layout.image_ref)
        if not path.is_absolute():
            base = Path(state.config.image_dir) if state.config.image_dir else Path(
                state.config.corpus
            ).parent
            path = base / path
        if not path.is_file():
            return _error(404, "no_image", f"image file missing for slide {slide_id!r}")
        return Response(content=path.read_bytes(), media_type="image/png")

    @app.get("/api/stats")
    async def stats() -> Response:
        snapshot = state.snapshot
        return JSONResponse(
            {
                "slides": len(snapshot.index),
                "revision": snapshot.revision,
                "descriptor_g": state.config.descriptor_g,
                "heatmap_g": state.config.heatmap_g,
            }
        )

    return app


def create_app_from_config(config: ServiceConfig) -> FastAPI:
    return create_app(ServiceState(config))
