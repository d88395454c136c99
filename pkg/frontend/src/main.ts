// DOM wiring: tool buttons, the drawing canvas, guidance toggles, the live
// result panel, and the read-only reference view.

import { ApiClient } from "./api";
import {
  addElement,
  canvasToNormalized,
  deleteElement,
  emptyDraft,
  moveElement,
  normalizedToCanvas,
  resizeElement,
  selectElement,
  setTool,
  toPayload,
  fromPayload,
  type DraftState,
} from "./draft";
import { GuidanceController } from "./guidance";
import { CATEGORY_COLORS } from "./palette";
import { clearCanvas, drawBoxes, drawHeatmapLayer, drawThumbnail, HANDLE_PX } from "./render";
import { DebouncedRequester } from "./scheduler";
import type { Category, GuidanceMode, RetrieveHit, RetrieveResponse } from "./types";

const API_BASE =
  new URLSearchParams(window.location.search).get("api") ?? "http://127.0.0.1:8000";
const api = new ApiClient(API_BASE);

const canvas = document.getElementById("draw-canvas") as HTMLCanvasElement;
const ctx = canvas.getContext("2d")!;
const resultsEl = document.getElementById("results")!;
const referenceEl = document.getElementById("reference")!;
const noticeEl = document.getElementById("notice")!;
const legendEl = document.getElementById("legend")!;

let draft: DraftState = emptyDraft();

// ---- rendering -----------------------------------------------------------

function redraw(): void {
  clearCanvas(ctx);
  if (guidance.state.mode !== "off" && guidance.state.grid !== null) {
    drawHeatmapLayer(ctx, guidance.state.grid);
  }
  drawBoxes(ctx, draft.elements, draft.selected);
}

function showNotice(text: string | null): void {
  noticeEl.textContent = text ?? "";
  noticeEl.classList.toggle("hidden", text === null);
}

function renderEmptyState(): void {
  resultsEl.innerHTML = '<p class="empty-state">draw to search</p>';
}

function renderResults(response: RetrieveResponse): void {
  resultsEl.innerHTML = "";
  const caption = document.createElement("p");
  caption.className = "results-caption";
  caption.textContent = `revision ${response.revision}, ${response.results.length} results`;
  resultsEl.append(caption);
  for (const hit of response.results) {
    const card = document.createElement("button");
    card.className = "result-card";
    card.type = "button";
    const thumb = document.createElement("canvas");
    thumb.width = 128;
    thumb.height = 96;
    drawThumbnail(thumb, fromPayload(hit.elements));
    const label = document.createElement("span");
    label.textContent = `${hit.id}  ${hit.score.toFixed(3)}`;
    card.append(thumb, label);
    card.addEventListener("click", () => showReference(hit));
    resultsEl.append(card);
  }
}

function showReference(hit: RetrieveHit): void {
  referenceEl.innerHTML = "";
  const title = document.createElement("p");
  title.textContent = `reference: ${hit.id}`;
  referenceEl.append(title);
  const imageUrl = api.imageUrl(hit.image_url);
  if (imageUrl !== null) {
    const img = document.createElement("img");
    img.src = imageUrl;
    img.alt = hit.id;
    img.addEventListener("error", () => img.remove()); // boxes-only fallback
    referenceEl.append(img);
  }
  const layout = document.createElement("canvas");
  layout.width = 320;
  layout.height = 240;
  drawThumbnail(layout, fromPayload(hit.elements));
  referenceEl.append(layout);
}

// ---- retrieval loop ------------------------------------------------------

const retriever = new DebouncedRequester<ReturnType<typeof toPayload>, RetrieveResponse>({
  fetcher: (elements) => api.retrieve(elements),
  onResult: (response) => {
    showNotice(null);
    renderResults(response);
  },
  onError: () => showNotice("retrieval unavailable; edits are kept locally"),
});

const guidance = new GuidanceController(api, () => {
  showNotice(guidance.state.notice);
  redraw();
});

function draftEdited(): void {
  redraw();
  const payload = toPayload(draft);
  if (payload.length === 0) {
    retriever.cancel(); // no request for an empty draft
    renderEmptyState();
  } else {
    retriever.schedule(payload);
  }
  guidance.draftChanged(payload);
}

// ---- canvas interaction --------------------------------------------------

interface DragState {
  kind: "draw" | "move" | "resize";
  index: number;
  startX: number;
  startY: number;
  originX: number;
  originY: number;
}

let drag: DragState | null = null;

function canvasPoint(event: MouseEvent): { x: number; y: number } {
  const bounds = canvas.getBoundingClientRect();
  return { x: event.clientX - bounds.left, y: event.clientY - bounds.top };
}

function hitElement(x: number, y: number): { index: number; onHandle: boolean } | null {
  for (let i = draft.elements.length - 1; i >= 0; i -= 1) {
    const px = normalizedToCanvas(draft.elements[i].rect, canvas.width, canvas.height);
    const onHandle =
      Math.abs(x - (px.x + px.w)) <= HANDLE_PX && Math.abs(y - (px.y + px.h)) <= HANDLE_PX;
    if (onHandle && i === draft.selected) {
      return { index: i, onHandle: true };
    }
    if (x >= px.x && x <= px.x + px.w && y >= px.y && y <= px.y + px.h) {
      return { index: i, onHandle: false };
    }
  }
  return null;
}

canvas.addEventListener("mousedown", (event) => {
  const point = canvasPoint(event);
  const hit = hitElement(point.x, point.y);
  if (hit !== null) {
    draft = selectElement(draft, hit.index);
    const rect = draft.elements[hit.index].rect;
    drag = {
      kind: hit.onHandle ? "resize" : "move",
      index: hit.index,
      startX: point.x,
      startY: point.y,
      originX: rect.x,
      originY: rect.y,
    };
    redraw();
  } else {
    draft = addElement(draft, canvasToNormalized({ ...point, w: 1, h: 1 }, canvas.width, canvas.height));
    drag = {
      kind: "draw",
      index: draft.elements.length - 1,
      startX: point.x,
      startY: point.y,
      originX: 0,
      originY: 0,
    };
    redraw();
  }
});

canvas.addEventListener("mousemove", (event) => {
  if (drag === null) {
    return;
  }
  const point = canvasPoint(event);
  if (drag.kind === "draw" || drag.kind === "resize") {
    const rect = draft.elements[drag.index].rect;
    const base =
      drag.kind === "draw"
        ? { x: Math.min(drag.startX, point.x) / canvas.width, y: Math.min(drag.startY, point.y) / canvas.height }
        : { x: rect.x, y: rect.y };
    const w = Math.abs(point.x - (drag.kind === "draw" ? drag.startX : rect.x * canvas.width)) / canvas.width;
    const h = Math.abs(point.y - (drag.kind === "draw" ? drag.startY : rect.y * canvas.height)) / canvas.height;
    draft = {
      ...draft,
      elements: draft.elements.map((el, i) =>
        i === drag!.index ? { ...el, rect: { ...el.rect, x: base.x, y: base.y } } : el,
      ),
    };
    draft = resizeElement(draft, drag.index, w, h);
  } else {
    const dx = (point.x - drag.startX) / canvas.width;
    const dy = (point.y - drag.startY) / canvas.height;
    draft = {
      ...draft,
      elements: draft.elements.map((el, i) =>
        i === drag!.index ? { ...el, rect: { ...el.rect, x: drag!.originX, y: drag!.originY } } : el,
      ),
    };
    draft = moveElement(draft, drag.index, dx, dy);
  }
  redraw();
});

window.addEventListener("mouseup", () => {
  if (drag !== null) {
    drag = null;
    draftEdited();
  }
});

window.addEventListener("keydown", (event) => {
  if ((event.key === "Delete" || event.key === "Backspace") && draft.selected !== null) {
    draft = deleteElement(draft, draft.selected);
    draftEdited();
  }
});

// ---- toolbar -------------------------------------------------------------

for (const button of document.querySelectorAll<HTMLButtonElement>("[data-tool]")) {
  const tool = button.dataset.tool as Category;
  button.style.setProperty("--tool-color", CATEGORY_COLORS[tool]);
  button.addEventListener("click", () => {
    draft = setTool(draft, tool);
    for (const other of document.querySelectorAll("[data-tool]")) {
      other.classList.toggle("active", other === button);
    }
  });
}

for (const button of document.querySelectorAll<HTMLButtonElement>("[data-mode]")) {
  button.addEventListener("click", () => {
    const mode = button.dataset.mode as GuidanceMode;
    guidance.setMode(mode, toPayload(draft));
    for (const other of document.querySelectorAll("[data-mode]")) {
      other.classList.toggle("active", other === button);
    }
  });
}

// Heatmap legend: monotone shade swatches from 0 (transparent) to 1.
for (let i = 0; i <= 8; i += 1) {
  const swatch = document.createElement("span");
  swatch.className = "legend-swatch";
  swatch.style.background = `rgba(204, 82, 24, ${(i / 8) * 0.8})`;
  legendEl.append(swatch);
}

renderEmptyState();
redraw();
