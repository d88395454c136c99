// Draft state: the boxes on the user's canvas, plus pixel<->normalized
// conversion and clamping. All operations return new state objects.

import type { Category, DraftElement, ElementPayload, Rect } from "./types";

export interface DraftState {
  elements: DraftElement[];
  selected: number | null;
  tool: Category;
}

export const MIN_BOX_FRACTION = 0.01;

export function emptyDraft(tool: Category = "title"): DraftState {
  return { elements: [], selected: null, tool };
}

const clamp = (value: number, lo: number, hi: number): number =>
  Math.min(Math.max(value, lo), hi);

/** Clamp a rect into the unit square, preserving a minimum size. */
export function clampRect(rect: Rect): Rect {
  const w = clamp(rect.w, MIN_BOX_FRACTION, 1);
  const h = clamp(rect.h, MIN_BOX_FRACTION, 1);
  const x = clamp(rect.x, 0, 1 - w);
  const y = clamp(rect.y, 0, 1 - h);
  return { x, y, w, h };
}

/** Canvas pixels -> unit-square fractions (the only lossy conversion). */
export function canvasToNormalized(
  px: { x: number; y: number; w: number; h: number },
  canvasWidth: number,
  canvasHeight: number,
): Rect {
  return clampRect({
    x: px.x / canvasWidth,
    y: px.y / canvasHeight,
    w: px.w / canvasWidth,
    h: px.h / canvasHeight,
  });
}

export function normalizedToCanvas(
  rect: Rect,
  canvasWidth: number,
  canvasHeight: number,
): { x: number; y: number; w: number; h: number } {
  return {
    x: rect.x * canvasWidth,
    y: rect.y * canvasHeight,
    w: rect.w * canvasWidth,
    h: rect.h * canvasHeight,
  };
}

export function addElement(state: DraftState, rect: Rect): DraftState {
  const element: DraftElement = { category: state.tool, rect: clampRect(rect) };
  return {
    ...state,
    elements: [...state.elements, element],
    selected: state.elements.length,
  };
}

export function moveElement(state: DraftState, index: number, dx: number, dy: number): DraftState {
  const elements = state.elements.map((el, i) =>
    i === index
      ? { ...el, rect: clampRect({ ...el.rect, x: el.rect.x + dx, y: el.rect.y + dy }) }
      : el,
  );
  return { ...state, elements };
}

export function resizeElement(state: DraftState, index: number, w: number, h: number): DraftState {
  const elements = state.elements.map((el, i) =>
    i === index ? { ...el, rect: clampRect({ ...el.rect, w, h }) } : el,
  );
  return { ...state, elements };
}

export function deleteElement(state: DraftState, index: number): DraftState {
  const elements = state.elements.filter((_, i) => i !== index);
  return { ...state, elements, selected: null };
}

export function selectElement(state: DraftState, index: number | null): DraftState {
  return { ...state, selected: index };
}

export function setTool(state: DraftState, tool: Category): DraftState {
  return { ...state, tool };
}

/** Serialize for /api/retrieve and /api/heatmap/overlay bodies. */
export function toPayload(state: DraftState): ElementPayload[] {
  return state.elements.map((el) => ({
    category: el.category,
    bbox: [el.rect.x, el.rect.y, el.rect.w, el.rect.h],
  }));
}

export function fromPayload(elements: ElementPayload[]): DraftElement[] {
  return elements.map((el) => ({
    category: el.category,
    rect: { x: el.bbox[0], y: el.bbox[1], w: el.bbox[2], h: el.bbox[3] },
  }));
}
