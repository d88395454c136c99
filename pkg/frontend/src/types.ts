// Shared types mirroring the service's JSON schemas.

export type Category = "title" | "text" | "figure";

export type GuidanceMode = Category | "all" | "off";

/** Axis-aligned box in unit-square fractions of the slide canvas. */
export interface Rect {
  x: number;
  y: number;
  w: number;
  h: number;
}

export interface DraftElement {
  category: Category;
  rect: Rect;
}

/** Wire shape of one element: {"category", "bbox": [x, y, w, h]}. */
export interface ElementPayload {
  category: Category;
  bbox: [number, number, number, number];
}

export interface RetrieveHit {
  id: string;
  score: number;
  elements: ElementPayload[];
  image_url: string | null;
}

export interface RetrieveResponse {
  revision: number;
  results: RetrieveHit[];
}

export interface HeatmapResponse {
  mode: string;
  g: number;
  cells: number[][];
}

export interface SlideRecord {
  id: string;
  source: string;
  image_url: string | null;
  elements: ElementPayload[];
}

export interface ApiError {
  error: string;
  message: string;
}
