// Fixed category palette and the heatmap legend shade.
//
// Box colors match the corpus legend (title green, text blue, figure red)
// so user boxes and retrieved layouts read the same way. The heatmap shade
// is a pure function of cell value: a fixed hue whose opacity scales from
// fully transparent at 0 to the deepest shade at 1.

import type { Category } from "./types";

export const CATEGORY_COLORS: Record<Category, string> = {
  title: "#27a04b",
  text: "#2563d0",
  figure: "#d23430",
};

export const HEAT_MAX_ALPHA = 0.8;

const clamp01 = (value: number): number => Math.min(Math.max(value, 0), 1);

/** rgba() fill for one heatmap cell; equal values always render equally. */
export function heatShade(value: number): string {
  const alpha = clamp01(value) * HEAT_MAX_ALPHA;
  return `rgba(204, 82, 24, ${alpha})`;
}

/** Opacity component of heatShade, exposed for the legend. */
export function heatAlpha(value: number): number {
  return clamp01(value) * HEAT_MAX_ALPHA;
}
