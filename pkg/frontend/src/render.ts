// Canvas rendering: heatmap layer under the boxes, boxes in category
// colors, selection handles, and the small thumbnails in the result panel.

import { normalizedToCanvas } from "./draft";
import { CATEGORY_COLORS, heatShade } from "./palette";
import type { DraftElement, HeatmapResponse } from "./types";

export const HANDLE_PX = 8;

export function clearCanvas(ctx: CanvasRenderingContext2D): void {
  ctx.clearRect(0, 0, ctx.canvas.width, ctx.canvas.height);
  ctx.fillStyle = "#ffffff";
  ctx.fillRect(0, 0, ctx.canvas.width, ctx.canvas.height);
}

export function drawHeatmapLayer(
  ctx: CanvasRenderingContext2D,
  grid: HeatmapResponse,
): void {
  const { width, height } = ctx.canvas;
  const g = grid.g;
  const cellW = width / g;
  const cellH = height / g;
  for (let row = 0; row < g; row += 1) {
    for (let col = 0; col < g; col += 1) {
      const value = grid.cells[row][col];
      if (value <= 0) {
        continue; // zero density stays fully transparent
      }
      ctx.fillStyle = heatShade(value);
      ctx.fillRect(col * cellW, row * cellH, cellW + 0.5, cellH + 0.5);
    }
  }
}

export function drawBoxes(
  ctx: CanvasRenderingContext2D,
  elements: DraftElement[],
  selected: number | null = null,
): void {
  const { width, height } = ctx.canvas;
  elements.forEach((el, index) => {
    const px = normalizedToCanvas(el.rect, width, height);
    const color = CATEGORY_COLORS[el.category];
    ctx.fillStyle = color + "33";
    ctx.fillRect(px.x, px.y, px.w, px.h);
    ctx.strokeStyle = color;
    ctx.lineWidth = index === selected ? 3 : 2;
    ctx.strokeRect(px.x, px.y, px.w, px.h);
    if (index === selected) {
      ctx.fillStyle = color;
      ctx.fillRect(
        px.x + px.w - HANDLE_PX / 2,
        px.y + px.h - HANDLE_PX / 2,
        HANDLE_PX,
        HANDLE_PX,
      );
    }
  });
}

/** Render a small preview of a layout into a thumbnail canvas. */
export function drawThumbnail(
  canvas: HTMLCanvasElement,
  elements: DraftElement[],
): void {
  const ctx = canvas.getContext("2d");
  if (ctx === null) {
    return;
  }
  clearCanvas(ctx);
  ctx.strokeStyle = "#d8d8d8";
  ctx.lineWidth = 1;
  ctx.strokeRect(0.5, 0.5, canvas.width - 1, canvas.height - 1);
  drawBoxes(ctx, elements);
}
