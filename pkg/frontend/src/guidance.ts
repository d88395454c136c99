// Guidance state: which heatmap mode is active and the grid to render.
//
// Mode "off" clears the layer. Any other mode fetches the corpus heatmap
// when the draft is empty, or the overlay including the draft, so the
// distribution shifts with the user's edits. A 503 (empty corpus) hides the
// layer with a notice instead of blocking the canvas.

import { ApiRequestError, type ApiClient } from "./api";
import { DebouncedRequester, EDIT_QUIET_MS } from "./scheduler";
import type { ElementPayload, GuidanceMode, HeatmapResponse } from "./types";

export interface GuidanceState {
  mode: GuidanceMode;
  grid: HeatmapResponse | null;
  notice: string | null;
}

export class GuidanceController {
  state: GuidanceState = { mode: "off", grid: null, notice: null };

  private readonly requester: DebouncedRequester<ElementPayload[], HeatmapResponse>;

  constructor(
    private readonly api: ApiClient,
    private readonly onChange: (state: GuidanceState) => void,
    quietMs: number = EDIT_QUIET_MS,
  ) {
    this.requester = new DebouncedRequester(
      {
        fetcher: (elements) =>
          elements.length === 0
            ? this.api.heatmap(this.state.mode)
            : this.api.heatmapOverlay(this.state.mode, elements),
        onResult: (grid) => this.publish({ ...this.state, grid, notice: null }),
        onError: (error) => {
          if (error instanceof ApiRequestError && error.status === 503) {
            this.publish({ ...this.state, grid: null, notice: "guidance unavailable: " + error.message });
          } else {
            this.publish({ ...this.state, grid: null, notice: "guidance request failed" });
          }
        },
      },
      quietMs,
    );
  }

  setMode(mode: GuidanceMode, draft: ElementPayload[]): void {
    this.publish({ mode, grid: null, notice: null });
    if (mode === "off") {
      this.requester.cancel();
      return;
    }
    void this.requester.fire(draft);
  }

  /** Called on canvas edits; refreshes the overlay after the quiet period. */
  draftChanged(draft: ElementPayload[]): void {
    if (this.state.mode === "off") {
      return;
    }
    this.requester.schedule(draft);
  }

  private publish(state: GuidanceState): void {
    this.state = state;
    this.onChange(state);
  }
}
