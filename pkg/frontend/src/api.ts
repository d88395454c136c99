// Thin typed client over the retrieval service's JSON API.

import type {
  ApiError,
  ElementPayload,
  HeatmapResponse,
  RetrieveResponse,
  SlideRecord,
} from "./types";

export class ApiRequestError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  const response = await fetch(url, init);
  if (!response.ok) {
    let code = "http_error";
    let message = `${response.status} ${response.statusText}`;
    try {
      const body = (await response.json()) as ApiError;
      code = body.error ?? code;
      message = body.message ?? message;
    } catch {
      // non-JSON error body; keep the status text
    }
    throw new ApiRequestError(response.status, code, message);
  }
  return (await response.json()) as T;
}

export class ApiClient {
  constructor(readonly baseUrl: string) {}

  retrieve(elements: ElementPayload[], k?: number): Promise<RetrieveResponse> {
    return request(`${this.baseUrl}/api/retrieve`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(k === undefined ? { elements } : { elements, k }),
    });
  }

  heatmap(mode: string): Promise<HeatmapResponse> {
    return request(`${this.baseUrl}/api/heatmap?mode=${encodeURIComponent(mode)}`);
  }

  heatmapOverlay(mode: string, elements: ElementPayload[]): Promise<HeatmapResponse> {
    return request(`${this.baseUrl}/api/heatmap/overlay`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ mode, elements }),
    });
  }

  slide(id: string): Promise<SlideRecord> {
    return request(`${this.baseUrl}/api/slides/${encodeURIComponent(id)}`);
  }

  imageUrl(path: string | null): string | null {
    return path === null ? null : `${this.baseUrl}${path}`;
  }
}
