// Debounced, latest-wins request scheduling.
//
// Canvas edits arrive in bursts; a request fires only after a quiet period,
// and a response is delivered only if no newer request has been issued since
// (stale responses are dropped, never shown). The same machinery drives both
// the retrieve loop and the guidance overlay, with at most one fetch in
// flight winning per channel.

export const EDIT_QUIET_MS = 250;

export interface DebouncedRequesterCallbacks<Q, R> {
  fetcher: (request: Q) => Promise<R>;
  onResult: (response: R, request: Q) => void;
  onError?: (error: unknown) => void;
}

export class DebouncedRequester<Q, R> {
  private timer: ReturnType<typeof setTimeout> | null = null;
  private sequence = 0;
  private fetchCount = 0;

  constructor(
    private readonly callbacks: DebouncedRequesterCallbacks<Q, R>,
    private readonly quietMs: number = EDIT_QUIET_MS,
  ) {}

  /** Requests issued so far (observable in tests). */
  get issued(): number {
    return this.fetchCount;
  }

  /** Note an edit; the request fires after quietMs without further edits. */
  schedule(request: Q): void {
    if (this.timer !== null) {
      clearTimeout(this.timer);
    }
    this.timer = setTimeout(() => {
      this.timer = null;
      void this.fire(request);
    }, this.quietMs);
  }

  /** Drop any pending request and invalidate in-flight responses. */
  cancel(): void {
    if (this.timer !== null) {
      clearTimeout(this.timer);
      this.timer = null;
    }
    this.sequence += 1;
  }

  /** Fire immediately (used for the initial load, still latest-wins). */
  async fire(request: Q): Promise<void> {
    const ticket = ++this.sequence;
    this.fetchCount += 1;
    try {
      const response = await this.callbacks.fetcher(request);
      if (ticket === this.sequence) {
        this.callbacks.onResult(response, request);
      }
    } catch (error) {
      if (ticket === this.sequence) {
        this.callbacks.onError?.(error);
      }
    }
  }
}
