// Debounced feedback requests with newest-wins cancellation.
//
// Every committed canvas mutation calls schedule(); the request only fires
// after the edit stream pauses for debounceMs, so a drag does not become a
// request storm.  If a newer request fires while an older one is in flight,
// the older response is dropped.

import type { FeedbackBundle, LayoutDocument } from "./types.js";

export interface Clock {
  setTimeout(fn: () => void, ms: number): number;
  clearTimeout(id: number): void;
}

const realClock: Clock = {
  setTimeout: (fn, ms) => setTimeout(fn, ms) as unknown as number,
  clearTimeout: (id) => clearTimeout(id),
};

export const DEBOUNCE_MS = 300;

export class FeedbackScheduler {
  /** Total requests actually issued (not just scheduled). */
  requestCount = 0;

  private timer: number | null = null;
  private generation = 0;
  private controller: AbortController | null = null;

  constructor(
    private send: (doc: LayoutDocument, signal: AbortSignal) => Promise<FeedbackBundle>,
    private onBundle: (bundle: FeedbackBundle) => void,
    private onError: (err: unknown) => void,
    private debounceMs: number = DEBOUNCE_MS,
    private clock: Clock = realClock,
  ) {}

  /** Called on every committed edit; coalesces bursts into one request. */
  schedule(doc: LayoutDocument): void {
    if (this.timer !== null) {
      this.clock.clearTimeout(this.timer);
    }
    this.timer = this.clock.setTimeout(() => {
      this.timer = null;
      void this.fire(doc);
    }, this.debounceMs);
  }

  /** Issue the request immediately (initial load). */
  fireNow(doc: LayoutDocument): Promise<void> {
    if (this.timer !== null) {
      this.clock.clearTimeout(this.timer);
      this.timer = null;
    }
    return this.fire(doc);
  }

  get pending(): boolean {
    return this.timer !== null;
  }

  private async fire(doc: LayoutDocument): Promise<void> {
    const gen = ++this.generation;
    this.requestCount += 1;
    // At most one request in flight: abort the superseded one.
    this.controller?.abort();
    this.controller = new AbortController();
    try {
      const bundle = await this.send(doc, this.controller.signal);
      if (gen === this.generation) {
        this.onBundle(bundle);
      }
    } catch (err) {
      if (gen === this.generation) {
        this.onError(err);
      }
    }
  }
}
