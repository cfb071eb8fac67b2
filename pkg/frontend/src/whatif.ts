// What-if slider panel logic: debounced, read-only, at most one request in
// flight, last good result retained on failure. Slider edits never touch the
// stored iteration; they only feed /whatif bodies.

import type { ApiClient } from "./api.js";
import type { Overrides, Recommendation, Snapshot } from "./types.js";
import { UNMEASURED } from "./types.js";
import type { SliderValues } from "./model.js";
import { slidersFromSnapshot, snapshotFromSliders } from "./model.js";

export type Scheduler = (fn: () => void, delayMs: number) => unknown;
export type Canceller = (handle: unknown) => void;

export interface WhatIfView {
  showRecommendation(rec: Recommendation, live: boolean): void;
  showError(message: string): void;
}

export class WhatIfPanel {
  private readonly api: Pick<ApiClient, "whatIf">;
  private readonly view: WhatIfView;
  private readonly delayMs: number;
  private readonly schedule: Scheduler;
  private readonly cancel: Canceller;

  private baseSnapshot: Snapshot | null = null;
  private sliders: SliderValues | null = null;
  private pending: unknown = null;
  private inFlight = false;
  private queued = false;
  private lastGood: Recommendation | null = null;

  constructor(
    api: Pick<ApiClient, "whatIf">,
    view: WhatIfView,
    delayMs = 150,
    schedule: Scheduler = (fn, ms) => setTimeout(fn, ms),
    cancel: Canceller = (handle) => clearTimeout(handle as number),
  ) {
    this.api = api;
    this.view = view;
    this.delayMs = delayMs;
    this.schedule = schedule;
    this.cancel = cancel;
  }

  /** Initialize (or reset) the sliders from the latest stored snapshot. */
  reset(snapshot: Snapshot, storedRecommendation: Recommendation | null): void {
    this.baseSnapshot = snapshot;
    this.sliders = slidersFromSnapshot(snapshot);
    this.lastGood = storedRecommendation;
    if (storedRecommendation) {
      this.view.showRecommendation(storedRecommendation, false);
    }
  }

  values(): SliderValues | null {
    return this.sliders === null ? null : { ...this.sliders };
  }

  /** A slider moved: remember the value and debounce a /whatif call. */
  setValue(name: keyof SliderValues, value: number | null): void {
    if (this.sliders === null) {
      return;
    }
    if (name === "f") {
      this.sliders.f = value;
    } else if (value !== null) {
      this.sliders[name] = value;
    }
    if (this.pending !== null) {
      this.cancel(this.pending);
    }
    this.pending = this.schedule(() => {
      this.pending = null;
      void this.fire();
    }, this.delayMs);
  }

  /** The overrides actually sent: only the indices that differ from base. */
  currentOverrides(): Overrides {
    if (this.baseSnapshot === null || this.sliders === null) {
      return {};
    }
    const overrides: Overrides = {};
    const current = snapshotFromSliders(this.sliders);
    for (const name of ["pi", "u", "f", "pri", "iu", "gq"] as const) {
      if (current[name] !== this.baseSnapshot[name]) {
        overrides[name] = current[name] === UNMEASURED ? UNMEASURED : (current[name] as number);
      }
    }
    return overrides;
  }

  private async fire(): Promise<void> {
    if (this.baseSnapshot === null) {
      return;
    }
    if (this.inFlight) {
      this.queued = true; // latest state will be sent once the wire is free
      return;
    }
    this.inFlight = true;
    try {
      const response = await this.api.whatIf(this.baseSnapshot, this.currentOverrides());
      this.lastGood = response.recommendation;
      this.view.showRecommendation(response.recommendation, true);
    } catch (error) {
      // keep the last good result visible; surface the failure gently
      if (this.lastGood) {
        this.view.showRecommendation(this.lastGood, false);
      }
      this.view.showError(error instanceof Error ? error.message : String(error));
    } finally {
      this.inFlight = false;
      if (this.queued) {
        this.queued = false;
        void this.fire();
      }
    }
  }
}
