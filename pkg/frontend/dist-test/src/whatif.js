// What-if slider panel logic: debounced, read-only, at most one request in
// flight, last good result retained on failure. Slider edits never touch the
// stored iteration; they only feed /whatif bodies.
import { UNMEASURED } from "./types.js";
import { slidersFromSnapshot, snapshotFromSliders } from "./model.js";
export class WhatIfPanel {
    constructor(api, view, delayMs = 150, schedule = (fn, ms) => setTimeout(fn, ms), cancel = (handle) => clearTimeout(handle)) {
        this.baseSnapshot = null;
        this.sliders = null;
        this.pending = null;
        this.inFlight = false;
        this.queued = false;
        this.lastGood = null;
        this.api = api;
        this.view = view;
        this.delayMs = delayMs;
        this.schedule = schedule;
        this.cancel = cancel;
    }
    /** Initialize (or reset) the sliders from the latest stored snapshot. */
    reset(snapshot, storedRecommendation) {
        this.baseSnapshot = snapshot;
        this.sliders = slidersFromSnapshot(snapshot);
        this.lastGood = storedRecommendation;
        if (storedRecommendation) {
            this.view.showRecommendation(storedRecommendation, false);
        }
    }
    values() {
        return this.sliders === null ? null : { ...this.sliders };
    }
    /** A slider moved: remember the value and debounce a /whatif call. */
    setValue(name, value) {
        if (this.sliders === null) {
            return;
        }
        if (name === "f") {
            this.sliders.f = value;
        }
        else if (value !== null) {
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
    currentOverrides() {
        if (this.baseSnapshot === null || this.sliders === null) {
            return {};
        }
        const overrides = {};
        const current = snapshotFromSliders(this.sliders);
        for (const name of ["pi", "u", "f", "pri", "iu", "gq"]) {
            if (current[name] !== this.baseSnapshot[name]) {
                overrides[name] = current[name] === UNMEASURED ? UNMEASURED : current[name];
            }
        }
        return overrides;
    }
    async fire() {
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
        }
        catch (error) {
            // keep the last good result visible; surface the failure gently
            if (this.lastGood) {
                this.view.showRecommendation(this.lastGood, false);
            }
            this.view.showError(error instanceof Error ? error.message : String(error));
        }
        finally {
            this.inFlight = false;
            if (this.queued) {
                this.queued = false;
                void this.fire();
            }
        }
    }
}
