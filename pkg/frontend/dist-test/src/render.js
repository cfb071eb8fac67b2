// DOM bindings. Strings from the service (outcome, fired step, advisories,
// guard text, rationale) are injected via textContent, never reformatted.
import { INDEX_NAMES, UNMEASURED } from "./types.js";
import { bannerFromRecommendation, chartSvg, failingIndices, gaugeClass, historySeries, traceRows, } from "./model.js";
export function el(id) {
    const node = document.getElementById(id);
    if (!node) {
        throw new Error(`missing element #${id}`);
    }
    return node;
}
export function renderBanner(target, rec, live) {
    const banner = bannerFromRecommendation(rec);
    target.classList.toggle("open", banner.open);
    target.classList.toggle("blocked", !banner.open);
    target.querySelector(".banner-outcome").textContent = banner.outcome;
    target.querySelector(".banner-step").textContent = `fired step ${banner.firedStep}`;
    target.querySelector(".banner-rationale").textContent = banner.rationale;
    target.querySelector(".banner-advisories").textContent =
        banner.advisoryLine === "" ? "no advisories" : `advisories: ${banner.advisoryLine}`;
    target.querySelector(".banner-live").textContent = live ? "live" : "stored";
}
export function renderTrace(target, rec) {
    target.replaceChildren();
    for (const row of traceRows(rec)) {
        const tr = document.createElement("tr");
        if (row.fired) {
            tr.classList.add("fired");
        }
        for (const cell of [row.step, row.verdict, row.guard]) {
            const td = document.createElement("td");
            td.textContent = cell;
            tr.appendChild(td);
        }
        target.appendChild(tr);
    }
}
export function renderGauges(target, snapshot, threshold) {
    target.replaceChildren();
    for (const name of INDEX_NAMES) {
        const value = snapshot[name];
        const gauge = document.createElement("div");
        gauge.className = `gauge ${gaugeClass(value, threshold)}`;
        const label = document.createElement("span");
        label.className = "gauge-label";
        label.textContent = name.toUpperCase();
        const bar = document.createElement("div");
        bar.className = "gauge-bar";
        const fill = document.createElement("div");
        fill.className = "gauge-fill";
        fill.style.width = value === UNMEASURED ? "0%" : `${(value * 100).toFixed(1)}%`;
        bar.appendChild(fill);
        const reading = document.createElement("span");
        reading.className = "gauge-value";
        reading.textContent = value === UNMEASURED ? "unmeasured" : value.toFixed(3);
        gauge.append(label, bar, reading);
        target.appendChild(gauge);
    }
}
export function renderDistanceHint(target, snapshot, threshold) {
    const failing = failingIndices(snapshot, threshold);
    target.textContent =
        failing.length === 0
            ? "every index clears the strict threshold"
            : `needs > ${threshold}: ${failing.map((n) => n.toUpperCase()).join(", ")}`;
}
export function renderHistory(chartTarget, badgeTarget, iterations, threshold, paralysis) {
    if (iterations.length === 0) {
        chartTarget.innerHTML = "";
        chartTarget.textContent = "No iterations yet: enter instruments to run the gate.";
        badgeTarget.hidden = true;
        return;
    }
    chartTarget.innerHTML = chartSvg(historySeries(iterations), threshold);
    if (paralysis && paralysis.triggered && paralysis.kind) {
        badgeTarget.hidden = false;
        badgeTarget.textContent = `paralysis: ${paralysis.kind} (iterations ${paralysis.window.join(", ")})`;
    }
    else {
        badgeTarget.hidden = true;
    }
}
export function showError(target, message) {
    target.hidden = message === null;
    target.textContent = message ?? "";
}
