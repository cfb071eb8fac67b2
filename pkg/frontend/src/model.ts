// Pure view logic. Everything here is a function of service responses and
// slider positions; rule semantics live server-side only. The banner, trace
// rows and advisory line reproduce the service's strings verbatim so what the
// analyst reads is exactly what the engine said.

import type { IndexName, IterationDoc, Recommendation, Snapshot } from "./types.js";
import { INDEX_NAMES, UNMEASURED } from "./types.js";

export const GATE_OPEN_OUTCOME = "ReadyForDesign";

export interface SliderValues {
  pi: number;
  u: number;
  f: number | null; // null = unmeasured
  pri: number;
  iu: number;
  gq: number;
}

export function slidersFromSnapshot(snapshot: Snapshot): SliderValues {
  return {
    pi: snapshot.pi,
    u: snapshot.u,
    f: snapshot.f === UNMEASURED ? null : snapshot.f,
    pri: snapshot.pri,
    iu: snapshot.iu,
    gq: snapshot.gq,
  };
}

export function snapshotFromSliders(values: SliderValues): Snapshot {
  return {
    pi: values.pi,
    u: values.u,
    f: values.f === null ? UNMEASURED : values.f,
    pri: values.pri,
    iu: values.iu,
    gq: values.gq,
  };
}

export interface BannerState {
  open: boolean;
  outcome: string;
  firedStep: string;
  rationale: string;
  advisoryLine: string;
}

export function bannerFromRecommendation(rec: Recommendation): BannerState {
  return {
    open: rec.outcome === GATE_OPEN_OUTCOME,
    outcome: rec.outcome,
    firedStep: rec.fired_step,
    rationale: rec.rationale,
    advisoryLine: rec.advisories.join(", "),
  };
}

export interface TraceRow {
  step: string;
  verdict: string;
  guard: string;
  fired: boolean;
}

export function traceRows(rec: Recommendation): TraceRow[] {
  return rec.trace.map((entry) => ({
    step: entry.step,
    verdict: entry.verdict,
    guard: entry.guard,
    fired: entry.verdict === "fired",
  }));
}

/** Indices that fail the strict pass check; the "distance to gate" hint. */
export function failingIndices(snapshot: Snapshot, threshold: number): IndexName[] {
  const failing: IndexName[] = [];
  for (const name of INDEX_NAMES) {
    const value = snapshot[name];
    if (value === UNMEASURED) {
      failing.push(name); // unmeasured cannot pass a strict gate
    } else if (!(value > threshold)) {
      failing.push(name);
    }
  }
  return failing;
}

export function gaugeClass(value: number | typeof UNMEASURED, threshold: number): "pass" | "fail" {
  return value !== UNMEASURED && value > threshold ? "pass" : "fail";
}

export interface HistorySeries {
  seqs: number[];
  // per index: value or null where unmeasured
  values: Record<IndexName, (number | null)[]>;
}

export function historySeries(iterations: IterationDoc[]): HistorySeries {
  const series: HistorySeries = {
    seqs: iterations.map((it) => it.seq),
    values: { pi: [], u: [], f: [], pri: [], iu: [], gq: [] },
  };
  for (const it of iterations) {
    for (const name of INDEX_NAMES) {
      const value = it.snapshot[name];
      series.values[name].push(value === UNMEASURED ? null : value);
    }
  }
  return series;
}

const SERIES_COLORS: Record<IndexName, string> = {
  pi: "#2563eb",
  u: "#16a34a",
  f: "#d97706",
  pri: "#9333ea",
  iu: "#0891b2",
  gq: "#dc2626",
};

/** Standalone SVG line chart: one polyline per index, threshold rule drawn in. */
export function chartSvg(
  series: HistorySeries,
  threshold: number,
  width = 640,
  height = 260,
): string {
  const pad = { left: 36, right: 96, top: 12, bottom: 24 };
  const plotW = width - pad.left - pad.right;
  const plotH = height - pad.top - pad.bottom;
  const n = series.seqs.length;
  const x = (i: number) => pad.left + (n <= 1 ? plotW / 2 : (i * plotW) / (n - 1));
  const y = (v: number) => pad.top + (1 - v) * plotH;

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${width} ${height}" class="history-chart">`,
  );
  parts.push(
    `<line x1="${pad.left}" y1="${y(threshold)}" x2="${pad.left + plotW}" y2="${y(threshold)}" ` +
      `stroke="#333" stroke-dasharray="5 4" stroke-width="1"/>`,
  );
  parts.push(
    `<text x="${pad.left + plotW + 4}" y="${y(threshold) + 4}" font-size="10" fill="#333">t=${threshold}</text>`,
  );
  let legendY = pad.top + 8;
  for (const name of INDEX_NAMES) {
    const color = SERIES_COLORS[name];
    const points = series.values[name]
      .map((v, i) => (v === null ? null : `${x(i).toFixed(1)},${y(v).toFixed(1)}`))
      .filter((p): p is string => p !== null);
    if (points.length > 0) {
      parts.push(
        `<polyline fill="none" stroke="${color}" stroke-width="1.5" points="${points.join(" ")}"/>`,
      );
      for (const p of points) {
        const [px, py] = p.split(",");
        parts.push(`<circle cx="${px}" cy="${py}" r="2.5" fill="${color}"/>`);
      }
    }
    parts.push(
      `<text x="${width - pad.right + 40}" y="${legendY}" font-size="10" fill="${color}">${name.toUpperCase()}</text>`,
    );
    legendY += 12;
  }
  for (let i = 0; i < n; i += 1) {
    parts.push(
      `<text x="${x(i)}" y="${height - 6}" font-size="10" text-anchor="middle" fill="#555">${series.seqs[i]}</text>`,
    );
  }
  parts.push("</svg>");
  return parts.join("");
}

/** Clamp-free score reader for bounded inputs: out-of-range is a rejection,
 * not a silent fix, so nothing invalid ever reaches the wire. */
export function readScore(raw: string): number | null {
  if (raw.trim() === "") {
    return null;
  }
  const value = Number(raw);
  if (!Number.isFinite(value) || value < 0 || value > 1) {
    return null;
  }
  return value;
}
