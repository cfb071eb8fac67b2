import test from "node:test";
import assert from "node:assert/strict";
import { chartSvg, failingIndices, gaugeClass, historySeries, readScore, slidersFromSnapshot, snapshotFromSliders, } from "../src/model.js";
const SNAP = { pi: 0.8, u: 0.3, f: 0.8, pri: 0.9, iu: 0.8, gq: 0.8 };
test("sliders round-trip through snapshots, unmeasured included", () => {
    assert.deepEqual(snapshotFromSliders(slidersFromSnapshot(SNAP)), SNAP);
    const unmeasured = { ...SNAP, f: "unmeasured" };
    const sliders = slidersFromSnapshot(unmeasured);
    assert.equal(sliders.f, null);
    assert.deepEqual(snapshotFromSliders(sliders), unmeasured);
});
test("distance-to-gate lists strict failures only", () => {
    assert.deepEqual(failingIndices(SNAP, 0.5), ["u"]);
    const boundary = { pi: 0.5, u: 0.5, f: 0.5, pri: 0.5, iu: 0.5, gq: 0.5 };
    assert.deepEqual(failingIndices(boundary, 0.5), ["pi", "u", "f", "pri", "iu", "gq"]);
    const unmeasured = { ...SNAP, u: 0.9, f: "unmeasured" };
    assert.deepEqual(failingIndices(unmeasured, 0.5), ["f"]);
});
test("gauges color at the strict threshold", () => {
    assert.equal(gaugeClass(0.500001, 0.5), "pass");
    assert.equal(gaugeClass(0.5, 0.5), "fail");
    assert.equal(gaugeClass("unmeasured", 0.5), "fail");
});
test("score reader rejects out-of-range and junk", () => {
    assert.equal(readScore("0.8"), 0.8);
    assert.equal(readScore("0"), 0);
    assert.equal(readScore("1"), 1);
    assert.equal(readScore("1.2"), null);
    assert.equal(readScore("-0.1"), null);
    assert.equal(readScore("fast"), null);
    assert.equal(readScore(""), null);
});
function iteration(seq, snapshot) {
    return {
        seq,
        timestamp: "2026-08-01T00:00:00Z",
        instruments: null,
        snapshot,
        recommendation: { outcome: "RestartAnalysis", fired_step: "3a", advisories: [], rationale: "", trace: [] },
    };
}
test("history series track every index with nulls for unmeasured", () => {
    const series = historySeries([
        iteration(1, SNAP),
        iteration(2, { ...SNAP, f: "unmeasured", u: 0.6 }),
    ]);
    assert.deepEqual(series.seqs, [1, 2]);
    assert.deepEqual(series.values.u, [0.3, 0.6]);
    assert.deepEqual(series.values.f, [0.8, null]);
});
test("chart svg draws the threshold line and one series per measured index", () => {
    const svg = chartSvg(historySeries([iteration(1, SNAP), iteration(2, SNAP)]), 0.5);
    assert.ok(svg.startsWith("<svg"));
    assert.ok(svg.includes("t=0.5"));
    const polylines = svg.match(/<polyline/g) ?? [];
    assert.equal(polylines.length, 6);
    // unmeasured-only series are skipped rather than drawn at zero
    const noF = chartSvg(historySeries([iteration(1, { ...SNAP, f: "unmeasured" })]), 0.5);
    assert.equal((noF.match(/<polyline/g) ?? []).length, 5);
});
