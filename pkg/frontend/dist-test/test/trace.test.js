// Trace fidelity: what the dashboard renders for each rule-table fixture is
// byte-identical to what the service returned. The strings below are exactly
// the values injected into the DOM via textContent.
import test from "node:test";
import assert from "node:assert/strict";
import { bannerFromRecommendation, traceRows } from "../src/model.js";
import { ruleTableFixture } from "./helpers.js";
const fixture = ruleTableFixture();
test("fired step and advisory set byte-match the service response", () => {
    for (const [step, { response }] of Object.entries(fixture)) {
        const banner = bannerFromRecommendation(response.recommendation);
        assert.equal(banner.firedStep, response.recommendation.fired_step, `step ${step}`);
        assert.equal(banner.advisoryLine, response.recommendation.advisories.join(", "), `step ${step}`);
        assert.equal(banner.outcome, response.recommendation.outcome, `step ${step}`);
        assert.equal(banner.rationale, response.recommendation.rationale, `step ${step}`);
    }
});
test("trace rows reproduce the service trace verbatim and in order", () => {
    for (const [step, { response }] of Object.entries(fixture)) {
        const rows = traceRows(response.recommendation);
        assert.equal(rows.length, response.recommendation.trace.length, `step ${step}`);
        response.recommendation.trace.forEach((entry, i) => {
            assert.equal(rows[i].step, entry.step, `step ${step} row ${i}`);
            assert.equal(rows[i].guard, entry.guard, `step ${step} row ${i}`);
            assert.equal(rows[i].verdict, entry.verdict, `step ${step} row ${i}`);
        });
    }
});
test("exactly the last trace row is marked fired and matches fired_step", () => {
    for (const [step, { response }] of Object.entries(fixture)) {
        const rows = traceRows(response.recommendation);
        const fired = rows.filter((r) => r.fired);
        assert.equal(fired.length, 1, `step ${step}`);
        assert.equal(rows[rows.length - 1].fired, true, `step ${step}`);
        assert.equal(fired[0].step, response.recommendation.fired_step, `step ${step}`);
    }
});
test("gate-open banner only for the ready outcome", () => {
    for (const [step, { response }] of Object.entries(fixture)) {
        const banner = bannerFromRecommendation(response.recommendation);
        assert.equal(banner.open, response.recommendation.outcome === "ReadyForDesign", `step ${step}`);
    }
});
