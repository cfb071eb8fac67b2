// Dashboard bootstrap: project selection, instrument entry, decision view,
// what-if sliders, history. All decisions are fetched, never computed here.
import { ApiClient, ApiRequestError } from "./api.js";
import { buildInstruments, DEFAULT_FACTORS, DEFAULT_IU_QUESTIONS, DEFAULT_PI_QUESTIONS, DraftError, } from "./forms.js";
import { slidersFromSnapshot } from "./model.js";
import { el, renderBanner, renderDistanceHint, renderGauges, renderHistory, renderTrace, showError, } from "./render.js";
import { UNMEASURED } from "./types.js";
import { WhatIfPanel } from "./whatif.js";
const api = new ApiClient();
let project = null;
let whatIfBase = null;
const whatIfPanel = new WhatIfPanel(api, {
    showRecommendation: (rec, live) => {
        renderBanner(el("whatif-banner"), rec, live);
        renderTrace(el("whatif-trace"), rec);
        showError(el("whatif-error"), null);
    },
    showError: (message) => showError(el("whatif-error"), message),
}, 150);
function threshold() {
    return project?.config.threshold ?? 0.5;
}
async function refreshProjectList(selected) {
    const picker = el("project-picker");
    const { projects } = await api.listProjects();
    picker.replaceChildren();
    for (const summary of projects) {
        const option = document.createElement("option");
        option.value = summary.id;
        option.textContent = `${summary.name} (${summary.iterations} iterations)`;
        picker.appendChild(option);
    }
    if (projects.length === 0) {
        el("project-empty").hidden = false;
        return;
    }
    el("project-empty").hidden = true;
    picker.value = selected ?? projects[0].id;
    await openProject(picker.value);
}
async function openProject(id) {
    project = await api.getProject(id);
    const latest = project.iterations.at(-1) ?? null;
    const paralysis = await api.paralysis(id);
    renderHistory(el("history-chart"), el("paralysis-badge"), project.iterations, threshold(), paralysis);
    const decision = el("decision");
    if (latest) {
        decision.hidden = false;
        renderGauges(el("gauges"), latest.snapshot, threshold());
        renderBanner(el("decision-banner"), latest.recommendation, false);
        renderTrace(el("decision-trace"), latest.recommendation);
        whatIfBase = latest.snapshot;
        whatIfPanel.reset(latest.snapshot, latest.recommendation);
        syncSliders(latest.snapshot);
        renderDistanceHint(el("whatif-hint"), latest.snapshot, threshold());
        el("whatif").hidden = false;
    }
    else {
        decision.hidden = true;
        el("whatif").hidden = true;
    }
    el("revision-note").textContent = `revision ${project.revision}`;
}
// ---------------------------------------------------------------------------
// What-if sliders
// ---------------------------------------------------------------------------
const SLIDER_NAMES = ["pi", "u", "f", "pri", "iu", "gq"];
function syncSliders(snapshot) {
    const values = slidersFromSnapshot(snapshot);
    for (const name of SLIDER_NAMES) {
        const slider = el(`slider-${name}`);
        const value = values[name];
        slider.disabled = value === null;
        slider.value = value === null ? "0" : String(value);
        el(`slider-${name}-value`).textContent = value === null ? "unmeasured" : value.toFixed(2);
    }
}
function wireSliders() {
    for (const name of SLIDER_NAMES) {
        const slider = el(`slider-${name}`);
        slider.min = "0";
        slider.max = "1";
        slider.step = "0.01";
        slider.addEventListener("input", () => {
            const value = Number(slider.value);
            el(`slider-${name}-value`).textContent = value.toFixed(2);
            whatIfPanel.setValue(name, value);
            const current = whatIfPanel.values();
            if (current) {
                const asSnapshot = {
                    pi: current.pi,
                    u: current.u,
                    f: current.f === null ? UNMEASURED : current.f,
                    pri: current.pri,
                    iu: current.iu,
                    gq: current.gq,
                };
                renderDistanceHint(el("whatif-hint"), asSnapshot, threshold());
            }
        });
    }
    el("whatif-reset").addEventListener("click", () => {
        if (whatIfBase && project) {
            const latest = project.iterations.at(-1);
            whatIfPanel.reset(whatIfBase, latest ? latest.recommendation : null);
            syncSliders(whatIfBase);
            renderDistanceHint(el("whatif-hint"), whatIfBase, threshold());
        }
    });
}
// ---------------------------------------------------------------------------
// Instrument form
// ---------------------------------------------------------------------------
const dataItems = [];
const processes = [];
function addDataItemRow() {
    dataItems.push({ itemId: "", description: "", immediate: true, future: false, usefulness: "" });
    renderDataItems();
}
function renderDataItems() {
    const host = el("data-items");
    host.replaceChildren();
    dataItems.forEach((item, index) => {
        const row = document.createElement("div");
        row.className = "form-row";
        row.innerHTML = `
      <input class="di-id" placeholder="item id" value="${item.itemId}">
      <input class="di-desc" placeholder="description" value="${item.description}">
      <label><input type="checkbox" class="di-imm" ${item.immediate ? "checked" : ""}> immediate</label>
      <label><input type="checkbox" class="di-fut" ${item.future ? "checked" : ""}> future</label>
      <input class="di-use" type="number" min="0" max="1" step="0.05" placeholder="usefulness" value="${item.usefulness}">
    `;
        row.querySelector(".di-id").addEventListener("input", (e) => {
            item.itemId = e.target.value;
        });
        row.querySelector(".di-desc").addEventListener("input", (e) => {
            item.description = e.target.value;
        });
        row.querySelector(".di-imm").addEventListener("change", (e) => {
            item.immediate = e.target.checked;
        });
        row.querySelector(".di-fut").addEventListener("change", (e) => {
            item.future = e.target.checked;
        });
        row.querySelector(".di-use").addEventListener("input", (e) => {
            item.usefulness = e.target.value;
        });
        host.appendChild(row);
    });
}
function addProcessRow() {
    processes.push({ processId: "", kind: "core", understanding: "" });
    renderProcesses();
}
function renderProcesses() {
    const host = el("process-rows");
    host.replaceChildren();
    processes.forEach((proc) => {
        const row = document.createElement("div");
        row.className = "form-row";
        row.innerHTML = `
      <input class="pr-id" placeholder="process id" value="${proc.processId}">
      <select class="pr-kind">
        <option value="core" ${proc.kind === "core" ? "selected" : ""}>core</option>
        <option value="supporting" ${proc.kind === "supporting" ? "selected" : ""}>supporting</option>
      </select>
      <input class="pr-und" type="number" min="0" max="1" step="0.05" placeholder="understanding" value="${proc.understanding}">
    `;
        row.querySelector(".pr-id").addEventListener("input", (e) => {
            proc.processId = e.target.value;
        });
        row.querySelector(".pr-kind").addEventListener("change", (e) => {
            proc.kind = e.target.value;
        });
        row.querySelector(".pr-und").addEventListener("input", (e) => {
            proc.understanding = e.target.value;
        });
        host.appendChild(row);
    });
}
function renderScoreList(hostId, drafts) {
    const host = el(hostId);
    host.replaceChildren();
    for (const draft of drafts) {
        const row = document.createElement("label");
        row.className = "score-row";
        const text = document.createElement("span");
        text.textContent = draft.text;
        const input = document.createElement("input");
        input.type = "number";
        input.min = "0";
        input.max = "1";
        input.step = "0.05";
        input.addEventListener("input", () => {
            draft.score = input.value;
        });
        row.append(text, input);
        host.appendChild(row);
    }
}
function renderFactors() {
    const host = el("factor-rows");
    host.replaceChildren();
    for (const factor of DEFAULT_FACTORS) {
        const row = document.createElement("label");
        row.className = "score-row";
        const text = document.createElement("span");
        text.textContent = factor.description;
        const input = document.createElement("input");
        input.type = "number";
        input.min = "0";
        input.max = "1";
        input.step = "0.05";
        input.placeholder = "severity (blank = absent)";
        input.addEventListener("input", () => {
            factor.severity = input.value;
        });
        row.append(text, input);
        host.appendChild(row);
    }
}
async function submitInstruments() {
    if (!project) {
        return;
    }
    const draft = {
        piQuestions: DEFAULT_PI_QUESTIONS,
        peer: null,
        dataItems,
        processes,
        iuQuestions: DEFAULT_IU_QUESTIONS,
        factors: DEFAULT_FACTORS,
    };
    try {
        const instruments = buildInstruments(draft);
        await api.appendIteration(project.project.id, project.revision, instruments);
        showError(el("form-error"), null);
        await refreshProjectList(project.project.id);
    }
    catch (error) {
        if (error instanceof DraftError) {
            showError(el("form-error"), `${error.fieldPath}: ${error.message}`);
        }
        else if (error instanceof ApiRequestError && error.status === 409) {
            showError(el("form-error"), "someone else recorded an iteration first; refresh to load the latest revision");
        }
        else if (error instanceof ApiRequestError) {
            const where = error.body.field_path ? ` at ${error.body.field_path}` : "";
            showError(el("form-error"), `${error.body.message}${where}`);
        }
        else {
            showError(el("form-error"), error instanceof Error ? error.message : String(error));
        }
    }
}
// ---------------------------------------------------------------------------
async function boot() {
    renderScoreList("pi-questions", DEFAULT_PI_QUESTIONS);
    renderScoreList("iu-questions", DEFAULT_IU_QUESTIONS);
    renderFactors();
    addDataItemRow();
    addProcessRow();
    wireSliders();
    el("add-data-item").addEventListener("click", addDataItemRow);
    el("add-process").addEventListener("click", addProcessRow);
    el("submit-instruments").addEventListener("click", () => void submitInstruments());
    el("project-picker").addEventListener("change", (e) => void openProject(e.target.value));
    el("create-project").addEventListener("click", async () => {
        const name = el("new-project-name").value.trim();
        if (name) {
            const created = await api.createProject(name);
            await refreshProjectList(created.project.id);
        }
    });
    await refreshProjectList();
}
void boot();
