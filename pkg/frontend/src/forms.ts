// Instrument form drafts and their translation into the wire schema.
// Scores are validated here (bounded controls plus readScore) so an invalid
// entry is rejected before any request is built.

import type { InstrumentsDoc } from "./types.js";
import { readScore } from "./model.js";

export interface QuestionDraft {
  id: string;
  text: string;
  weight: number;
  score: string;
}

export interface DataItemDraft {
  itemId: string;
  description: string;
  immediate: boolean;
  future: boolean;
  usefulness: string;
}

export interface ProcessDraft {
  processId: string;
  kind: "core" | "supporting";
  understanding: string;
}

export interface FactorDraft {
  factorId: string;
  description: string;
  severity: string; // blank = factor not present this iteration
}

export interface PeerDraft {
  memberIds: string[];
  rows: string[][]; // raw cell values
}

export interface InstrumentDraft {
  piQuestions: QuestionDraft[];
  peer: PeerDraft | null;
  dataItems: DataItemDraft[];
  processes: ProcessDraft[];
  iuQuestions: QuestionDraft[];
  factors: FactorDraft[];
}

export class DraftError extends Error {
  readonly fieldPath: string;

  constructor(fieldPath: string, message: string) {
    super(message);
    this.fieldPath = fieldPath;
  }
}

function requireScore(raw: string, fieldPath: string): number {
  const value = readScore(raw);
  if (value === null) {
    throw new DraftError(fieldPath, `expected a number in [0, 1], got "${raw}"`);
  }
  return value;
}

export function buildInstruments(draft: InstrumentDraft): InstrumentsDoc {
  const answers = draft.piQuestions.map((q) => ({
    question_id: q.id,
    score: requireScore(q.score, `pi_questionnaire.${q.id}`),
  }));

  let peer: InstrumentsDoc["peer_ratings"] = null;
  if (draft.peer && draft.peer.memberIds.length > 0) {
    peer = {
      member_ids: draft.peer.memberIds,
      ratings: draft.peer.rows.map((row, i) =>
        row.map((cell, j) => requireScore(cell, `peer_ratings.ratings[${i}][${j}]`)),
      ),
    };
  }

  const items = draft.dataItems
    .filter((item) => item.itemId.trim() !== "")
    .map((item) => {
      const tags: string[] = [];
      if (item.immediate) tags.push("immediate");
      if (item.future) tags.push("future");
      if (tags.length === 0) {
        throw new DraftError(`data_inventory.${item.itemId}.tags`, "pick immediate, future or both");
      }
      return {
        item_id: item.itemId.trim(),
        description: item.description,
        tags,
        usefulness: requireScore(item.usefulness, `data_inventory.${item.itemId}.usefulness`),
      };
    });
  if (items.length === 0) {
    throw new DraftError("data_inventory.items", "enter at least one data item");
  }

  const processes = draft.processes
    .filter((p) => p.processId.trim() !== "")
    .map((p) => ({
      process_id: p.processId.trim(),
      kind: p.kind,
      understanding: requireScore(p.understanding, `process_inventory.${p.processId}.understanding`),
    }));
  if (processes.length === 0) {
    throw new DraftError("process_inventory.processes", "enter at least one process");
  }

  const iuAnswers = draft.iuQuestions.map((q) =>
    requireScore(q.score, `iu_checklist.${q.id}`),
  );

  const factors = draft.factors
    .filter((f) => f.severity.trim() !== "")
    .map((f) => ({
      factor_id: f.factorId,
      description: f.description,
      severity: requireScore(f.severity, `gq_factors.${f.factorId}.severity`),
    }));

  return {
    pi_questionnaire: { answers, weights: draft.piQuestions.map((q) => q.weight) },
    peer_ratings: peer,
    data_inventory: { items },
    process_inventory: { processes },
    iu_checklist: { answers: iuAnswers },
    gq_factors: { factors },
  };
}

export const DEFAULT_PI_QUESTIONS: QuestionDraft[] = [
  { id: "fact_finding_techniques", text: "How many distinct fact-finding techniques did the team apply?", weight: 1, score: "" },
  { id: "site_visits", text: "How often was the system under study visited?", weight: 1, score: "" },
  { id: "team_composition", text: "How well balanced is the composition of the information-gathering team?", weight: 1, score: "" },
  { id: "team_experience", text: "How experienced is the team at this kind of investigation?", weight: 1, score: "" },
  { id: "literature_review", text: "How thoroughly was the existing system's written material reviewed?", weight: 1, score: "" },
  { id: "questionnaire_distinctiveness", text: "How tailored to this system were the questionnaires and feedback forms?", weight: 1, score: "" },
  { id: "automated_tooling", text: "How much automated tooling supported the manual gathering strategies?", weight: 1, score: "" },
  { id: "documentation", text: "How much of the gathered information is kept in properly documented form?", weight: 1, score: "" },
];

export const DEFAULT_IU_QUESTIONS: QuestionDraft[] = [
  { id: "expected_outputs", text: "How clearly are the outputs the interface must provide understood?", weight: 1, score: "" },
  { id: "reflected_processes", text: "How clearly is it known which processes the interface will surface?", weight: 1, score: "" },
  { id: "user_types", text: "How well identified are the kinds of users the interface will serve?", weight: 1, score: "" },
  { id: "platform", text: "How settled is the choice between a desktop and a web interface?", weight: 1, score: "" },
];

export const DEFAULT_FACTORS: FactorDraft[] = [
  { factorId: "ui_language", description: "Preferred user-interface language differs between the deployment regions", severity: "" },
  { factorId: "idea_resistance", description: "Local receptiveness to new ideas differs between the regions", severity: "" },
  { factorId: "red_tape", description: "Administrative overhead is heavier in the target region", severity: "" },
  { factorId: "terrain", description: "Terrain makes on-site information gathering harder in the target region", severity: "" },
];
