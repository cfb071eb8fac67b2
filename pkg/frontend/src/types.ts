// Wire types mirroring the service's document schema.

export type IndexName = "pi" | "u" | "f" | "pri" | "iu" | "gq";

export const INDEX_NAMES: readonly IndexName[] = ["pi", "u", "f", "pri", "iu", "gq"];

export const UNMEASURED = "unmeasured" as const;

export interface Snapshot {
  pi: number;
  u: number;
  f: number | typeof UNMEASURED;
  pri: number;
  iu: number;
  gq: number;
}

export interface TraceEntry {
  step: string;
  guard: string;
  verdict: string;
}

export interface Recommendation {
  outcome: string;
  fired_step: string;
  advisories: string[];
  rationale: string;
  trace: TraceEntry[];
}

export interface DecideResponse {
  recommendation: Recommendation;
  trace: TraceEntry[];
}

export interface WhatIfResponse {
  recommendation: Recommendation;
}

export interface ApiErrorBody {
  code: string;
  message: string;
  field_path: string | null;
}

export interface EngineConfigDoc {
  threshold: number;
  pri_mode: "literal" | "pragmatic";
  pri_unity_epsilon: number;
  paralysis_window: number;
  stagnation_delta: number;
  core_weight: number;
  supporting_weight: number;
  lambda: number;
}

export interface IterationDoc {
  seq: number;
  timestamp: string;
  instruments: InstrumentsDoc | null;
  snapshot: Snapshot;
  recommendation: Recommendation;
}

export interface ProjectDocument {
  schema_version: number;
  project: { id: string; name: string; created_at: string };
  config: EngineConfigDoc;
  revision: number;
  iterations: IterationDoc[];
}

export interface ProjectSummary {
  id: string;
  name: string;
  created_at: string;
  revision: number;
  iterations: number;
}

export interface ParalysisDoc {
  triggered: boolean;
  kind: string | null;
  window: number[];
}

export interface InstrumentsDoc {
  pi_questionnaire: {
    answers: { question_id: string; score: number }[];
    weights: number[];
  };
  peer_ratings: {
    member_ids: string[];
    ratings: number[][];
    roles?: string[];
  } | null;
  data_inventory: {
    items: { item_id: string; description: string; tags: string[]; usefulness: number }[];
  };
  process_inventory: {
    processes: { process_id: string; kind: string; understanding: number }[];
  };
  iu_checklist: { answers: number[] };
  gq_factors: {
    factors: { factor_id: string; description: string; severity: number }[];
  };
}

export type Overrides = Partial<Record<IndexName, number | typeof UNMEASURED>>;
