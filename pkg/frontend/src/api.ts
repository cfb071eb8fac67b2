// Thin client over /api/v1. Every displayed decision comes from here; the
// dashboard itself never evaluates a rule.

import type {
  ApiErrorBody,
  DecideResponse,
  InstrumentsDoc,
  IterationDoc,
  Overrides,
  ParalysisDoc,
  ProjectDocument,
  ProjectSummary,
  Snapshot,
  WhatIfResponse,
} from "./types.js";

export class ApiRequestError extends Error {
  readonly status: number;
  readonly body: ApiErrorBody;

  constructor(status: number, body: ApiErrorBody) {
    super(`${body.code}: ${body.message}`);
    this.status = status;
    this.body = body;
  }
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  private readonly fetchImpl: FetchLike;
  private readonly base: string;

  constructor(fetchImpl?: FetchLike, base = "") {
    this.fetchImpl = fetchImpl ?? ((url, init) => fetch(url, init));
    this.base = base;
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method, headers: { "content-type": "application/json" } };
    if (body !== undefined) {
      init.body = JSON.stringify(body);
    }
    const response = await this.fetchImpl(this.base + path, init);
    const payload = await response.json();
    if (!response.ok) {
      throw new ApiRequestError(response.status, payload as ApiErrorBody);
    }
    return payload as T;
  }

  decide(snapshot: Snapshot): Promise<DecideResponse> {
    return this.request("POST", "/api/v1/decide", { snapshot });
  }

  whatIf(snapshot: Snapshot, overrides: Overrides): Promise<WhatIfResponse> {
    return this.request("POST", "/api/v1/whatif", { snapshot, overrides });
  }

  listProjects(): Promise<{ projects: ProjectSummary[] }> {
    return this.request("GET", "/api/v1/projects");
  }

  createProject(name: string, id?: string): Promise<ProjectDocument> {
    return this.request("POST", "/api/v1/projects", id ? { name, id } : { name });
  }

  getProject(id: string): Promise<ProjectDocument> {
    return this.request("GET", `/api/v1/projects/${encodeURIComponent(id)}`);
  }

  appendIteration(
    id: string,
    revision: number,
    instruments: InstrumentsDoc,
  ): Promise<{ iteration: IterationDoc; revision: number }> {
    return this.request("POST", `/api/v1/projects/${encodeURIComponent(id)}/iterations`, {
      revision,
      instruments,
    });
  }

  history(id: string): Promise<{ iterations: IterationDoc[]; revision: number }> {
    return this.request("GET", `/api/v1/projects/${encodeURIComponent(id)}/history`);
  }

  paralysis(id: string): Promise<ParalysisDoc> {
    return this.request("GET", `/api/v1/projects/${encodeURIComponent(id)}/paralysis`);
  }
}
