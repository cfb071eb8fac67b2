// Shared test plumbing: frozen service fixtures and a recording fake fetch.

import { readFileSync } from "node:fs";
import type { Recommendation, Snapshot } from "../src/types.js";

export interface RuleTableFixture {
  [step: string]: {
    request: { snapshot: Snapshot; config?: Record<string, unknown> };
    response: { recommendation: Recommendation; trace: unknown[] };
  };
}

export interface WhatIfFixture {
  snapshot: Snapshot;
  base_decide: { recommendation: Recommendation };
  override: Record<string, number>;
  whatif_response: { recommendation: Recommendation };
}

function load<T>(name: string): T {
  const url = new URL(`./fixtures/${name}`, import.meta.url);
  return JSON.parse(readFileSync(url, "utf-8")) as T;
}

export const ruleTableFixture = (): RuleTableFixture => load("rule_table.json");
export const whatIfFixture = (): WhatIfFixture => load("whatif_u.json");

export interface RecordedRequest {
  url: string;
  method: string;
  body: unknown;
}

/** fetch stand-in that serves canned responses and records every request. */
export function recordingFetch(
  respond: (url: string, method: string, body: unknown) => { status: number; payload: unknown },
) {
  const requests: RecordedRequest[] = [];
  const impl = async (url: string, init?: RequestInit): Promise<Response> => {
    const method = init?.method ?? "GET";
    const body = init?.body ? JSON.parse(init.body as string) : undefined;
    requests.push({ url, method, body });
    const { status, payload } = respond(url, method, body);
    return {
      ok: status >= 200 && status < 300,
      status,
      json: async () => payload,
    } as unknown as Response;
  };
  return { impl, requests };
}

/** Deterministic scheduler: debounce timers fire only when told to. */
export function manualScheduler() {
  let next = 0;
  const pending = new Map<number, () => void>();
  return {
    schedule: (fn: () => void, _delay: number): unknown => {
      next += 1;
      pending.set(next, fn);
      return next;
    },
    cancel: (handle: unknown): void => {
      pending.delete(handle as number);
    },
    flush(): void {
      const fns = [...pending.values()];
      pending.clear();
      for (const fn of fns) {
        fn();
      }
    },
    get size(): number {
      return pending.size;
    },
  };
}

export async function settle(): Promise<void> {
  // drain the microtask queue a few times so chained awaits finish
  for (let i = 0; i < 8; i += 1) {
    await Promise.resolve();
  }
}
