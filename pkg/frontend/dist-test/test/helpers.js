// Shared test plumbing: frozen service fixtures and a recording fake fetch.
import { readFileSync } from "node:fs";
function load(name) {
    const url = new URL(`./fixtures/${name}`, import.meta.url);
    return JSON.parse(readFileSync(url, "utf-8"));
}
export const ruleTableFixture = () => load("rule_table.json");
export const whatIfFixture = () => load("whatif_u.json");
/** fetch stand-in that serves canned responses and records every request. */
export function recordingFetch(respond) {
    const requests = [];
    const impl = async (url, init) => {
        const method = init?.method ?? "GET";
        const body = init?.body ? JSON.parse(init.body) : undefined;
        requests.push({ url, method, body });
        const { status, payload } = respond(url, method, body);
        return {
            ok: status >= 200 && status < 300,
            status,
            json: async () => payload,
        };
    };
    return { impl, requests };
}
/** Deterministic scheduler: debounce timers fire only when told to. */
export function manualScheduler() {
    let next = 0;
    const pending = new Map();
    return {
        schedule: (fn, _delay) => {
            next += 1;
            pending.set(next, fn);
            return next;
        },
        cancel: (handle) => {
            pending.delete(handle);
        },
        flush() {
            const fns = [...pending.values()];
            pending.clear();
            for (const fn of fns) {
                fn();
            }
        },
        get size() {
            return pending.size;
        },
    };
}
export async function settle() {
    // drain the microtask queue a few times so chained awaits finish
    for (let i = 0; i < 8; i += 1) {
        await Promise.resolve();
    }
}
