// Thin client over /api/v1. Every displayed decision comes from here; the
// dashboard itself never evaluates a rule.
export class ApiRequestError extends Error {
    constructor(status, body) {
        super(`${body.code}: ${body.message}`);
        this.status = status;
        this.body = body;
    }
}
export class ApiClient {
    constructor(fetchImpl, base = "") {
        this.fetchImpl = fetchImpl ?? ((url, init) => fetch(url, init));
        this.base = base;
    }
    async request(method, path, body) {
        const init = { method, headers: { "content-type": "application/json" } };
        if (body !== undefined) {
            init.body = JSON.stringify(body);
        }
        const response = await this.fetchImpl(this.base + path, init);
        const payload = await response.json();
        if (!response.ok) {
            throw new ApiRequestError(response.status, payload);
        }
        return payload;
    }
    decide(snapshot) {
        return this.request("POST", "/api/v1/decide", { snapshot });
    }
    whatIf(snapshot, overrides) {
        return this.request("POST", "/api/v1/whatif", { snapshot, overrides });
    }
    listProjects() {
        return this.request("GET", "/api/v1/projects");
    }
    createProject(name, id) {
        return this.request("POST", "/api/v1/projects", id ? { name, id } : { name });
    }
    getProject(id) {
        return this.request("GET", `/api/v1/projects/${encodeURIComponent(id)}`);
    }
    appendIteration(id, revision, instruments) {
        return this.request("POST", `/api/v1/projects/${encodeURIComponent(id)}/iterations`, {
            revision,
            instruments,
        });
    }
    history(id) {
        return this.request("GET", `/api/v1/projects/${encodeURIComponent(id)}/history`);
    }
    paralysis(id) {
        return this.request("GET", `/api/v1/projects/${encodeURIComponent(id)}/paralysis`);
    }
}
