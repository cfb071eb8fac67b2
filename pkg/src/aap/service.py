"""HTTP facade over the engine and the project store.

All bodies mirror the project document schema; parsing is the same strict
code path the store uses, so the service accepts exactly what the files hold.
Every non-2xx response carries a single error object:
``{"code", "message", "field_path"}`` with code one of range_violation,
revision_conflict, not_found, malformed, instrument_invalid.

Routes (all under /api/v1):
    POST /decide                      run the gate on a snapshot, stateless
    POST /whatif                      gate with overrides applied, no writes
    POST /projects                    create a project
    GET  /projects                    list projects
    GET  /projects/{id}               full project document
    POST /projects/{id}/iterations    append (requires current revision)
    GET  /projects/{id}/history       iteration records
    GET  /projects/{id}/paralysis     paralysis report over the history

The dashboard's static bundle, when built, is served at /.
"""

from __future__ import annotations

import json
import os
from pathlib import Path
from typing import Any, Mapping

from fastapi import FastAPI, Request
from fastapi.responses import HTMLResponse, JSONResponse
from fastapi.staticfiles import StaticFiles

from .engine import decide, detect_paralysis, what_if
from .errors import (
    AapError,
    EmptyHistory,
    EmptyInventory,
    InstrumentInvalid,
    InvariantViolation,
    MalformedDocument,
    RangeViolation,
    RevisionConflict,
    SchemaVersionMismatch,
    UnknownIndexName,
)
from .store import (
    ProjectStore,
    history_pairs,
    new_project,
    parse_config,
    parse_instruments,
    parse_snapshot,
    recommendation_to_doc,
    to_document,
    utc_now_iso,
    _as_mapping,
    _check_keys,
    _integer,
    _iteration_to_doc,
    _string,
)

__all__ = ["create_app", "DEFAULT_PORT"]

DEFAULT_PORT = 8640

_PLACEHOLDER_PAGE = """<!doctype html>
<html><head><title>aap service</title></head>
<body>
<h1>aap service</h1>
<p>The API lives under <code>/api/v1</code>. No dashboard bundle is built;
point AAP_DASHBOARD_DIR at a built bundle to serve it here.</p>
</body></html>
"""


class _NotFound(AapError):
    pass


def _error_payload(code: str, message: str, field_path: str | None = None) -> dict[str, Any]:
    return {"code": code, "message": message, "field_path": field_path}


def _error_response(status: int, code: str, exc: AapError) -> JSONResponse:
    return JSONResponse(
        status_code=status,
        content=_error_payload(code, str(exc), getattr(exc, "field_path", None)),
    )


def _classify(exc: AapError) -> tuple[int, str]:
    if isinstance(exc, _NotFound):
        return 404, "not_found"
    if isinstance(exc, RevisionConflict):
        return 409, "revision_conflict"
    if isinstance(exc, RangeViolation):
        return 400, "range_violation"
    if isinstance(exc, (InstrumentInvalid, EmptyInventory)):
        return 400, "instrument_invalid"
    if isinstance(exc, (MalformedDocument, SchemaVersionMismatch, UnknownIndexName, EmptyHistory)):
        return 400, "malformed"
    if isinstance(exc, InvariantViolation):
        # A stored document failing its own recompute check is a server-side problem.
        return 500, "malformed"
    return 400, "malformed"


async def _read_body(request: Request) -> Mapping[str, Any]:
    raw = await request.body()
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise MalformedDocument(f"request body is not valid JSON ({exc})") from exc
    return _as_mapping(doc, "body")


def _parse_overrides(doc: Any) -> dict[str, float | None]:
    mapping = _as_mapping(doc, "overrides")
    overrides: dict[str, float | None] = {}
    for key, value in mapping.items():
        if value == "unmeasured" or value is None:
            overrides[key] = None
        elif isinstance(value, (int, float)) and not isinstance(value, bool):
            overrides[key] = float(value)
        else:
            raise MalformedDocument(
                f"overrides.{key}: expected a number or \"unmeasured\", got {value!r}",
                field_path=f"overrides.{key}",
            )
    return overrides


def create_app(store_dir: str | Path | None = None, dashboard_dir: str | Path | None = None) -> FastAPI:
    """Build the application. Store directory resolution order: argument,
    AAP_STORE_DIR, ./aap-store."""
    resolved_store = Path(store_dir or os.environ.get("AAP_STORE_DIR") or "aap-store")
    store = ProjectStore(resolved_store)
    app = FastAPI(title="aap service", docs_url=None, redoc_url=None, openapi_url=None)
    app.state.store = store

    @app.exception_handler(AapError)
    async def handle_aap_error(_request: Request, exc: AapError) -> JSONResponse:
        status, code = _classify(exc)
        return _error_response(status, code, exc)

    @app.post("/api/v1/decide")
    async def post_decide(request: Request) -> JSONResponse:
        body = await _read_body(request)
        _check_keys(body, ("snapshot",), ("config",), "body")
        snapshot = parse_snapshot(body["snapshot"], "snapshot")
        config = parse_config(body["config"], "config", partial=True) if "config" in body else None
        rec = decide(snapshot, config.engine_config() if config else None)
        doc = recommendation_to_doc(rec)
        return JSONResponse(content={"recommendation": doc, "trace": doc["trace"]})

    @app.post("/api/v1/whatif")
    async def post_whatif(request: Request) -> JSONResponse:
        body = await _read_body(request)
        _check_keys(body, ("snapshot", "overrides"), ("config",), "body")
        snapshot = parse_snapshot(body["snapshot"], "snapshot")
        overrides = _parse_overrides(body["overrides"])
        config = parse_config(body["config"], "config", partial=True) if "config" in body else None
        rec = what_if(snapshot, overrides, config.engine_config() if config else None)
        return JSONResponse(content={"recommendation": recommendation_to_doc(rec)})

    @app.post("/api/v1/projects")
    async def post_project(request: Request) -> JSONResponse:
        body = await _read_body(request)
        _check_keys(body, ("name",), ("id", "config"), "body")
        name = _string(body["name"], "body.name")
        project_id = _string(body.get("id", _slug(name)), "body.id")
        if not project_id:
            raise MalformedDocument("body.id: must not be empty", field_path="body.id")
        config = parse_config(body["config"], "config", partial=True) if "config" in body else None
        record = new_project(project_id, name, config)
        store.create(record)
        return JSONResponse(status_code=201, content=to_document(record))

    @app.get("/api/v1/projects")
    async def list_projects() -> JSONResponse:
        summaries = []
        for project_id in store.list_ids():
            record = store.load(project_id)
            summaries.append(
                {
                    "id": record.project_id,
                    "name": record.name,
                    "created_at": record.created_at,
                    "revision": record.revision,
                    "iterations": len(record.iterations),
                }
            )
        return JSONResponse(content={"projects": summaries})

    def _load_or_404(project_id: str):
        if not store.exists(project_id):
            raise _NotFound(f"project {project_id!r} not found")
        return store.load(project_id)

    @app.get("/api/v1/projects/{project_id}")
    async def get_project(project_id: str) -> JSONResponse:
        return JSONResponse(content=to_document(_load_or_404(project_id)))

    @app.post("/api/v1/projects/{project_id}/iterations")
    async def post_iteration(project_id: str, request: Request) -> JSONResponse:
        body = await _read_body(request)
        _check_keys(body, ("revision",), ("instruments", "snapshot"), "body")
        revision = _integer(body["revision"], "body.revision")
        has_instruments = body.get("instruments") is not None
        has_snapshot = body.get("snapshot") is not None
        if has_instruments == has_snapshot:
            raise MalformedDocument(
                "body: supply exactly one of instruments or snapshot", field_path="body"
            )
        _load_or_404(project_id)
        instruments = parse_instruments(body["instruments"]) if has_instruments else None
        snapshot = parse_snapshot(body["snapshot"]) if has_snapshot else None
        updated, iteration = store.append(
            project_id,
            revision=revision,
            instruments=instruments,
            snapshot=snapshot,
            timestamp=utc_now_iso(),
        )
        return JSONResponse(
            status_code=201,
            content={"iteration": _iteration_to_doc(iteration), "revision": updated.revision},
        )

    @app.get("/api/v1/projects/{project_id}/history")
    async def get_history(project_id: str) -> JSONResponse:
        record = _load_or_404(project_id)
        return JSONResponse(
            content={
                "iterations": [_iteration_to_doc(it) for it in record.iterations],
                "revision": record.revision,
            }
        )

    @app.get("/api/v1/projects/{project_id}/paralysis")
    async def get_paralysis(project_id: str) -> JSONResponse:
        record = _load_or_404(project_id)
        report = detect_paralysis(
            history_pairs(record),
            record.config.engine_config(),
            seqs=[it.seq for it in record.iterations],
        )
        return JSONResponse(
            content={
                "triggered": report.triggered,
                "kind": report.kind.value if report.kind else None,
                "window": list(report.window),
            }
        )

    resolved_dashboard = _resolve_dashboard_dir(dashboard_dir)
    if resolved_dashboard is not None:
        app.mount("/", StaticFiles(directory=resolved_dashboard, html=True), name="dashboard")
    else:

        @app.get("/", response_class=HTMLResponse)
        async def index() -> str:
            return _PLACEHOLDER_PAGE

    return app


def _slug(name: str) -> str:
    cleaned = "".join(c.lower() if c.isalnum() else "-" for c in name.strip())
    while "--" in cleaned:
        cleaned = cleaned.replace("--", "-")
    return cleaned.strip("-") or "project"


def _resolve_dashboard_dir(dashboard_dir: str | Path | None) -> Path | None:
    """An explicit argument (or AAP_DASHBOARD_DIR) is authoritative; only when
    neither is given does the conventional frontend/dist location apply."""
    explicit = dashboard_dir or os.environ.get("AAP_DASHBOARD_DIR")
    candidate = Path(explicit) if explicit else Path("frontend") / "dist"
    if candidate.is_dir() and (candidate / "index.html").exists():
        return candidate
    return None
