"""Versioned project storage: append-only iteration history as JSON documents.

One self-contained document per project, schema version 1. The document is
analyst-inspectable and diff-friendly; parsing is strict both ways: unknown
fields are rejected rather than dropped, and loading recomputes every
iteration whose instruments are stored, so a document that loads is a
document whose numbers can be trusted.

Concurrency is optimistic: every append must present the current revision and
bumps it by one. Past iterations are never rewritten.
"""

from __future__ import annotations

import json
import os
import threading
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Mapping

from .engine import (
    Advisory,
    EngineConfig,
    Outcome,
    PriMode,
    Recommendation,
    TraceEntry,
    decide,
)
from .errors import (
    InstrumentInvalid,
    InvariantViolation,
    MalformedDocument,
    RangeViolation,
    RevisionConflict,
    SchemaVersionMismatch,
)
from .indices import IndexSnapshot, snapshot_from_instruments
from .instruments import (
    DataInventory,
    DataItem,
    GQFactor,
    GQFactorList,
    InstrumentBundle,
    IUChecklist,
    PeerRatingMatrix,
    PIQuestionnaire,
    ProcessEntry,
    ProcessInventory,
)

__all__ = [
    "SCHEMA_VERSION",
    "IterationRecord",
    "ProjectConfig",
    "ProjectRecord",
    "ProjectStore",
    "append_iteration",
    "from_document",
    "load_project",
    "new_project",
    "parse_config",
    "parse_recommendation",
    "parse_snapshot",
    "save_project",
    "snapshot_to_doc",
    "recommendation_to_doc",
    "config_to_doc",
    "to_document",
    "utc_now_iso",
    "verify_project",
]

SCHEMA_VERSION = 1

#: Tolerance for the stored-snapshot vs. recomputed-from-instruments check.
RECOMPUTE_TOLERANCE = 1e-9

_TIMESTAMP_FORMAT = "%Y-%m-%dT%H:%M:%SZ"


def utc_now_iso() -> str:
    return datetime.now(timezone.utc).strftime(_TIMESTAMP_FORMAT)


def _check_timestamp(value: str, path: str) -> str:
    try:
        datetime.strptime(value, _TIMESTAMP_FORMAT)
    except (TypeError, ValueError):
        raise MalformedDocument(
            f"{path}: expected UTC timestamp like 2026-01-31T12:00:00Z, got {value!r}",
            field_path=path,
        ) from None
    return value


@dataclass(frozen=True, slots=True)
class ProjectConfig:
    """Per-project configuration: gate thresholds plus scoring parameters."""

    threshold: float = 0.5
    pri_mode: PriMode = PriMode.PRAGMATIC
    pri_unity_epsilon: float = 1e-9
    paralysis_window: int = 3
    stagnation_delta: float = 0.05
    core_weight: float = 2.0
    supporting_weight: float = 1.0
    lambda_: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "pri_mode", PriMode(self.pri_mode))
        self.engine_config()  # validates the gate fields
        if self.core_weight <= 0 or self.supporting_weight <= 0:
            raise RangeViolation("process kind weights must be positive")
        if not 0.0 <= self.lambda_ <= 1.0:
            raise RangeViolation("lambda must lie in [0, 1]")

    def engine_config(self) -> EngineConfig:
        return EngineConfig(
            threshold=self.threshold,
            pri_mode=self.pri_mode,
            pri_unity_epsilon=self.pri_unity_epsilon,
            paralysis_window=self.paralysis_window,
            stagnation_delta=self.stagnation_delta,
        )


@dataclass(frozen=True, slots=True)
class IterationRecord:
    seq: int
    timestamp: str
    instruments: InstrumentBundle | None
    snapshot: IndexSnapshot
    recommendation: Recommendation


@dataclass(frozen=True, slots=True)
class ProjectRecord:
    project_id: str
    name: str
    created_at: str
    config: ProjectConfig
    revision: int
    iterations: tuple[IterationRecord, ...] = ()
    schema_version: int = SCHEMA_VERSION


def new_project(
    project_id: str,
    name: str,
    config: ProjectConfig | None = None,
    created_at: str | None = None,
) -> ProjectRecord:
    return ProjectRecord(
        project_id=project_id,
        name=name,
        created_at=created_at or utc_now_iso(),
        config=config or ProjectConfig(),
        revision=0,
    )


def append_iteration(
    record: ProjectRecord,
    *,
    revision: int,
    instruments: InstrumentBundle | None = None,
    snapshot: IndexSnapshot | None = None,
    timestamp: str | None = None,
) -> tuple[ProjectRecord, IterationRecord]:
    """Score (if instruments were given), decide, and append one iteration.

    The supplied revision must match the stored one; the returned record
    carries revision + 1. Exactly one of instruments/snapshot must be given.
    """
    if revision != record.revision:
        raise RevisionConflict(
            f"revision {revision} is stale, project is at {record.revision}"
        )
    if (instruments is None) == (snapshot is None):
        raise InstrumentInvalid("supply either instruments or a snapshot, not both")
    if instruments is not None:
        snapshot, _warnings = snapshot_from_instruments(
            instruments,
            core_weight=record.config.core_weight,
            supporting_weight=record.config.supporting_weight,
            lam=record.config.lambda_,
        )
    assert snapshot is not None
    recommendation = decide(snapshot, record.config.engine_config())
    iteration = IterationRecord(
        seq=len(record.iterations) + 1,
        timestamp=timestamp or utc_now_iso(),
        instruments=instruments,
        snapshot=snapshot,
        recommendation=recommendation,
    )
    updated = ProjectRecord(
        project_id=record.project_id,
        name=record.name,
        created_at=record.created_at,
        config=record.config,
        revision=record.revision + 1,
        iterations=record.iterations + (iteration,),
        schema_version=record.schema_version,
    )
    return updated, iteration


def history_pairs(record: ProjectRecord) -> list[tuple[IndexSnapshot, Recommendation]]:
    return [(it.snapshot, it.recommendation) for it in record.iterations]


# ---------------------------------------------------------------------------
# Document encoding (plain dicts with a fixed key order)
# ---------------------------------------------------------------------------


def snapshot_to_doc(snapshot: IndexSnapshot) -> dict[str, Any]:
    return {
        "pi": snapshot.pi,
        "u": snapshot.u,
        "f": "unmeasured" if snapshot.f is None else snapshot.f,
        "pri": snapshot.pri,
        "iu": snapshot.iu,
        "gq": snapshot.gq,
    }


def recommendation_to_doc(rec: Recommendation) -> dict[str, Any]:
    return {
        "outcome": rec.outcome.value,
        "fired_step": rec.fired_step,
        "advisories": sorted(a.value for a in rec.advisories),
        "rationale": rec.rationale,
        "trace": [
            {"step": entry.step, "guard": entry.guard, "verdict": entry.verdict}
            for entry in rec.trace
        ],
    }


def config_to_doc(config: ProjectConfig) -> dict[str, Any]:
    return {
        "threshold": config.threshold,
        "pri_mode": config.pri_mode.value,
        "pri_unity_epsilon": config.pri_unity_epsilon,
        "paralysis_window": config.paralysis_window,
        "stagnation_delta": config.stagnation_delta,
        "core_weight": config.core_weight,
        "supporting_weight": config.supporting_weight,
        "lambda": config.lambda_,
    }


def _instruments_to_doc(bundle: InstrumentBundle) -> dict[str, Any]:
    peer = None
    if bundle.peer_ratings is not None:
        peer = {
            "member_ids": list(bundle.peer_ratings.member_ids),
            "ratings": [list(row) for row in bundle.peer_ratings.ratings],
        }
        if bundle.peer_ratings.roles is not None:
            peer["roles"] = list(bundle.peer_ratings.roles)
    return {
        "pi_questionnaire": {
            "answers": [
                {"question_id": q, "score": s} for q, s in bundle.pi_questionnaire.answers
            ],
            "weights": list(bundle.pi_questionnaire.weights),
        },
        "peer_ratings": peer,
        "data_inventory": {
            "items": [
                {
                    "item_id": item.item_id,
                    "description": item.description,
                    "tags": sorted(tag.value for tag in item.tags),
                    "usefulness": item.usefulness,
                }
                for item in bundle.data_inventory.items
            ]
        },
        "process_inventory": {
            "processes": [
                {
                    "process_id": proc.process_id,
                    "kind": proc.kind.value,
                    "understanding": proc.understanding,
                }
                for proc in bundle.process_inventory.processes
            ]
        },
        "iu_checklist": {"answers": list(bundle.iu_checklist.answers)},
        "gq_factors": {
            "factors": [
                {
                    "factor_id": factor.factor_id,
                    "description": factor.description,
                    "severity": factor.severity,
                }
                for factor in bundle.gq_factors.factors
            ]
        },
    }


def _iteration_to_doc(iteration: IterationRecord) -> dict[str, Any]:
    doc: dict[str, Any] = {"seq": iteration.seq, "timestamp": iteration.timestamp}
    doc["instruments"] = (
        None if iteration.instruments is None else _instruments_to_doc(iteration.instruments)
    )
    doc["snapshot"] = snapshot_to_doc(iteration.snapshot)
    doc["recommendation"] = recommendation_to_doc(iteration.recommendation)
    return doc


def to_document(record: ProjectRecord) -> dict[str, Any]:
    return {
        "schema_version": record.schema_version,
        "project": {
            "id": record.project_id,
            "name": record.name,
            "created_at": record.created_at,
        },
        "config": config_to_doc(record.config),
        "revision": record.revision,
        "iterations": [_iteration_to_doc(it) for it in record.iterations],
    }


# ---------------------------------------------------------------------------
# Document parsing (strict: unknown fields are rejected, not dropped)
# ---------------------------------------------------------------------------


def _as_mapping(value: Any, path: str) -> Mapping[str, Any]:
    if not isinstance(value, dict):
        raise MalformedDocument(f"{path}: expected an object", field_path=path)
    return value


def _as_list(value: Any, path: str) -> list:
    if not isinstance(value, list):
        raise MalformedDocument(f"{path}: expected an array", field_path=path)
    return value


def _check_keys(
    mapping: Mapping[str, Any], required: tuple[str, ...], optional: tuple[str, ...], path: str
) -> None:
    for key in mapping:
        if key not in required and key not in optional:
            raise MalformedDocument(f"{path}.{key}: unknown field", field_path=f"{path}.{key}")
    for key in required:
        if key not in mapping:
            raise MalformedDocument(f"{path}.{key}: missing field", field_path=f"{path}.{key}")


def _number(value: Any, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise MalformedDocument(f"{path}: expected a number, got {value!r}", field_path=path)
    return float(value)


def _integer(value: Any, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise MalformedDocument(f"{path}: expected an integer, got {value!r}", field_path=path)
    return value


def _string(value: Any, path: str) -> str:
    if not isinstance(value, str):
        raise MalformedDocument(f"{path}: expected a string, got {value!r}", field_path=path)
    return value


def parse_snapshot(doc: Any, path: str = "snapshot") -> IndexSnapshot:
    mapping = _as_mapping(doc, path)
    _check_keys(mapping, ("pi", "u", "f", "pri", "iu", "gq"), (), path)
    f_raw = mapping["f"]
    f: float | None
    if f_raw == "unmeasured" or f_raw is None:
        f = None
    else:
        f = _number(f_raw, f"{path}.f")
    return IndexSnapshot(
        pi=_number(mapping["pi"], f"{path}.pi"),
        u=_number(mapping["u"], f"{path}.u"),
        f=f,
        pri=_number(mapping["pri"], f"{path}.pri"),
        iu=_number(mapping["iu"], f"{path}.iu"),
        gq=_number(mapping["gq"], f"{path}.gq"),
    )


def parse_recommendation(doc: Any, path: str = "recommendation") -> Recommendation:
    mapping = _as_mapping(doc, path)
    _check_keys(mapping, ("outcome", "fired_step", "advisories", "rationale", "trace"), (), path)
    try:
        outcome = Outcome(_string(mapping["outcome"], f"{path}.outcome"))
    except ValueError:
        raise MalformedDocument(
            f"{path}.outcome: unknown outcome {mapping['outcome']!r}",
            field_path=f"{path}.outcome",
        ) from None
    advisories = set()
    for i, raw in enumerate(_as_list(mapping["advisories"], f"{path}.advisories")):
        try:
            advisories.add(Advisory(_string(raw, f"{path}.advisories[{i}]")))
        except ValueError:
            raise MalformedDocument(
                f"{path}.advisories[{i}]: unknown advisory {raw!r}",
                field_path=f"{path}.advisories[{i}]",
            ) from None
    trace = []
    for i, raw_entry in enumerate(_as_list(mapping["trace"], f"{path}.trace")):
        entry = _as_mapping(raw_entry, f"{path}.trace[{i}]")
        _check_keys(entry, ("step", "guard", "verdict"), (), f"{path}.trace[{i}]")
        trace.append(
            TraceEntry(
                step=_string(entry["step"], f"{path}.trace[{i}].step"),
                guard=_string(entry["guard"], f"{path}.trace[{i}].guard"),
                verdict=_string(entry["verdict"], f"{path}.trace[{i}].verdict"),
            )
        )
    return Recommendation(
        outcome=outcome,
        fired_step=_string(mapping["fired_step"], f"{path}.fired_step"),
        advisories=frozenset(advisories),
        rationale=_string(mapping["rationale"], f"{path}.rationale"),
        trace=tuple(trace),
    )


_CONFIG_KEYS = (
    "threshold",
    "pri_mode",
    "pri_unity_epsilon",
    "paralysis_window",
    "stagnation_delta",
    "core_weight",
    "supporting_weight",
    "lambda",
)


def parse_config(doc: Any, path: str = "config", *, partial: bool = False) -> ProjectConfig:
    """Parse a config object. ``partial`` lets request bodies omit fields
    (defaults fill in); stored documents always carry every key."""
    mapping = _as_mapping(doc, path)
    if partial:
        _check_keys(mapping, (), _CONFIG_KEYS, path)
    else:
        _check_keys(mapping, _CONFIG_KEYS, (), path)
    defaults = ProjectConfig()
    try:
        mode = PriMode(mapping.get("pri_mode", defaults.pri_mode.value))
    except ValueError:
        raise MalformedDocument(
            f"{path}.pri_mode: expected literal or pragmatic, got {mapping['pri_mode']!r}",
            field_path=f"{path}.pri_mode",
        ) from None
    return ProjectConfig(
        threshold=_number(mapping.get("threshold", defaults.threshold), f"{path}.threshold"),
        pri_mode=mode,
        pri_unity_epsilon=_number(
            mapping.get("pri_unity_epsilon", defaults.pri_unity_epsilon),
            f"{path}.pri_unity_epsilon",
        ),
        paralysis_window=_integer(
            mapping.get("paralysis_window", defaults.paralysis_window),
            f"{path}.paralysis_window",
        ),
        stagnation_delta=_number(
            mapping.get("stagnation_delta", defaults.stagnation_delta),
            f"{path}.stagnation_delta",
        ),
        core_weight=_number(mapping.get("core_weight", defaults.core_weight), f"{path}.core_weight"),
        supporting_weight=_number(
            mapping.get("supporting_weight", defaults.supporting_weight),
            f"{path}.supporting_weight",
        ),
        lambda_=_number(mapping.get("lambda", defaults.lambda_), f"{path}.lambda"),
    )


def parse_instruments(doc: Any, path: str = "instruments") -> InstrumentBundle:
    mapping = _as_mapping(doc, path)
    _check_keys(
        mapping,
        ("pi_questionnaire", "data_inventory", "process_inventory", "iu_checklist", "gq_factors"),
        ("peer_ratings",),
        path,
    )

    q_doc = _as_mapping(mapping["pi_questionnaire"], f"{path}.pi_questionnaire")
    _check_keys(q_doc, ("answers", "weights"), (), f"{path}.pi_questionnaire")
    answers = []
    for i, raw in enumerate(_as_list(q_doc["answers"], f"{path}.pi_questionnaire.answers")):
        entry = _as_mapping(raw, f"{path}.pi_questionnaire.answers[{i}]")
        _check_keys(entry, ("question_id", "score"), (), f"{path}.pi_questionnaire.answers[{i}]")
        answers.append(
            (
                _string(entry["question_id"], f"{path}.pi_questionnaire.answers[{i}].question_id"),
                _number(entry["score"], f"{path}.pi_questionnaire.answers[{i}].score"),
            )
        )
    weights = [
        _number(w, f"{path}.pi_questionnaire.weights[{i}]")
        for i, w in enumerate(_as_list(q_doc["weights"], f"{path}.pi_questionnaire.weights"))
    ]
    questionnaire = PIQuestionnaire(answers=tuple(answers), weights=tuple(weights))

    peer = None
    peer_doc = mapping.get("peer_ratings")
    if peer_doc is not None:
        peer_map = _as_mapping(peer_doc, f"{path}.peer_ratings")
        _check_keys(peer_map, ("member_ids", "ratings"), ("roles",), f"{path}.peer_ratings")
        member_ids = tuple(
            _string(m, f"{path}.peer_ratings.member_ids[{i}]")
            for i, m in enumerate(_as_list(peer_map["member_ids"], f"{path}.peer_ratings.member_ids"))
        )
        ratings = tuple(
            tuple(
                _number(x, f"{path}.peer_ratings.ratings[{i}][{j}]")
                for j, x in enumerate(_as_list(row, f"{path}.peer_ratings.ratings[{i}]"))
            )
            for i, row in enumerate(_as_list(peer_map["ratings"], f"{path}.peer_ratings.ratings"))
        )
        roles = None
        if "roles" in peer_map:
            roles = tuple(
                _string(r, f"{path}.peer_ratings.roles[{i}]")
                for i, r in enumerate(_as_list(peer_map["roles"], f"{path}.peer_ratings.roles"))
            )
        peer = PeerRatingMatrix(ratings=ratings, member_ids=member_ids, roles=roles)

    inv_doc = _as_mapping(mapping["data_inventory"], f"{path}.data_inventory")
    _check_keys(inv_doc, ("items",), (), f"{path}.data_inventory")
    items = []
    for i, raw in enumerate(_as_list(inv_doc["items"], f"{path}.data_inventory.items")):
        entry = _as_mapping(raw, f"{path}.data_inventory.items[{i}]")
        _check_keys(
            entry,
            ("item_id", "description", "tags", "usefulness"),
            (),
            f"{path}.data_inventory.items[{i}]",
        )
        tags = _as_list(entry["tags"], f"{path}.data_inventory.items[{i}].tags")
        items.append(
            DataItem(
                item_id=_string(entry["item_id"], f"{path}.data_inventory.items[{i}].item_id"),
                description=_string(
                    entry["description"], f"{path}.data_inventory.items[{i}].description"
                ),
                tags=frozenset(
                    _string(tag, f"{path}.data_inventory.items[{i}].tags[{j}]")
                    for j, tag in enumerate(tags)
                ),
                usefulness=_number(
                    entry["usefulness"], f"{path}.data_inventory.items[{i}].usefulness"
                ),
            )
        )
    inventory = DataInventory(items=tuple(items))

    proc_doc = _as_mapping(mapping["process_inventory"], f"{path}.process_inventory")
    _check_keys(proc_doc, ("processes",), (), f"{path}.process_inventory")
    processes = []
    for i, raw in enumerate(_as_list(proc_doc["processes"], f"{path}.process_inventory.processes")):
        entry = _as_mapping(raw, f"{path}.process_inventory.processes[{i}]")
        _check_keys(
            entry,
            ("process_id", "kind", "understanding"),
            (),
            f"{path}.process_inventory.processes[{i}]",
        )
        processes.append(
            ProcessEntry(
                process_id=_string(
                    entry["process_id"], f"{path}.process_inventory.processes[{i}].process_id"
                ),
                kind=_string(entry["kind"], f"{path}.process_inventory.processes[{i}].kind"),
                understanding=_number(
                    entry["understanding"],
                    f"{path}.process_inventory.processes[{i}].understanding",
                ),
            )
        )
    process_inventory = ProcessInventory(processes=tuple(processes))

    iu_doc = _as_mapping(mapping["iu_checklist"], f"{path}.iu_checklist")
    _check_keys(iu_doc, ("answers",), (), f"{path}.iu_checklist")
    iu_answers = tuple(
        _number(a, f"{path}.iu_checklist.answers[{i}]")
        for i, a in enumerate(_as_list(iu_doc["answers"], f"{path}.iu_checklist.answers"))
    )
    checklist = IUChecklist(answers=iu_answers)  # type: ignore[arg-type]

    gq_doc = _as_mapping(mapping["gq_factors"], f"{path}.gq_factors")
    _check_keys(gq_doc, ("factors",), (), f"{path}.gq_factors")
    factors = []
    for i, raw in enumerate(_as_list(gq_doc["factors"], f"{path}.gq_factors.factors")):
        entry = _as_mapping(raw, f"{path}.gq_factors.factors[{i}]")
        _check_keys(
            entry, ("factor_id", "description", "severity"), (), f"{path}.gq_factors.factors[{i}]"
        )
        factors.append(
            GQFactor(
                factor_id=_string(entry["factor_id"], f"{path}.gq_factors.factors[{i}].factor_id"),
                description=_string(
                    entry["description"], f"{path}.gq_factors.factors[{i}].description"
                ),
                severity=_number(entry["severity"], f"{path}.gq_factors.factors[{i}].severity"),
            )
        )
    gq_factors = GQFactorList(factors=tuple(factors))

    return InstrumentBundle(
        pi_questionnaire=questionnaire,
        peer_ratings=peer,
        data_inventory=inventory,
        process_inventory=process_inventory,
        iu_checklist=checklist,
        gq_factors=gq_factors,
    )


def from_document(doc: Any, *, verify: bool = True) -> ProjectRecord:
    mapping = _as_mapping(doc, "document")
    if "schema_version" not in mapping:
        raise MalformedDocument("document.schema_version: missing field", field_path="schema_version")
    version = mapping["schema_version"]
    if version != SCHEMA_VERSION:
        raise SchemaVersionMismatch(
            f"schema_version {version!r} is not supported (this build reads version {SCHEMA_VERSION})"
        )
    _check_keys(mapping, ("schema_version", "project", "config", "revision", "iterations"), (), "document")

    project = _as_mapping(mapping["project"], "project")
    _check_keys(project, ("id", "name", "created_at"), (), "project")
    config = parse_config(mapping["config"])
    revision = _integer(mapping["revision"], "revision")
    if revision < 0:
        raise MalformedDocument("revision: must be non-negative", field_path="revision")

    iterations = []
    for i, raw in enumerate(_as_list(mapping["iterations"], "iterations")):
        path = f"iterations[{i}]"
        entry = _as_mapping(raw, path)
        _check_keys(entry, ("seq", "timestamp", "snapshot", "recommendation"), ("instruments",), path)
        seq = _integer(entry["seq"], f"{path}.seq")
        if seq != i + 1:
            raise MalformedDocument(
                f"{path}.seq: expected contiguous sequence {i + 1}, got {seq}",
                field_path=f"{path}.seq",
            )
        instruments_doc = entry.get("instruments")
        instruments = (
            None if instruments_doc is None else parse_instruments(instruments_doc, f"{path}.instruments")
        )
        iterations.append(
            IterationRecord(
                seq=seq,
                timestamp=_check_timestamp(
                    _string(entry["timestamp"], f"{path}.timestamp"), f"{path}.timestamp"
                ),
                instruments=instruments,
                snapshot=parse_snapshot(entry["snapshot"], f"{path}.snapshot"),
                recommendation=parse_recommendation(entry["recommendation"], f"{path}.recommendation"),
            )
        )

    record = ProjectRecord(
        project_id=_string(project["id"], "project.id"),
        name=_string(project["name"], "project.name"),
        created_at=_check_timestamp(_string(project["created_at"], "project.created_at"), "project.created_at"),
        config=config,
        revision=revision,
        iterations=tuple(iterations),
    )
    if verify:
        verify_project(record)
    return record


def verify_project(record: ProjectRecord) -> None:
    """Recompute every iteration and compare against what is stored.

    Snapshots must match the instruments within RECOMPUTE_TOLERANCE and the
    stored recommendation must equal deciding on the stored snapshot under the
    project config.
    """
    engine_config = record.config.engine_config()
    for i, iteration in enumerate(record.iterations):
        path = f"iterations[{i}]"
        if iteration.instruments is not None:
            recomputed, _ = snapshot_from_instruments(
                iteration.instruments,
                core_weight=record.config.core_weight,
                supporting_weight=record.config.supporting_weight,
                lam=record.config.lambda_,
            )
            for name in ("pi", "u", "pri", "iu", "gq"):
                stored = getattr(iteration.snapshot, name)
                fresh = getattr(recomputed, name)
                if abs(stored - fresh) > RECOMPUTE_TOLERANCE:
                    raise InvariantViolation(
                        f"{path}.snapshot.{name}: stored {stored!r} but instruments give {fresh!r}",
                        field_path=f"{path}.snapshot.{name}",
                    )
            if (iteration.snapshot.f is None) != (recomputed.f is None):
                raise InvariantViolation(
                    f"{path}.snapshot.f: measured/unmeasured state disagrees with instruments",
                    field_path=f"{path}.snapshot.f",
                )
            if iteration.snapshot.f is not None and recomputed.f is not None:
                if abs(iteration.snapshot.f - recomputed.f) > RECOMPUTE_TOLERANCE:
                    raise InvariantViolation(
                        f"{path}.snapshot.f: stored {iteration.snapshot.f!r} but instruments give {recomputed.f!r}",
                        field_path=f"{path}.snapshot.f",
                    )
        fresh_rec = decide(iteration.snapshot, engine_config)
        if fresh_rec != iteration.recommendation:
            raise InvariantViolation(
                f"{path}.recommendation: stored decision does not match recomputation "
                f"(stored {iteration.recommendation.outcome.value}/{iteration.recommendation.fired_step}, "
                f"recomputed {fresh_rec.outcome.value}/{fresh_rec.fired_step})",
                field_path=f"{path}.recommendation",
            )


# ---------------------------------------------------------------------------
# Files
# ---------------------------------------------------------------------------


def save_project(record: ProjectRecord, destination: str | Path) -> None:
    """Serialize atomically (write-then-rename)."""
    path = Path(destination)
    payload = json.dumps(to_document(record), indent=2) + "\n"
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(payload, encoding="utf-8")
    os.replace(tmp, path)


def load_project(source: str | Path, *, verify: bool = True) -> ProjectRecord:
    path = Path(source)
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedDocument(f"{path}: not valid JSON ({exc})") from exc
    return from_document(doc, verify=verify)


class ProjectStore:
    """Directory of project documents, one ``<id>.json`` per project.

    Writes to the same project are serialized through a per-id lock on top of
    the revision check, so concurrent appends lose cleanly instead of racing.
    """

    def __init__(self, directory: str | Path) -> None:
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)
        self._locks: dict[str, threading.Lock] = {}
        self._locks_guard = threading.Lock()

    def _path(self, project_id: str) -> Path:
        safe = project_id.replace("/", "_").replace("\\", "_")
        return self.directory / f"{safe}.json"

    def lock(self, project_id: str) -> threading.Lock:
        with self._locks_guard:
            return self._locks.setdefault(project_id, threading.Lock())

    def exists(self, project_id: str) -> bool:
        return self._path(project_id).exists()

    def list_ids(self) -> list[str]:
        return sorted(p.stem for p in self.directory.glob("*.json"))

    def load(self, project_id: str) -> ProjectRecord:
        return load_project(self._path(project_id))

    def save(self, record: ProjectRecord) -> None:
        save_project(record, self._path(record.project_id))

    def create(self, record: ProjectRecord) -> None:
        with self.lock(record.project_id):
            if self.exists(record.project_id):
                raise RevisionConflict(f"project {record.project_id!r} already exists")
            self.save(record)

    def append(
        self,
        project_id: str,
        *,
        revision: int,
        instruments: InstrumentBundle | None = None,
        snapshot: IndexSnapshot | None = None,
        timestamp: str | None = None,
    ) -> tuple[ProjectRecord, IterationRecord]:
        with self.lock(project_id):
            record = self.load(project_id)
            updated, iteration = append_iteration(
                record,
                revision=revision,
                instruments=instruments,
                snapshot=snapshot,
                timestamp=timestamp,
            )
            self.save(updated)
            return updated, iteration
