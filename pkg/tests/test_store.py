"""Project document storage: round-trips, strictness, append-only history."""

from __future__ import annotations

import json

import pytest

from aap import (
    EmptyHistory,
    IndexSnapshot,
    InstrumentInvalid,
    InvariantViolation,
    MalformedDocument,
    Outcome,
    ProjectConfig,
    RevisionConflict,
    SchemaVersionMismatch,
    append_iteration,
    from_document,
    load_project,
    new_project,
    render_report,
    save_project,
    to_document,
    verify_project,
)
from aap.store import parse_recommendation, parse_snapshot, recommendation_to_doc, snapshot_to_doc

from conftest import bundle_for


def _project_with_iterations(count=3):
    record = new_project("proj", "Project", created_at="2026-08-01T00:00:00Z")
    specs = [
        (0.55, 0.7, 0.6, 0.8, 0.7, 0.2),
        (0.6, 0.7, 0.65, 0.85, 0.75, 0.5),
        (0.8, 0.8, 0.8, 0.9, 0.8, 0.85),
    ][:count]
    for i, values in enumerate(specs):
        record, _ = append_iteration(
            record,
            revision=record.revision,
            instruments=bundle_for(*values),
            timestamp=f"2026-08-0{i + 2}T00:00:00Z",
        )
    return record


def test_round_trip_three_iteration_project(tmp_path):
    record = _project_with_iterations()
    path = tmp_path / "p.json"
    save_project(record, path)
    assert load_project(path) == record


def test_unsupported_schema_version(tmp_path):
    record = _project_with_iterations(1)
    doc = to_document(record)
    doc["schema_version"] = 2
    path = tmp_path / "p.json"
    path.write_text(json.dumps(doc))
    with pytest.raises(SchemaVersionMismatch):
        load_project(path)


def test_unknown_future_fields_rejected_not_dropped():
    doc = to_document(_project_with_iterations(1))
    doc["sprint_velocity"] = 42
    with pytest.raises(MalformedDocument) as info:
        from_document(doc)
    assert "sprint_velocity" in str(info.value)

    doc = to_document(_project_with_iterations(1))
    doc["iterations"][0]["mood"] = "great"
    with pytest.raises(MalformedDocument) as info:
        from_document(doc)
    assert info.value.field_path == "iterations[0].mood"


def test_snapshot_disagreeing_with_instruments_names_the_index():
    doc = to_document(_project_with_iterations(1))
    doc["iterations"][0]["snapshot"]["pri"] -= 0.2
    with pytest.raises(InvariantViolation) as info:
        from_document(doc)
    assert "pri" in info.value.field_path


def test_tampered_outcome_fails_the_recompute_check():
    doc = to_document(_project_with_iterations(1))
    rec = doc["iterations"][0]["recommendation"]
    rec["outcome"] = Outcome.READY_FOR_DESIGN.value
    with pytest.raises(InvariantViolation):
        from_document(doc)


def test_non_contiguous_sequence_rejected():
    doc = to_document(_project_with_iterations(2))
    doc["iterations"][1]["seq"] = 5
    with pytest.raises(MalformedDocument):
        from_document(doc)


def test_malformed_timestamp_rejected():
    doc = to_document(_project_with_iterations(1))
    doc["iterations"][0]["timestamp"] = "yesterday"
    with pytest.raises(MalformedDocument):
        from_document(doc)


def test_append_assigns_contiguous_seq_and_bumps_revision():
    record = new_project("p", "P")
    assert record.revision == 0
    record, first = append_iteration(
        record, revision=0, instruments=bundle_for(0.8, 0.8, 0.8, 0.9, 0.8, 0.8)
    )
    assert first.seq == 1
    assert record.revision == 1
    record, second = append_iteration(
        record, revision=1, snapshot=IndexSnapshot(0.5, 0.5, 0.5, 0.5, 0.5, 0.5)
    )
    assert second.seq == 2
    assert record.revision == 2
    assert second.instruments is None


def test_stale_revision_conflicts():
    record = _project_with_iterations(1)
    with pytest.raises(RevisionConflict):
        append_iteration(record, revision=0, snapshot=IndexSnapshot(0.5, 0.5, 0.5, 0.5, 0.5, 0.5))


def test_append_needs_exactly_one_evidence_form():
    record = new_project("p", "P")
    with pytest.raises(InstrumentInvalid):
        append_iteration(record, revision=0)
    with pytest.raises(InstrumentInvalid):
        append_iteration(
            record,
            revision=0,
            instruments=bundle_for(0.8, 0.8, 0.8, 0.9, 0.8, 0.8),
            snapshot=IndexSnapshot(0.5, 0.5, 0.5, 0.5, 0.5, 0.5),
        )


def test_instrument_backed_append_stores_the_gate_decision():
    record = new_project("p", "P")
    record, iteration = append_iteration(
        record, revision=0, instruments=bundle_for(0.8, 0.8, 0.8, 0.9, 0.8, 0.8)
    )
    assert iteration.recommendation.outcome is Outcome.READY_FOR_DESIGN
    verify_project(record)


def test_append_only_prior_iterations_serialize_byte_identically(tmp_path):
    record = _project_with_iterations(2)
    path = tmp_path / "p.json"
    save_project(record, path)
    before = json.dumps(to_document(load_project(path))["iterations"][:2], sort_keys=True)

    record, _ = append_iteration(
        record, revision=record.revision, snapshot=IndexSnapshot(0.9, 0.9, 0.9, 0.9, 0.9, 0.9),
        timestamp="2026-08-07T00:00:00Z",
    )
    save_project(record, path)
    after = json.dumps(to_document(load_project(path))["iterations"][:2], sort_keys=True)
    assert before == after


def test_revision_strictly_increases_by_one_per_append():
    record = new_project("p", "P")
    for expected in range(1, 5):
        record, _ = append_iteration(
            record, revision=record.revision, snapshot=IndexSnapshot(0.6, 0.6, 0.6, 0.6, 0.6, 0.6)
        )
        assert record.revision == expected


def test_config_lambda_key_round_trips():
    config = ProjectConfig(lambda_=0.25, core_weight=3.0)
    record = new_project("p", "P", config)
    doc = to_document(record)
    assert doc["config"]["lambda"] == 0.25
    assert from_document(doc).config.lambda_ == 0.25


def test_snapshot_doc_unmeasured_sentinel():
    snapshot = IndexSnapshot(pi=0.5, u=0.5, f=None, pri=0.5, iu=0.5, gq=0.5)
    doc = snapshot_to_doc(snapshot)
    assert doc["f"] == "unmeasured"
    assert parse_snapshot(doc) == snapshot


def test_recommendation_doc_round_trip():
    record = _project_with_iterations(1)
    rec = record.iterations[0].recommendation
    assert parse_recommendation(recommendation_to_doc(rec)) == rec


def test_report_contains_outcome_rationale_and_advisories():
    record = _project_with_iterations(3)
    text = render_report(record)
    assert "ReadyForDesign" in text
    assert "fired step 10" in text
    assert "Paralysis check" in text
    last = record.iterations[-1].recommendation
    assert last.rationale in text


def test_report_flags_threshold_chasing():
    config = ProjectConfig(pri_mode="literal")
    record = new_project("p", "P", config)
    for _ in range(3):
        record, _ = append_iteration(
            record, revision=record.revision, instruments=bundle_for(0.9, 0.9, 0.9, 0.9, 0.9, 0.9)
        )
    text = render_report(record)
    assert "TRIGGERED: ThresholdChasing" in text


def test_report_requires_history():
    with pytest.raises(EmptyHistory):
        render_report(new_project("p", "P"))
