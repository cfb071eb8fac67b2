"""Command-line contract: exit codes, structured output, report files."""

from __future__ import annotations

import io
import json

import pytest

from aap import load_project
from aap.cli import main
from aap.instruments import load_gq_catalog, load_iu_catalog, load_pi_catalog
from aap.store import parse_recommendation, parse_snapshot, to_document

from conftest import bundle_for
from aap.store import _instruments_to_doc


def _write_bundle(path, values=(0.8, 0.8, 0.8, 0.9, 0.8, 0.8)):
    path.write_text(json.dumps(_instruments_to_doc(bundle_for(*values))))
    return path


@pytest.fixture
def project(tmp_path):
    path = tmp_path / "p.json"
    assert main(["init", "--project", str(path), "--name", "Demo"]) == 0
    return path


def _assess(project, tmp_path, values, name="inst.json"):
    bundle_file = _write_bundle(tmp_path / name, values)
    assert main(["assess", "--project", str(project), "--from", str(bundle_file)]) == 0


def test_init_refuses_to_overwrite(project, capsys):
    assert main(["init", "--project", str(project), "--name", "Demo"]) == 3
    assert "already exists" in capsys.readouterr().err


def test_gate_exit_codes(project, tmp_path, capsys):
    _assess(project, tmp_path, (0.8, 0.8, 0.8, 0.9, 0.8, 0.8))
    assert main(["decide", "--project", str(project), "--gate"]) == 0

    blocked = tmp_path / "blocked.json"
    assert main(["init", "--project", str(blocked), "--name", "Blocked"]) == 0
    _assess(blocked, tmp_path, (0.5, 0.5, 0.5, 0.5, 0.5, 0.5), name="half.json")
    capsys.readouterr()
    assert main(["decide", "--project", str(blocked), "--gate"]) == 1
    out = capsys.readouterr().out
    assert "RestartAnalysis" in out


def test_decide_without_gate_flag_exits_zero_on_blocking_outcome(project, tmp_path):
    _assess(project, tmp_path, (0.5, 0.5, 0.5, 0.5, 0.5, 0.5))
    assert main(["decide", "--project", str(project)]) == 0


def test_decide_structured_output_round_trips(project, tmp_path, capsys):
    _assess(project, tmp_path, (0.8, 0.8, 0.8, 0.9, 0.8, 0.8))
    capsys.readouterr()
    assert main(["decide", "--project", str(project), "--format", "structured"]) == 0
    payload = json.loads(capsys.readouterr().out)
    snapshot = parse_snapshot(payload["snapshot"])
    recommendation = parse_recommendation(payload["recommendation"])
    assert recommendation.outcome.value == "ReadyForDesign"
    stored = load_project(project)
    assert snapshot == stored.iterations[-1].snapshot
    assert recommendation == stored.iterations[-1].recommendation


def test_decide_on_empty_project_is_usage_error(project, capsys):
    assert main(["decide", "--project", str(project)]) == 2
    assert "no iterations" in capsys.readouterr().err


def test_missing_project_is_store_error(tmp_path, capsys):
    assert main(["decide", "--project", str(tmp_path / "nope.json")]) == 3


def test_whatif_override_flips_outcome(project, tmp_path, capsys):
    _assess(project, tmp_path, (0.8, 0.3, 0.8, 0.9, 0.8, 0.8))
    capsys.readouterr()
    assert main(["whatif", "--project", str(project), "--set", "U=0.9"]) == 0
    assert "ReadyForDesign" in capsys.readouterr().out
    # stored project untouched by the exploration
    assert load_project(project).iterations[-1].snapshot.u == 0.3


def test_whatif_accepts_unmeasured_and_rejects_junk(project, tmp_path, capsys):
    _assess(project, tmp_path, (0.3, 0.8, 0.8, 0.9, 0.8, 0.8))
    capsys.readouterr()
    assert main(["whatif", "--project", str(project), "--set", "F=unmeasured"]) == 0
    assert "CheckFutureUsefulness" in capsys.readouterr().out
    assert main(["whatif", "--project", str(project), "--set", "U=fast"]) == 2
    assert main(["whatif", "--project", str(project), "--set", "speed=1"]) == 2


def test_sweep_prints_totality_and_counts(capsys):
    assert main(["sweep", "--grid", "0,0.25,0.45,0.5,0.55,0.75,1", "--format", "structured"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["total"] is True
    assert payload["points"] == 7**6 + 7**5
    assert sum(payload["counts"].values()) == payload["points"]
    assert payload["counts"]["ReadyForDesign"] == 2673


def test_sweep_modes_differ(capsys):
    assert main(["sweep", "--grid", "0,0.6,1", "--mode", "literal", "--format", "structured"]) == 0
    literal = json.loads(capsys.readouterr().out)
    assert main(["sweep", "--grid", "0,0.6,1", "--mode", "pragmatic", "--format", "structured"]) == 0
    pragmatic = json.loads(capsys.readouterr().out)
    assert pragmatic["counts"]["ReadyForDesign"] > literal["counts"]["ReadyForDesign"]


def test_sweep_rejects_bad_grid(capsys):
    assert main(["sweep", "--grid", "0,fast"]) == 2
    assert main(["sweep", "--grid", "0,1.5"]) == 2


def test_history_table(project, tmp_path, capsys):
    _assess(project, tmp_path, (0.8, 0.8, 0.8, 0.9, 0.8, 0.8))
    capsys.readouterr()
    assert main(["history", "--project", str(project)]) == 0
    out = capsys.readouterr().out
    assert "ReadyForDesign (10)" in out


def test_history_structured_matches_document(project, tmp_path, capsys):
    _assess(project, tmp_path, (0.8, 0.8, 0.8, 0.9, 0.8, 0.8))
    capsys.readouterr()
    assert main(["history", "--project", str(project), "--format", "structured"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload == to_document(load_project(project))


def test_report_writes_text_csv_and_figure(project, tmp_path, capsys):
    for values in [(0.55, 0.7, 0.6, 0.8, 0.7, 0.2), (0.8, 0.8, 0.8, 0.9, 0.8, 0.85)]:
        _assess(project, tmp_path, values, name=f"i{values[0]}.json")
    out_dir = tmp_path / "out"
    assert main(["report", "--project", str(project), "--out", str(out_dir)]) == 0
    report = (out_dir / "report.md").read_text()
    assert "Iteration 2" in report
    csv_lines = (out_dir / "iterations.csv").read_text().strip().splitlines()
    assert csv_lines[0].startswith("seq,timestamp,pi,u,f")
    assert len(csv_lines) == 3
    assert (out_dir / "indices.png").stat().st_size > 0


def test_report_to_stdout(project, tmp_path, capsys):
    _assess(project, tmp_path, (0.8, 0.8, 0.8, 0.9, 0.8, 0.8))
    capsys.readouterr()
    assert main(["report", "--project", str(project)]) == 0
    assert "Gate report" in capsys.readouterr().out


def test_report_on_empty_project(project, capsys):
    assert main(["report", "--project", str(project)]) == 2


def test_interactive_assess_matches_file_assess(tmp_path, monkeypatch, capsys):
    """Identical answers through the prompts and through --from produce the
    same instruments, snapshot and recommendation."""
    pi_questions = load_pi_catalog()
    iu_questions = load_iu_catalog()
    gq_factors = load_gq_catalog()

    answers = ["0.8"] * len(pi_questions)
    peer = ["2", "alice,bob", "0.6,0.4", "0.8,0.2"]
    data = ["d1", "faulty process is easy to modify", "i", "0.8",
            "d2", "staff attrition over pay", "f", "0.7",
            ""]
    processes = ["p1", "c", "0.9", ""]
    iu = ["0.8"] * len(iu_questions)
    gq = ["0.2", "0.1", "0.15", "0.2", ""]
    script = "\n".join(answers + peer + data + processes + iu + gq) + "\n"

    interactive_path = tmp_path / "interactive.json"
    assert main(["init", "--project", str(interactive_path), "--name", "A"]) == 0
    monkeypatch.setattr("sys.stdin", io.StringIO(script))
    assert main(["assess", "--project", str(interactive_path), "--interactive"]) == 0

    from_doc = {
        "pi_questionnaire": {
            "answers": [{"question_id": q.id, "score": 0.8} for q in pi_questions],
            "weights": [q.weight for q in pi_questions],
        },
        "peer_ratings": {"member_ids": ["alice", "bob"], "ratings": [[0.6, 0.4], [0.8, 0.2]]},
        "data_inventory": {
            "items": [
                {"item_id": "d1", "description": "faulty process is easy to modify",
                 "tags": ["immediate"], "usefulness": 0.8},
                {"item_id": "d2", "description": "staff attrition over pay",
                 "tags": ["future"], "usefulness": 0.7},
            ]
        },
        "process_inventory": {
            "processes": [{"process_id": "p1", "kind": "core", "understanding": 0.9}]
        },
        "iu_checklist": {"answers": [0.8, 0.8, 0.8, 0.8]},
        "gq_factors": {
            "factors": [
                {"factor_id": f.id, "description": f.description, "severity": s}
                for f, s in zip(gq_factors, [0.2, 0.1, 0.15, 0.2])
            ]
        },
    }
    file_path = tmp_path / "fromfile.json"
    assert main(["init", "--project", str(file_path), "--name", "B"]) == 0
    bundle_file = tmp_path / "bundle.json"
    bundle_file.write_text(json.dumps(from_doc))
    assert main(["assess", "--project", str(file_path), "--from", str(bundle_file)]) == 0

    left = load_project(interactive_path).iterations[0]
    right = load_project(file_path).iterations[0]
    assert left.instruments == right.instruments
    assert left.snapshot == right.snapshot
    assert left.recommendation == right.recommendation
