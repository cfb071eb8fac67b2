"""Analyst-facing command line.

Exit code contract:

* 0: success; with ``decide --gate``, the gate is open (ReadyForDesign)
* 1: gate closed (any blocking outcome) under ``decide --gate``
* 2: usage or validation error (bad flags, bad scores, empty history)
* 3: I/O or store error (missing/corrupt/conflicting project documents)

Advisories never affect the exit code. ``--format structured`` emits JSON in
the project document schema so output can be piped back through the parser.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from .engine import EngineConfig, Outcome, PriMode, Recommendation, decide, sweep, what_if
from .errors import (
    AapError,
    EmptyHistory,
    InvariantViolation,
    MalformedDocument,
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
    load_gq_catalog,
    load_iu_catalog,
    load_pi_catalog,
)
from .report import render_report, write_report_files
from .store import (
    ProjectConfig,
    ProjectRecord,
    append_iteration,
    load_project,
    new_project,
    parse_instruments,
    recommendation_to_doc,
    save_project,
    snapshot_to_doc,
    to_document,
)

EXIT_GATE_OPEN = 0
EXIT_GATE_CLOSED = 1
EXIT_USAGE = 2
EXIT_STORE = 3

_STORE_ERRORS = (
    MalformedDocument,
    SchemaVersionMismatch,
    InvariantViolation,
    RevisionConflict,
    FileNotFoundError,
    OSError,
)


class _CliError(Exception):
    def __init__(self, message: str, code: int) -> None:
        super().__init__(message)
        self.code = code


def _load(path: str) -> ProjectRecord:
    try:
        return load_project(path)
    except _STORE_ERRORS as exc:
        raise _CliError(f"cannot load project {path!r}: {exc}", EXIT_STORE) from exc


def _save(record: ProjectRecord, path: str) -> None:
    try:
        save_project(record, path)
    except OSError as exc:
        raise _CliError(f"cannot write project {path!r}: {exc}", EXIT_STORE) from exc


def _latest_snapshot(record: ProjectRecord) -> IndexSnapshot:
    if not record.iterations:
        raise _CliError("project has no iterations yet; run `aap assess` first", EXIT_USAGE)
    return record.iterations[-1].snapshot


# ---------------------------------------------------------------------------
# Output helpers
# ---------------------------------------------------------------------------


def _print_recommendation(
    snapshot: IndexSnapshot, rec: Recommendation, threshold: float, structured: bool
) -> None:
    if structured:
        print(
            json.dumps(
                {"snapshot": snapshot_to_doc(snapshot), "recommendation": recommendation_to_doc(rec)},
                indent=2,
            )
        )
        return
    print(f"{'index':<6}{'value':>12}   passes (> {threshold})")
    for name in ("pi", "u", "f", "pri", "iu", "gq"):
        value = getattr(snapshot, name)
        if value is None:
            print(f"{name.upper():<6}{'unmeasured':>12}   -")
        else:
            print(f"{name.upper():<6}{value:>12.6f}   {'yes' if value > threshold else 'no'}")
    print()
    print(f"Outcome: {rec.outcome.value} (fired step {rec.fired_step})")
    print(f"Rationale: {rec.rationale}")
    advisories = ", ".join(sorted(a.value for a in rec.advisories)) or "none"
    print(f"Advisories: {advisories}")
    print("Trace:")
    for entry in rec.trace:
        print(f"  {entry.step:<4} {entry.verdict:<9} {entry.guard}")


def _gate_exit(rec: Recommendation) -> int:
    return EXIT_GATE_OPEN if rec.outcome is Outcome.READY_FOR_DESIGN else EXIT_GATE_CLOSED


# ---------------------------------------------------------------------------
# Interactive instrument entry
# ---------------------------------------------------------------------------


def _ask(prompt: str) -> str:
    sys.stdout.write(prompt)
    sys.stdout.flush()
    line = sys.stdin.readline()
    if line == "":
        raise _CliError("input ended before the instruments were complete", EXIT_USAGE)
    return line.strip()


def _ask_score(prompt: str) -> float:
    answer = _ask(prompt)
    try:
        value = float(answer)
    except ValueError:
        raise _CliError(f"expected a number in [0, 1], got {answer!r}", EXIT_USAGE) from None
    if not 0.0 <= value <= 1.0:
        raise _CliError(f"expected a number in [0, 1], got {answer!r}", EXIT_USAGE)
    return value


def _ask_int(prompt: str, default: int = 0) -> int:
    answer = _ask(prompt)
    if not answer:
        return default
    try:
        return int(answer)
    except ValueError:
        raise _CliError(f"expected an integer, got {answer!r}", EXIT_USAGE) from None


def _floats(raw: str, what: str) -> tuple[float, ...]:
    try:
        return tuple(float(x) for x in raw.split(","))
    except ValueError:
        raise _CliError(f"{what}: expected comma-separated numbers, got {raw!r}", EXIT_USAGE) from None


def _interactive_bundle() -> InstrumentBundle:
    print("People-index questionnaire (answer each with a score in [0, 1]):")
    answers = []
    weights = []
    for question in load_pi_catalog():
        answers.append((question.id, _ask_score(f"  {question.text} ")))
        weights.append(question.weight)
    questionnaire = PIQuestionnaire(answers=tuple(answers), weights=tuple(weights))

    peer = None
    raters = _ask_int("Peer ratings: number of raters (0 to skip): ")
    if raters > 0:
        member_ids = tuple(
            m.strip() for m in _ask("  member ids (comma-separated): ").split(",") if m.strip()
        )
        rows = []
        for i in range(raters):
            raw = _ask(f"  rater {i + 1} ratings for {', '.join(member_ids)} (comma-separated): ")
            rows.append(_floats(raw, f"rater {i + 1}"))
        peer = PeerRatingMatrix(ratings=tuple(rows), member_ids=member_ids)

    print("Data inventory (finish with a blank id):")
    items = []
    while True:
        item_id = _ask("  item id: ")
        if not item_id:
            break
        description = _ask("    description: ")
        tags_raw = _ask("    tags (i=immediate, f=future, if=both): ").lower()
        tags = set()
        if "i" in tags_raw:
            tags.add("immediate")
        if "f" in tags_raw:
            tags.add("future")
        usefulness = _ask_score("    usefulness [0, 1]: ")
        items.append(
            DataItem(item_id=item_id, description=description, tags=frozenset(tags), usefulness=usefulness)
        )
    inventory = DataInventory(items=tuple(items))

    print("Process inventory (finish with a blank id):")
    processes = []
    while True:
        process_id = _ask("  process id: ")
        if not process_id:
            break
        kind = "core" if _ask("    kind (c=core, s=supporting): ").lower().startswith("c") else "supporting"
        understanding = _ask_score("    understanding [0, 1]: ")
        processes.append(ProcessEntry(process_id=process_id, kind=kind, understanding=understanding))
    process_inventory = ProcessInventory(processes=tuple(processes))

    print("Interface checklist (answer each with a score in [0, 1]):")
    iu_answers = tuple(_ask_score(f"  {q.text} ") for q in load_iu_catalog())
    checklist = IUChecklist(answers=iu_answers)  # type: ignore[arg-type]

    print("Geographic dissimilarity factors (blank severity omits a factor):")
    factors = []
    for factor in load_gq_catalog():
        raw = _ask(f"  {factor.description}; severity [0, 1]: ")
        if raw:
            severity = _floats(raw, factor.id)[0]
            factors.append(
                GQFactor(factor_id=factor.id, description=factor.description, severity=severity)
            )
    while True:
        extra_id = _ask("  extra factor id (blank to finish): ")
        if not extra_id:
            break
        description = _ask("    description: ")
        severity = _ask_score("    severity [0, 1]: ")
        factors.append(GQFactor(factor_id=extra_id, description=description, severity=severity))
    gq = GQFactorList(factors=tuple(factors))

    return InstrumentBundle(
        pi_questionnaire=questionnaire,
        peer_ratings=peer,
        data_inventory=inventory,
        process_inventory=process_inventory,
        iu_checklist=checklist,
        gq_factors=gq,
    )


def _bundle_from_file(path: str) -> InstrumentBundle:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError as exc:
        raise _CliError(f"instrument file {path!r} not found", EXIT_STORE) from exc
    except json.JSONDecodeError as exc:
        raise _CliError(f"instrument file {path!r} is not valid JSON: {exc}", EXIT_USAGE) from exc
    return parse_instruments(doc)


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def _cmd_init(args: argparse.Namespace) -> int:
    path = Path(args.project)
    if path.exists() and not args.force:
        raise _CliError(f"{path} already exists (use --force to overwrite)", EXIT_STORE)
    config = ProjectConfig(
        threshold=args.threshold,
        pri_mode=PriMode(args.mode),
        paralysis_window=args.paralysis_window,
        stagnation_delta=args.stagnation_delta,
        core_weight=args.core_weight,
        supporting_weight=args.supporting_weight,
        lambda_=args.peer_blend,
    )
    record = new_project(args.id or _slug_from_name(args.name), args.name, config)
    _save(record, args.project)
    print(f"created project {record.project_id!r} at {args.project}")
    return 0


def _slug_from_name(name: str) -> str:
    cleaned = "".join(c.lower() if c.isalnum() else "-" for c in name.strip())
    while "--" in cleaned:
        cleaned = cleaned.replace("--", "-")
    return cleaned.strip("-") or "project"


def _cmd_assess(args: argparse.Namespace) -> int:
    record = _load(args.project)
    bundle = _bundle_from_file(args.from_file) if args.from_file else _interactive_bundle()
    _, warnings = snapshot_from_instruments(
        bundle,
        core_weight=record.config.core_weight,
        supporting_weight=record.config.supporting_weight,
        lam=record.config.lambda_,
    )
    updated, iteration = append_iteration(
        record, revision=record.revision, instruments=bundle
    )
    _save(updated, args.project)
    for warning in warnings:
        print(f"warning: {warning}", file=sys.stderr)
    if args.format == "structured":
        print(json.dumps({"seq": iteration.seq, "snapshot": snapshot_to_doc(iteration.snapshot),
                          "recommendation": recommendation_to_doc(iteration.recommendation)}, indent=2))
    else:
        print(f"iteration {iteration.seq} recorded")
        _print_recommendation(
            iteration.snapshot, iteration.recommendation, record.config.threshold, structured=False
        )
    return 0


def _cmd_decide(args: argparse.Namespace) -> int:
    record = _load(args.project)
    snapshot = _latest_snapshot(record)
    rec = decide(snapshot, record.config.engine_config())
    _print_recommendation(snapshot, rec, record.config.threshold, args.format == "structured")
    return _gate_exit(rec) if args.gate else 0


def _cmd_history(args: argparse.Namespace) -> int:
    record = _load(args.project)
    if args.format == "structured":
        print(json.dumps(to_document(record), indent=2))
        return 0
    print(f"project {record.project_id!r} ({record.name}), revision {record.revision}")
    header = f"{'seq':>4} {'timestamp':<22}{'PI':>7}{'U':>7}{'F':>12}{'PRI':>7}{'IU':>7}{'GQ':>7}  outcome (step)"
    print(header)
    for it in record.iterations:
        snap = it.snapshot
        f_text = "unmeasured" if snap.f is None else f"{snap.f:.3f}"
        print(
            f"{it.seq:>4} {it.timestamp:<22}{snap.pi:>7.3f}{snap.u:>7.3f}{f_text:>12}"
            f"{snap.pri:>7.3f}{snap.iu:>7.3f}{snap.gq:>7.3f}"
            f"  {it.recommendation.outcome.value} ({it.recommendation.fired_step})"
        )
    return 0


def _parse_set(values: Sequence[str]) -> dict[str, float | None]:
    overrides: dict[str, float | None] = {}
    for item in values:
        if "=" not in item:
            raise _CliError(f"--set expects INDEX=VALUE, got {item!r}", EXIT_USAGE)
        key, raw = item.split("=", 1)
        if raw.lower() == "unmeasured":
            overrides[key.strip().lower()] = None
            continue
        try:
            overrides[key.strip().lower()] = float(raw)
        except ValueError:
            raise _CliError(f"--set value for {key!r} must be a number, got {raw!r}", EXIT_USAGE) from None
    return overrides


def _cmd_whatif(args: argparse.Namespace) -> int:
    record = _load(args.project)
    snapshot = _latest_snapshot(record)
    overrides = _parse_set(args.set or [])
    rec = what_if(snapshot, overrides, record.config.engine_config())
    merged = {name: getattr(snapshot, name) for name in ("pi", "u", "f", "pri", "iu", "gq")}
    merged.update(overrides)
    _print_recommendation(
        IndexSnapshot(**merged), rec, record.config.threshold, args.format == "structured"
    )
    return _gate_exit(rec) if args.gate else 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    try:
        grid = [float(v) for v in args.grid.split(",") if v.strip() != ""]
    except ValueError:
        raise _CliError(f"--grid expects comma-separated numbers, got {args.grid!r}", EXIT_USAGE) from None
    config = EngineConfig(pri_mode=PriMode(args.mode))
    result = sweep(grid, config)
    if args.format == "structured":
        print(
            json.dumps(
                {
                    "grid": sorted(set(grid)),
                    "mode": args.mode,
                    "points": result.points,
                    "total": result.total,
                    "digest": result.digest,
                    "counts": {o.value: result.counts[o] for o in Outcome},
                },
                indent=2,
            )
        )
        return 0
    print(f"{result.points} points, mode {args.mode}, totality: {'true' if result.total else 'false'}")
    for outcome in Outcome:
        count = result.counts[outcome]
        share = count / result.points if result.points else 0.0
        print(f"  {outcome.value:<28}{count:>10}  ({share:.2%})")
    return 0


def _cmd_report(args: argparse.Namespace) -> int:
    record = _load(args.project)
    try:
        if args.out:
            paths = write_report_files(record, args.out)
            for kind, path in paths.items():
                print(f"wrote {kind}: {path}")
        else:
            print(render_report(record))
    except EmptyHistory as exc:
        raise _CliError(str(exc), EXIT_USAGE) from exc
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(store_dir=args.store, dashboard_dir=args.dashboard)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="aap",
        description="Gate the analysis-to-design transition from scored assessment evidence.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_project(p: argparse.ArgumentParser) -> None:
        p.add_argument("--project", required=True, help="path to the project document")

    def add_format(p: argparse.ArgumentParser) -> None:
        p.add_argument("--format", choices=("human", "structured"), default="human")

    p_init = sub.add_parser("init", help="create a new project document")
    add_project(p_init)
    p_init.add_argument("--name", required=True)
    p_init.add_argument("--id", help="project id (defaults to a slug of the name)")
    p_init.add_argument("--threshold", type=float, default=0.5)
    p_init.add_argument("--mode", choices=("literal", "pragmatic"), default="pragmatic")
    p_init.add_argument("--paralysis-window", type=int, default=3)
    p_init.add_argument("--stagnation-delta", type=float, default=0.05)
    p_init.add_argument("--core-weight", type=float, default=2.0)
    p_init.add_argument("--supporting-weight", type=float, default=1.0)
    p_init.add_argument("--peer-blend", type=float, default=0.0,
                        help="weight of the peer-rating balance inside the people index")
    p_init.add_argument("--force", action="store_true")
    p_init.set_defaults(func=_cmd_init)

    p_assess = sub.add_parser("assess", help="enter instruments and append an iteration")
    add_project(p_assess)
    group = p_assess.add_mutually_exclusive_group(required=True)
    group.add_argument("--from", dest="from_file", help="instrument bundle JSON file")
    group.add_argument("--interactive", action="store_true")
    add_format(p_assess)
    p_assess.set_defaults(func=_cmd_assess)

    p_decide = sub.add_parser("decide", help="run the gate on the latest iteration")
    add_project(p_decide)
    p_decide.add_argument("--gate", action="store_true",
                          help="exit 0 only when the gate is open (ReadyForDesign)")
    add_format(p_decide)
    p_decide.set_defaults(func=_cmd_decide)

    p_history = sub.add_parser("history", help="show the iteration history")
    add_project(p_history)
    add_format(p_history)
    p_history.set_defaults(func=_cmd_history)

    p_whatif = sub.add_parser("whatif", help="explore overrides on the latest snapshot")
    add_project(p_whatif)
    p_whatif.add_argument("--set", action="append", metavar="INDEX=VALUE",
                          help="override an index (repeatable); F accepts 'unmeasured'")
    p_whatif.add_argument("--gate", action="store_true")
    add_format(p_whatif)
    p_whatif.set_defaults(func=_cmd_whatif)

    p_sweep = sub.add_parser("sweep", help="evaluate the rule table over a value grid")
    p_sweep.add_argument("--grid", required=True, help="comma-separated values in [0, 1]")
    p_sweep.add_argument("--mode", choices=("literal", "pragmatic"), default="pragmatic")
    add_format(p_sweep)
    p_sweep.set_defaults(func=_cmd_sweep)

    p_report = sub.add_parser("report", help="render the gate report")
    add_project(p_report)
    p_report.add_argument("--out", help="directory for report.md, iterations.csv and indices.png")
    p_report.set_defaults(func=_cmd_report)

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--port", type=int, default=8640)
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--store", default=None, help="project store directory (or AAP_STORE_DIR)")
    p_serve.add_argument("--dashboard", default=None, help="built dashboard bundle directory")
    p_serve.set_defaults(func=_cmd_serve)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except _STORE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_STORE
    except AapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
