"""Human-readable gate reports, with optional figure and CSV export.

``render_report`` produces the text report: one section per iteration (index
table, fired step, rationale, advisories) plus the paralysis check over the
whole history. ``write_report_files`` additionally renders the index history
as a matplotlib figure (one series per index with the threshold line) and a
delimited per-iteration table next to the text.
"""

from __future__ import annotations

import csv
from pathlib import Path

from .engine import detect_paralysis
from .errors import EmptyHistory
from .store import ProjectRecord, history_pairs

__all__ = ["render_report", "write_report_files"]

_INDEX_LABELS = ("pi", "u", "f", "pri", "iu", "gq")


def _fmt(value: float | None) -> str:
    return "unmeasured" if value is None else f"{value:.3f}"


def _passes(value: float | None, threshold: float) -> str:
    if value is None:
        return "-"
    return "yes" if value > threshold else "no"


def render_report(record: ProjectRecord) -> str:
    """The export document for one project; raises EmptyHistory when bare."""
    if not record.iterations:
        raise EmptyHistory(f"project {record.project_id!r} has no iterations to report on")
    config = record.config
    lines: list[str] = []
    out = lines.append
    out(f"# Gate report: {record.name} ({record.project_id})")
    out("")
    out(
        f"Created {record.created_at}, revision {record.revision}, "
        f"{len(record.iterations)} iteration(s)."
    )
    out(
        f"Config: threshold {config.threshold}, mode {config.pri_mode.value}, "
        f"core/supporting weights {config.core_weight}/{config.supporting_weight}, "
        f"peer blend {config.lambda_}."
    )
    for iteration in record.iterations:
        out("")
        out(f"## Iteration {iteration.seq} ({iteration.timestamp})")
        out("")
        out(f"| index | value | passes (> {config.threshold}) |")
        out("| --- | --- | --- |")
        for name in _INDEX_LABELS:
            value = getattr(iteration.snapshot, name)
            out(f"| {name.upper()} | {_fmt(value)} | {_passes(value, config.threshold)} |")
        out("")
        rec = iteration.recommendation
        out(f"Outcome: {rec.outcome.value} (fired step {rec.fired_step})")
        out(f"Rationale: {rec.rationale}")
        advisories = ", ".join(sorted(a.value for a in rec.advisories)) or "none"
        out(f"Advisories: {advisories}")

    out("")
    out("## Paralysis check")
    out("")
    report = detect_paralysis(history_pairs(record), config.engine_config())
    if report.triggered and report.kind is not None:
        window = ", ".join(str(s) for s in report.window)
        out(f"TRIGGERED: {report.kind.value} over iterations {window}.")
    elif report.window:
        window = ", ".join(str(s) for s in report.window)
        out(f"Not triggered (iterations {window} examined).")
    else:
        out(
            f"Not triggered (needs at least {config.paralysis_window} iterations, "
            f"have {len(record.iterations)})."
        )
    out("")
    return "\n".join(lines)


def _write_history_csv(record: ProjectRecord, path: Path) -> None:
    with path.open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            ["seq", "timestamp", "pi", "u", "f", "pri", "iu", "gq", "outcome", "fired_step"]
        )
        for it in record.iterations:
            snap = it.snapshot
            writer.writerow(
                [
                    it.seq,
                    it.timestamp,
                    repr(snap.pi),
                    repr(snap.u),
                    "unmeasured" if snap.f is None else repr(snap.f),
                    repr(snap.pri),
                    repr(snap.iu),
                    repr(snap.gq),
                    it.recommendation.outcome.value,
                    it.recommendation.fired_step,
                ]
            )


def _write_history_figure(record: ProjectRecord, path: Path) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    seqs = [it.seq for it in record.iterations]
    fig, ax = plt.subplots(figsize=(8, 4.5))
    for name in _INDEX_LABELS:
        if name == "f":
            points = [(it.seq, it.snapshot.f) for it in record.iterations if it.snapshot.f is not None]
            if not points:
                continue
            ax.plot(*zip(*points), marker="o", label="F")
        else:
            ax.plot(seqs, [getattr(it.snapshot, name) for it in record.iterations],
                    marker="o", label=name.upper())
    ax.axhline(record.config.threshold, color="black", linestyle="--", linewidth=1,
               label=f"threshold {record.config.threshold}")
    ax.set_xlabel("iteration")
    ax.set_ylabel("index value")
    ax.set_ylim(-0.02, 1.02)
    ax.set_xticks(seqs)
    ax.set_title(f"{record.name}: index history")
    ax.legend(loc="center left", bbox_to_anchor=(1.0, 0.5), fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def write_report_files(record: ProjectRecord, out_dir: str | Path) -> dict[str, Path]:
    """Write report.md, iterations.csv and indices.png into ``out_dir``."""
    text = render_report(record)  # raises EmptyHistory before any file is touched
    directory = Path(out_dir)
    directory.mkdir(parents=True, exist_ok=True)
    paths = {
        "report": directory / "report.md",
        "csv": directory / "iterations.csv",
        "figure": directory / "indices.png",
    }
    paths["report"].write_text(text, encoding="utf-8")
    _write_history_csv(record, paths["csv"])
    _write_history_figure(record, paths["figure"])
    return paths
