#!/usr/bin/env python3
"""Regenerate the shipped sample project document.

Three iterations of an e-governance team carrying a working solution from a
coastal plains state into a hill state: geography blocks the gate twice, the
dissimilarity factors get worked down, and the third iteration opens the gate.
Full instruments are stored for every iteration so the recompute check covers
the whole scoring pipeline, peer blend included.
"""

from __future__ import annotations

import json
from pathlib import Path

from aap import (
    DataInventory,
    DataItem,
    GQFactor,
    GQFactorList,
    InstrumentBundle,
    IUChecklist,
    PIQuestionnaire,
    PeerRatingMatrix,
    ProcessEntry,
    ProcessInventory,
    ProjectConfig,
    append_iteration,
    new_project,
    to_document,
)

OUT = Path(__file__).resolve().parent.parent / "src" / "aap" / "catalog" / "sample_project.json"

PI_IDS = (
    "fact_finding_techniques",
    "site_visits",
    "team_composition",
    "team_experience",
    "literature_review",
    "questionnaire_distinctiveness",
    "automated_tooling",
    "documentation",
)

GQ_DESCRIPTIONS = {
    "ui_language": "Interface must switch from the coastal language to the hill region's",
    "idea_resistance": "Hill-district offices are wary of changes the coastal offices embraced",
    "red_tape": "Approvals pass through more desks than in the coastal rollout",
    "terrain": "Field visits to hill offices take days instead of hours",
}


def questionnaire(scores) -> PIQuestionnaire:
    return PIQuestionnaire(
        answers=tuple(zip(PI_IDS, scores)), weights=tuple([1.0] * len(PI_IDS))
    )


def peers(rows) -> PeerRatingMatrix:
    return PeerRatingMatrix(
        ratings=tuple(tuple(r) for r in rows),
        member_ids=("lead-analyst", "field-interviewer", "records-officer"),
        roles=("gatherer", "gatherer", "source"),
    )


def data(items) -> DataInventory:
    return DataInventory(
        items=tuple(
            DataItem(item_id=i, description=d, tags=frozenset(t), usefulness=u)
            for i, d, t, u in items
        )
    )


def processes(entries) -> ProcessInventory:
    return ProcessInventory(
        processes=tuple(
            ProcessEntry(process_id=p, kind=k, understanding=u) for p, k, u in entries
        )
    )


def gq(severities) -> GQFactorList:
    return GQFactorList(
        factors=tuple(
            GQFactor(factor_id=fid, description=GQ_DESCRIPTIONS[fid], severity=s)
            for fid, s in severities
        )
    )


ITERATIONS = [
    (
        "2026-07-01T09:00:00Z",
        InstrumentBundle(
            pi_questionnaire=questionnaire((0.6, 0.5, 0.7, 0.8, 0.5, 0.6, 0.55, 0.71)),
            peer_ratings=peers([[0.45, 0.35, 0.2], [0.5, 0.3, 0.2], [0.4, 0.4, 0.2]]),
            data_inventory=data(
                [
                    ("grievance-backlog", "Backlog process fails on bulk uploads; fix is a config change",
                     {"immediate"}, 0.8),
                    ("counter-hours", "Counter staffing peaks misalign with citizen footfall",
                     {"immediate"}, 0.6),
                    ("clerk-attrition", "Four records clerks left the district office over pay",
                     {"future"}, 0.55),
                    ("paper-archive", "Legacy paper archive layout, relevant once digitisation starts",
                     {"future"}, 0.65),
                ]
            ),
            process_inventory=processes(
                [
                    ("citizen-intake", "core", 0.8),
                    ("case-routing", "core", 0.7),
                    ("report-printing", "supporting", 0.6),
                ]
            ),
            iu_checklist=IUChecklist(answers=(0.7, 0.6, 0.8, 0.7)),
            gq_factors=gq(
                [("ui_language", 0.9), ("idea_resistance", 0.7), ("red_tape", 0.8), ("terrain", 0.75)]
            ),
        ),
    ),
    (
        "2026-07-15T09:00:00Z",
        InstrumentBundle(
            pi_questionnaire=questionnaire((0.7, 0.65, 0.7, 0.8, 0.6, 0.65, 0.6, 0.75)),
            peer_ratings=peers([[0.4, 0.35, 0.25], [0.45, 0.3, 0.25], [0.35, 0.4, 0.25]]),
            data_inventory=data(
                [
                    ("grievance-backlog", "Bulk-upload fix verified on staging data",
                     {"immediate"}, 0.85),
                    ("counter-hours", "Staffing plan redrawn against observed footfall",
                     {"immediate"}, 0.7),
                    ("hindi-forms", "Citizen-facing forms translated and field-tested",
                     {"immediate"}, 0.65),
                    ("clerk-attrition", "Pay review pending; matters for the staffing module later",
                     {"future"}, 0.6),
                    ("paper-archive", "Archive map drawn, input to the digitisation phase",
                     {"future"}, 0.7),
                ]
            ),
            process_inventory=processes(
                [
                    ("citizen-intake", "core", 0.85),
                    ("case-routing", "core", 0.8),
                    ("report-printing", "supporting", 0.7),
                ]
            ),
            iu_checklist=IUChecklist(answers=(0.75, 0.7, 0.8, 0.75)),
            gq_factors=gq(
                [("ui_language", 0.6), ("idea_resistance", 0.5), ("red_tape", 0.5), ("terrain", 0.4)]
            ),
        ),
    ),
    (
        "2026-08-01T09:00:00Z",
        InstrumentBundle(
            pi_questionnaire=questionnaire((0.8, 0.75, 0.8, 0.85, 0.7, 0.75, 0.7, 0.85)),
            peer_ratings=peers([[0.4, 0.35, 0.25], [0.4, 0.35, 0.25], [0.35, 0.35, 0.3]]),
            data_inventory=data(
                [
                    ("grievance-backlog", "Fix deployed in two pilot districts", {"immediate"}, 0.9),
                    ("counter-hours", "New roster live, queue times halved", {"immediate"}, 0.8),
                    ("hindi-forms", "Translated forms in daily use at pilot counters",
                     {"immediate"}, 0.75),
                    ("clerk-attrition", "Replacement hiring approved, onboarding material needed later",
                     {"future"}, 0.65),
                    ("paper-archive", "Digitisation vendor shortlist ready for the next phase",
                     {"future"}, 0.75),
                ]
            ),
            process_inventory=processes(
                [
                    ("citizen-intake", "core", 0.9),
                    ("case-routing", "core", 0.85),
                    ("report-printing", "supporting", 0.8),
                ]
            ),
            iu_checklist=IUChecklist(answers=(0.85, 0.8, 0.85, 0.8)),
            gq_factors=gq(
                [("ui_language", 0.3), ("idea_resistance", 0.2), ("red_tape", 0.15), ("terrain", 0.15)]
            ),
        ),
    ),
]


def build():
    record = new_project(
        "hill-state-egov",
        "E-governance rollout: coastal plains to hill state",
        ProjectConfig(lambda_=0.25),
        created_at="2026-06-20T08:00:00Z",
    )
    for timestamp, bundle in ITERATIONS:
        record, iteration = append_iteration(
            record, revision=record.revision, instruments=bundle, timestamp=timestamp
        )
        print(
            f"seq {iteration.seq}: "
            + ", ".join(
                f"{k}={getattr(iteration.snapshot, k):.4f}"
                if getattr(iteration.snapshot, k) is not None
                else f"{k}=unmeasured"
                for k in ("pi", "u", "f", "pri", "iu", "gq")
            )
            + f" -> {iteration.recommendation.outcome.value} ({iteration.recommendation.fired_step})"
        )
    return record


if __name__ == "__main__":
    record = build()
    OUT.write_text(json.dumps(to_document(record), indent=2) + "\n", encoding="utf-8")
    print(f"wrote {OUT}")
