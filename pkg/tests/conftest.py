from __future__ import annotations

import pytest

from aap import (
    DataInventory,
    DataItem,
    GQFactor,
    GQFactorList,
    IUChecklist,
    InstrumentBundle,
    PIQuestionnaire,
    PeerRatingMatrix,
    ProcessEntry,
    ProcessInventory,
)


def bundle_for(
    pi: float,
    u: float,
    f: float | None,
    pri: float,
    iu: float,
    gq: float,
    peer: PeerRatingMatrix | None = None,
) -> InstrumentBundle:
    """Build an instrument bundle whose computed snapshot hits the given
    index values exactly (with a zero peer blend)."""
    items = [DataItem(item_id="imm", description="immediate evidence", tags=frozenset({"immediate"}), usefulness=u)]
    if f is not None:
        items.append(
            DataItem(item_id="fut", description="future evidence", tags=frozenset({"future"}), usefulness=f)
        )
    return InstrumentBundle(
        pi_questionnaire=PIQuestionnaire(
            answers=(("q1", pi), ("q2", pi)), weights=(1.0, 1.0)
        ),
        peer_ratings=peer,
        data_inventory=DataInventory(items=tuple(items)),
        process_inventory=ProcessInventory(
            processes=(ProcessEntry(process_id="p1", kind="core", understanding=pri),)
        ),
        iu_checklist=IUChecklist(answers=(iu, iu, iu, iu)),
        gq_factors=GQFactorList(
            factors=(GQFactor(factor_id="g1", description="dissimilarity", severity=1.0 - gq),)
        ),
    )


@pytest.fixture
def step10_bundle() -> InstrumentBundle:
    return bundle_for(0.8, 0.8, 0.8, 0.9, 0.8, 0.8)


@pytest.fixture
def all_half_bundle() -> InstrumentBundle:
    return bundle_for(0.5, 0.5, 0.5, 0.5, 0.5, 0.5)
