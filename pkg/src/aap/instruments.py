"""Assessment instruments: the structured evidence the indices are computed from.

Six instruments feed the five indices. Each type validates its invariants at
construction time, so any instance that exists is safe to score:

* :class:`PIQuestionnaire` and :class:`PeerRatingMatrix` feed the people index,
* :class:`DataInventory` feeds the immediate/future usefulness pair,
* :class:`ProcessInventory` feeds the process index,
* :class:`IUChecklist` feeds the interface utility,
* :class:`GQFactorList` feeds the geographical quotient.

The default question and factor catalogues ship as JSON files under
``aap/catalog`` so deployments can extend them without touching code.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from importlib import resources

from .errors import EmptyInventory, InstrumentInvalid, RangeViolation

__all__ = [
    "DataInventory",
    "DataItem",
    "DataTag",
    "GQFactor",
    "GQFactorList",
    "IUChecklist",
    "InstrumentBundle",
    "PIQuestionnaire",
    "PeerRatingMatrix",
    "ProcessEntry",
    "ProcessInventory",
    "ProcessKind",
    "CatalogQuestion",
    "CatalogFactor",
    "load_pi_catalog",
    "load_iu_catalog",
    "load_gq_catalog",
]


def _check_unit(value: float, what: str, exc: type[Exception] = InstrumentInvalid) -> None:
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        raise exc(f"{what} must be a number, got {value!r}")
    if not 0.0 <= value <= 1.0:
        raise exc(f"{what} must lie in [0, 1], got {value!r}")


@dataclass(frozen=True)
class PIQuestionnaire:
    """Scored questionnaire on the information-gathering effort.

    ``answers`` pairs a question id with a score in [0, 1]; ``weights`` runs
    parallel to it. Weights are non-negative and not all zero.
    """

    answers: tuple[tuple[str, float], ...]
    weights: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "answers", tuple((str(q), float(s)) for q, s in self.answers))
        object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))
        if not self.answers:
            raise InstrumentInvalid("questionnaire has no answers")
        if len(self.weights) != len(self.answers):
            raise InstrumentInvalid(
                f"{len(self.weights)} weights for {len(self.answers)} answers"
            )
        seen: set[str] = set()
        for question_id, score in self.answers:
            if question_id in seen:
                raise InstrumentInvalid(f"duplicate question id {question_id!r}")
            seen.add(question_id)
            _check_unit(score, f"score for {question_id!r}")
        for i, weight in enumerate(self.weights):
            if weight < 0:
                raise InstrumentInvalid(f"weight {i} is negative")
        if not any(w > 0 for w in self.weights):
            raise InstrumentInvalid("all weights are zero")


#: Participant roles carried as metadata alongside peer-rating member ids.
ROLE_GATHERER = "gatherer"
ROLE_SOURCE = "source"


@dataclass(frozen=True)
class PeerRatingMatrix:
    """Each rater's estimate of every member's fractional contribution.

    ``ratings[i][j]`` is rater i's estimate for member j, in [0, 1]. Roles
    (information gatherer vs. information source) are optional metadata and do
    not affect the estimate.
    """

    ratings: tuple[tuple[float, ...], ...]
    member_ids: tuple[str, ...]
    roles: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "ratings", tuple(tuple(float(x) for x in row) for row in self.ratings)
        )
        object.__setattr__(self, "member_ids", tuple(str(m) for m in self.member_ids))
        if self.roles is not None:
            object.__setattr__(self, "roles", tuple(str(r) for r in self.roles))
        n = len(self.member_ids)
        if n < 2:
            raise InstrumentInvalid("peer ratings need at least 2 members")
        if len(set(self.member_ids)) != n:
            raise InstrumentInvalid("member ids must be unique")
        if not self.ratings:
            raise InstrumentInvalid("peer ratings need at least 1 rater")
        for i, row in enumerate(self.ratings):
            if len(row) != n:
                raise InstrumentInvalid(f"rater {i} rated {len(row)} members, expected {n}")
            for j, value in enumerate(row):
                _check_unit(value, f"rating ({i}, {j})")
        if self.roles is not None and len(self.roles) != n:
            raise InstrumentInvalid("roles must match member count when given")


class DataTag(str, Enum):
    IMMEDIATE = "immediate"
    FUTURE = "future"


@dataclass(frozen=True)
class DataItem:
    item_id: str
    description: str
    tags: frozenset[DataTag]
    usefulness: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "tags", frozenset(DataTag(t) for t in self.tags))
        if not self.tags:
            raise InstrumentInvalid(f"data item {self.item_id!r} carries no tags")
        _check_unit(self.usefulness, f"usefulness of {self.item_id!r}")


@dataclass(frozen=True)
class DataInventory:
    """Gathered data items, each tagged immediate and/or future, with a usefulness score."""

    items: tuple[DataItem, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "items", tuple(self.items))
        if not self.items:
            raise EmptyInventory("data inventory is empty")


class ProcessKind(str, Enum):
    CORE = "core"
    SUPPORTING = "supporting"


@dataclass(frozen=True)
class ProcessEntry:
    process_id: str
    kind: ProcessKind
    understanding: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", ProcessKind(self.kind))
        _check_unit(self.understanding, f"understanding of {self.process_id!r}")


@dataclass(frozen=True)
class ProcessInventory:
    """Existing-system processes, split into core vs. supporting, with understanding scores."""

    processes: tuple[ProcessEntry, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "processes", tuple(self.processes))
        if not self.processes:
            raise EmptyInventory("process inventory is empty")


@dataclass(frozen=True)
class IUChecklist:
    """Exactly four interface-readiness answers: outputs, processes, user types, platform."""

    answers: tuple[float, float, float, float]

    def __post_init__(self) -> None:
        object.__setattr__(self, "answers", tuple(float(a) for a in self.answers))
        if len(self.answers) != 4:
            raise InstrumentInvalid(f"interface checklist needs exactly 4 answers, got {len(self.answers)}")
        for i, answer in enumerate(self.answers):
            _check_unit(answer, f"checklist answer {i + 1}")


@dataclass(frozen=True)
class GQFactor:
    factor_id: str
    description: str
    severity: float

    def __post_init__(self) -> None:
        # Severity range errors surface as RangeViolation by contract.
        _check_unit(self.severity, f"severity of {self.factor_id!r}", RangeViolation)


@dataclass(frozen=True)
class GQFactorList:
    """Geographic/cultural/logistical dissimilarity factors; may be empty."""

    factors: tuple[GQFactor, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "factors", tuple(self.factors))


@dataclass(frozen=True)
class InstrumentBundle:
    """One iteration's full evidence set. Peer ratings are optional."""

    pi_questionnaire: PIQuestionnaire
    data_inventory: DataInventory
    process_inventory: ProcessInventory
    iu_checklist: IUChecklist
    gq_factors: GQFactorList
    peer_ratings: PeerRatingMatrix | None = None


# ---------------------------------------------------------------------------
# Default catalogues
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CatalogQuestion:
    id: str
    text: str
    weight: float = 1.0


@dataclass(frozen=True)
class CatalogFactor:
    id: str
    description: str


def _read_catalog(name: str) -> dict:
    with resources.files("aap.catalog").joinpath(name).open("r", encoding="utf-8") as fh:
        return json.load(fh)


def load_pi_catalog() -> tuple[CatalogQuestion, ...]:
    """The eight default people-index questions."""
    doc = _read_catalog("pi_questions.json")
    return tuple(
        CatalogQuestion(q["id"], q["text"], float(q.get("weight", 1.0))) for q in doc["questions"]
    )


def load_iu_catalog() -> tuple[CatalogQuestion, ...]:
    """The four default interface-utility questions."""
    doc = _read_catalog("iu_questions.json")
    return tuple(CatalogQuestion(q["id"], q["text"]) for q in doc["questions"])


def load_gq_catalog() -> tuple[CatalogFactor, ...]:
    """The default dissimilarity-factor catalogue."""
    doc = _read_catalog("gq_factors.json")
    return tuple(CatalogFactor(f["id"], f["description"]) for f in doc["factors"])
