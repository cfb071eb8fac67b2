"""Pure computation of the five bounded indices from assessment instruments.

Every operation here is a pure function of immutable inputs and returns values
in [0, 1]. The future-usefulness index is the one quantity that can be absent:
``None`` stands for "unmeasured", which downstream gating treats differently
from a failing score.

The contribution estimator solves least squares on the peer-rating matrix
under a sum-to-one constraint: the minimizer of ``sum_ij (r_ij - c_j)^2``
subject to ``sum_j c_j = 1`` is the column-mean vector shifted uniformly by
``(1 - sum of means) / n``. Negative components (possible when raters hand out
more than 100% in total) are clamped to zero and the vector renormalized.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DegenerateInput, EmptyInventory, InstrumentInvalid, RangeViolation
from .instruments import (
    DataInventory,
    DataTag,
    GQFactorList,
    InstrumentBundle,
    IUChecklist,
    PeerRatingMatrix,
    PIQuestionnaire,
    ProcessInventory,
    ProcessKind,
)

__all__ = [
    "DataIndices",
    "IndexSnapshot",
    "NO_IMMEDIATE_EVIDENCE",
    "compute_data_indices",
    "compute_gq",
    "compute_iu",
    "compute_pi",
    "compute_pri",
    "contribution_balance",
    "estimate_contributions",
    "normalize_scores",
    "snapshot_from_instruments",
]

#: Warning attached when an inventory has no immediately-useful item: the
#: index is forced to 0 because "no evidence" must not pass a gate.
NO_IMMEDIATE_EVIDENCE = "NoImmediateEvidence"

INDEX_NAMES = ("pi", "u", "f", "pri", "iu", "gq")


@dataclass(frozen=True, slots=True)
class IndexSnapshot:
    """The six index values for one analysis iteration.

    ``f`` is ``None`` while future usefulness has not been measured.
    """

    pi: float
    u: float
    f: float | None
    pri: float
    iu: float
    gq: float

    def __post_init__(self) -> None:
        for name in ("pi", "u", "pri", "iu", "gq"):
            value = getattr(self, name)
            if not isinstance(value, (int, float)) or isinstance(value, bool):
                raise RangeViolation(f"{name} must be a number, got {value!r}", field_path=name)
            if not 0.0 <= value <= 1.0:
                raise RangeViolation(f"{name} must lie in [0, 1], got {value!r}", field_path=name)
        if self.f is not None:
            if not isinstance(self.f, (int, float)) or isinstance(self.f, bool):
                raise RangeViolation(f"f must be a number or unmeasured, got {self.f!r}", field_path="f")
            if not 0.0 <= self.f <= 1.0:
                raise RangeViolation(f"f must lie in [0, 1], got {self.f!r}", field_path="f")


def normalize_scores(raw: list[float], lo: float, hi: float) -> list[float]:
    """Rescale raw scores from [lo, hi] onto [0, 1].

    A degenerate range (lo == hi) maps everything to the neutral 0.5, which
    deliberately does not pass the strict gate.
    """
    if lo > hi:
        raise RangeViolation(f"lo {lo!r} exceeds hi {hi!r}")
    for x in raw:
        if not lo <= x <= hi:
            raise RangeViolation(f"value {x!r} outside [{lo!r}, {hi!r}]")
    if lo == hi:
        return [0.5 for _ in raw]
    span = hi - lo
    return [(x - lo) / span for x in raw]


def estimate_contributions(matrix: PeerRatingMatrix) -> tuple[float, ...]:
    """Per-member contribution estimate from peer ratings.

    Minimizes the squared disagreement with all raters subject to the
    contributions summing to 1. Components land in [0, 1] and sum to 1.
    """
    m = len(matrix.ratings)
    n = len(matrix.member_ids)
    if n < 2 or m < 1:
        raise DegenerateInput(f"need at least 2 members and 1 rater, got n={n}, m={m}")
    means = [sum(row[j] for row in matrix.ratings) / m for j in range(n)]
    shift = (1.0 - sum(means)) / n
    c = [mu + shift for mu in means]
    if any(x < 0.0 for x in c):
        c = [max(x, 0.0) for x in c]
        total = sum(c)  # >= 1 here: dropping negatives from a sum of 1 only raises it
        c = [x / total for x in c]
    return tuple(c)


def contribution_balance(c: tuple[float, ...]) -> float:
    """How evenly a contribution vector is spread: 1 uniform, 0 monopoly."""
    n = len(c)
    if n < 2:
        raise DegenerateInput(f"need at least 2 contributions, got {n}")
    uniform = 1.0 / n
    worst = max(abs(x - uniform) for x in c)
    return 1.0 - worst / (1.0 - uniform)


def compute_pi(
    questionnaire: PIQuestionnaire,
    peer: PeerRatingMatrix | None = None,
    lam: float = 0.0,
) -> float:
    """People index: weighted questionnaire mean, optionally blended with peer balance.

    ``lam`` weighs the peer-derived contribution balance; it must be 0 when no
    peer ratings are supplied.
    """
    if not 0.0 <= lam <= 1.0:
        raise InstrumentInvalid(f"blend weight must lie in [0, 1], got {lam!r}")
    if peer is None and lam != 0.0:
        raise InstrumentInvalid("blend weight requires peer ratings")
    total_weight = sum(questionnaire.weights)
    weighted = sum(w * s for (_, s), w in zip(questionnaire.answers, questionnaire.weights))
    base = weighted / total_weight
    if peer is None or lam == 0.0:
        return base
    balance = contribution_balance(estimate_contributions(peer))
    return (1.0 - lam) * base + lam * balance


@dataclass(frozen=True, slots=True)
class DataIndices:
    """Immediate (u) and future (f) usefulness; f is None when unmeasured."""

    u: float
    f: float | None
    warnings: tuple[str, ...] = ()


def compute_data_indices(inventory: DataInventory) -> DataIndices:
    """Mean usefulness per tag. No future-tagged item leaves f unmeasured;
    no immediate-tagged item forces u to 0 with a warning."""
    if not inventory.items:
        raise EmptyInventory("data inventory is empty")
    immediate = [it.usefulness for it in inventory.items if DataTag.IMMEDIATE in it.tags]
    future = [it.usefulness for it in inventory.items if DataTag.FUTURE in it.tags]
    warnings: tuple[str, ...] = ()
    if immediate:
        u = sum(immediate) / len(immediate)
    else:
        u = 0.0
        warnings = (NO_IMMEDIATE_EVIDENCE,)
    f = sum(future) / len(future) if future else None
    return DataIndices(u=u, f=f, warnings=warnings)


def compute_pri(
    inventory: ProcessInventory,
    core_weight: float = 2.0,
    supporting_weight: float = 1.0,
) -> float:
    """Process index: understanding averaged with core processes weighing more."""
    if core_weight <= 0 or supporting_weight <= 0:
        raise InstrumentInvalid("process kind weights must be positive")
    if not inventory.processes:
        raise EmptyInventory("process inventory is empty")
    kind_weight = {ProcessKind.CORE: core_weight, ProcessKind.SUPPORTING: supporting_weight}
    total = sum(kind_weight[p.kind] for p in inventory.processes)
    weighted = sum(kind_weight[p.kind] * p.understanding for p in inventory.processes)
    return weighted / total


def compute_iu(checklist: IUChecklist) -> float:
    """Interface utility: plain mean of the four checklist answers."""
    return sum(checklist.answers) / 4.0


def compute_gq(factors: GQFactorList) -> float:
    """Geographical quotient: 1 minus mean dissimilarity severity.

    An empty factor list means no known dissimilarity, hence 1.
    """
    if not factors.factors:
        return 1.0
    return 1.0 - sum(f.severity for f in factors.factors) / len(factors.factors)


def snapshot_from_instruments(
    bundle: InstrumentBundle,
    *,
    core_weight: float = 2.0,
    supporting_weight: float = 1.0,
    lam: float = 0.0,
) -> tuple[IndexSnapshot, tuple[str, ...]]:
    """Score a full instrument bundle into a snapshot, plus any warnings.

    The peer blend only applies when peer ratings are present; without them
    the people index is the questionnaire mean alone.
    """
    effective_lam = lam if bundle.peer_ratings is not None else 0.0
    pi = compute_pi(bundle.pi_questionnaire, bundle.peer_ratings, effective_lam)
    data = compute_data_indices(bundle.data_inventory)
    pri = compute_pri(bundle.process_inventory, core_weight, supporting_weight)
    iu = compute_iu(bundle.iu_checklist)
    gq = compute_gq(bundle.gq_factors)
    snapshot = IndexSnapshot(pi=pi, u=data.u, f=data.f, pri=pri, iu=iu, gq=gq)
    return snapshot, data.warnings
