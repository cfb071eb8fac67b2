"""The decision gate: a total, deterministic rule table over index snapshots.

``decide`` walks four stages of guards in a fixed order and always terminates
in exactly one outcome. Strictness is deliberate everywhere: an index *passes*
only when it strictly exceeds the threshold, so a snapshot sitting exactly on
the threshold never opens the gate.

Stage 1 gates on the people index and the usefulness pair, stage 2 on process
understanding, stage 3 on interface utility, stage 4 on geography. Regions the
original step list leaves open are mapped onto the nearest failing step and
marked with an UncoveredRegion advisory so they are always distinguishable in
the output; the engine never invents a pass.

The process stage runs in one of two modes: pragmatic advances once process
understanding clears the threshold, literal additionally demands complete
(within epsilon of 1) understanding before moving on. Literal mode is the
stricter reading and is exactly what makes threshold-chasing paralysis
observable, which ``detect_paralysis`` reports over iteration histories.
"""

from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass, replace
from enum import Enum
from typing import Mapping, Sequence

from .errors import RangeViolation, UnknownIndexName
from .indices import INDEX_NAMES, IndexSnapshot

__all__ = [
    "Advisory",
    "EngineConfig",
    "Outcome",
    "ParalysisKind",
    "ParalysisReport",
    "PriMode",
    "Recommendation",
    "SweepResult",
    "TraceEntry",
    "decide",
    "detect_paralysis",
    "sweep",
    "what_if",
]


class PriMode(str, Enum):
    LITERAL = "literal"
    PRAGMATIC = "pragmatic"


class Outcome(str, Enum):
    RESTART_ANALYSIS = "RestartAnalysis"
    CHECK_FUTURE_USEFULNESS = "CheckFutureUsefulness"
    CONTINUE_PROCESS_ANALYSIS = "ContinueProcessAnalysis"
    INVOLVE_MORE_PEOPLE = "InvolveMorePeople"
    FIND_ALTERNATIVES = "FindAlternatives"
    RESOLVE_GEOGRAPHICAL_FACTORS = "ResolveGeographicalFactors"
    READY_FOR_DESIGN = "ReadyForDesign"


#: The only outcome that permits the analysis -> design phase transition.
GATE_OPEN = Outcome.READY_FOR_DESIGN

BLOCKING_OUTCOMES = frozenset(o for o in Outcome if o is not Outcome.READY_FOR_DESIGN)


class Advisory(str, Enum):
    REWORK_TEAM = "ReworkTeam"
    RETHINK_INTERFACE = "RethinkInterface"
    NOT_GENERIC = "NotGeneric"
    UNCOVERED_REGION = "UncoveredRegion"


class ParalysisKind(str, Enum):
    THRESHOLD_CHASING = "ThresholdChasing"
    STAGNATION = "Stagnation"


@dataclass(frozen=True, slots=True)
class EngineConfig:
    threshold: float = 0.5
    pri_mode: PriMode = PriMode.PRAGMATIC
    pri_unity_epsilon: float = 1e-9
    paralysis_window: int = 3
    stagnation_delta: float = 0.05

    def __post_init__(self) -> None:
        object.__setattr__(self, "pri_mode", PriMode(self.pri_mode))
        if not 0.0 < self.threshold < 1.0:
            raise RangeViolation(f"threshold must lie strictly inside (0, 1), got {self.threshold!r}")
        if self.pri_unity_epsilon <= 0:
            raise RangeViolation("pri_unity_epsilon must be positive")
        if self.paralysis_window < 2:
            raise RangeViolation("paralysis_window must be at least 2")
        if self.stagnation_delta <= 0:
            raise RangeViolation("stagnation_delta must be positive")


@dataclass(frozen=True, slots=True)
class TraceEntry:
    step: str
    guard: str
    verdict: str  # "no-match" | "continue" | "fired"


@dataclass(frozen=True, slots=True)
class Recommendation:
    outcome: Outcome
    fired_step: str
    advisories: frozenset[Advisory]
    rationale: str
    trace: tuple[TraceEntry, ...]


@dataclass(frozen=True, slots=True)
class ParalysisReport:
    triggered: bool
    kind: ParalysisKind | None
    window: tuple[int, ...]


# ---------------------------------------------------------------------------
# Rule rows. Guard text is fixed per row, so every possible trace entry is a
# shared constant: decide only ever appends references, never formats strings.
# ---------------------------------------------------------------------------

_NO_MATCH, _CONTINUE, _FIRED = "no-match", "continue", "fired"


def _row(step: str, guard: str) -> tuple[TraceEntry, TraceEntry, TraceEntry]:
    return (
        TraceEntry(step, guard, _NO_MATCH),
        TraceEntry(step, guard, _CONTINUE),
        TraceEntry(step, guard, _FIRED),
    )


_R3A = _row("3a", "PI > t and (U <= t or (F measured and F <= t))")
_R3B = _row("3b", "PI <= t and U > t and F unmeasured")
_R3C = _row("3c>", "PI <= t and U > t and F > t")
_R3D = _row("3d>", "PI > t and U > t and F > t")
# Uncovered stage-1 regions fail safe onto steps 3a/3b; the guard text and the
# UncoveredRegion advisory keep them distinguishable.
_R3E = _row("3a", "PI <= t and U <= t (uncovered region, fail-safe restart)")
_R3F = _row("3a", "PI <= t and U > t and F measured and F <= t (uncovered region, fail-safe restart)")
_R3G = _row("3b", "PI > t and U > t and F unmeasured (uncovered region)")
_R5 = _row("5", "PRI <= t")
_R6 = _row("6", "literal mode and PRI > t and |PRI - 1| > epsilon")
_R7 = _row("7>", "PRI understood well enough for the active mode")
_R8 = _row("8", "IU <= t and PI <= t")
_R8P = _row("8>", "IU <= t and PI > t")
_R9 = _row("9", "GQ <= t and (PI <= t or PRI <= t)")
_R9B = _row("9b", "GQ <= t and PI > t and PRI > t (uncovered region)")
_R10 = _row("10", "GQ > t")

_RAT_3A = (
    "The team effort cleared the bar but the gathered data is not proving "
    "useful now or later: discard it and begin the analysis afresh."
)
_RAT_3B = (
    "The data in hand is immediately useful while its future usefulness is "
    "still unknown: check future usefulness next."
)
_RAT_3E = (
    "Neither the team effort nor the immediate usefulness of the data clears "
    "the bar (a region the step list leaves open): fail safe and restart the analysis."
)
_RAT_3F = (
    "Immediate usefulness clears the bar but the team effort and future "
    "usefulness do not (a region the step list leaves open): fail safe and restart the analysis."
)
_RAT_3G = (
    "Team effort and immediate usefulness clear the bar while future "
    "usefulness is unmeasured (a region the step list leaves open): check future usefulness next."
)
_RAT_5 = (
    "The processes of the existing system are not understood well enough: "
    "the analysis has to be done afresh."
)
_RAT_6 = (
    "Process understanding clears the bar but is not yet complete: keep "
    "analysing the processes without starting from scratch."
)
_RAT_8 = (
    "Both the interface utility and the team effort fall short: involve more people."
)
_RAT_9 = (
    "Geographic dissimilarity is high and dragging the people or process "
    "work down: try to find alternatives."
)
_RAT_9B = (
    "Geographic dissimilarity is high even though the people and process "
    "work are healthy: resolve the geographical factors; the solution will not be generic."
)
_RAT_10 = (
    "The geography check clears the bar: the team is ready to move into the design phase."
)

_NO_ADVISORIES: frozenset[Advisory] = frozenset()
_ADV_REWORK = frozenset({Advisory.REWORK_TEAM})
_ADV_UNCOVERED = frozenset({Advisory.UNCOVERED_REGION})
_ADV_REWORK_UNCOVERED = frozenset({Advisory.REWORK_TEAM, Advisory.UNCOVERED_REGION})


def decide(snapshot: IndexSnapshot, config: EngineConfig | None = None) -> Recommendation:
    """Run the gate on one snapshot. Total and deterministic.

    Guards are evaluated in a fixed order; the trace records one entry per
    guard considered and always ends with the rule that fired.
    """
    if config is None:
        config = EngineConfig()
    t = config.threshold
    pi_pass = snapshot.pi > t
    u_pass = snapshot.u > t
    f = snapshot.f
    f_unmeasured = f is None
    f_pass = (not f_unmeasured) and f > t
    f_fail = (not f_unmeasured) and not f_pass

    trace: list[TraceEntry] = []
    add = trace.append
    advisories = _NO_ADVISORIES

    # Stage 1: people effort vs. usefulness of the gathered data.
    if pi_pass and (not u_pass or f_fail):
        add(_R3A[2])
        return Recommendation(Outcome.RESTART_ANALYSIS, "3a", advisories, _RAT_3A, tuple(trace))
    add(_R3A[0])
    if (not pi_pass) and u_pass and f_unmeasured:
        add(_R3B[2])
        return Recommendation(
            Outcome.CHECK_FUTURE_USEFULNESS, "3b", advisories, _RAT_3B, tuple(trace)
        )
    add(_R3B[0])
    if (not pi_pass) and u_pass and f_pass:
        add(_R3C[1])
        advisories = _ADV_REWORK
    else:
        add(_R3C[0])
        if pi_pass and u_pass and f_pass:
            add(_R3D[1])
        else:
            add(_R3D[0])
            if (not pi_pass) and (not u_pass):
                add(_R3E[2])
                return Recommendation(
                    Outcome.RESTART_ANALYSIS, "3a", _ADV_REWORK_UNCOVERED, _RAT_3E, tuple(trace)
                )
            add(_R3E[0])
            if (not pi_pass) and u_pass and f_fail:
                add(_R3F[2])
                return Recommendation(
                    Outcome.RESTART_ANALYSIS, "3a", _ADV_UNCOVERED, _RAT_3F, tuple(trace)
                )
            add(_R3F[0])
            # Only remaining region: PI > t and U > t and F unmeasured.
            add(_R3G[2])
            return Recommendation(
                Outcome.CHECK_FUTURE_USEFULNESS, "3b", _ADV_UNCOVERED, _RAT_3G, tuple(trace)
            )

    # Stage 2: process understanding.
    pri_pass = snapshot.pri > t
    if not pri_pass:
        add(_R5[2])
        return Recommendation(Outcome.RESTART_ANALYSIS, "5", advisories, _RAT_5, tuple(trace))
    add(_R5[0])
    literal = config.pri_mode is PriMode.LITERAL
    if literal and abs(snapshot.pri - 1.0) > config.pri_unity_epsilon:
        add(_R6[2])
        return Recommendation(
            Outcome.CONTINUE_PROCESS_ANALYSIS, "6", advisories, _RAT_6, tuple(trace)
        )
    add(_R6[0])
    add(_R7[1])

    # Stage 3: interface utility.
    iu_pass = snapshot.iu > t
    if not iu_pass and not pi_pass:
        add(_R8[2])
        return Recommendation(Outcome.INVOLVE_MORE_PEOPLE, "8", advisories, _RAT_8, tuple(trace))
    add(_R8[0])
    if not iu_pass and pi_pass:
        add(_R8P[1])
        advisories = advisories | {Advisory.RETHINK_INTERFACE}
    else:
        add(_R8P[0])

    # Stage 4: geography.
    gq_pass = snapshot.gq > t
    if not gq_pass and (not pi_pass or not pri_pass):
        add(_R9[2])
        return Recommendation(Outcome.FIND_ALTERNATIVES, "9", advisories, _RAT_9, tuple(trace))
    add(_R9[0])
    if not gq_pass:
        add(_R9B[2])
        return Recommendation(
            Outcome.RESOLVE_GEOGRAPHICAL_FACTORS,
            "9b",
            advisories | {Advisory.NOT_GENERIC},
            _RAT_9B,
            tuple(trace),
        )
    add(_R9B[0])
    add(_R10[2])
    return Recommendation(Outcome.READY_FOR_DESIGN, "10", advisories, _RAT_10, tuple(trace))


def what_if(
    snapshot: IndexSnapshot,
    overrides: Mapping[str, float | None],
    config: EngineConfig | None = None,
) -> Recommendation:
    """Decide on a copy of the snapshot with some indices overridden.

    Override keys are the lowercase index names; ``f`` may be set to ``None``
    to model an unmeasured future index. The original snapshot is untouched.
    """
    changes: dict[str, float | None] = {}
    for name, value in overrides.items():
        key = name.lower()
        if key not in INDEX_NAMES:
            raise UnknownIndexName(f"unknown index {name!r}; expected one of {', '.join(INDEX_NAMES)}")
        if value is None and key != "f":
            raise RangeViolation(f"{key} cannot be unmeasured", field_path=key)
        changes[key] = value
    merged = replace(snapshot, **changes)  # replace() reruns range validation
    return decide(merged, config)


@dataclass(frozen=True, slots=True)
class SweepResult:
    counts: dict[Outcome, int]
    total: bool  # totality flag: every point produced exactly one outcome
    points: int
    digest: str  # sha256 over (fired_step, outcome) in grid order

    @property
    def total_points(self) -> int:
        return self.points


def sweep(grid: Sequence[float], config: EngineConfig | None = None) -> SweepResult:
    """Evaluate the gate on the full Cartesian grid over all six indices.

    The future index additionally takes the UNMEASURED value at every
    combination of the other five, so the point count is
    ``len(grid)**5 * (len(grid) + 1)``. Deterministic: two runs over the same
    grid produce identical results, digest included.
    """
    if config is None:
        config = EngineConfig()
    values = sorted(set(float(v) for v in grid))
    if not values:
        raise RangeViolation("grid must hold at least one value")
    for v in values:
        if not 0.0 <= v <= 1.0:
            raise RangeViolation(f"grid value {v!r} outside [0, 1]")

    f_axis: tuple[float | None, ...] = tuple(values) + (None,)
    counts: dict[Outcome, int] = {outcome: 0 for outcome in Outcome}
    hasher = hashlib.sha256()
    errors = 0
    points = 0
    for pi, u, f, pri, iu, gq in itertools.product(
        values, values, f_axis, values, values, values
    ):
        points += 1
        try:
            rec = decide(IndexSnapshot(pi=pi, u=u, f=f, pri=pri, iu=iu, gq=gq), config)
        except Exception:
            errors += 1
            continue
        counts[rec.outcome] += 1
        hasher.update(rec.fired_step.encode())
        hasher.update(rec.outcome.value.encode())
    return SweepResult(counts=counts, total=errors == 0, points=points, digest=hasher.hexdigest())


def detect_paralysis(
    history: Sequence[tuple[IndexSnapshot, Recommendation]],
    config: EngineConfig | None = None,
    *,
    seqs: Sequence[int] | None = None,
) -> ParalysisReport:
    """Check the last ``paralysis_window`` iterations for the two trap patterns.

    Threshold chasing: every measured index already clears the threshold, yet
    no iteration in the window opened the gate (the team keeps polishing).
    Stagnation: every index barely moved across the window and the gate never
    opened. Threshold chasing wins when both hold. Shorter histories trigger
    nothing.
    """
    if config is None:
        config = EngineConfig()
    k = config.paralysis_window
    if seqs is None:
        seqs = tuple(range(1, len(history) + 1))
    if len(seqs) != len(history):
        raise RangeViolation("seqs must align with history")
    if len(history) < k:
        return ParalysisReport(triggered=False, kind=None, window=())

    window = tuple(seqs[-k:])
    tail = list(history[-k:])
    none_ready = all(rec.outcome is not Outcome.READY_FOR_DESIGN for _, rec in tail)

    t = config.threshold

    def all_measured_pass(snap: IndexSnapshot) -> bool:
        measured = [snap.pi, snap.u, snap.pri, snap.iu, snap.gq]
        if snap.f is not None:
            measured.append(snap.f)
        return all(v > t for v in measured)

    if none_ready and all(all_measured_pass(snap) for snap, _ in tail):
        return ParalysisReport(triggered=True, kind=ParalysisKind.THRESHOLD_CHASING, window=window)

    if none_ready:
        delta = config.stagnation_delta
        stagnant = True
        for name in INDEX_NAMES:
            values = [getattr(snap, name) for snap, _ in tail]
            if any(v is None for v in values):
                # f flipping between measured and unmeasured counts as movement
                if not all(v is None for v in values):
                    stagnant = False
                    break
                continue
            if max(values) - min(values) >= delta:
                stagnant = False
                break
        if stagnant:
            return ParalysisReport(triggered=True, kind=ParalysisKind.STAGNATION, window=window)

    return ParalysisReport(triggered=False, kind=None, window=window)
