"""aap: an analysis-phase decision gate.

Scores structured assessment evidence into five bounded indices, runs them
through a deterministic rule table, and answers the question every analysis
team eventually faces: keep analysing, rework, or move on to design. Includes
iteration history with paralysis detection, what-if exploration, a CLI gate,
and an HTTP service that also hosts the browser dashboard.
"""

from .engine import (
    Advisory,
    EngineConfig,
    Outcome,
    ParalysisKind,
    ParalysisReport,
    PriMode,
    Recommendation,
    SweepResult,
    TraceEntry,
    decide,
    detect_paralysis,
    sweep,
    what_if,
)
from .errors import (
    AapError,
    DegenerateInput,
    EmptyHistory,
    EmptyInventory,
    InstrumentInvalid,
    InvariantViolation,
    MalformedDocument,
    RangeViolation,
    RevisionConflict,
    SchemaVersionMismatch,
    UnknownIndexName,
)
from .indices import (
    DataIndices,
    IndexSnapshot,
    NO_IMMEDIATE_EVIDENCE,
    compute_data_indices,
    compute_gq,
    compute_iu,
    compute_pi,
    compute_pri,
    contribution_balance,
    estimate_contributions,
    normalize_scores,
    snapshot_from_instruments,
)
from .instruments import (
    DataInventory,
    DataItem,
    DataTag,
    GQFactor,
    GQFactorList,
    InstrumentBundle,
    IUChecklist,
    PeerRatingMatrix,
    PIQuestionnaire,
    ProcessEntry,
    ProcessInventory,
    ProcessKind,
)
from .report import render_report, write_report_files
from .store import (
    IterationRecord,
    ProjectConfig,
    ProjectRecord,
    ProjectStore,
    append_iteration,
    from_document,
    load_project,
    new_project,
    save_project,
    to_document,
    verify_project,
)

__version__ = "0.1.0"
