"""Deliverable inspection workflow: a small state machine with an audit trail.

Each deliverable moves through self review, peer review, external audit and
causal analysis before final inspection; defects found there send it around
the rework loop, whose cycle count must stay under two for the inspection to
count as efficient. Authors may never act as their own final inspectors.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Iterable, Mapping

from .dataset import PHASE_ORDER, SEVERITY_CLASSES, Phase
from .errors import EventLogError, WorkflowPolicyError, WorkflowStateError


class WorkflowState(str, Enum):
    DRAFTED = "drafted"
    SELF_REVIEWED = "self_reviewed"
    PEER_REVIEWED = "peer_reviewed"
    EXTERNALLY_AUDITED = "externally_audited"
    CAUSAL_ANALYSIS_DONE = "causal_analysis_done"
    IN_FINAL_INSPECTION = "in_final_inspection"
    REINSPECTION_REQUIRED = "reinspection_required"
    ACCEPTED = "accepted"
    NCR_CLOSED = "ncr_closed"


ARTIFACT_KINDS: dict[Phase, tuple[str, ...]] = {
    Phase.REQUIREMENTS: ("requirement-spec",),
    Phase.DESIGN: ("high-level-design", "low-level-design"),
    Phase.IMPLEMENTATION: ("test-case", "source-code"),
}

# event name -> (required state, next state)
_SIMPLE_TRANSITIONS: dict[str, tuple[WorkflowState, WorkflowState]] = {
    "self_review": (WorkflowState.DRAFTED, WorkflowState.SELF_REVIEWED),
    "peer_review": (WorkflowState.SELF_REVIEWED, WorkflowState.PEER_REVIEWED),
    "external_audit": (WorkflowState.PEER_REVIEWED, WorkflowState.EXTERNALLY_AUDITED),
    "causal_analysis": (WorkflowState.EXTERNALLY_AUDITED, WorkflowState.CAUSAL_ANALYSIS_DONE),
    "final_inspection_start": (WorkflowState.CAUSAL_ANALYSIS_DONE, WorkflowState.IN_FINAL_INSPECTION),
    "defects_found": (WorkflowState.IN_FINAL_INSPECTION, WorkflowState.REINSPECTION_REQUIRED),
    "rework_complete": (WorkflowState.REINSPECTION_REQUIRED, WorkflowState.IN_FINAL_INSPECTION),
    "accept": (WorkflowState.IN_FINAL_INSPECTION, WorkflowState.ACCEPTED),
    "close_ncr": (WorkflowState.ACCEPTED, WorkflowState.NCR_CLOSED),
}

EVENT_NAMES = tuple(_SIMPLE_TRANSITIONS)


@dataclass(frozen=True)
class Inspector:
    id: str
    experience_years: float


@dataclass(frozen=True)
class DefectTrailEntry:
    defect_type: str
    count: int
    root_cause: str
    action_items: tuple[str, ...]
    inspectors: tuple[Inspector, ...]

    def __post_init__(self) -> None:
        if self.defect_type not in SEVERITY_CLASSES:
            raise ValueError(f"unknown defect type {self.defect_type!r}")
        if self.count < 1:
            raise ValueError(f"trail entry count must be at least 1, got {self.count}")


@dataclass(frozen=True)
class DeliverableWorkflow:
    deliverable_id: str
    phase: Phase
    artifact_kind: str
    author_ids: frozenset[str]
    state: WorkflowState = WorkflowState.DRAFTED
    loop_count: int = 0
    trail: tuple[DefectTrailEntry, ...] = ()
    ncr_closed: bool = False
    final_inspector_ids: frozenset[str] = frozenset()

    @property
    def efficient(self) -> bool:
        """True while the rework loop has run fewer than two times."""
        return self.loop_count < 2


def new_workflow(
    deliverable_id: str, phase: Phase, artifact_kind: str, author_ids: Iterable[str]
) -> DeliverableWorkflow:
    allowed = ARTIFACT_KINDS[phase]
    if artifact_kind not in allowed:
        raise ValueError(
            f"artifact kind {artifact_kind!r} does not belong to the {phase.value} phase "
            f"(expected one of {', '.join(allowed)})"
        )
    return DeliverableWorkflow(
        deliverable_id=deliverable_id,
        phase=phase,
        artifact_kind=artifact_kind,
        author_ids=frozenset(author_ids),
    )


def _parse_trail_entry(obj: Mapping) -> DefectTrailEntry:
    return DefectTrailEntry(
        defect_type=obj["defect_type"],
        count=int(obj["count"]),
        root_cause=obj.get("root_cause", ""),
        action_items=tuple(obj.get("action_items", ())),
        inspectors=tuple(
            Inspector(id=i["id"], experience_years=float(i.get("experience_years", 0)))
            for i in obj.get("inspectors", ())
        ),
    )


def record_event(
    wf: DeliverableWorkflow, event: str, payload: Mapping | None = None
) -> DeliverableWorkflow:
    """Apply one event, returning the updated workflow (the input is not mutated)."""
    payload = payload or {}
    if event not in _SIMPLE_TRANSITIONS:
        raise WorkflowStateError(f"unknown event {event!r}")
    required, target = _SIMPLE_TRANSITIONS[event]
    if wf.state is not required:
        raise WorkflowStateError(
            f"event {event!r} is not allowed in state {wf.state.value!r}"
        )
    if event == "final_inspection_start":
        inspectors = frozenset(payload.get("inspectors", ()))
        if not inspectors:
            raise WorkflowStateError("final_inspection_start needs an 'inspectors' list")
        overlap = inspectors & wf.author_ids
        if overlap:
            raise WorkflowPolicyError(
                f"authors cannot perform final inspection of their own deliverable: {sorted(overlap)}"
            )
        return replace(wf, state=target, final_inspector_ids=wf.final_inspector_ids | inspectors)
    if event == "defects_found":
        entries = tuple(_parse_trail_entry(e) for e in payload.get("entries", ()))
        if not entries:
            raise WorkflowStateError("defects_found needs at least one trail entry")
        return replace(wf, state=target, loop_count=wf.loop_count + 1, trail=wf.trail + entries)
    if event == "close_ncr":
        if not payload.get("report"):
            raise WorkflowStateError("close_ncr needs a 'report' reference")
        return replace(wf, state=target, ncr_closed=True)
    return replace(wf, state=target)


# --- event logs ----------------------------------------------------------------

def replay(event_log: Iterable[Mapping]) -> DeliverableWorkflow:
    """Fold an ordered event log into a workflow.

    The first record must be a 'create' event; sequence numbers must strictly
    increase; the first illegal record aborts with its index.
    """
    wf: DeliverableWorkflow | None = None
    last_seq: int | None = None
    index = -1
    for index, record in enumerate(event_log):
        event = record.get("event")
        seq = record.get("seq")
        if not isinstance(seq, int):
            raise EventLogError("record has no integer 'seq'", index)
        if last_seq is not None and seq <= last_seq:
            raise EventLogError(f"sequence number {seq} does not increase past {last_seq}", index)
        last_seq = seq
        payload = record.get("payload") or {}
        if index == 0:
            if event != "create":
                raise EventLogError(f"log must begin with a 'create' record, got {event!r}", index)
            try:
                wf = new_workflow(
                    deliverable_id=record["deliverable_id"],
                    phase=Phase(payload["phase"]),
                    artifact_kind=payload["artifact_kind"],
                    author_ids=payload.get("author_ids", ()),
                )
            except (KeyError, ValueError) as exc:
                raise EventLogError(f"bad create record: {exc}", index) from exc
            continue
        assert wf is not None
        if record.get("deliverable_id") != wf.deliverable_id:
            raise EventLogError(
                f"record is for {record.get('deliverable_id')!r}, log is for {wf.deliverable_id!r}", index
            )
        try:
            wf = record_event(wf, event, payload)
        except (WorkflowStateError, WorkflowPolicyError, ValueError, KeyError) as exc:
            raise EventLogError(str(exc), index) from exc
    if wf is None:
        raise EventLogError("event log is empty", 0)
    return wf


def read_event_log(path: str) -> list[dict]:
    """Read a line-delimited event log file (one JSON record per line)."""
    records = []
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                records.append(json.loads(line))
            except json.JSONDecodeError as exc:
                raise EventLogError(f"line {lineno} is not valid JSON: {exc.msg}", lineno - 1) from None
    return records


def replay_file(path: str) -> DeliverableWorkflow:
    return replay(read_event_log(path))


# --- aggregation ----------------------------------------------------------------

@dataclass(frozen=True)
class PhaseActivity:
    workflows: int = 0
    trail_entries: int = 0
    defects: int = 0
    accepted: int = 0
    ncr_closed: int = 0
    ncr_open: int = 0
    action_items: tuple[str, ...] = ()


@dataclass(frozen=True)
class DpCentreSummary:
    """Cross-deliverable defect-prevention rollup, bucketed per phase."""

    per_phase: dict[Phase, PhaseActivity] = field(default_factory=dict)

    def totals(self) -> PhaseActivity:
        acts = list(self.per_phase.values())
        return PhaseActivity(
            workflows=sum(a.workflows for a in acts),
            trail_entries=sum(a.trail_entries for a in acts),
            defects=sum(a.defects for a in acts),
            accepted=sum(a.accepted for a in acts),
            ncr_closed=sum(a.ncr_closed for a in acts),
            ncr_open=sum(a.ncr_open for a in acts),
            action_items=tuple(item for a in acts for item in a.action_items),
        )


def dp_centre_summary(workflows: Iterable[DeliverableWorkflow]) -> DpCentreSummary:
    per_phase = {phase: PhaseActivity() for phase in PHASE_ORDER}
    for wf in workflows:
        a = per_phase[wf.phase]
        per_phase[wf.phase] = PhaseActivity(
            workflows=a.workflows + 1,
            trail_entries=a.trail_entries + len(wf.trail),
            defects=a.defects + sum(e.count for e in wf.trail),
            accepted=a.accepted + (wf.state in (WorkflowState.ACCEPTED, WorkflowState.NCR_CLOSED)),
            ncr_closed=a.ncr_closed + wf.ncr_closed,
            ncr_open=a.ncr_open + (not wf.ncr_closed),
            action_items=a.action_items + tuple(item for e in wf.trail for item in e.action_items),
        )
    return DpCentreSummary(per_phase=per_phase)
