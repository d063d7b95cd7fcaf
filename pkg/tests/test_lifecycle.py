import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from inspectkit.dataset import Phase
from inspectkit.errors import EventLogError, WorkflowPolicyError, WorkflowStateError
from inspectkit.lifecycle import (
    ARTIFACT_KINDS,
    DeliverableWorkflow,
    WorkflowState,
    dp_centre_summary,
    new_workflow,
    record_event,
    replay,
    replay_file,
)


def entry(count=1, defect_type="major", items=()):
    return {
        "defect_type": defect_type,
        "count": count,
        "root_cause": "unclear requirement",
        "action_items": list(items),
        "inspectors": [{"id": "q1", "experience_years": 5}],
    }


def creation(deliverable="REQ-1", phase="req", kind="requirement-spec", authors=("a1",), seq=1):
    return {
        "seq": seq,
        "deliverable_id": deliverable,
        "event": "create",
        "payload": {"phase": phase, "artifact_kind": kind, "author_ids": list(authors)},
    }


def happy_path_log(reinspections=0):
    events = [
        creation(),
        {"seq": 2, "deliverable_id": "REQ-1", "event": "self_review"},
        {"seq": 3, "deliverable_id": "REQ-1", "event": "peer_review"},
        {"seq": 4, "deliverable_id": "REQ-1", "event": "external_audit"},
        {"seq": 5, "deliverable_id": "REQ-1", "event": "causal_analysis"},
        {"seq": 6, "deliverable_id": "REQ-1", "event": "final_inspection_start",
         "payload": {"inspectors": ["lead-2", "mgr-1"]}},
    ]
    seq = 7
    for _ in range(reinspections):
        events.append({"seq": seq, "deliverable_id": "REQ-1", "event": "defects_found",
                       "payload": {"entries": [entry()]}})
        events.append({"seq": seq + 1, "deliverable_id": "REQ-1", "event": "rework_complete"})
        seq += 2
    events.append({"seq": seq, "deliverable_id": "REQ-1", "event": "accept"})
    return events


# --- construction ---------------------------------------------------------------

def test_new_workflow_starts_drafted():
    wf = new_workflow("REQ-1", Phase.REQUIREMENTS, "requirement-spec", {"a1"})
    assert wf.state is WorkflowState.DRAFTED
    assert wf.loop_count == 0 and wf.trail == ()


def test_artifact_kind_must_match_phase():
    with pytest.raises(ValueError, match="source-code"):
        new_workflow("SRC-1", Phase.REQUIREMENTS, "source-code", {"a1"})
    wf = new_workflow("HLD-1", Phase.DESIGN, "high-level-design", {"a1"})
    assert wf.state is WorkflowState.DRAFTED


def test_every_declared_artifact_kind_constructs():
    for phase, kinds in ARTIFACT_KINDS.items():
        for kind in kinds:
            assert new_workflow("X", phase, kind, ()).artifact_kind == kind


# --- events ----------------------------------------------------------------------

def test_linear_progression():
    wf = new_workflow("REQ-1", Phase.REQUIREMENTS, "requirement-spec", {"a1"})
    wf = record_event(wf, "self_review")
    assert wf.state is WorkflowState.SELF_REVIEWED
    wf = record_event(wf, "peer_review")
    wf = record_event(wf, "external_audit")
    wf = record_event(wf, "causal_analysis")
    wf = record_event(wf, "final_inspection_start", {"inspectors": ["q1"]})
    assert wf.state is WorkflowState.IN_FINAL_INSPECTION
    wf = record_event(wf, "accept")
    assert wf.state is WorkflowState.ACCEPTED
    wf = record_event(wf, "close_ncr", {"report": "NCR-7"})
    assert wf.state is WorkflowState.NCR_CLOSED and wf.ncr_closed


def test_out_of_order_event_names_state_and_event():
    wf = new_workflow("REQ-1", Phase.REQUIREMENTS, "requirement-spec", {"a1"})
    with pytest.raises(WorkflowStateError, match="peer_review.*drafted"):
        record_event(wf, "peer_review")


def test_author_cannot_run_final_inspection():
    wf = new_workflow("REQ-1", Phase.REQUIREMENTS, "requirement-spec", {"a1", "a2"})
    for event in ("self_review", "peer_review", "external_audit", "causal_analysis"):
        wf = record_event(wf, event)
    with pytest.raises(WorkflowPolicyError, match="a2"):
        record_event(wf, "final_inspection_start", {"inspectors": ["a2", "q1"]})


def test_two_rework_cycles_lose_efficiency():
    wf = replay(happy_path_log(reinspections=2))
    assert wf.state is WorkflowState.ACCEPTED
    assert wf.loop_count == 2
    assert not wf.efficient
    assert len(wf.trail) == 2


def test_one_rework_cycle_is_still_efficient():
    wf = replay(happy_path_log(reinspections=1))
    assert wf.state is WorkflowState.ACCEPTED
    assert wf.loop_count == 1
    assert wf.efficient


def test_trail_entry_validation():
    wf = replay(happy_path_log()[:-1])  # in final inspection
    with pytest.raises(EventLogError):
        replay(happy_path_log()[:-1] + [
            {"seq": 99, "deliverable_id": "REQ-1", "event": "defects_found",
             "payload": {"entries": [entry(count=0)]}}
        ])
    with pytest.raises(EventLogError):
        replay(happy_path_log()[:-1] + [
            {"seq": 99, "deliverable_id": "REQ-1", "event": "defects_found",
             "payload": {"entries": [entry(defect_type="catastrophic")]}}
        ])
    assert wf.state is WorkflowState.IN_FINAL_INSPECTION


# --- replay -----------------------------------------------------------------------

def test_happy_path_replay():
    wf = replay(happy_path_log())
    assert wf.state is WorkflowState.ACCEPTED
    assert wf.loop_count == 0 and wf.efficient


def test_replay_reports_failing_index():
    log = [creation(), {"seq": 2, "deliverable_id": "REQ-1", "event": "peer_review"}]
    with pytest.raises(EventLogError) as exc:
        replay(log)
    assert exc.value.index == 1


def test_replay_requires_creation_first():
    with pytest.raises(EventLogError, match="create"):
        replay([{"seq": 1, "deliverable_id": "REQ-1", "event": "self_review"}])
    with pytest.raises(EventLogError):
        replay([])


def test_replay_requires_increasing_sequence():
    log = happy_path_log()
    log[3] = {**log[3], "seq": 2}
    with pytest.raises(EventLogError, match="sequence"):
        replay(log)


def test_replay_rejects_foreign_records():
    log = happy_path_log()
    log[2] = {**log[2], "deliverable_id": "OTHER"}
    with pytest.raises(EventLogError, match="OTHER"):
        replay(log)


def test_replay_file_round_trip(tmp_path):
    path = tmp_path / "wf.log"
    path.write_text("\n".join(json.dumps(e) for e in happy_path_log(reinspections=1)) + "\n")
    wf = replay_file(str(path))
    assert wf.state is WorkflowState.ACCEPTED and wf.loop_count == 1


def test_replay_is_a_fold():
    log = happy_path_log(reinspections=1)
    cut = 6
    partial = replay(log[:cut])
    resumed = partial
    for record in log[cut:]:
        resumed = record_event(resumed, record["event"], record.get("payload"))
    assert resumed == replay(log)


@given(st.integers(0, 4))
@settings(max_examples=20)
def test_loop_count_and_trail_grow_monotonically(reinspections):
    log = happy_path_log(reinspections=reinspections)
    wf = None
    last_loop, last_trail = -1, -1
    for i, record in enumerate(log):
        wf = replay(log[: i + 1])
        assert wf.loop_count >= last_loop
        assert len(wf.trail) >= last_trail
        last_loop, last_trail = wf.loop_count, len(wf.trail)
    assert wf.loop_count == reinspections
    assert wf.efficient == (reinspections < 2)


def test_accepted_workflows_never_inspected_by_authors():
    wf = replay(happy_path_log(reinspections=2))
    assert not (wf.final_inspector_ids & wf.author_ids)


# --- aggregation ---------------------------------------------------------------------

def test_summary_of_nothing_is_zero():
    summary = dp_centre_summary([])
    totals = summary.totals()
    assert totals.workflows == 0 and totals.trail_entries == 0 and totals.defects == 0


def test_summary_adds_trail_entries():
    a = replay(happy_path_log(reinspections=2))  # 2 entries
    b = replay(happy_path_log(reinspections=1))  # 1 entry
    des = new_workflow("HLD-1", Phase.DESIGN, "high-level-design", {"a9"})
    summary = dp_centre_summary([a, b, des])
    assert summary.totals().trail_entries == 3
    assert summary.per_phase[Phase.REQUIREMENTS].trail_entries == 3
    assert summary.per_phase[Phase.DESIGN].workflows == 1
    assert summary.per_phase[Phase.REQUIREMENTS].accepted == 2
    assert summary.totals().workflows == 3


def test_summary_partitions_by_phase():
    wfs = [
        replay(happy_path_log()),
        new_workflow("HLD-1", Phase.DESIGN, "high-level-design", {"a"}),
        new_workflow("TC-1", Phase.IMPLEMENTATION, "test-case", {"a"}),
    ]
    summary = dp_centre_summary(wfs)
    assert sum(a.workflows for a in summary.per_phase.values()) == summary.totals().workflows == 3
    assert summary.totals().ncr_open == 3
    assert summary.totals().ncr_closed == 0


def test_ncr_closure_counted():
    wf = replay(happy_path_log() + [
        {"seq": 50, "deliverable_id": "REQ-1", "event": "close_ncr", "payload": {"report": "NCR-1"}}
    ])
    summary = dp_centre_summary([wf])
    assert summary.per_phase[Phase.REQUIREMENTS].ncr_closed == 1
    assert summary.per_phase[Phase.REQUIREMENTS].ncr_open == 0
