"""Acceptance criteria for the toolkit, run against the embedded reference data.

Each test prints one PASS/FAIL line (visible with -s or -rA) and asserts the
criterion at its stated tolerance.
"""

import dataclasses
import json
import random

import pytest
from click.testing import CliRunner

from inspectkit import bbn, published
from inspectkit.advisor import check_compliance
from inspectkit.cli import cli
from inspectkit.dataset import (
    PHASE_ORDER,
    Phase,
    ProjectDataset,
    SizeCategory,
    reference_dataset,
    validate,
)
from inspectkit.errors import WorkflowPolicyError
from inspectkit.lifecycle import WorkflowState, new_workflow, record_event, replay
from inspectkit.metrics import (
    DI_LEVEL_ORDER,
    DiLevel,
    capture_rate,
    depth_of_inspection,
    format_half_up,
    inspection_performance,
)
from inspectkit.tables import reproduce_table

from test_bbn import enumerated_posterior, random_evidence, random_model


def criterion(number: int, description: str, ok: bool, detail: str = "") -> None:
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {description}"
    if detail:
        line += f" ({detail})"
    print(line)
    assert ok, line


@pytest.fixture(scope="module")
def ds():
    return reference_dataset()


def test_criterion_1_di_cells(ds):
    mismatches = []
    for phase in PHASE_ORDER:
        expected_row = published.TABLE_6[f"di_{phase.value}"]
        for i, p in enumerate(ds):
            pr = p.phase(phase)
            got = format_half_up(depth_of_inspection(pr.ni, pr.captured_total), 2)
            if got != expected_row[i]:
                mismatches.append((p.id, phase.value, got, expected_row[i]))
    criterion(1, "all 45 recomputed depth values equal the published table at 2 decimals",
              not mismatches, detail=f"mismatches: {mismatches}" if mismatches else "45/45")


def test_criterion_2_ipm_cells(ds):
    mismatches = []
    for phase in PHASE_ORDER:
        expected_row = published.TABLE_7[phase.value]["ipm"]
        for i, p in enumerate(ds):
            pr = p.phase(phase)
            value = inspection_performance(pr.ni, pr.num_inspectors, pr.inspection_hours, pr.prep_hours)
            printed = expected_row[i]
            places = len(printed.partition(".")[2])
            got = format_half_up(value, places)
            if got != printed:
                mismatches.append((p.id, phase.value, got, printed))
    criterion(2, "all 45 recomputed performance values equal the published table at printed precision",
              not mismatches, detail=f"mismatches: {mismatches}" if mismatches else "45/45")


def test_criterion_3_capture_rates(ds):
    mismatches = []
    for i, p in enumerate(ds):
        got = format_half_up(capture_rate(p.captured_total, p.total_defects), 2)
        if got != published.TABLE_6["tc_pct"][i]:
            mismatches.append((p.id, got, published.TABLE_6["tc_pct"][i]))
    criterion(3, "all 15 capture rates equal the published 2-decimal row",
              not mismatches, detail=f"mismatches: {mismatches}" if mismatches else "15/15")


def test_criterion_4_phase_tables(ds):
    t2 = reproduce_table(ds, 2)
    t4 = reproduce_table(ds, 4)
    t3 = reproduce_table(ds, 3)
    bad_rows_3 = {c.row for c in t3.errata()}
    rows3 = dict(t3.rows)
    recomputed_sums_ok = all(
        abs(float(ni.computed) + float(nt.computed) - 100.0) <= 0.011  # display rounding only
        for ni, nt in zip(rows3["ni_pct"], rows3["nt_pct"])
    )
    ok = (
        not t2.errata()
        and not t4.errata()
        and bad_rows_3 == {"ni_pct"}
        and len(t3.errata()) > 0
        and recomputed_sums_ok
    )
    criterion(4, "phase tables reproduce; the copied inspection-share row is flagged with "
                 "recomputed values whose shares sum to 100", ok,
              detail=f"t2 errata {len(t2.errata())}, t4 errata {len(t4.errata())}, "
                     f"t3 errata rows {sorted(bad_rows_3)}")


def test_criterion_5_validation(ds):
    clean = validate(ds).ok

    def corrupt(mutator):
        doc = [dataclasses.replace(p) for p in ds]
        doc[0] = mutator(doc[0])
        return validate(ProjectDataset(projects=tuple(doc)))

    def bump_severity(p):
        pr = p.phase(Phase.REQUIREMENTS)
        sev = dataclasses.replace(pr.severities, blocker=pr.severities.blocker + 1)
        phases = tuple(dataclasses.replace(x, severities=sev) if x.phase is Phase.REQUIREMENTS else x
                       for x in p.phases)
        return dataclasses.replace(p, phases=phases)

    def shrink_total(p):
        return dataclasses.replace(p, total_defects=p.captured_total - 1)

    def overflow_time(p):
        pr = p.phase(Phase.DESIGN)
        phases = tuple(
            dataclasses.replace(x, inspection_hours=pr.phase_hours + 5) if x.phase is Phase.DESIGN else x
            for x in p.phases
        )
        return dataclasses.replace(p, phases=phases)

    results = {
        "severity-sum": [v.rule for v in corrupt(bump_severity).violations],
        "captured-exceeds-total": [v.rule for v in corrupt(shrink_total).violations],
        "phase-time-budget": [v.rule for v in corrupt(overflow_time).violations],
    }
    ok = clean and all(found == [expected] for expected, found in results.items())
    criterion(5, "reference data validates clean; each seeded corruption trips exactly its rule",
              ok, detail=str(results))


def test_criterion_6_worked_instances(ds):
    inst1 = bbn.joint_frequency(ds, Phase.REQUIREMENTS, SizeCategory.SMALL,
                                bbn.ParamNode.NUM_INSPECTORS, "M", DiLevel.MODERATE)
    inst2 = bbn.joint_frequency(ds, Phase.REQUIREMENTS, SizeCategory.SMALL,
                                bbn.ParamNode.NUM_INSPECTORS, "M", DiLevel.DESIRABLE)
    criterion(6, "the two worked joint-frequency instances come out at 0.2 and 0.8 exactly",
              inst1 == 0.2 and inst2 == 0.8, detail=f"got {inst1} and {inst2}")


def test_criterion_7_inference_oracle(ds):
    rng = random.Random(20260810)
    checked = 0
    worst = 0.0
    for _ in range(120):
        model = random_model(rng, max_nodes=5, max_levels=4)
        evidence = random_evidence(rng, model)
        try:
            fast = bbn.posterior(model, evidence)
        except Exception:
            with pytest.raises(Exception):
                enumerated_posterior(model, evidence)
            checked += 1
            continue
        slow = enumerated_posterior(model, evidence)
        worst = max(worst, max(abs(fast[d] - slow[d]) for d in DI_LEVEL_ORDER))
        checked += 1
    model = bbn.build_model(ds, Phase.REQUIREMENTS, SizeCategory.SMALL)
    post = bbn.posterior(model, {bbn.ParamNode.NUM_INSPECTORS: "M"})
    expected = {DiLevel.DESIRABLE: 0.8, DiLevel.MODERATE: 0.2, DiLevel.POOR: 0.0, DiLevel.EXCELLENT: 0.0}
    reference_ok = all(abs(post[d] - expected[d]) <= 1e-9 for d in DI_LEVEL_ORDER)
    ok = checked >= 100 and worst <= 1e-9 and reference_ok
    criterion(7, "posterior equals exhaustive enumeration on 120 random models and the reference slice",
              ok, detail=f"models {checked}, worst gap {worst:.2e}")


def test_criterion_8_advisor(ds):
    p1 = check_compliance(ds.get("P1"))
    p1_req_inspection = next(
        c for c in p1.checks if c.phase is Phase.REQUIREMENTS and c.metric == "inspection_time_pct"
    )
    p10 = check_compliance(ds.get("P10"))
    p6 = check_compliance(ds.get("P6"))
    p10_req = ds.get("P10").phase(Phase.REQUIREMENTS)
    p10_req_share = format_half_up(100.0 * p10_req.ni / p10_req.captured_total, 2)
    p6_imp = ds.get("P6").phase(Phase.IMPLEMENTATION)
    p6_imp_share = format_half_up(100.0 * p6_imp.ni / p6_imp.captured_total, 2)
    flagged = {p.id for p in ds if check_compliance(p).capture_below_90}
    ok = (
        p1_req_inspection.verdict == "compliant"
        and format_half_up(p1_req_inspection.observed, 2) == "12.00"
        and p10.capture_below_90
        and Phase.REQUIREMENTS in p10.low_inspection_share_phases
        and p10_req_share == "26.67"
        and p6.capture_below_90
        and Phase.IMPLEMENTATION in p6.low_inspection_share_phases
        and p6_imp_share == "21.05"
        and flagged == {"P6", "P10"}
    )
    criterion(8, "compliance spot checks hold and exactly P6 and P10 carry the low-capture flag",
              ok, detail=f"flagged={sorted(flagged)}")


def test_criterion_9_lifecycle():
    happy = [
        {"seq": 1, "deliverable_id": "D", "event": "create",
         "payload": {"phase": "des", "artifact_kind": "low-level-design", "author_ids": ["a1"]}},
        {"seq": 2, "deliverable_id": "D", "event": "self_review"},
        {"seq": 3, "deliverable_id": "D", "event": "peer_review"},
        {"seq": 4, "deliverable_id": "D", "event": "external_audit"},
        {"seq": 5, "deliverable_id": "D", "event": "causal_analysis"},
        {"seq": 6, "deliverable_id": "D", "event": "final_inspection_start",
         "payload": {"inspectors": ["q1"]}},
        {"seq": 7, "deliverable_id": "D", "event": "accept"},
    ]
    wf = replay(happy)
    happy_ok = wf.state is WorkflowState.ACCEPTED and wf.loop_count == 0 and wf.efficient

    cycle = [
        {"seq": 10, "deliverable_id": "D", "event": "defects_found",
         "payload": {"entries": [{"defect_type": "major", "count": 2, "root_cause": "",
                                  "action_items": [], "inspectors": []}]}},
        {"seq": 11, "deliverable_id": "D", "event": "rework_complete"},
    ]
    reworked = replay(happy[:-1]
                      + [{**e, "seq": e["seq"] + i * 10} for i in range(2) for e in cycle]
                      + [{"seq": 40, "deliverable_id": "D", "event": "accept"}])
    rework_ok = reworked.loop_count == 2 and not reworked.efficient

    wf2 = new_workflow("D2", Phase.REQUIREMENTS, "requirement-spec", {"a1"})
    for event in ("self_review", "peer_review", "external_audit", "causal_analysis"):
        wf2 = record_event(wf2, event)
    try:
        record_event(wf2, "final_inspection_start", {"inspectors": ["a1"]})
        author_blocked = False
    except WorkflowPolicyError:
        author_blocked = True

    criterion(9, "happy path accepts at loop 0; two rework cycles lose efficiency; "
                 "author-as-final-inspector is rejected",
              happy_ok and rework_ok and author_blocked,
              detail=f"loop_count={reworked.loop_count}")


def test_criterion_10_cli_determinism(tmp_path):
    runner = CliRunner()
    log = tmp_path / "wf.log"
    events = [
        {"seq": 1, "deliverable_id": "R", "event": "create",
         "payload": {"phase": "req", "artifact_kind": "requirement-spec", "author_ids": ["a"]}},
        {"seq": 2, "deliverable_id": "R", "event": "self_review"},
    ]
    log.write_text("\n".join(json.dumps(e) for e in events) + "\n")
    model_path = str(tmp_path / "model.json")
    assert runner.invoke(cli, ["bbn", "build", "@reference", "--phase", "req", "--size", "small",
                               "--out", model_path]).exit_code == 0
    invocations = [
        ["validate", "@reference"],
        ["metrics", "@reference", "--project", "P1"],
        ["metrics", "@reference"],
        ["tables", "@reference", "--table", "2"],
        ["tables", "@reference", "--table", "3"],
        ["tables", "@reference", "--table", "4"],
        ["tables", "@reference", "--table", "5"],
        ["tables", "@reference", "--table", "6"],
        ["tables", "@reference", "--table", "7"],
        ["pattern", "@reference"],
        ["advise", "@reference", "--project", "P10"],
        ["advise", "@reference"],
        ["bbn", "build", "@reference", "--phase", "req", "--size", "small", "--out", model_path],
        ["bbn", "query", model_path, "--evidence", "num_inspectors=M"],
        ["bbn", "recommend", model_path, "--target", "desirable,excellent"],
        ["lifecycle", "replay", str(log)],
        ["plot", "di", "@reference"],
    ]
    unstable = []
    for args in invocations:
        for fmt in ("text", "csv", "structured"):
            first = runner.invoke(cli, args + ["--format", fmt])
            model_bytes_first = open(model_path, "rb").read() if args[:2] == ["bbn", "build"] else None
            second = runner.invoke(cli, args + ["--format", fmt])
            if first.output != second.output or first.exit_code != second.exit_code:
                unstable.append((args, fmt))
            if model_bytes_first is not None and open(model_path, "rb").read() != model_bytes_first:
                unstable.append((args, "model file"))
    criterion(10, "every report subcommand is byte-identical across repeated runs",
              not unstable, detail=f"unstable: {unstable}" if unstable else
              f"{len(invocations)} invocations x 3 formats")
