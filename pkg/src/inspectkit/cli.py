"""Command-line surface for the toolkit.

Exit codes: 0 success, 1 data violations found (bad dataset arithmetic or an
illegal event log), 2 usage and I/O errors. Output is byte-identical across
runs unless --stamp asks for a timestamp note.
"""

from __future__ import annotations

import sys
from datetime import datetime, timezone

import click

from . import bbn, report
from .advisor import benchmark, check_compliance, desired_ranges, load_range_table
from .dataset import (
    PHASE_ORDER,
    SEVERITY_CLASSES,
    Phase,
    ProjectDataset,
    SizeCategory,
    load_dataset,
    validate,
)
from .errors import (
    DatasetParseError,
    DatasetSchemaError,
    EventLogError,
    ImpossibleEvidenceError,
    InspectkitError,
    SchemeConfigurationError,
)
from .lifecycle import replay_file
from .metrics import (
    DiLevel,
    classify_di,
    di_series,
    format_half_up,
    pattern_summary,
    project_metrics,
)
from .tables import reproduce_table

USAGE_ERROR = 2
DATA_ERROR = 1


def _fail(message: str, code: int = USAGE_ERROR) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _load(path: str) -> ProjectDataset:
    try:
        return load_dataset(path)
    except (OSError, DatasetParseError, DatasetSchemaError) as exc:
        _fail(str(exc))
        raise AssertionError  # unreachable


def _ensure_valid(ds: ProjectDataset, fmt: str, stamp: bool) -> None:
    rep = validate(ds)
    if not rep.ok:
        _emit(_validation_report(rep), fmt, stamp)
        sys.exit(DATA_ERROR)


def _validation_report(rep) -> report.Report:
    rows = [[v.rule, v.location, str(v.observed), str(v.expected)] for v in rep.violations]
    return report.Report(
        title=f"Dataset validation: {len(rep.violations)} violation(s)"
        if rows else "Dataset validation: clean",
        tables=[report.Table(headers=["rule", "location", "observed", "expected"], rows=rows)],
        data={
            "ok": rep.ok,
            "violations": [
                {"rule": v.rule, "location": v.location, "observed": v.observed, "expected": v.expected}
                for v in rep.violations
            ],
        },
    )


def _emit(rep: report.Report, fmt: str, stamp: bool) -> None:
    if stamp:
        rep.notes.append(f"generated at {datetime.now(timezone.utc).isoformat()}")
    click.echo(report.render(rep, fmt), nl=False)


def _fnum(value: float, places: int = 2) -> str:
    return format_half_up(value, places)


def _trim(value: float, places: int = 6) -> str:
    text = f"{value:.{places}f}".rstrip("0").rstrip(".")
    return text or "0"


format_option = click.option(
    "--format", "fmt", type=click.Choice(report.FORMATS), default=report.TEXT,
    show_default=True, help="Report rendering."
)
stamp_option = click.option("--stamp", is_flag=True, help="Append a generation timestamp note.")


@click.group()
def cli() -> None:
    """Inspection analytics: dataset auditing, depth/performance metrics,
    published-table reproduction, compliance advice, Bayesian what-ifs and
    workflow replay. Dataset arguments accept a file path or '@reference'
    for the embedded 15-project dataset."""


@cli.command(name="validate")
@click.argument("dataset")
@format_option
@stamp_option
def validate_cmd(dataset: str, fmt: str, stamp: bool) -> None:
    """Check a dataset's arithmetic invariants; exit 1 if violations exist."""
    ds = _load(dataset)
    rep = validate(ds)
    _emit(_validation_report(rep), fmt, stamp)
    sys.exit(0 if rep.ok else DATA_ERROR)


@cli.command()
@click.argument("dataset")
@click.option("--project", "project_id", default=None, help="Limit to one project id.")
@format_option
@stamp_option
def metrics(dataset: str, project_id: str | None, fmt: str, stamp: bool) -> None:
    """Per-phase depth, performance and percentage breakdowns."""
    ds = _load(dataset)
    _ensure_valid(ds, fmt, stamp)
    if project_id is not None:
        try:
            projects = [ds.get(project_id)]
        except KeyError:
            _fail(f"unknown project {project_id!r}")
    else:
        projects = list(ds)
    tables = []
    data = {"projects": []}
    for p in projects:
        pm = project_metrics(p)
        headers = ["metric"] + [ph.value for ph in PHASE_ORDER]
        rows = [
            ["di"] + [_fnum(pm.phases[ph].di) for ph in PHASE_ORDER],
            ["di_level"] + [classify_di(pm.phases[ph].di).value for ph in PHASE_ORDER],
            ["ipm"] + [_fnum(pm.phases[ph].ipm) for ph in PHASE_ORDER],
            ["inspection_time_pct"] + [_fnum(pm.phases[ph].inspection_pct) for ph in PHASE_ORDER],
            ["testing_time_pct"] + [_fnum(pm.phases[ph].testing_pct) for ph in PHASE_ORDER],
            ["prep_time_pct"] + [_fnum(pm.phases[ph].prep_pct) for ph in PHASE_ORDER],
            ["ni_pct"] + [_fnum(pm.phases[ph].ni_pct) for ph in PHASE_ORDER],
            ["nt_pct"] + [_fnum(pm.phases[ph].nt_pct) for ph in PHASE_ORDER],
        ]
        for severity in SEVERITY_CLASSES:
            rows.append(
                [f"{severity}_pct"] + [_fnum(pm.phases[ph].severity_pct[severity]) for ph in PHASE_ORDER]
            )
        tables.append(report.Table(
            title=f"{p.id} ({pm.size.value}, tc {pm.tc}/{p.total_defects}, capture {_fnum(pm.tc_pct)}%)",
            headers=headers,
            rows=rows,
        ))
        data["projects"].append({
            "id": p.id,
            "size": pm.size.value,
            "tc": pm.tc,
            "tc_pct": pm.tc_pct,
            "phases": {
                ph.value: {
                    "di": m.di,
                    "di_level": classify_di(m.di).value,
                    "ipm": m.ipm,
                    "inspection_time_pct": m.inspection_pct,
                    "testing_time_pct": m.testing_pct,
                    "prep_time_pct": m.prep_pct,
                    "ni_pct": m.ni_pct,
                    "nt_pct": m.nt_pct,
                    "severity_pct": m.severity_pct,
                }
                for ph, m in pm.phases.items()
            },
        })
    _emit(report.Report(title="Inspection metrics", tables=tables, data=data), fmt, stamp)


@cli.command()
@click.argument("dataset")
@click.option("--table", "table_id", type=int, required=True, help="Reference table number (2-7).")
@format_option
@stamp_option
def tables(dataset: str, table_id: int, fmt: str, stamp: bool) -> None:
    """Recompute a published reference table and diff it cell by cell."""
    ds = _load(dataset)
    _ensure_valid(ds, fmt, stamp)
    try:
        rep = reproduce_table(ds, table_id)
    except ValueError as exc:
        _fail(str(exc))
    errata = rep.errata()
    if fmt == report.CSV:
        # long form: every cell as a published/computed/match triple
        body = [report.Table(
            headers=["row", "column", "published", "computed", "match"],
            rows=[[c.row, c.column, c.published or "", c.computed or "",
                   "" if c.match is None else str(c.match).lower()]
                  for _, cells in rep.rows for c in cells],
        )]
    else:
        grid = report.Table(
            title="recomputed values",
            headers=["row"] + list(rep.columns),
            rows=[[key] + [c.computed if c.computed is not None else "-" for c in cells]
                  for key, cells in rep.rows],
        )
        erratum_table = report.Table(
            title="errata (published vs recomputed)",
            headers=["row", "column", "published", "computed"],
            rows=[[c.row, c.column, c.published or "-", c.computed or "-"] for c in errata],
        )
        body = [grid] + ([erratum_table] if errata else [])
    out = report.Report(
        title=f"Table {table_id}: {rep.title}",
        tables=body,
        notes=[f"{rep.matched()}/{rep.compared()} cells match the published values"],
        data={
            "table_id": rep.table_id,
            "title": rep.title,
            "columns": list(rep.columns),
            "rows": [
                {
                    "row": key,
                    "cells": [
                        {"column": c.column, "published": c.published, "computed": c.computed, "match": c.match}
                        for c in cells
                    ],
                }
                for key, cells in rep.rows
            ],
            "matched": rep.matched(),
            "compared": rep.compared(),
            "errata": [
                {"row": c.row, "column": c.column, "published": c.published, "computed": c.computed}
                for c in errata
            ],
        },
    )
    _emit(out, fmt, stamp)


@cli.command()
@click.argument("dataset")
@format_option
@stamp_option
def pattern(dataset: str, fmt: str, stamp: bool) -> None:
    """Observed defect-severity percentage ranges per phase and project size."""
    ds = _load(dataset)
    _ensure_valid(ds, fmt, stamp)
    table = pattern_summary(ds)
    rows = []
    data_cells = []
    for phase in PHASE_ORDER:
        for severity in SEVERITY_CLASSES:
            row = [phase.value, severity]
            for size in SizeCategory:
                cell = table.cells[(phase, size, severity)]
                row.append("-" if cell is None else f"{_fnum(cell.min_pct)} to {_fnum(cell.max_pct)}")
                data_cells.append({
                    "phase": phase.value,
                    "size": size.value,
                    "severity": severity,
                    "min_pct": None if cell is None else cell.min_pct,
                    "max_pct": None if cell is None else cell.max_pct,
                    "projects": None if cell is None else list(cell.projects),
                })
            rows.append(row)
    _emit(report.Report(
        title="Defect-pattern ranges (% of phase captured defects)",
        tables=[report.Table(headers=["phase", "severity"] + [s.value for s in SizeCategory], rows=rows)],
        data={"cells": data_cells},
    ), fmt, stamp)


@cli.command()
@click.argument("dataset")
@click.option("--project", "project_id", default=None,
              help="Project to check; omit for the cross-project ranking.")
@click.option("--ranges", "ranges_path", default=None, help="Range-table override file.")
@format_option
@stamp_option
def advise(dataset: str, project_id: str | None, ranges_path: str | None, fmt: str, stamp: bool) -> None:
    """Benchmark projects against the desired parameter ranges."""
    ds = _load(dataset)
    _ensure_valid(ds, fmt, stamp)
    try:
        ranges = load_range_table(ranges_path) if ranges_path else desired_ranges()
    except (OSError, ValueError) as exc:
        _fail(str(exc))
    if project_id is None:
        rows = benchmark(ds, ranges)
        _emit(report.Report(
            title="Project ranking by capture rate",
            tables=[report.Table(
                headers=["rank", "project", "tc_pct", "mean_di", "range_violations", "capture_below_90"],
                rows=[[str(r.rank), r.project_id, _fnum(r.tc_pct), _fnum(r.mean_di), str(r.violation_count),
                       "yes" if r.capture_below_90 else "no"] for r in rows],
            )],
            data={"ranking": [
                {"rank": r.rank, "project": r.project_id, "tc_pct": r.tc_pct, "mean_di": r.mean_di,
                 "range_violations": r.violation_count, "capture_below_90": r.capture_below_90}
                for r in rows
            ]},
        ), fmt, stamp)
        return
    try:
        p = ds.get(project_id)
    except KeyError:
        _fail(f"unknown project {project_id!r}")
    rep = check_compliance(p, ranges)
    rows = [
        [c.phase.value, c.metric, "-" if c.observed is None else _fnum(c.observed),
         c.range.describe(), c.verdict]
        for c in rep.checks
    ]
    notes = [f"capture rate {_fnum(rep.tc_pct)}%"]
    if rep.capture_below_90:
        notes.append("flag: capture rate below the 90% target")
    if rep.low_inspection_share_phases:
        phases = ", ".join(p.value for p in rep.low_inspection_share_phases)
        notes.append(f"flag: inspection caught under 30% of defects in: {phases}")
    _emit(report.Report(
        title=f"Compliance: {rep.project_id} ({rep.size.value})",
        tables=[report.Table(headers=["phase", "metric", "observed", "desired", "verdict"], rows=rows)],
        notes=notes,
        data={
            "project": rep.project_id,
            "size": rep.size.value,
            "tc_pct": rep.tc_pct,
            "capture_below_90": rep.capture_below_90,
            "low_inspection_share_phases": [p.value for p in rep.low_inspection_share_phases],
            "checks": [
                {"phase": c.phase.value, "metric": c.metric, "observed": c.observed,
                 "min": c.range.min, "max": c.range.max, "verdict": c.verdict}
                for c in rep.checks
            ],
        },
    ), fmt, stamp)


def _parse_phase(value: str) -> Phase:
    try:
        return Phase(value)
    except ValueError:
        raise click.UsageError(f"unknown phase {value!r} (expected req, des or imp)") from None


def _parse_size(value: str) -> SizeCategory:
    try:
        return SizeCategory(value)
    except ValueError:
        raise click.UsageError(f"unknown size {value!r} (expected small, medium or large)") from None


def _parse_evidence(text: str) -> bbn.Evidence:
    evidence: bbn.Evidence = {}
    if not text:
        return evidence
    for item in text.split(","):
        key, sep, value = item.partition("=")
        if not sep or not key or not value:
            raise click.UsageError(f"evidence items look like node=level, got {item!r}")
        try:
            node = bbn.ParamNode(key.strip())
        except ValueError:
            names = ", ".join(n.value for n in bbn.ParamNode)
            raise click.UsageError(f"unknown node {key!r} (expected one of {names})") from None
        evidence[node] = value.strip()
    return evidence


def _parse_targets(text: str) -> set[DiLevel]:
    targets = set()
    for item in text.split(","):
        try:
            targets.add(DiLevel(item.strip()))
        except ValueError:
            names = ", ".join(d.value for d in DiLevel)
            raise click.UsageError(f"unknown level {item!r} (expected one of {names})") from None
    return targets


@cli.group(name="bbn")
def bbn_group() -> None:
    """Build and query the inspection-parameter what-if model."""


@bbn_group.command()
@click.argument("dataset")
@click.option("--phase", required=True, help="req, des or imp.")
@click.option("--size", required=True, help="small, medium or large.")
@click.option("--smoothing", type=float, default=0.0, show_default=True)
@click.option("--out", "out_path", required=True, help="Where to write the model file.")
@format_option
@stamp_option
def build(dataset: str, phase: str, size: str, smoothing: float, out_path: str, fmt: str, stamp: bool) -> None:
    """Estimate the conditional tables from one (phase, size) slice."""
    ds = _load(dataset)
    _ensure_valid(ds, fmt, stamp)
    try:
        model = bbn.build_model(ds, _parse_phase(phase), _parse_size(size), smoothing=smoothing)
    except (ValueError, InspectkitError) as exc:
        _fail(str(exc))
    try:
        bbn.save_model(model, out_path)
    except OSError as exc:
        _fail(str(exc))
    digest = bbn.model_digest(model)
    _emit(report.Report(
        title=f"Model for ({model.phase.value}, {model.size.value})",
        tables=[report.Table(
            title=f"prior over depth levels ({model.sample_size} projects, smoothing {_trim(smoothing)})",
            headers=["level", "probability", "projects"],
            rows=[[d.value, _trim(model.prior[d]), str(model.di_counts[d])] for d in model.prior],
        )],
        notes=[f"written to {out_path}", f"digest {digest}"],
        data={"path": out_path, "digest": digest, "model": bbn.model_to_dict(model)},
    ), fmt, stamp)


@bbn_group.command()
@click.argument("model_path")
@click.option("--evidence", default="", help="Comma-separated node=level pairs.")
@format_option
@stamp_option
def query(model_path: str, evidence: str, fmt: str, stamp: bool) -> None:
    """Posterior distribution over depth levels given observed parameter levels."""
    try:
        model = bbn.load_model(model_path)
    except (OSError, ValueError, KeyError) as exc:
        _fail(f"cannot load model: {exc}")
    parsed = _parse_evidence(evidence)
    try:
        post = bbn.posterior(model, parsed)
    except SchemeConfigurationError as exc:
        _fail(str(exc))
    except ImpossibleEvidenceError as exc:
        _fail(str(exc))
    _emit(report.Report(
        title="Posterior over depth levels",
        tables=[report.Table(
            headers=["level", "probability"],
            rows=[[d.value, _trim(p)] for d, p in post.items()],
        )],
        notes=[f"evidence: {evidence or '(none: prior)'}"],
        data={
            "evidence": {n.value: lv for n, lv in parsed.items()},
            "posterior": {d.value: p for d, p in post.items()},
        },
    ), fmt, stamp)


@bbn_group.command(name="recommend")
@click.argument("model_path")
@click.option("--target", required=True, help="Comma-separated depth levels to aim for.")
@click.option("--grid", "grid_nodes", default="num_inspectors", show_default=True,
              help="Comma-separated nodes whose level combinations form the candidates.")
@format_option
@stamp_option
def recommend_cmd(model_path: str, target: str, grid_nodes: str, fmt: str, stamp: bool) -> None:
    """Rank parameter settings by their chance of reaching the target depth levels."""
    try:
        model = bbn.load_model(model_path)
    except (OSError, ValueError, KeyError) as exc:
        _fail(f"cannot load model: {exc}")
    targets = _parse_targets(target)
    nodes = []
    for name in grid_nodes.split(","):
        try:
            nodes.append(bbn.ParamNode(name.strip()))
        except ValueError:
            raise click.UsageError(f"unknown node {name!r}") from None
    try:
        grid = bbn.level_grid(model, nodes)
        ranked = bbn.recommend(model, targets, grid)
    except (ValueError, InspectkitError) as exc:
        _fail(str(exc))
    rows = []
    data_rows = []
    for i, rec in enumerate(ranked, start=1):
        ev_text = ", ".join(f"{n.value}={lv}" for n, lv in rec.evidence.items())
        rows.append([
            str(i), ev_text,
            "-" if rec.target_mass is None else _trim(rec.target_mass),
            "yes" if rec.feasible else f"no ({rec.note})",
        ])
        data_rows.append({
            "rank": i,
            "evidence": {n.value: lv for n, lv in rec.evidence.items()},
            "target_mass": rec.target_mass,
            "feasible": rec.feasible,
            "note": rec.note,
        })
    _emit(report.Report(
        title=f"Recommended settings for target {{{', '.join(sorted(d.value for d in targets))}}}",
        tables=[report.Table(headers=["rank", "evidence", "target_mass", "feasible"], rows=rows)],
        data={"candidates": data_rows},
    ), fmt, stamp)


@cli.group()
def lifecycle() -> None:
    """Deliverable inspection workflow tools."""


@lifecycle.command()
@click.argument("log_path")
@format_option
@stamp_option
def replay(log_path: str, fmt: str, stamp: bool) -> None:
    """Rebuild a deliverable's workflow from its event log."""
    try:
        wf = replay_file(log_path)
    except OSError as exc:
        _fail(str(exc))
    except EventLogError as exc:
        _fail(str(exc), DATA_ERROR)
    trail_rows = [
        [e.defect_type, str(e.count), e.root_cause, "; ".join(e.action_items),
         ", ".join(i.id for i in e.inspectors)]
        for e in wf.trail
    ]
    _emit(report.Report(
        title=f"Workflow {wf.deliverable_id}",
        tables=[
            report.Table(
                headers=["field", "value"],
                rows=[
                    ["phase", wf.phase.value],
                    ["artifact_kind", wf.artifact_kind],
                    ["state", wf.state.value],
                    ["loop_count", str(wf.loop_count)],
                    ["efficient", "yes" if wf.efficient else "no"],
                    ["ncr_closed", "yes" if wf.ncr_closed else "no"],
                    ["authors", ", ".join(sorted(wf.author_ids))],
                    ["final_inspectors", ", ".join(sorted(wf.final_inspector_ids))],
                ],
            ),
        ] + ([report.Table(
            title="defect trail",
            headers=["type", "count", "root_cause", "action_items", "inspectors"],
            rows=trail_rows,
        )] if trail_rows else []),
        data={
            "deliverable_id": wf.deliverable_id,
            "phase": wf.phase.value,
            "artifact_kind": wf.artifact_kind,
            "state": wf.state.value,
            "loop_count": wf.loop_count,
            "efficient": wf.efficient,
            "ncr_closed": wf.ncr_closed,
            "authors": sorted(wf.author_ids),
            "final_inspectors": sorted(wf.final_inspector_ids),
            "trail": [
                {"defect_type": e.defect_type, "count": e.count, "root_cause": e.root_cause,
                 "action_items": list(e.action_items),
                 "inspectors": [{"id": i.id, "experience_years": i.experience_years} for i in e.inspectors]}
                for e in wf.trail
            ],
        },
    ), fmt, stamp)


@cli.group()
def plot() -> None:
    """Emit chart-ready data series."""


@plot.command()
@click.argument("dataset")
@format_option
@stamp_option
def di(dataset: str, fmt: str, stamp: bool) -> None:
    """Depth of inspection per phase against total project hours."""
    ds = _load(dataset)
    _ensure_valid(ds, fmt, stamp)
    series = di_series(ds)
    _emit(report.Report(
        title="Depth of inspection vs project hours",
        tables=[report.Table(
            headers=["project", "total_hours", "di_req", "di_des", "di_imp"],
            rows=[[row["id"], _trim(row["total_hours"])] + [_trim(row["di"][ph.value], 4) for ph in PHASE_ORDER]
                  for row in series],
        )],
        data={"series": series},
    ), fmt, stamp)


@cli.command()
@click.option("--port", type=int, default=8420, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--dataset", "dataset_path", default="@reference", show_default=True)
@click.option("--ranges", "ranges_path", default=None, help="Range-table override file.")
def serve(port: int, host: str, dataset_path: str, ranges_path: str | None) -> None:
    """Run the HTTP query service over a loaded dataset."""
    import uvicorn

    from .service import create_app

    try:
        app = create_app(dataset_path=dataset_path, ranges_path=ranges_path)
    except (OSError, InspectkitError, ValueError) as exc:
        _fail(f"cannot start service: {exc}")
    uvicorn.run(app, host=host, port=port)


def main() -> None:
    cli(prog_name="inspectkit")


if __name__ == "__main__":
    main()
