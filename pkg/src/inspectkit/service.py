"""Read-mostly HTTP facade over the library for UI clients.

One dataset per process, loaded at startup; responses are pure functions of
that session state, so they are byte-stable. Model builds are memoized per
(phase, size, smoothing). Errors come back as problem documents with a code,
message and location.
"""

from __future__ import annotations

import threading

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from . import bbn
from .advisor import DesiredRangeTable, check_compliance, desired_ranges, load_range_table
from .dataset import Phase, ProjectDataset, SizeCategory, load_dataset, validate
from .errors import ImpossibleEvidenceError, SchemeConfigurationError
from .metrics import DiLevel, classify_di, di_series, project_metrics
from .tables import reproduce_table


class SessionState:
    """Dataset, ranges and the memoized model registry for one running service."""

    def __init__(self, dataset: ProjectDataset, ranges: DesiredRangeTable):
        self.dataset = dataset
        self.ranges = ranges
        self.validation = validate(dataset)
        self._models: dict[tuple[Phase, SizeCategory, float], bbn.CptModel] = {}
        self._lock = threading.Lock()

    def model(self, phase: Phase, size: SizeCategory, smoothing: float) -> bbn.CptModel:
        key = (phase, size, smoothing)
        with self._lock:
            model = self._models.get(key)
            if model is None:
                model = bbn.build_model(self.dataset, phase, size, smoothing=smoothing)
                self._models[key] = model
            return model


def _problem(status: int, code: str, message: str, location: str = "") -> JSONResponse:
    return JSONResponse(
        status_code=status,
        content={"code": code, "message": message, "location": location},
    )


class BuildRequest(BaseModel):
    phase: str
    size: str
    smoothing: float = Field(default=0.0, ge=0.0)


class QueryRequest(BaseModel):
    phase: str
    size: str
    evidence: dict[str, str] = Field(default_factory=dict)
    smoothing: float = Field(default=0.0, ge=0.0)


class RecommendRequest(BaseModel):
    phase: str
    size: str
    target: list[str]
    grid: list[dict[str, str]] | None = None
    smoothing: float = Field(default=0.0, ge=0.0)


def _phase(value: str) -> Phase:
    try:
        return Phase(value)
    except ValueError:
        raise BadInput(f"unknown phase {value!r}", "phase") from None


def _size(value: str) -> SizeCategory:
    try:
        return SizeCategory(value)
    except ValueError:
        raise BadInput(f"unknown size {value!r}", "size") from None


def _evidence(raw: dict[str, str]) -> bbn.Evidence:
    evidence: bbn.Evidence = {}
    for key, level in raw.items():
        try:
            evidence[bbn.ParamNode(key)] = level
        except ValueError:
            raise BadInput(f"unknown node {key!r}", "evidence") from None
    return evidence


class BadInput(Exception):
    def __init__(self, message: str, location: str):
        self.location = location
        super().__init__(message)


def _metrics_payload(pm) -> dict:
    return {
        "id": pm.id,
        "size": pm.size.value,
        "tc": pm.tc,
        "tc_pct": pm.tc_pct,
        "phases": {
            phase.value: {
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
            for phase, m in pm.phases.items()
        },
    }


def create_app(dataset_path: str = "@reference", ranges_path: str | None = None) -> FastAPI:
    dataset = load_dataset(dataset_path)
    ranges = load_range_table(ranges_path) if ranges_path else desired_ranges()
    state = SessionState(dataset, ranges)

    app = FastAPI(title="inspectkit", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    app.state.session = state

    @app.exception_handler(RequestValidationError)
    async def on_validation_error(request: Request, exc: RequestValidationError):
        first = exc.errors()[0] if exc.errors() else {}
        location = ".".join(str(part) for part in first.get("loc", ()))
        return _problem(400, "bad-request", first.get("msg", "invalid request"), location)

    @app.exception_handler(BadInput)
    async def on_bad_input(request: Request, exc: BadInput):
        return _problem(400, "bad-request", str(exc), exc.location)

    @app.exception_handler(SchemeConfigurationError)
    async def on_scheme_error(request: Request, exc: SchemeConfigurationError):
        return _problem(400, "bad-request", str(exc), "evidence")

    @app.exception_handler(ImpossibleEvidenceError)
    async def on_impossible(request: Request, exc: ImpossibleEvidenceError):
        return _problem(422, "impossible-evidence", str(exc), "evidence")

    def get_project(project_id: str):
        try:
            return state.dataset.get(project_id)
        except KeyError:
            return None

    @app.get("/projects")
    def projects():
        rows = []
        for p in state.dataset:
            pm = project_metrics(p)
            compliance = check_compliance(p, state.ranges)
            rows.append({
                "id": p.id,
                "total_hours": p.total_hours,
                "size": pm.size.value,
                "tc_pct": pm.tc_pct,
                "capture_below_90": compliance.capture_below_90,
                "range_violations": len(compliance.violations()),
            })
        return {
            "projects": rows,
            "dataset": {"violations": len(state.validation.violations)},
        }

    @app.get("/projects/{project_id}/metrics")
    def metrics(project_id: str):
        p = get_project(project_id)
        if p is None:
            return _problem(404, "unknown-project", f"no project {project_id!r}", "project_id")
        return _metrics_payload(project_metrics(p))

    @app.get("/projects/{project_id}/compliance")
    def compliance(project_id: str):
        p = get_project(project_id)
        if p is None:
            return _problem(404, "unknown-project", f"no project {project_id!r}", "project_id")
        rep = check_compliance(p, state.ranges)
        return {
            "project": rep.project_id,
            "size": rep.size.value,
            "tc_pct": rep.tc_pct,
            "capture_below_90": rep.capture_below_90,
            "low_inspection_share_phases": [ph.value for ph in rep.low_inspection_share_phases],
            "checks": [
                {
                    "phase": c.phase.value,
                    "metric": c.metric,
                    "observed": c.observed,
                    "min": c.range.min,
                    "max": c.range.max,
                    "desired": c.range.describe(),
                    "verdict": c.verdict,
                }
                for c in rep.checks
            ],
        }

    @app.get("/tables/{table_id}")
    def tables(table_id: int):
        try:
            rep = reproduce_table(state.dataset, table_id)
        except ValueError as exc:
            return _problem(404, "unknown-table", str(exc), "table_id")
        return {
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
                for c in rep.errata()
            ],
        }

    @app.get("/pattern")
    def pattern():
        from .dataset import PHASE_ORDER, SEVERITY_CLASSES
        from .metrics import pattern_summary

        table = pattern_summary(state.dataset)
        cells = []
        for phase in PHASE_ORDER:
            for size in SizeCategory:
                for severity in SEVERITY_CLASSES:
                    cell = table.cells[(phase, size, severity)]
                    cells.append({
                        "phase": phase.value,
                        "size": size.value,
                        "severity": severity,
                        "min_pct": None if cell is None else cell.min_pct,
                        "max_pct": None if cell is None else cell.max_pct,
                    })
        return {"cells": cells}

    @app.get("/plot/di")
    def plot_di():
        return {"series": di_series(state.dataset)}

    @app.post("/bbn/build")
    def bbn_build(req: BuildRequest):
        model = state.model(_phase(req.phase), _size(req.size), req.smoothing)
        return {"digest": bbn.model_digest(model), "model": bbn.model_to_dict(model)}

    @app.post("/bbn/query")
    def bbn_query(req: QueryRequest):
        model = state.model(_phase(req.phase), _size(req.size), req.smoothing)
        post = bbn.posterior(model, _evidence(req.evidence))
        return {
            "digest": bbn.model_digest(model),
            "evidence": req.evidence,
            "posterior": {d.value: p for d, p in post.items()},
        }

    @app.post("/bbn/recommend")
    def bbn_recommend(req: RecommendRequest):
        model = state.model(_phase(req.phase), _size(req.size), req.smoothing)
        try:
            target = {DiLevel(t) for t in req.target}
        except ValueError as exc:
            raise BadInput(str(exc), "target") from None
        if req.grid is None:
            grid = bbn.level_grid(model, [bbn.ParamNode.NUM_INSPECTORS])
        else:
            grid = [_evidence(candidate) for candidate in req.grid]
        if not grid:
            raise BadInput("candidate grid is empty", "grid")
        ranked = bbn.recommend(model, target, grid)
        return {
            "digest": bbn.model_digest(model),
            "candidates": [
                {
                    "rank": i + 1,
                    "evidence": {n.value: lv for n, lv in rec.evidence.items()},
                    "target_mass": rec.target_mass,
                    "feasible": rec.feasible,
                    "note": rec.note,
                }
                for i, rec in enumerate(ranked)
            ],
        }

    return app
