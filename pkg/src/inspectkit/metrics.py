"""Inspection depth and performance metrics, phase percentage breakdowns,
discretization levels, and defect-pattern ranges."""

from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from enum import Enum

from .dataset import (
    PHASE_ORDER,
    SEVERITY_CLASSES,
    Phase,
    PhaseRecord,
    ProjectDataset,
    ProjectRecord,
    SizeCategory,
    classify_size,
)
from .errors import UndefinedMetricError


class DiLevel(str, Enum):
    POOR = "poor"
    MODERATE = "moderate"
    DESIRABLE = "desirable"
    EXCELLENT = "excellent"


DI_LEVEL_ORDER = (DiLevel.POOR, DiLevel.MODERATE, DiLevel.DESIRABLE, DiLevel.EXCELLENT)


class ExperienceLevel(str, Enum):
    NOVICE = "novice"
    AVERAGE = "average"
    LARGE = "large"


def depth_of_inspection(ni: int, phase_captured_total: int) -> float:
    """Share of a phase's captured defects that inspection (not testing) found."""
    if phase_captured_total == 0:
        raise UndefinedMetricError("depth of inspection is undefined with no captured defects")
    if ni > phase_captured_total:
        raise ValueError(f"ni ({ni}) cannot exceed the captured total ({phase_captured_total})")
    return ni / phase_captured_total


def inspection_performance(
    ni: int, num_inspectors: int, inspection_hours: float, prep_hours: float
) -> float:
    """Defects found by inspection per inspector-hour of inspection plus preparation."""
    if num_inspectors < 1:
        raise ValueError(f"num_inspectors must be at least 1, got {num_inspectors}")
    total_time = inspection_hours + prep_hours
    if total_time <= 0:
        raise UndefinedMetricError("inspection performance is undefined with zero inspection+prep time")
    return ni / (num_inspectors * total_time)


def capture_rate(tc: int, td: int) -> float:
    """Percent of a product's total defects caught before shipment."""
    if td <= 0:
        raise ValueError(f"total defects must be positive, got {td}")
    if tc > td:
        raise ValueError(f"captured defects ({tc}) cannot exceed total defects ({td})")
    return 100.0 * tc / td


def classify_di(di: float) -> DiLevel:
    """Map an inspection-depth ratio to its qualitative level.

    Below 0.3 is poor, [0.3, 0.4) moderate, [0.4, 0.7] desirable, above 0.7
    excellent.
    """
    if not 0.0 <= di <= 1.0:
        raise ValueError(f"depth of inspection must be in [0, 1], got {di}")
    if di < 0.3:
        return DiLevel.POOR
    if di < 0.4:
        return DiLevel.MODERATE
    if di <= 0.7:
        return DiLevel.DESIRABLE
    return DiLevel.EXCELLENT


def classify_experience(years: float) -> ExperienceLevel:
    """Bucket inspector experience: up to 2 years novice, up to 4 average, above large."""
    if years < 0:
        raise ValueError(f"experience years must be non-negative, got {years}")
    if years <= 2:
        return ExperienceLevel.NOVICE
    if years <= 4:
        return ExperienceLevel.AVERAGE
    return ExperienceLevel.LARGE


@dataclass(frozen=True)
class PhaseMetrics:
    phase: Phase
    di: float
    ipm: float
    inspection_pct: float
    testing_pct: float
    prep_pct: float
    ni_pct: float
    nt_pct: float
    severity_pct: dict[str, float]


@dataclass(frozen=True)
class ProjectMetrics:
    id: str
    size: SizeCategory
    tc: int
    tc_pct: float
    phases: dict[Phase, PhaseMetrics]


def phase_metrics(pr: PhaseRecord) -> PhaseMetrics:
    """All per-phase ratios: time rows are percent of phase hours, defect rows
    are percent of the phase's captured total."""
    captured = pr.captured_total
    if captured == 0:
        raise UndefinedMetricError(f"phase {pr.phase.value} captured no defects")
    return PhaseMetrics(
        phase=pr.phase,
        di=depth_of_inspection(pr.ni, captured),
        ipm=inspection_performance(pr.ni, pr.num_inspectors, pr.inspection_hours, pr.prep_hours),
        inspection_pct=100.0 * pr.inspection_hours / pr.phase_hours,
        testing_pct=100.0 * pr.testing_hours / pr.phase_hours,
        prep_pct=100.0 * pr.prep_hours / pr.phase_hours,
        ni_pct=100.0 * pr.ni / captured,
        nt_pct=100.0 * pr.nt / captured,
        severity_pct={
            name: 100.0 * getattr(pr.severities, name) / captured for name in SEVERITY_CLASSES
        },
    )


def project_metrics(p: ProjectRecord) -> ProjectMetrics:
    tc = p.captured_total
    return ProjectMetrics(
        id=p.id,
        size=classify_size(p.total_hours),
        tc=tc,
        tc_pct=capture_rate(tc, p.total_defects),
        phases={pr.phase: phase_metrics(pr) for pr in p.phases},
    )


# --- defect-pattern summary --------------------------------------------------

@dataclass(frozen=True)
class PatternCell:
    min_pct: float
    max_pct: float
    projects: tuple[str, ...]


@dataclass(frozen=True)
class PatternTable:
    """Observed per-severity percentage ranges, sliced by phase and project size.

    Cells for (phase, size) slices with no projects are None, not errors.
    """

    cells: dict[tuple[Phase, SizeCategory, str], PatternCell | None]


def pattern_summary(ds: ProjectDataset) -> PatternTable:
    if len(ds) == 0:
        raise ValueError("dataset is empty")
    by_size: dict[SizeCategory, list[ProjectRecord]] = {s: [] for s in SizeCategory}
    for p in ds:
        by_size[classify_size(p.total_hours)].append(p)
    cells: dict[tuple[Phase, SizeCategory, str], PatternCell | None] = {}
    for phase in PHASE_ORDER:
        for size in SizeCategory:
            group = by_size[size]
            for severity in SEVERITY_CLASSES:
                key = (phase, size, severity)
                if not group:
                    cells[key] = None
                    continue
                values = [
                    (phase_metrics(p.phase(phase)).severity_pct[severity], p.id) for p in group
                ]
                lo = min(values)
                hi = max(values)
                cells[key] = PatternCell(min_pct=lo[0], max_pct=hi[0], projects=(lo[1], hi[1]))
    return PatternTable(cells=cells)


def di_series(ds: ProjectDataset) -> list[dict]:
    """Plot data: per project, total hours against the three phase depths."""
    rows = []
    for p in sorted(ds, key=lambda p: (p.total_hours, p.id)):
        rows.append({
            "id": p.id,
            "total_hours": p.total_hours,
            "di": {pr.phase.value: depth_of_inspection(pr.ni, pr.captured_total) for pr in p.phases},
        })
    return rows


# --- display rounding --------------------------------------------------------

def round_half_up(value: float, places: int) -> float:
    """Round the way the published tables do: halves go up, not to even."""
    q = Decimal(1).scaleb(-places)
    return float(Decimal(repr(value)).quantize(q, rounding=ROUND_HALF_UP))


def format_half_up(value: float, places: int) -> str:
    q = Decimal(1).scaleb(-places)
    return str(Decimal(repr(value)).quantize(q, rounding=ROUND_HALF_UP))
