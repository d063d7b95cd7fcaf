"""Recompute the published reference tables from a dataset and diff them.

Every cell is rounded half-up to the precision it was printed at and compared
against the published value. Mismatches become errata entries; nothing is
silently corrected.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import published
from .dataset import PHASE_ORDER, SEVERITY_CLASSES, Phase, ProjectDataset
from .metrics import format_half_up, pattern_summary, phase_metrics, project_metrics


@dataclass(frozen=True)
class Cell:
    row: str
    column: str
    published: str | None
    computed: str | None
    match: bool | None  # None when the cell is not comparable


@dataclass(frozen=True)
class TableReport:
    table_id: int
    title: str
    columns: tuple[str, ...]
    rows: tuple[tuple[str, tuple[Cell, ...]], ...]

    def errata(self) -> list[Cell]:
        return [c for _, cells in self.rows for c in cells if c.match is False]

    def compared(self) -> int:
        return sum(1 for _, cells in self.rows for c in cells if c.match is not None)

    def matched(self) -> int:
        return sum(1 for _, cells in self.rows for c in cells if c.match is True)


TABLE_TITLES = {
    2: "Requirements-phase breakdown (%)",
    3: "Design-phase breakdown (%)",
    4: "Implementation-phase breakdown (%)",
    5: "Defect-pattern ranges by project size (%)",
    6: "Depth of inspection per phase and capture rate",
    7: "Depth of inspection, inspection performance and inspector experience",
}


def _decimals(printed: str) -> int:
    _, _, frac = printed.partition(".")
    return len(frac)


def _cell(row: str, column: str, printed: str, value: float) -> Cell:
    computed = format_half_up(value, _decimals(printed))
    return Cell(row=row, column=column, published=printed, computed=computed, match=computed == printed)


def _check_shape(ds: ProjectDataset) -> None:
    if len(ds) != len(published.PROJECT_IDS):
        raise ValueError(
            f"table reproduction needs a dataset shaped like the reference "
            f"({len(published.PROJECT_IDS)} projects), got {len(ds)}"
        )


_METRIC_ATTR = {
    "inspection_time_pct": "inspection_pct",
    "testing_time_pct": "testing_pct",
    "prep_time_pct": "prep_pct",
    "ni_pct": "ni_pct",
    "nt_pct": "nt_pct",
}


def _phase_pct_table(ds: ProjectDataset, table_id: int) -> TableReport:
    phase, printed_rows = published.PHASE_PCT_TABLES[table_id]
    columns = tuple(p.id for p in ds)
    rows = []
    metrics = [phase_metrics(p.phase(phase)) for p in ds]
    for key in published.PHASE_PCT_ROWS:
        printed = printed_rows[key]
        cells = []
        for i, pm in enumerate(metrics):
            severity = key.removesuffix("_pct")
            if severity in SEVERITY_CLASSES:
                value = pm.severity_pct[severity]
            else:
                value = getattr(pm, _METRIC_ATTR[key])
            cells.append(_cell(key, columns[i], printed[i], value))
        rows.append((key, tuple(cells)))
    return TableReport(table_id=table_id, title=TABLE_TITLES[table_id], columns=columns, rows=tuple(rows))


def _pattern_table(ds: ProjectDataset) -> TableReport:
    observed = pattern_summary(ds)
    columns = tuple(s.value for s in published.SIZE_COLUMNS) + ("average",)
    rows = []
    for phase in PHASE_ORDER:
        for severity in SEVERITY_CLASSES:
            row_key = f"{phase.value}/{severity}"
            spans = published.TABLE_5[(phase, severity)]
            cells = []
            for size in published.SIZE_COLUMNS:
                lo, hi = spans[size.value]
                printed = f"{lo}% to {hi}%"
                cell = observed.cells[(phase, size, severity)]
                if cell is None:
                    cells.append(Cell(row=row_key, column=size.value, published=printed, computed=None, match=None))
                    continue
                computed = f"{format_half_up(cell.min_pct, 2)}% to {format_half_up(cell.max_pct, 2)}%"
                # A published span "matches" when it contains the observed span.
                contained = lo <= cell.min_pct and cell.max_pct <= hi
                cells.append(Cell(row=row_key, column=size.value, published=printed, computed=computed, match=contained))
            lo, hi = spans["average"]
            cells.append(Cell(row=row_key, column="average", published=f"{lo}% to {hi}%", computed=None, match=None))
            rows.append((row_key, tuple(cells)))
    return TableReport(table_id=5, title=TABLE_TITLES[5], columns=columns, rows=tuple(rows))


def _di_table(ds: ProjectDataset) -> TableReport:
    columns = tuple(p.id for p in ds)
    metrics = [project_metrics(p) for p in ds]
    printed = published.TABLE_6
    rows = []

    def row(key: str, values: list[float]) -> tuple[str, tuple[Cell, ...]]:
        return key, tuple(
            _cell(key, columns[i], printed[key][i], values[i]) for i in range(len(columns))
        )

    rows.append(row("project_hours", [p.total_hours for p in ds]))
    for phase in PHASE_ORDER:
        rows.append(row(f"di_{phase.value}", [m.phases[phase].di for m in metrics]))
    rows.append(row("td", [p.total_defects for p in ds]))
    rows.append(row("tc", [m.tc for m in metrics]))
    rows.append(row("tc_pct", [m.tc_pct for m in metrics]))
    return TableReport(table_id=6, title=TABLE_TITLES[6], columns=columns, rows=tuple(rows))


def _impact_table(ds: ProjectDataset) -> TableReport:
    columns = tuple(p.id for p in ds)
    metrics = [project_metrics(p) for p in ds]
    printed = published.TABLE_7
    rows = []
    for phase in PHASE_ORDER:
        block = printed[phase.value]
        for key, values in (
            ("di", [m.phases[phase].di for m in metrics]),
            ("ipm", [m.phases[phase].ipm for m in metrics]),
            ("experience_years", [p.phase(phase).experience_years for p in ds]),
        ):
            row_key = f"{phase.value}/{key}"
            rows.append((row_key, tuple(
                _cell(row_key, columns[i], block[key][i], values[i]) for i in range(len(columns))
            )))
    totals = printed["totals"]
    for key, values in (
        ("td", [float(p.total_defects) for p in ds]),
        ("tc", [float(m.tc) for m in metrics]),
        ("tc_pct", [m.tc_pct for m in metrics]),
    ):
        row_key = f"totals/{key}"
        rows.append((row_key, tuple(
            _cell(row_key, columns[i], totals[key][i], values[i]) for i in range(len(columns))
        )))
    return TableReport(table_id=7, title=TABLE_TITLES[7], columns=columns, rows=tuple(rows))


def reproduce_table(ds: ProjectDataset, table_id: int) -> TableReport:
    """Recompute one of the reference tables (2 through 7) and diff it."""
    if table_id not in TABLE_TITLES:
        raise ValueError(f"unknown table id {table_id} (expected 2..7)")
    _check_shape(ds)
    if table_id in (2, 3, 4):
        return _phase_pct_table(ds, table_id)
    if table_id == 5:
        return _pattern_table(ds)
    if table_id == 6:
        return _di_table(ds)
    return _impact_table(ds)
