"""Domain model for per-phase inspection/testing records, plus parsing and validation.

Parsing only enforces field presence, types and ranges; the arithmetic
cross-checks (severity sums, time budgets, captured-vs-total) live in
:func:`validate` so that imperfect data can be audited instead of rejected
at the door.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources
from typing import IO, Iterator

from .errors import DatasetParseError, DatasetSchemaError


class Phase(str, Enum):
    REQUIREMENTS = "req"
    DESIGN = "des"
    IMPLEMENTATION = "imp"


PHASE_ORDER = (Phase.REQUIREMENTS, Phase.DESIGN, Phase.IMPLEMENTATION)

PHASE_TITLES = {
    Phase.REQUIREMENTS: "Requirements",
    Phase.DESIGN: "Design",
    Phase.IMPLEMENTATION: "Implementation",
}


class SizeCategory(str, Enum):
    SMALL = "small"
    MEDIUM = "medium"
    LARGE = "large"


SEVERITY_CLASSES = ("blocker", "critical", "major", "minor", "trivial")


def classify_size(total_hours: float) -> SizeCategory:
    """Bucket a project by total development effort in person-hours.

    Small is anything under 1000 hours, medium runs from 1000 through 5000
    inclusive, large is everything above.
    """
    if total_hours <= 0:
        raise ValueError(f"total_hours must be positive, got {total_hours}")
    if total_hours < 1000:
        return SizeCategory.SMALL
    if total_hours <= 5000:
        return SizeCategory.MEDIUM
    return SizeCategory.LARGE


@dataclass(frozen=True)
class SeverityCounts:
    blocker: int
    critical: int
    major: int
    minor: int
    trivial: int

    def total(self) -> int:
        return self.blocker + self.critical + self.major + self.minor + self.trivial

    def as_dict(self) -> dict[str, int]:
        return {name: getattr(self, name) for name in SEVERITY_CLASSES}


@dataclass(frozen=True)
class PhaseRecord:
    phase: Phase
    phase_hours: float
    inspection_hours: float
    testing_hours: float
    prep_hours: float
    num_inspectors: int
    experience_years: float
    ni: int
    nt: int
    severities: SeverityCounts

    @property
    def captured_total(self) -> int:
        """Defects caught in this phase by inspection plus testing."""
        return self.ni + self.nt


@dataclass(frozen=True)
class ProjectRecord:
    id: str
    total_hours: float
    total_defects: int
    phases: tuple[PhaseRecord, PhaseRecord, PhaseRecord]

    def phase(self, phase: Phase) -> PhaseRecord:
        for pr in self.phases:
            if pr.phase is phase:
                return pr
        raise KeyError(phase)

    @property
    def captured_total(self) -> int:
        return sum(pr.captured_total for pr in self.phases)

    @property
    def size(self) -> SizeCategory:
        return classify_size(self.total_hours)


@dataclass(frozen=True)
class ProjectDataset:
    projects: tuple[ProjectRecord, ...]

    def __iter__(self) -> Iterator[ProjectRecord]:
        return iter(self.projects)

    def __len__(self) -> int:
        return len(self.projects)

    def get(self, project_id: str) -> ProjectRecord:
        for p in self.projects:
            if p.id == project_id:
                return p
        raise KeyError(project_id)

    def ids(self) -> list[str]:
        return [p.id for p in self.projects]


@dataclass(frozen=True)
class Violation:
    rule: str
    location: str
    observed: object
    expected: object


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.violations


# --- parsing ---------------------------------------------------------------

_PHASE_FIELDS = {
    "phase_hours": float,
    "inspection_hours": float,
    "testing_hours": float,
    "prep_hours": float,
    "num_inspectors": int,
    "experience_years": float,
    "ni": int,
    "nt": int,
}

CSV_COLUMNS = (
    "id", "total_hours", "total_defects", "phase", "phase_hours",
    "inspection_hours", "testing_hours", "prep_hours", "num_inspectors",
    "experience_years", "ni", "nt",
) + SEVERITY_CLASSES


def _decode(source: bytes | str | IO) -> str:
    if isinstance(source, bytes):
        return source.decode("utf-8")
    if isinstance(source, str):
        return source
    data = source.read()
    return data.decode("utf-8") if isinstance(data, bytes) else data


def _require(obj: dict, key: str, where: str) -> object:
    if key not in obj:
        raise DatasetSchemaError(f"{where}: missing required field '{key}'")
    return obj[key]


def _number(value: object, kind: type, key: str, where: str) -> float | int:
    if isinstance(value, bool) or not isinstance(value, (int, float, str)):
        raise DatasetSchemaError(f"{where}: field '{key}' must be a number, got {value!r}")
    try:
        out = kind(value)
    except (TypeError, ValueError):
        raise DatasetSchemaError(f"{where}: field '{key}' must be {kind.__name__}, got {value!r}") from None
    if kind is int and float(value) != out:
        raise DatasetSchemaError(f"{where}: field '{key}' must be an integer, got {value!r}")
    return out


def _check_range(name: str, value: float, where: str, positive: bool = False) -> None:
    if positive and value <= 0:
        raise DatasetSchemaError(f"{where}: field '{name}' must be positive, got {value}")
    if not positive and value < 0:
        raise DatasetSchemaError(f"{where}: field '{name}' must be non-negative, got {value}")


def _phase_record(obj: dict, where: str) -> PhaseRecord:
    raw_phase = _require(obj, "phase", where)
    try:
        phase = Phase(raw_phase)
    except ValueError:
        raise DatasetSchemaError(f"{where}: unknown phase {raw_phase!r} (expected req/des/imp)") from None
    values: dict[str, float | int] = {}
    for key, kind in _PHASE_FIELDS.items():
        values[key] = _number(_require(obj, key, where), kind, key, where)
    _check_range("phase_hours", values["phase_hours"], where, positive=True)
    for key in ("inspection_hours", "testing_hours", "prep_hours", "experience_years", "ni", "nt"):
        _check_range(key, values[key], where)
    _check_range("num_inspectors", values["num_inspectors"], where, positive=True)
    raw_sev = _require(obj, "severities", where)
    if not isinstance(raw_sev, dict):
        raise DatasetSchemaError(f"{where}: field 'severities' must be an object")
    sev = {}
    for name in SEVERITY_CLASSES:
        sev[name] = _number(_require(raw_sev, name, f"{where}/severities"), int, name, where)
        _check_range(name, sev[name], where)
    return PhaseRecord(
        phase=phase,
        phase_hours=float(values["phase_hours"]),
        inspection_hours=float(values["inspection_hours"]),
        testing_hours=float(values["testing_hours"]),
        prep_hours=float(values["prep_hours"]),
        num_inspectors=int(values["num_inspectors"]),
        experience_years=float(values["experience_years"]),
        ni=int(values["ni"]),
        nt=int(values["nt"]),
        severities=SeverityCounts(**sev),
    )


def _project_record(obj: dict, index: int) -> ProjectRecord:
    where = f"projects[{index}]"
    raw_id = _require(obj, "id", where)
    if not isinstance(raw_id, str) or not raw_id:
        raise DatasetSchemaError(f"{where}: field 'id' must be a non-empty string")
    where = f"project {raw_id}"
    total_hours = float(_number(_require(obj, "total_hours", where), float, "total_hours", where))
    total_defects = int(_number(_require(obj, "total_defects", where), int, "total_defects", where))
    _check_range("total_hours", total_hours, where, positive=True)
    _check_range("total_defects", total_defects, where, positive=True)
    raw_phases = _require(obj, "phases", where)
    if not isinstance(raw_phases, list):
        raise DatasetSchemaError(f"{where}: field 'phases' must be a list")
    records = [_phase_record(p, f"{where}/phases[{i}]") for i, p in enumerate(raw_phases)]
    by_phase = {pr.phase: pr for pr in records}
    if len(records) != 3 or set(by_phase) != set(PHASE_ORDER):
        missing = [p.value for p in PHASE_ORDER if p not in by_phase]
        raise DatasetSchemaError(
            f"{where}: must have exactly one record per phase (req, des, imp); missing {missing or 'none'}, got {len(records)}"
        )
    ordered = tuple(by_phase[p] for p in PHASE_ORDER)
    return ProjectRecord(id=raw_id, total_hours=total_hours, total_defects=total_defects, phases=ordered)


def parse_json(source: bytes | str | IO) -> ProjectDataset:
    """Parse the canonical nested-object dataset document."""
    text = _decode(source)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DatasetParseError(f"invalid JSON: {exc.msg}", line=exc.lineno, column=exc.colno) from None
    if not isinstance(doc, dict) or "projects" not in doc:
        raise DatasetSchemaError("document root must be an object with a 'projects' list")
    raw_projects = doc["projects"]
    if not isinstance(raw_projects, list):
        raise DatasetSchemaError("'projects' must be a list")
    if not raw_projects:
        raise DatasetParseError("no projects in input")
    projects = []
    seen: set[str] = set()
    for i, obj in enumerate(raw_projects):
        if not isinstance(obj, dict):
            raise DatasetSchemaError(f"projects[{i}] must be an object")
        record = _project_record(obj, i)
        if record.id in seen:
            raise DatasetSchemaError(f"duplicate project id '{record.id}'")
        seen.add(record.id)
        projects.append(record)
    return ProjectDataset(projects=tuple(projects))


def parse_csv(source: bytes | str | IO) -> ProjectDataset:
    """Parse the flat convenience format: one row per (project, phase).

    Project-level columns are repeated on each of a project's three rows and
    must agree across them.
    """
    text = _decode(source)
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise DatasetParseError("no projects in input") from None
    header = [h.strip() for h in header]
    if header != list(CSV_COLUMNS):
        raise DatasetSchemaError(
            f"unexpected CSV header: expected {','.join(CSV_COLUMNS)}, got {','.join(header)}"
        )
    grouped: dict[str, list[dict]] = {}
    order: list[str] = []
    for lineno, row in enumerate(reader, start=2):
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) != len(CSV_COLUMNS):
            raise DatasetParseError(f"expected {len(CSV_COLUMNS)} fields, got {len(row)}", line=lineno)
        rec = dict(zip(CSV_COLUMNS, (cell.strip() for cell in row)))
        rec["_line"] = lineno
        pid = rec["id"]
        if not pid:
            raise DatasetSchemaError(f"line {lineno}: missing required field 'id'")
        if pid not in grouped:
            grouped[pid] = []
            order.append(pid)
        grouped[pid].append(rec)
    if not order:
        raise DatasetParseError("no projects in input")
    projects = []
    for pid in order:
        rows = grouped[pid]
        where = f"project {pid}"
        firsts = {k: rows[0][k] for k in ("total_hours", "total_defects")}
        for rec in rows[1:]:
            for k, v in firsts.items():
                if rec[k] != v:
                    raise DatasetSchemaError(
                        f"{where}: project-level column '{k}' differs across rows ({v!r} vs {rec[k]!r})"
                    )
        obj = {
            "id": pid,
            "total_hours": _csv_number(firsts["total_hours"], "total_hours", where),
            "total_defects": _csv_number(firsts["total_defects"], "total_defects", where),
            "phases": [
                {
                    "phase": rec["phase"],
                    **{k: _csv_number(rec[k], k, f"{where} line {rec['_line']}") for k in _PHASE_FIELDS},
                    "severities": {
                        s: _csv_number(rec[s], s, f"{where} line {rec['_line']}") for s in SEVERITY_CLASSES
                    },
                }
                for rec in rows
            ],
        }
        projects.append(_project_record(obj, len(projects)))
    return ProjectDataset(projects=tuple(projects))


def _csv_number(cell: str, key: str, where: str) -> float:
    try:
        value = float(cell)
    except ValueError:
        raise DatasetSchemaError(f"{where}: field '{key}' must be a number, got {cell!r}") from None
    return int(value) if value.is_integer() else value


def parse_dataset(source: bytes | str | IO, format: str = "canonical-json") -> ProjectDataset:
    if format in ("canonical-json", "json"):
        return parse_json(source)
    if format == "csv":
        return parse_csv(source)
    raise ValueError(f"unknown dataset format {format!r}")


# --- serialization ---------------------------------------------------------

def _num(value: float) -> float | int:
    return int(value) if float(value).is_integer() else value


def dataset_to_dict(ds: ProjectDataset) -> dict:
    return {
        "projects": [
            {
                "id": p.id,
                "total_hours": _num(p.total_hours),
                "total_defects": p.total_defects,
                "phases": [
                    {
                        "phase": pr.phase.value,
                        "phase_hours": _num(pr.phase_hours),
                        "inspection_hours": _num(pr.inspection_hours),
                        "testing_hours": _num(pr.testing_hours),
                        "prep_hours": _num(pr.prep_hours),
                        "num_inspectors": pr.num_inspectors,
                        "experience_years": _num(pr.experience_years),
                        "ni": pr.ni,
                        "nt": pr.nt,
                        "severities": pr.severities.as_dict(),
                    }
                    for pr in p.phases
                ],
            }
            for p in ds
        ]
    }


def serialize_json(ds: ProjectDataset) -> str:
    return json.dumps(dataset_to_dict(ds), indent=2) + "\n"


def serialize_csv(ds: ProjectDataset) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for p in ds:
        for pr in p.phases:
            writer.writerow([
                p.id, _num(p.total_hours), p.total_defects, pr.phase.value,
                _num(pr.phase_hours), _num(pr.inspection_hours), _num(pr.testing_hours),
                _num(pr.prep_hours), pr.num_inspectors, _num(pr.experience_years),
                pr.ni, pr.nt,
                *(getattr(pr.severities, s) for s in SEVERITY_CLASSES),
            ])
    return buf.getvalue()


# --- validation ------------------------------------------------------------

def validate(ds: ProjectDataset) -> ValidationReport:
    """Cross-check the arithmetic that makes a dataset internally consistent.

    Violations are data to report, not exceptions: a project with a bad
    severity sum still parses, it just shows up here.
    """
    violations: list[Violation] = []
    for p in ds:
        for pr in p.phases:
            loc = f"{p.id}/{pr.phase.value}"
            sev_total = pr.severities.total()
            if sev_total != pr.captured_total:
                violations.append(Violation(
                    rule="severity-sum",
                    location=loc,
                    observed=sev_total,
                    expected=pr.captured_total,
                ))
            budget = pr.inspection_hours + pr.testing_hours + pr.prep_hours
            if budget > pr.phase_hours:
                violations.append(Violation(
                    rule="phase-time-budget",
                    location=loc,
                    observed=_num(budget),
                    expected=_num(pr.phase_hours),
                ))
        if p.captured_total > p.total_defects:
            violations.append(Violation(
                rule="captured-exceeds-total",
                location=p.id,
                observed=p.captured_total,
                expected=p.total_defects,
            ))
    return ValidationReport(violations=tuple(violations))


# --- reference data --------------------------------------------------------

_REFERENCE: ProjectDataset | None = None


def reference_dataset() -> ProjectDataset:
    """The 15-project dataset shipped with the package."""
    global _REFERENCE
    if _REFERENCE is None:
        text = resources.files("inspectkit.data").joinpath("reference.json").read_text("utf-8")
        _REFERENCE = parse_json(text)
    return _REFERENCE


def load_dataset(path: str) -> ProjectDataset:
    """Load a dataset from a file path; '@reference' loads the embedded data.

    The format is inferred from the extension ('.csv' is CSV, anything else
    is canonical JSON).
    """
    if path == "@reference":
        return reference_dataset()
    with open(path, "rb") as f:
        data = f.read()
    return parse_csv(data) if path.endswith(".csv") else parse_json(data)
