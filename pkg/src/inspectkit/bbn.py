"""Naive-Bayes what-if model over discretized inspection parameters.

The network shape is fixed: the per-phase inspection-depth level is the
parent, and each inspection parameter is an independent child. Conditional
tables are estimated from a (phase, size) slice of a dataset, optionally
blended with an expert-supplied model.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field
from enum import Enum

from .dataset import Phase, PhaseRecord, ProjectDataset, ProjectRecord, SizeCategory, classify_size
from .errors import ImpossibleEvidenceError, SchemeConfigurationError, UndefinedMetricError
from .metrics import DI_LEVEL_ORDER, DiLevel, classify_di, depth_of_inspection


class ParamNode(str, Enum):
    NUM_INSPECTORS = "num_inspectors"
    INSPECTION_TIME_PCT = "inspection_time_pct"
    PREP_TIME_RATIO = "prep_time_ratio"
    EXPERIENCE = "experience_level"
    SKILL = "skill"


# Nodes whose values can be read off a phase record; skill is declared-only.
DATA_NODES = (
    ParamNode.NUM_INSPECTORS,
    ParamNode.INSPECTION_TIME_PCT,
    ParamNode.PREP_TIME_RATIO,
    ParamNode.EXPERIENCE,
)


@dataclass(frozen=True)
class LevelBin:
    """A level with its upper boundary: a value belongs to the first bin whose
    upper bound it does not exceed (strictly below when not inclusive)."""

    label: str
    upper: float
    inclusive: bool = True


@dataclass(frozen=True)
class NodeLevels:
    labels: tuple[str, ...]
    bins: tuple[LevelBin, ...] | None = None  # None: declared labels only, no numeric domain

    def __post_init__(self) -> None:
        if len(set(self.labels)) != len(self.labels) or not self.labels:
            raise SchemeConfigurationError(f"level labels must be unique and non-empty: {self.labels}")
        if self.bins is None:
            return
        if tuple(b.label for b in self.bins) != self.labels:
            raise SchemeConfigurationError("bin labels must match the declared labels in order")
        last = (-math.inf, True)
        for b in self.bins:
            key = (b.upper, b.inclusive)
            if key <= last:
                raise SchemeConfigurationError(f"bins must strictly increase; {b.label} does not")
            last = key
        if not (self.bins[-1].upper == math.inf and self.bins[-1].inclusive):
            raise SchemeConfigurationError("last bin must be unbounded so bins partition the domain")

    def discretize(self, value: float) -> str:
        if self.bins is None:
            raise SchemeConfigurationError(f"levels {self.labels} have no numeric bins")
        for b in self.bins:
            if value <= b.upper if b.inclusive else value < b.upper:
                return b.label
        raise AssertionError("unreachable: last bin is unbounded")


def _bins(*spec: tuple[str, float, bool]) -> NodeLevels:
    bins = tuple(LevelBin(label, upper, inclusive) for label, upper, inclusive in spec)
    return NodeLevels(labels=tuple(b.label for b in bins), bins=bins)


@dataclass(frozen=True)
class LevelScheme:
    """Per-node discretization with optional (phase, size) specific overrides.

    Lookup order: exact (phase, size), then size-only, then phase-only, then
    the node default.
    """

    defaults: dict[ParamNode, NodeLevels]
    overrides: dict[tuple[ParamNode, Phase | None, SizeCategory | None], NodeLevels] = field(
        default_factory=dict
    )

    def levels(self, node: ParamNode, phase: Phase | None = None, size: SizeCategory | None = None) -> NodeLevels:
        for key in ((node, phase, size), (node, None, size), (node, phase, None)):
            if key in self.overrides:
                return self.overrides[key]
        if node in self.defaults:
            return self.defaults[node]
        raise SchemeConfigurationError(
            f"no levels configured for node {node.value}"
            + (f" at ({phase.value if phase else '*'}, {size.value if size else '*'})")
        )


def default_scheme() -> LevelScheme:
    """The built-in discretization.

    Inspector-count bins follow the published staffing guidance per size
    (small: exactly 3 is moderate; medium: 3-5; large: exactly 4). Inspection
    time uses the 10-15% desired band, preparation the 10-20%-of-inspection
    band, and experience the novice/average/large year brackets. Skill has
    declared levels but no numeric domain; it only enters as explicit
    evidence against an expert-supplied table.
    """
    inf = math.inf
    return LevelScheme(
        defaults={
            ParamNode.NUM_INSPECTORS: _bins(("L", 3, False), ("M", 3, True), ("H", inf, True)),
            ParamNode.INSPECTION_TIME_PCT: _bins(("L", 10, False), ("M", 15, True), ("H", inf, True)),
            ParamNode.PREP_TIME_RATIO: _bins(("L", 10, False), ("M", 20, True), ("H", inf, True)),
            ParamNode.EXPERIENCE: _bins(("novice", 2, True), ("average", 4, True), ("large", inf, True)),
            ParamNode.SKILL: NodeLevels(labels=("L", "M", "H")),
        },
        overrides={
            (ParamNode.NUM_INSPECTORS, None, SizeCategory.MEDIUM): _bins(
                ("L", 3, False), ("M", 5, True), ("H", inf, True)
            ),
            (ParamNode.NUM_INSPECTORS, None, SizeCategory.LARGE): _bins(
                ("L", 4, False), ("M", 4, True), ("H", inf, True)
            ),
        },
    )


def node_value(pr: PhaseRecord, node: ParamNode) -> float:
    """The raw observable backing a parameter node for one phase record."""
    if node is ParamNode.NUM_INSPECTORS:
        return float(pr.num_inspectors)
    if node is ParamNode.INSPECTION_TIME_PCT:
        return 100.0 * pr.inspection_hours / pr.phase_hours
    if node is ParamNode.PREP_TIME_RATIO:
        if pr.inspection_hours <= 0:
            raise UndefinedMetricError("preparation ratio is undefined with zero inspection time")
        return 100.0 * pr.prep_hours / pr.inspection_hours
    if node is ParamNode.EXPERIENCE:
        return pr.experience_years
    raise SchemeConfigurationError(f"node {node.value} has no measurable value in the dataset")


def discretize(
    node: ParamNode,
    value: float,
    phase: Phase | None = None,
    size: SizeCategory | None = None,
    scheme: LevelScheme | None = None,
) -> str:
    """Bin a raw value into its level label for the given (phase, size)."""
    return (scheme or default_scheme()).levels(node, phase, size).discretize(value)


# --- model -------------------------------------------------------------------

Evidence = dict[ParamNode, str]


@dataclass(frozen=True)
class CptModel:
    """Prior over inspection-depth levels plus one conditional table per node.

    ``cpts[node][di_level]`` is a distribution over that node's level labels.
    ``counts`` holds the raw slice tallies the probabilities came from;
    ``expert_weight`` is nonzero only after an expert merge.
    """

    phase: Phase
    size: SizeCategory
    levels: dict[ParamNode, tuple[str, ...]]
    prior: dict[DiLevel, float]
    cpts: dict[ParamNode, dict[DiLevel, dict[str, float]]]
    smoothing: float
    sample_size: int
    di_counts: dict[DiLevel, int]
    counts: dict[ParamNode, dict[DiLevel, dict[str, int]]]
    expert_weight: float = 0.0

    def __post_init__(self) -> None:
        _check_distribution(self.prior.values(), "prior")
        for node, table in self.cpts.items():
            if node not in self.levels:
                raise SchemeConfigurationError(f"cpt for {node.value} has no declared levels")
            for di, dist in table.items():
                if set(dist) != set(self.levels[node]):
                    raise SchemeConfigurationError(
                        f"cpt for {node.value} given {di.value} does not cover its levels"
                    )
                _check_distribution(dist.values(), f"P({node.value} | {di.value})")

    def nodes(self) -> tuple[ParamNode, ...]:
        return tuple(self.cpts)


def _check_distribution(values, what: str) -> None:
    values = list(values)
    if any(not (0.0 <= v <= 1.0) for v in values):
        raise ValueError(f"{what} has probabilities outside [0, 1]")
    if abs(sum(values) - 1.0) > 1e-9:
        raise ValueError(f"{what} sums to {sum(values)}, not 1")


def _slice(ds: ProjectDataset, size: SizeCategory) -> list[ProjectRecord]:
    return [p for p in ds if classify_size(p.total_hours) == size]


def _phase_di_level(p: ProjectRecord, phase: Phase) -> DiLevel:
    pr = p.phase(phase)
    return classify_di(depth_of_inspection(pr.ni, pr.captured_total))


def build_model(
    ds: ProjectDataset,
    phase: Phase,
    size: SizeCategory,
    scheme: LevelScheme | None = None,
    smoothing: float = 0.0,
) -> CptModel:
    """Estimate the prior and conditional tables from one (phase, size) slice.

    Additive smoothing spreads ``smoothing`` pseudo-counts over each
    distribution; with zero smoothing, depth levels never seen in the slice
    get a uniform conditional row (their prior is zero, so they cannot gain
    posterior mass) rather than an undefined one.
    """
    if smoothing < 0:
        raise ValueError(f"smoothing must be non-negative, got {smoothing}")
    scheme = scheme or default_scheme()
    projects = _slice(ds, size)
    if not projects:
        raise ValueError(f"no {size.value} projects in the dataset")
    n = len(projects)
    di_counts = {d: 0 for d in DI_LEVEL_ORDER}
    level_labels: dict[ParamNode, tuple[str, ...]] = {}
    joint: dict[ParamNode, dict[DiLevel, dict[str, int]]] = {}
    for node in DATA_NODES:
        labels = scheme.levels(node, phase, size).labels
        level_labels[node] = labels
        joint[node] = {d: {lab: 0 for lab in labels} for d in DI_LEVEL_ORDER}
    for p in projects:
        di = _phase_di_level(p, phase)
        di_counts[di] += 1
        pr = p.phase(phase)
        for node in DATA_NODES:
            label = scheme.levels(node, phase, size).discretize(node_value(pr, node))
            joint[node][di][label] += 1

    k = len(DI_LEVEL_ORDER)
    prior = {d: (di_counts[d] + smoothing) / (n + smoothing * k) for d in DI_LEVEL_ORDER}
    cpts: dict[ParamNode, dict[DiLevel, dict[str, float]]] = {}
    for node in DATA_NODES:
        labels = level_labels[node]
        table: dict[DiLevel, dict[str, float]] = {}
        for d in DI_LEVEL_ORDER:
            denom = di_counts[d] + smoothing * len(labels)
            if denom == 0:
                table[d] = {lab: 1.0 / len(labels) for lab in labels}
            else:
                table[d] = {lab: (joint[node][d][lab] + smoothing) / denom for lab in labels}
        cpts[node] = table
    return CptModel(
        phase=phase,
        size=size,
        levels=level_labels,
        prior=prior,
        cpts=cpts,
        smoothing=smoothing,
        sample_size=n,
        di_counts=di_counts,
        counts=joint,
    )


def joint_frequency(
    ds: ProjectDataset,
    phase: Phase,
    size: SizeCategory,
    node: ParamNode,
    level: str,
    di_level: DiLevel,
    scheme: LevelScheme | None = None,
) -> float:
    """Fraction of the slice where ``node`` is at ``level`` AND the depth is at
    ``di_level``.

    Note this divides by the whole slice, not by the count of ``di_level``;
    it is the joint frequency, not the conditional probability (the model's
    tables hold the conditionals).
    """
    scheme = scheme or default_scheme()
    projects = _slice(ds, size)
    if not projects:
        raise ValueError(f"no {size.value} projects in the dataset")
    labels = scheme.levels(node, phase, size).labels
    if level not in labels:
        raise SchemeConfigurationError(f"level {level!r} not among {labels} for {node.value}")
    hits = 0
    for p in projects:
        pr = p.phase(phase)
        if (
            _phase_di_level(p, phase) == di_level
            and scheme.levels(node, phase, size).discretize(node_value(pr, node)) == level
        ):
            hits += 1
    return hits / len(projects)


def posterior(model: CptModel, evidence: Evidence) -> dict[DiLevel, float]:
    """Depth-level distribution given observed parameter levels.

    Empty evidence returns the prior. Evidence that no depth level can
    produce (all scores zero, possible only without smoothing) raises
    ImpossibleEvidenceError.
    """
    for node, level in evidence.items():
        if node not in model.cpts:
            raise SchemeConfigurationError(f"model has no table for node {node.value}")
        if level not in model.levels[node]:
            raise SchemeConfigurationError(
                f"level {level!r} not among {model.levels[node]} for {node.value}"
            )
    scores = {}
    for d in DI_LEVEL_ORDER:
        score = model.prior[d]
        for node, level in evidence.items():
            score *= model.cpts[node][d][level]
        scores[d] = score
    total = sum(scores.values())
    if total == 0.0:
        raise ImpossibleEvidenceError(f"evidence {_format_evidence(evidence)} has zero probability")
    return {d: scores[d] / total for d in DI_LEVEL_ORDER}


def _format_evidence(evidence: Evidence) -> str:
    return "{" + ", ".join(f"{n.value}={lv}" for n, lv in evidence.items()) + "}"


@dataclass(frozen=True)
class Recommendation:
    evidence: Evidence
    target_mass: float | None
    feasible: bool
    note: str = ""


def recommend(
    model: CptModel, target: set[DiLevel], candidate_grid: list[Evidence]
) -> list[Recommendation]:
    """Rank candidate parameter settings by posterior mass on the target levels.

    Ties prefer cheaper settings: fewer inspectors first, then a lower
    inspection-time level; beyond that the input order is kept. Candidates
    whose evidence is impossible under the model rank last, flagged.
    """
    if not candidate_grid:
        raise ValueError("candidate grid is empty")

    def cost_index(ev: Evidence, node: ParamNode) -> float:
        if node not in ev or node not in model.levels:
            return math.inf
        return model.levels[node].index(ev[node])

    ranked: list[tuple[tuple, Recommendation]] = []
    for i, ev in enumerate(candidate_grid):
        try:
            mass = sum(posterior(model, ev)[d] for d in target)
        except ImpossibleEvidenceError as exc:
            ranked.append(((1, 0.0, 0.0, 0.0, i), Recommendation(ev, None, False, str(exc))))
            continue
        key = (
            0,
            -mass,
            cost_index(ev, ParamNode.NUM_INSPECTORS),
            cost_index(ev, ParamNode.INSPECTION_TIME_PCT),
            i,
        )
        ranked.append((key, Recommendation(ev, mass, True)))
    ranked.sort(key=lambda item: item[0])
    return [rec for _, rec in ranked]


def level_grid(model: CptModel, nodes: list[ParamNode]) -> list[Evidence]:
    """Cartesian product of the given nodes' levels, in scheme order."""
    grid: list[Evidence] = [{}]
    for node in nodes:
        if node not in model.levels:
            raise SchemeConfigurationError(f"model has no table for node {node.value}")
        grid = [{**ev, node: label} for ev in grid for label in model.levels[node]]
    return grid


def merge_expert(model: CptModel, expert: CptModel, weight: float) -> CptModel:
    """Blend an expert model into a data model, cell by cell.

    ``weight`` is the expert's share. Nodes present in only one model are
    carried over unchanged, which is how a declared-only node (skill) can be
    added from expert input.
    """
    if not 0.0 <= weight <= 1.0:
        raise ValueError(f"weight must be in [0, 1], got {weight}")
    if (model.phase, model.size) != (expert.phase, expert.size):
        raise SchemeConfigurationError("models describe different (phase, size) slices")
    for node in set(model.levels) & set(expert.levels):
        if model.levels[node] != expert.levels[node]:
            raise SchemeConfigurationError(f"models disagree on levels for {node.value}")

    def mix(a: float, b: float) -> float:
        return weight * b + (1.0 - weight) * a

    prior = {d: mix(model.prior[d], expert.prior[d]) for d in DI_LEVEL_ORDER}
    z = sum(prior.values())
    prior = {d: v / z for d, v in prior.items()}
    cpts: dict[ParamNode, dict[DiLevel, dict[str, float]]] = {}
    levels: dict[ParamNode, tuple[str, ...]] = {}
    for node in list(model.cpts) + [n for n in expert.cpts if n not in model.cpts]:
        levels[node] = (model.levels.get(node) or expert.levels[node])
        if node in model.cpts and node in expert.cpts:
            merged = {}
            for d in DI_LEVEL_ORDER:
                row = {lab: mix(model.cpts[node][d][lab], expert.cpts[node][d][lab]) for lab in levels[node]}
                z = sum(row.values())
                merged[d] = {lab: v / z for lab, v in row.items()}
            cpts[node] = merged
        else:
            cpts[node] = (model.cpts.get(node) or expert.cpts[node])
    return CptModel(
        phase=model.phase,
        size=model.size,
        levels=levels,
        prior=prior,
        cpts=cpts,
        smoothing=model.smoothing,
        sample_size=model.sample_size,
        di_counts=model.di_counts,
        counts=model.counts,
        expert_weight=weight,
    )


# --- serialization -----------------------------------------------------------

def model_to_dict(model: CptModel) -> dict:
    return {
        "phase": model.phase.value,
        "size": model.size.value,
        "levels": {n.value: list(model.levels[n]) for n in model.levels},
        "prior": {d.value: model.prior[d] for d in DI_LEVEL_ORDER},
        "cpts": {
            n.value: {
                d.value: {lab: model.cpts[n][d][lab] for lab in model.levels[n]}
                for d in DI_LEVEL_ORDER
            }
            for n in model.cpts
        },
        "smoothing": model.smoothing,
        "sample_size": model.sample_size,
        "di_counts": {d.value: model.di_counts[d] for d in DI_LEVEL_ORDER},
        "counts": {
            n.value: {
                d.value: {lab: model.counts[n][d][lab] for lab in model.levels[n]}
                for d in DI_LEVEL_ORDER
            }
            for n in model.counts
        },
        "expert_weight": model.expert_weight,
    }


def model_to_json(model: CptModel) -> str:
    # sort_keys fixes the byte layout so re-serialization is identical
    return json.dumps(model_to_dict(model), indent=2, sort_keys=True) + "\n"


def model_digest(model: CptModel) -> str:
    return hashlib.sha256(model_to_json(model).encode("utf-8")).hexdigest()


def model_from_dict(doc: dict) -> CptModel:
    levels = {ParamNode(n): tuple(labels) for n, labels in doc["levels"].items()}
    return CptModel(
        phase=Phase(doc["phase"]),
        size=SizeCategory(doc["size"]),
        levels=levels,
        prior={DiLevel(d): p for d, p in doc["prior"].items()},
        cpts={
            ParamNode(n): {DiLevel(d): dict(dist) for d, dist in table.items()}
            for n, table in doc["cpts"].items()
        },
        smoothing=doc["smoothing"],
        sample_size=doc["sample_size"],
        di_counts={DiLevel(d): c for d, c in doc["di_counts"].items()},
        counts={
            ParamNode(n): {DiLevel(d): dict(dist) for d, dist in table.items()}
            for n, table in doc["counts"].items()
        },
        expert_weight=doc.get("expert_weight", 0.0),
    )


def model_from_json(text: str) -> CptModel:
    return model_from_dict(json.loads(text))


def load_model(path: str) -> CptModel:
    with open(path, encoding="utf-8") as f:
        return model_from_json(f.read())


def save_model(model: CptModel, path: str) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(model_to_json(model))
