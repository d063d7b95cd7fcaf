"""Analytics toolkit for software inspection and testing records.

Validates per-phase defect data, computes depth-of-inspection and
inspection-performance metrics, reproduces the published reference tables
with an erratum diff, benchmarks projects against desired parameter ranges,
answers naive-Bayes what-if queries over inspection parameters, and tracks
deliverables through the inspection workflow.
"""

from .dataset import (
    Phase,
    PhaseRecord,
    ProjectDataset,
    ProjectRecord,
    SeverityCounts,
    SizeCategory,
    ValidationReport,
    Violation,
    classify_size,
    load_dataset,
    parse_dataset,
    reference_dataset,
    validate,
)
from .metrics import (
    DiLevel,
    ExperienceLevel,
    PhaseMetrics,
    ProjectMetrics,
    capture_rate,
    classify_di,
    classify_experience,
    depth_of_inspection,
    inspection_performance,
    pattern_summary,
    phase_metrics,
    project_metrics,
)

__all__ = [
    "Phase",
    "PhaseRecord",
    "ProjectDataset",
    "ProjectRecord",
    "SeverityCounts",
    "SizeCategory",
    "ValidationReport",
    "Violation",
    "classify_size",
    "load_dataset",
    "parse_dataset",
    "reference_dataset",
    "validate",
    "DiLevel",
    "ExperienceLevel",
    "PhaseMetrics",
    "ProjectMetrics",
    "capture_rate",
    "classify_di",
    "classify_experience",
    "depth_of_inspection",
    "inspection_performance",
    "pattern_summary",
    "phase_metrics",
    "project_metrics",
]

__version__ = "0.1.0"
