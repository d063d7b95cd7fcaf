/** Response shapes of the inspectkit HTTP service. The console renders these
 * verbatim; it never derives metrics itself. */

export interface ProjectRow {
  id: string;
  total_hours: number;
  size: string;
  tc_pct: number;
  capture_below_90: boolean;
  range_violations: number;
}

export interface ProjectsResponse {
  projects: ProjectRow[];
  dataset: { violations: number };
}

export interface PhaseMetrics {
  di: number;
  di_level: string;
  ipm: number;
  inspection_time_pct: number;
  testing_time_pct: number;
  prep_time_pct: number;
  ni_pct: number;
  nt_pct: number;
  severity_pct: Record<string, number>;
}

export interface MetricsResponse {
  id: string;
  size: string;
  tc: number;
  tc_pct: number;
  phases: Record<string, PhaseMetrics>;
}

export interface ComplianceCheck {
  phase: string;
  metric: string;
  observed: number | null;
  min: number | null;
  max: number | null;
  desired: string;
  verdict: "below" | "compliant" | "above" | "undefined";
}

export interface ComplianceResponse {
  project: string;
  size: string;
  tc_pct: number;
  capture_below_90: boolean;
  low_inspection_share_phases: string[];
  checks: ComplianceCheck[];
}

export interface BuildResponse {
  digest: string;
  model: {
    phase: string;
    size: string;
    levels: Record<string, string[]>;
    prior: Record<string, number>;
  };
}

export interface QueryResponse {
  digest: string;
  evidence: Record<string, string>;
  posterior: Record<string, number>;
}

export interface DiSeriesPoint {
  id: string;
  total_hours: number;
  di: Record<string, number>;
}

export interface PlotResponse {
  series: DiSeriesPoint[];
}

export interface ProblemDocument {
  code: string;
  message: string;
  location: string;
}
