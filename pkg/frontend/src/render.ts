/** Pure HTML renderers. Input is API data (plus panel state); output is a
 * markup string. No metric math happens here, only display rounding. */

import { escapeHtml, hours, pct, probabilityPct } from "./format";
import { UNSET, WhatIfPanelState } from "./state";
import type {
  ComplianceCheck,
  ComplianceResponse,
  DiSeriesPoint,
  MetricsResponse,
  ProjectRow,
} from "./types";

const PHASE_TITLES: Record<string, string> = {
  req: "Requirements",
  des: "Design",
  imp: "Implementation",
};

const METRIC_TITLES: Record<string, string> = {
  di: "Depth of inspection",
  ipm: "Inspection performance",
  inspection_time_pct: "Inspection time %",
  prep_time_pct: "Preparation time %",
  num_inspectors: "Inspectors",
  experience_years: "Experience (years)",
  testing_time_pct: "Testing time %",
};

export function verdictBadge(verdict: ComplianceCheck["verdict"]): string {
  const labels: Record<string, string> = {
    below: "below range",
    above: "above range",
    compliant: "ok",
    undefined: "n/a",
  };
  return `<span class="badge badge-${verdict}">${labels[verdict]}</span>`;
}

export function renderProjectList(projects: ProjectRow[], selectedId: string | null): string {
  const rows = projects
    .map((p) => {
      const flags = [
        p.capture_below_90 ? '<span class="badge badge-below">capture &lt; 90%</span>' : "",
        p.range_violations > 0
          ? `<span class="badge badge-warn">${p.range_violations} out of range</span>`
          : '<span class="badge badge-compliant">in range</span>',
      ]
        .filter(Boolean)
        .join(" ");
      const active = p.id === selectedId ? ' class="active"' : "";
      return `<tr${active} data-project="${escapeHtml(p.id)}">
        <td>${escapeHtml(p.id)}</td>
        <td class="num">${hours(p.total_hours)}</td>
        <td>${escapeHtml(p.size)}</td>
        <td class="num">${pct(p.tc_pct)}</td>
        <td>${flags}</td>
      </tr>`;
    })
    .join("");
  return `<table class="projects">
    <thead><tr><th>project</th><th>hours</th><th>size</th><th>capture %</th><th>status</th></tr></thead>
    <tbody>${rows}</tbody>
  </table>`;
}

function checkRow(check: ComplianceCheck): string {
  const observed = check.observed === null ? "-" : pct(check.observed);
  return `<tr data-metric="${check.phase}/${check.metric}">
    <td>${escapeHtml(METRIC_TITLES[check.metric] ?? check.metric)}</td>
    <td class="num">${observed}</td>
    <td class="num">${escapeHtml(check.desired)}</td>
    <td>${verdictBadge(check.verdict)}</td>
  </tr>`;
}

export function renderProjectDetail(
  metrics: MetricsResponse,
  compliance: ComplianceResponse,
): string {
  const flags: string[] = [];
  if (compliance.capture_below_90) {
    flags.push(`<p class="flag">Capture rate ${pct(compliance.tc_pct)}% is under the 90% target.</p>`);
  }
  for (const phase of compliance.low_inspection_share_phases) {
    const ni = metrics.phases[phase]?.ni_pct;
    const share = ni === undefined ? "" : ` (${pct(ni)}%)`;
    flags.push(
      `<p class="flag">Inspection caught under 30% of ${PHASE_TITLES[phase] ?? phase} defects${share}.</p>`,
    );
  }
  const sections = Object.keys(metrics.phases)
    .map((phase) => {
      const checks = compliance.checks.filter((c) => c.phase === phase);
      const m = metrics.phases[phase];
      return `<section class="phase" data-phase="${phase}">
        <h3>${PHASE_TITLES[phase] ?? phase}
          <span class="di-level">${escapeHtml(m.di_level)} (di ${pct(m.di)})</span></h3>
        <table class="checks">
          <thead><tr><th>parameter</th><th>observed</th><th>desired</th><th>verdict</th></tr></thead>
          <tbody>${checks.map(checkRow).join("")}</tbody>
        </table>
      </section>`;
    })
    .join("");
  return `<header>
      <h2>${escapeHtml(metrics.id)} <small>${escapeHtml(metrics.size)}, capture ${pct(metrics.tc_pct)}%</small></h2>
    </header>
    ${flags.join("")}
    ${sections}`;
}

export function renderPosteriorBars(posterior: Record<string, number>): string {
  const bars = Object.entries(posterior)
    .map(([level, p]) => {
      const width = Math.round(p * 100);
      return `<div class="bar-row" data-level="${level}">
        <div class="bar-label">${escapeHtml(level)}</div>
        <div class="bar-track"><div class="bar-fill" style="width:${width}%"></div></div>
        <div class="bar-value">${probabilityPct(p)}</div>
      </div>`;
    })
    .join("");
  return `<div class="bars">${bars}</div>`;
}

export function renderWhatIfControls(state: WhatIfPanelState): string {
  const selects = Object.entries(state.levels)
    .map(([node, levels]) => {
      const options = [UNSET, ...levels]
        .map((level) => {
          const selected = (state.selected[node] ?? UNSET) === level ? " selected" : "";
          const label = level === UNSET ? "(unset)" : level;
          return `<option value="${escapeHtml(level)}"${selected}>${escapeHtml(label)}</option>`;
        })
        .join("");
      return `<label class="control">${escapeHtml(node)}
        <select data-node="${escapeHtml(node)}">${options}</select>
      </label>`;
    })
    .join("");
  return `<div class="controls">${selects}</div>`;
}

export function renderWhatIfPanel(state: WhatIfPanelState): string {
  const error = state.error
    ? `<p class="inline-error">${escapeHtml(state.error)}</p>`
    : "";
  const bars = state.posterior
    ? renderPosteriorBars(state.posterior)
    : '<p class="placeholder">No model response yet.</p>';
  const caption = state.posterior
    ? Object.keys(evidenceShown(state)).length
      ? `posterior given ${escapeHtml(describeEvidence(evidenceShown(state)))}`
      : "prior (no evidence selected)"
    : "";
  return `${renderWhatIfControls(state)}
    ${error}
    <figure class="posterior">${bars}<figcaption>${caption}</figcaption></figure>
    <p class="history-size">history: ${state.history.length} quer${state.history.length === 1 ? "y" : "ies"}</p>`;
}

function evidenceShown(state: WhatIfPanelState): Record<string, string> {
  const latest = state.history[state.history.length - 1];
  return latest ? latest.evidence : {};
}

export function describeEvidence(evidence: Record<string, string>): string {
  return (
    Object.entries(evidence)
      .map(([node, level]) => `${node}=${level}`)
      .join(", ") || "(none)"
  );
}

export function renderDiChart(series: DiSeriesPoint[], width = 640, height = 240): string {
  if (!series.length) return "<svg></svg>";
  const margin = 40;
  const xs = series.map((p) => p.total_hours);
  const xMin = Math.min(...xs);
  const xMax = Math.max(...xs);
  const xSpan = xMax - xMin || 1;
  const x = (h: number) => margin + ((h - xMin) / xSpan) * (width - 2 * margin);
  const y = (di: number) => height - margin - di * (height - 2 * margin);
  const phases = Object.keys(series[0].di);
  const colors: Record<string, string> = { req: "#2563eb", des: "#16a34a", imp: "#dc2626" };
  const lines = phases
    .map((phase) => {
      const points = series
        .map((p) => `${x(p.total_hours).toFixed(1)},${y(p.di[phase]).toFixed(1)}`)
        .join(" ");
      const dots = series
        .map(
          (p) =>
            `<circle r="3" cx="${x(p.total_hours).toFixed(1)}" cy="${y(p.di[phase]).toFixed(1)}"
             fill="${colors[phase] ?? "#888"}" data-point="${phase}:${escapeHtml(p.id)}"></circle>`,
        )
        .join("");
      return `<polyline fill="none" stroke="${colors[phase] ?? "#888"}" points="${points}"></polyline>${dots}`;
    })
    .join("");
  const legend = phases
    .map(
      (phase, i) =>
        `<text x="${margin + i * 140}" y="16" fill="${colors[phase] ?? "#888"}">${PHASE_TITLES[phase] ?? phase}</text>`,
    )
    .join("");
  return `<svg viewBox="0 0 ${width} ${height}" role="img" aria-label="depth of inspection by project hours">
    ${legend}${lines}
    <line x1="${margin}" y1="${height - margin}" x2="${width - margin}" y2="${height - margin}" stroke="#999"></line>
  </svg>`;
}

export function renderServiceBanner(message: string): string {
  return `<div class="banner">
    <span>${escapeHtml(message)}</span>
    <button type="button" data-action="retry">retry</button>
  </div>`;
}
