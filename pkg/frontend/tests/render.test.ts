// Every rendered value must be traceable to a field of a recorded service
// response; these tests pin the renderers to those fixtures.
import { describe, expect, it } from "vitest";

import {
  renderDiChart,
  renderPosteriorBars,
  renderProjectDetail,
  renderProjectList,
  renderServiceBanner,
  renderWhatIfControls,
  renderWhatIfPanel,
} from "../src/render";
import { applyResponse, initialPanel, issueQuery, withLevels } from "../src/state";
import type {
  BuildResponse,
  ComplianceResponse,
  MetricsResponse,
  PlotResponse,
  ProjectsResponse,
  QueryResponse,
} from "../src/types";

import buildFixture from "./fixtures/build_req_small.json";
import p10Compliance from "./fixtures/p10_compliance.json";
import p10Metrics from "./fixtures/p10_metrics.json";
import p1Compliance from "./fixtures/p1_compliance.json";
import plotFixture from "./fixtures/plot_di.json";
import projectsFixture from "./fixtures/projects.json";
import queryM from "./fixtures/query_req_small_m.json";
import queryPrior from "./fixtures/query_req_small_prior.json";

const projects = projectsFixture as ProjectsResponse;
const build = buildFixture as BuildResponse;
const metricsP10 = p10Metrics as MetricsResponse;
const complianceP10 = p10Compliance as unknown as ComplianceResponse;
const complianceP1 = p1Compliance as unknown as ComplianceResponse;
const plot = plotFixture as PlotResponse;
const withEvidence = queryM as QueryResponse;
const prior = queryPrior as QueryResponse;

describe("posterior bars", () => {
  it("renders the recorded 80/20 split for moderate staffing", () => {
    const html = renderPosteriorBars(withEvidence.posterior);
    expect(withEvidence.evidence).toEqual({ num_inspectors: "M" });
    expect(html).toContain('data-level="desirable"');
    expect(html).toContain("80%");
    expect(html).toContain("20%");
    expect(html).toContain('style="width:80%"');
    expect(html).toContain('style="width:20%"');
  });

  it("shows one bar per recorded level, values straight from the response", () => {
    const html = renderPosteriorBars(withEvidence.posterior);
    for (const [level, p] of Object.entries(withEvidence.posterior)) {
      expect(html).toContain(`data-level="${level}"`);
      expect(html).toContain(`${Math.round(p * 1000) / 10}%`);
    }
  });

  it("renders the prior when no evidence is selected", () => {
    expect(prior.evidence).toEqual({});
    const html = renderPosteriorBars(prior.posterior);
    expect(html).toContain("80%"); // desirable prior from the recorded response
    expect(html).toContain("20%");
  });
});

describe("what-if panel", () => {
  function panelWithResponse(query: QueryResponse) {
    let panel = withLevels(initialPanel("req", "small"), build.model.levels);
    const issued = issueQuery(panel);
    panel = applyResponse(issued.state, issued.seq, query.evidence, query.posterior);
    return panel;
  }

  it("offers exactly the levels served by the model build", () => {
    const panel = withLevels(initialPanel("req", "small"), build.model.levels);
    const html = renderWhatIfControls(panel);
    for (const [node, levels] of Object.entries(build.model.levels)) {
      expect(html).toContain(`data-node="${node}"`);
      for (const level of levels) {
        expect(html).toContain(`<option value="${level}"`);
      }
    }
    expect(html).toContain('value="unset"');
    expect(html).not.toContain('data-node="skill"'); // not part of the served model
  });

  it("captions the posterior with the evidence that produced it", () => {
    const html = renderWhatIfPanel(panelWithResponse(withEvidence));
    expect(html).toContain("num_inspectors=M");
    expect(html).toContain("history: 1 query");
  });

  it("labels an evidence-free posterior as the prior", () => {
    const html = renderWhatIfPanel(panelWithResponse(prior));
    expect(html).toContain("prior (no evidence selected)");
  });
});

describe("project list", () => {
  it("shows capture rate and badges from the recorded rows", () => {
    const html = renderProjectList(projects.projects, null);
    expect(html).toContain(">P10<");
    expect(html).toContain("88.35");
    expect(html).toContain("capture &lt; 90%");
    const p1 = projects.projects.find((p) => p.id === "P1")!;
    expect(p1.capture_below_90).toBe(false);
    expect(html).toContain("96.00");
  });

  it("marks the selected project row", () => {
    const html = renderProjectList(projects.projects, "P3");
    expect(html).toContain('class="active" data-project="P3"');
  });
});

describe("project detail", () => {
  it("shows the below-range inspection-time badge for P10", () => {
    const html = renderProjectDetail(metricsP10, complianceP10);
    const reqSection = html.split('data-phase="req"')[1].split("</section>")[0];
    const row = reqSection
      .split('data-metric="req/inspection_time_pct"')[1]
      .split("</tr>")[0];
    expect(row).toContain("6.45"); // observed value from the recorded response
    expect(row).toContain("below range");
    expect(html).toContain("under the 90% target");
    expect(html).toContain("88.35");
    expect(html).toContain("26.67"); // low inspection share, from the metrics response
  });

  it("renders a clean project without flags", () => {
    const p1Metrics: MetricsResponse = {
      ...metricsP10,
      id: complianceP1.project,
      size: complianceP1.size,
      tc_pct: complianceP1.tc_pct,
    };
    const html = renderProjectDetail(p1Metrics, complianceP1);
    expect(html).not.toContain("under the 90% target");
    expect(complianceP1.capture_below_90).toBe(false);
  });
});

describe("depth chart", () => {
  it("draws one point per project per phase from the recorded series", () => {
    const html = renderDiChart(plot.series);
    const points = html.match(/<circle /g) ?? [];
    expect(points.length).toBe(plot.series.length * 3);
    expect(html).toContain('data-point="req:P1"');
  });
});

describe("service banner", () => {
  it("offers a retry action", () => {
    const html = renderServiceBanner("Service unreachable at http://x");
    expect(html).toContain('data-action="retry"');
    expect(html).toContain("Service unreachable");
  });
});
