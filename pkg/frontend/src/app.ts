/** DOM wiring: fetches data, keeps panel state, re-renders on changes.
 * All displayed numbers come from service responses. */

import { ApiClient, ApiError } from "./api";
import {
  renderDiChart,
  renderProjectDetail,
  renderProjectList,
  renderServiceBanner,
  renderWhatIfPanel,
} from "./render";
import {
  WhatIfPanelState,
  applyError,
  applyResponse,
  evidenceOf,
  initialPanel,
  issueQuery,
  withLevels,
  withSelection,
} from "./state";

const PHASES = ["req", "des", "imp"];
const SIZES = ["small", "medium", "large"];

export class App {
  private panel: WhatIfPanelState = initialPanel("req", "small");
  private selectedProject: string | null = null;

  constructor(
    private readonly api: ApiClient,
    private readonly root: HTMLElement,
  ) {}

  async start(): Promise<void> {
    this.root.innerHTML = `
      <div id="banner"></div>
      <main class="layout">
        <section id="projects-pane"><h2>Projects</h2><div id="project-list"></div></section>
        <section id="detail-pane"><h2>Project detail</h2><div id="project-detail">
          <p class="placeholder">Select a project.</p></div></section>
        <section id="whatif-pane">
          <h2>What-if</h2>
          <div id="slice-controls"></div>
          <div id="whatif-panel"></div>
        </section>
        <section id="chart-pane"><h2>Depth vs hours</h2><div id="di-chart"></div></section>
      </main>`;
    this.renderSliceControls();
    this.root.addEventListener("click", (event) => this.onClick(event));
    this.root.addEventListener("change", (event) => void this.onChange(event));
    await this.refresh();
  }

  private async refresh(): Promise<void> {
    try {
      const [projects, plot] = await Promise.all([this.api.projects(), this.api.plotDi()]);
      this.byId("banner").innerHTML = "";
      this.byId("project-list").innerHTML = renderProjectList(
        projects.projects,
        this.selectedProject,
      );
      this.byId("di-chart").innerHTML = renderDiChart(plot.series);
      await this.loadModel();
    } catch (error) {
      this.byId("banner").innerHTML = renderServiceBanner(
        `Service unreachable at ${this.api.baseUrl}: ${String(error)}`,
      );
    }
  }

  private renderSliceControls(): void {
    const select = (id: string, values: string[], current: string) =>
      `<label class="control">${id}
        <select data-slice="${id}">${values
          .map((v) => `<option value="${v}"${v === current ? " selected" : ""}>${v}</option>`)
          .join("")}</select>
      </label>`;
    this.byId("slice-controls").innerHTML =
      select("phase", PHASES, this.panel.phase) + select("size", SIZES, this.panel.size);
  }

  private async loadModel(): Promise<void> {
    const build = await this.api.build(this.panel.phase, this.panel.size);
    this.panel = withLevels(this.panel, build.model.levels);
    await this.runQuery();
  }

  private async runQuery(): Promise<void> {
    const issued = issueQuery(this.panel);
    this.panel = issued.state;
    const evidence = evidenceOf(this.panel);
    try {
      const response = await this.api.query(this.panel.phase, this.panel.size, evidence);
      this.panel = applyResponse(this.panel, issued.seq, response.evidence, response.posterior);
    } catch (error) {
      const message =
        error instanceof ApiError && error.status === 422
          ? `That combination is impossible under the current model: ${error.problem.message}`
          : `Query failed: ${String(error)}`;
      this.panel = applyError(this.panel, issued.seq, message);
    }
    this.byId("whatif-panel").innerHTML = renderWhatIfPanel(this.panel);
  }

  private async onChange(event: Event): Promise<void> {
    const target = event.target as HTMLSelectElement;
    if (target.dataset.slice === "phase" || target.dataset.slice === "size") {
      this.panel = initialPanel(
        target.dataset.slice === "phase" ? target.value : this.panel.phase,
        target.dataset.slice === "size" ? target.value : this.panel.size,
      );
      this.renderSliceControls();
      await this.loadModel();
      return;
    }
    const node = target.dataset.node;
    if (node) {
      this.panel = withSelection(this.panel, node, target.value);
      await this.runQuery();
    }
  }

  private onClick(event: Event): void {
    const target = event.target as HTMLElement;
    if (target.dataset.action === "retry") {
      void this.refresh();
      return;
    }
    const row = target.closest("tr[data-project]") as HTMLElement | null;
    if (row?.dataset.project) {
      this.selectedProject = row.dataset.project;
      void this.showProject(row.dataset.project);
    }
  }

  private async showProject(projectId: string): Promise<void> {
    try {
      const [metrics, compliance] = await Promise.all([
        this.api.metrics(projectId),
        this.api.compliance(projectId),
      ]);
      this.byId("project-detail").innerHTML = renderProjectDetail(metrics, compliance);
      const projects = await this.api.projects();
      this.byId("project-list").innerHTML = renderProjectList(
        projects.projects,
        this.selectedProject,
      );
    } catch (error) {
      this.byId("project-detail").innerHTML =
        `<p class="inline-error">Could not load ${projectId}: ${String(error)}</p>`;
    }
  }

  private byId(id: string): HTMLElement {
    const el = this.root.querySelector(`#${id}`);
    if (!el) throw new Error(`missing element #${id}`);
    return el as HTMLElement;
  }
}
