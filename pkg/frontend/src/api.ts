import type {
  BuildResponse,
  ComplianceResponse,
  MetricsResponse,
  PlotResponse,
  ProblemDocument,
  ProjectsResponse,
  QueryResponse,
} from "./types";

/** Thrown for non-2xx responses carrying a problem document. */
export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly problem: ProblemDocument,
  ) {
    super(problem.message);
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  const response = await fetch(url, init);
  if (!response.ok) {
    let problem: ProblemDocument = { code: "error", message: response.statusText, location: "" };
    try {
      problem = (await response.json()) as ProblemDocument;
    } catch {
      // keep the statusText fallback
    }
    throw new ApiError(response.status, problem);
  }
  return (await response.json()) as T;
}

export class ApiClient {
  constructor(readonly baseUrl: string) {}

  private url(path: string): string {
    return this.baseUrl.replace(/\/$/, "") + path;
  }

  projects(): Promise<ProjectsResponse> {
    return request(this.url("/projects"));
  }

  metrics(projectId: string): Promise<MetricsResponse> {
    return request(this.url(`/projects/${encodeURIComponent(projectId)}/metrics`));
  }

  compliance(projectId: string): Promise<ComplianceResponse> {
    return request(this.url(`/projects/${encodeURIComponent(projectId)}/compliance`));
  }

  plotDi(): Promise<PlotResponse> {
    return request(this.url("/plot/di"));
  }

  private post<T>(path: string, body: unknown): Promise<T> {
    return request(this.url(path), {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  build(phase: string, size: string): Promise<BuildResponse> {
    return this.post("/bbn/build", { phase, size });
  }

  query(phase: string, size: string, evidence: Record<string, string>): Promise<QueryResponse> {
    return this.post("/bbn/query", { phase, size, evidence });
  }
}
