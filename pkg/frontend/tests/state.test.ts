import { describe, expect, it } from "vitest";

import {
  UNSET,
  applyError,
  applyResponse,
  evidenceOf,
  initialPanel,
  issueQuery,
  withLevels,
  withSelection,
} from "../src/state";
import type { QueryResponse } from "../src/types";

import buildFixture from "./fixtures/build_req_small.json";
import queryM from "./fixtures/query_req_small_m.json";
import queryPrior from "./fixtures/query_req_small_prior.json";

const levels = (buildFixture as { model: { levels: Record<string, string[]> } }).model.levels;
const responses = [queryPrior, queryM] as QueryResponse[];

function freshPanel() {
  return withLevels(initialPanel("req", "small"), levels);
}

describe("evidence selection", () => {
  it("starts with everything unset and sends empty evidence", () => {
    const panel = freshPanel();
    expect(Object.values(panel.selected).every((v) => v === UNSET)).toBe(true);
    expect(evidenceOf(panel)).toEqual({});
  });

  it("includes only explicitly chosen levels", () => {
    let panel = freshPanel();
    panel = withSelection(panel, "num_inspectors", "M");
    panel = withSelection(panel, "experience_level", UNSET);
    expect(evidenceOf(panel)).toEqual({ num_inspectors: "M" });
  });
});

describe("response sequencing", () => {
  it("applies the newest response and advances the history", () => {
    let panel = freshPanel();
    const q = issueQuery(panel);
    panel = applyResponse(q.state, q.seq, queryM.evidence, queryM.posterior);
    expect(panel.posterior).toEqual(queryM.posterior);
    expect(panel.history).toHaveLength(1);
    expect(panel.appliedSeq).toBe(q.seq);
  });

  it("drops a stale response once a newer query is in flight", () => {
    let panel = freshPanel();
    const first = issueQuery(panel);
    const second = issueQuery(first.state);
    panel = applyResponse(second.state, first.seq, queryPrior.evidence, queryPrior.posterior);
    expect(panel.posterior).toBeNull(); // stale: ignored
    panel = applyResponse(panel, second.seq, queryM.evidence, queryM.posterior);
    expect(panel.posterior).toEqual(queryM.posterior);
    expect(panel.history).toHaveLength(1); // only the applied response is recorded
  });

  it("never rewinds: an already-applied sequence cannot be reapplied", () => {
    let panel = freshPanel();
    const q = issueQuery(panel);
    panel = applyResponse(q.state, q.seq, queryM.evidence, queryM.posterior);
    const again = applyResponse(panel, q.seq, queryPrior.evidence, queryPrior.posterior);
    expect(again).toBe(panel);
  });
});

describe("errors", () => {
  it("keeps controls and the last posterior on a failed query", () => {
    let panel = freshPanel();
    let q = issueQuery(panel);
    panel = applyResponse(q.state, q.seq, queryM.evidence, queryM.posterior);
    panel = withSelection(panel, "num_inspectors", "H");
    q = issueQuery(panel);
    panel = applyError(q.state, q.seq, "That combination is impossible under the current model");
    expect(panel.error).toContain("impossible");
    expect(panel.posterior).toEqual(queryM.posterior); // previous result still shown
    expect(panel.selected.num_inspectors).toBe("H"); // controls preserved
  });

  it("ignores errors from superseded queries", () => {
    let panel = freshPanel();
    const first = issueQuery(panel);
    const second = issueQuery(first.state);
    panel = applyError(second.state, first.seq, "late failure");
    expect(panel.error).toBeNull();
    expect(second.seq).toBeGreaterThan(first.seq);
  });
});

describe("history", () => {
  it("is append-only across a session", () => {
    let panel = freshPanel();
    const seen: number[] = [];
    for (const response of [...responses, ...responses]) {
      const q = issueQuery(panel);
      panel = applyResponse(q.state, q.seq, response.evidence, response.posterior);
      seen.push(panel.history.length);
    }
    expect(seen).toEqual([1, 2, 3, 4]);
    expect(panel.history[1].evidence).toEqual(queryM.evidence);
  });

  it("replaying recorded history reproduces identical posteriors", () => {
    // a lookup standing in for the service: evidence -> recorded posterior
    const service = new Map(responses.map((r) => [JSON.stringify(r.evidence), r.posterior]));
    let panel = freshPanel();
    for (const response of responses) {
      const q = issueQuery(panel);
      panel = applyResponse(q.state, q.seq, response.evidence, response.posterior);
    }
    for (const entry of panel.history) {
      expect(service.get(JSON.stringify(entry.evidence))).toEqual(entry.posterior);
    }
  });
});
