/** What-if panel state: pure data plus pure transition functions, so the
 * sequencing and history rules are unit-testable without a DOM. */

export const UNSET = "unset";

export interface HistoryEntry {
  phase: string;
  size: string;
  evidence: Record<string, string>;
  posterior: Record<string, number>;
}

export interface WhatIfPanelState {
  phase: string;
  size: string;
  /** node -> offered levels, as served by the model build response */
  levels: Record<string, string[]>;
  /** node -> chosen level or "unset" */
  selected: Record<string, string>;
  posterior: Record<string, number> | null;
  history: HistoryEntry[];
  /** sequence number of the newest issued query */
  issuedSeq: number;
  /** sequence number of the response currently shown */
  appliedSeq: number;
  error: string | null;
}

export function initialPanel(phase: string, size: string): WhatIfPanelState {
  return {
    phase,
    size,
    levels: {},
    selected: {},
    posterior: null,
    history: [],
    issuedSeq: 0,
    appliedSeq: 0,
    error: null,
  };
}

export function withLevels(
  state: WhatIfPanelState,
  levels: Record<string, string[]>,
): WhatIfPanelState {
  const selected: Record<string, string> = {};
  for (const node of Object.keys(levels)) {
    selected[node] = state.selected[node] ?? UNSET;
  }
  return { ...state, levels, selected };
}

export function withSelection(
  state: WhatIfPanelState,
  node: string,
  level: string,
): WhatIfPanelState {
  return { ...state, selected: { ...state.selected, [node]: level } };
}

/** Evidence to send: only nodes with an explicit level. */
export function evidenceOf(state: WhatIfPanelState): Record<string, string> {
  const evidence: Record<string, string> = {};
  for (const [node, level] of Object.entries(state.selected)) {
    if (level !== UNSET) evidence[node] = level;
  }
  return evidence;
}

/** Mark a query as issued; its sequence number tags the eventual response. */
export function issueQuery(state: WhatIfPanelState): { state: WhatIfPanelState; seq: number } {
  const seq = state.issuedSeq + 1;
  return { state: { ...state, issuedSeq: seq }, seq };
}

/** Apply a response unless a newer query has been issued since; stale
 * responses are dropped and the history stays append-only. */
export function applyResponse(
  state: WhatIfPanelState,
  seq: number,
  evidence: Record<string, string>,
  posterior: Record<string, number>,
): WhatIfPanelState {
  if (seq !== state.issuedSeq || seq <= state.appliedSeq) {
    return state;
  }
  return {
    ...state,
    posterior,
    appliedSeq: seq,
    error: null,
    history: [
      ...state.history,
      { phase: state.phase, size: state.size, evidence, posterior },
    ],
  };
}

/** A failed query keeps the controls and the last posterior; only the error
 * banner changes. */
export function applyError(
  state: WhatIfPanelState,
  seq: number,
  message: string,
): WhatIfPanelState {
  if (seq !== state.issuedSeq) {
    return state;
  }
  return { ...state, error: message };
}
