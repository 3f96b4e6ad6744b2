// Client-side trace replay. The UI does no tree logic of its own: every
// color shown comes from a snapshot or a trace row, per the replay rule
// in docs/protocol.md (the physical removal and double-black formation
// accompany the first row).

import type { DeleteReport, Snapshot, TraceStep } from "./protocol.js";

export interface PlaybackState {
  report: DeleteReport;
  cursor: number; // 0 .. trace.length
}

function applyStep(snapshot: Snapshot, step: TraceStep): Snapshot {
  if (step.snapshotAfter !== null) {
    return step.snapshotAfter; // rotation rows rebase the whole structure
  }
  if (step.operatedKey === null) {
    return { entries: snapshot.entries, dbNil: null }; // null-leaf row
  }
  const key = step.operatedKey;
  return {
    entries: snapshot.entries.map((e) =>
      e.key === key ? { ...e, color: step.finalColorCode } : e,
    ),
    dbNil: snapshot.dbNil,
  };
}

export function deriveSnapshot(report: DeleteReport, cursor: number): Snapshot {
  if (cursor <= 0 && report.trace.length > 0) {
    return report.before;
  }
  let state = report.afterDetach;
  for (const step of report.trace.slice(0, Math.max(0, cursor))) {
    state = applyStep(state, step);
  }
  return state;
}

export function startPlayback(report: DeleteReport): PlaybackState {
  return { report, cursor: 0 };
}

export function stepForward(state: PlaybackState): PlaybackState {
  if (state.cursor >= state.report.trace.length) return state;
  return { report: state.report, cursor: state.cursor + 1 };
}

export function stepBack(state: PlaybackState): PlaybackState {
  if (state.cursor <= 0) return state;
  return { report: state.report, cursor: state.cursor - 1 };
}

export function atEnd(state: PlaybackState): boolean {
  return state.cursor >= state.report.trace.length;
}

/** The row the cursor just applied (panel content), if any. */
export function currentStep(state: PlaybackState): TraceStep | null {
  if (state.cursor === 0) return null;
  return state.report.trace[state.cursor - 1] ?? null;
}

/** Final balanced flag for the end-of-playback banner. An empty trace
 * means the deletion needed no recoloring; the tree is balanced. */
export function finalBalanced(report: DeleteReport): "YES" | "NO" {
  const last = report.trace[report.trace.length - 1];
  return last ? last.balanced : "YES";
}
