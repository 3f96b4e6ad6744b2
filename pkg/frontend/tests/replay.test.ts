// Playback semantics over the committed service fixtures. The T1 fixture
// is byte-for-byte what the service returns for the worked three-node
// deletion (the Python suite pins that); these tests pin what the UI
// derives from it.

import { readFileSync } from "node:fs";
import { describe, expect, it } from "vitest";

import {
  parseDeleteReport,
  snapshotsEqual,
  type DeleteReport,
} from "../src/protocol.js";
import {
  atEnd,
  currentStep,
  deriveSnapshot,
  finalBalanced,
  startPlayback,
  stepBack,
  stepForward,
} from "../src/replay.js";

function loadFixture(name: string): { raw: any; report: DeleteReport } {
  const url = new URL(`./fixtures/${name}`, import.meta.url);
  const raw = JSON.parse(readFileSync(url, "utf8"));
  return { raw, report: parseDeleteReport(raw.report) };
}

describe("T1 playback", () => {
  const { raw, report } = loadFixture("t1_report.json");

  it("has the worked step count and equation labels", () => {
    expect(report.trace.length).toBe(4);
    expect(report.trace.map((s) => s.eqUsed)).toEqual([
      "Eq2", "Eq3", "Eq1", "RootRule",
    ]);
  });

  it("parses the trace byte-for-byte from the service payload", () => {
    expect(report.trace).toEqual(raw.report.trace);
    expect(report.after).toEqual(raw.report.after);
  });

  it("shows the untouched tree at cursor 0", () => {
    expect(deriveSnapshot(report, 0)).toEqual(report.before);
    const colors = deriveSnapshot(report, 0).entries.map((e) => e.color);
    expect(colors).toEqual(["B", "B", "B"]);
  });

  it("walks the worked states", () => {
    const at1 = deriveSnapshot(report, 1);
    expect(at1.dbNil).toBeNull();                       // null leaf resolved
    expect(at1.entries.map((e) => e.key)).toEqual([20, 30]);
    const at2 = deriveSnapshot(report, 2);
    expect(at2.entries.find((e) => e.key === 20)?.color).toBe("R");
    const at3 = deriveSnapshot(report, 3);
    expect(at3.entries.find((e) => e.key === 30)?.color).toBe("DB");
    const at4 = deriveSnapshot(report, 4);
    expect(at4.entries.find((e) => e.key === 30)?.color).toBe("B");
  });

  it("derives the after snapshot at the final cursor", () => {
    const final = deriveSnapshot(report, report.trace.length);
    expect(snapshotsEqual(final, report.after)).toBe(true);
    expect(final).toEqual(report.after);
  });

  it("exposes the panel row and the balanced banner", () => {
    let state = startPlayback(report);
    state = stepForward(state);
    const step = currentStep(state);
    expect(step?.operation).toBe("DB - black = black");
    expect(step?.eqUsed).toBe("Eq2");
    expect(step?.changeFactor).toBe("-B");
    while (!atEnd(state)) state = stepForward(state);
    expect(finalBalanced(report)).toBe("YES");
    expect(report.trace[report.trace.length - 1]?.balanced).toBe("YES");
  });

  it("step back is the exact inverse and bounds are no-ops", () => {
    const start = startPlayback(report);
    expect(stepBack(start)).toBe(start);
    const forward = stepForward(start);
    expect(stepBack(forward)).toEqual(start);
    let state = start;
    for (let i = 0; i < 10; i += 1) state = stepForward(state);
    expect(state.cursor).toBe(report.trace.length);
    expect(stepForward(state)).toBe(state);
    expect(stepBack(stepForward(state))).toEqual(stepBack(state));
  });
});

describe("rotation playback", () => {
  const { report } = loadFixture("caseb_report.json");

  it("used the rotation fallback", () => {
    expect(report.usedRotationFallback).toBe(true);
    expect(report.trace.some((s) => s.snapshotAfter !== null)).toBe(true);
    expect(report.trace.some((s) => s.eqUsed === "RotFB")).toBe(true);
  });

  it("rebases on the embedded snapshots and still lands on after", () => {
    const final = deriveSnapshot(report, report.trace.length);
    expect(snapshotsEqual(final, report.after)).toBe(true);
  });

  it("every intermediate cursor yields a well-formed snapshot", () => {
    for (let cursor = 0; cursor <= report.trace.length; cursor += 1) {
      const snap = deriveSnapshot(report, cursor);
      const keys = snap.entries.map((e) => e.key);
      expect(new Set(keys).size).toBe(keys.length);
    }
  });
});

describe("empty trace playback", () => {
  const { report } = loadFixture("t1_report.json");

  it("single frame equals the after snapshot", () => {
    const red: DeleteReport = {
      ...report,
      trace: [],
      afterDetach: report.after,
    };
    expect(deriveSnapshot(red, 0)).toEqual(red.after);
    expect(finalBalanced(red)).toBe("YES");
  });
});
