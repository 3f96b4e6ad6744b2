import { readFileSync } from "node:fs";
import { describe, expect, it } from "vitest";

import { parseDeleteReport } from "../src/protocol.js";
import { deriveSnapshot } from "../src/replay.js";
import { buildScene } from "../src/scene.js";

function t1Report() {
  const url = new URL("./fixtures/t1_report.json", import.meta.url);
  return parseDeleteReport(JSON.parse(readFileSync(url, "utf8")).report);
}

describe("scene", () => {
  it("empty snapshot renders a hint", () => {
    const scene = buildScene({ entries: [], dbNil: null });
    expect(scene.hint).toMatch(/empty tree/);
    expect(scene.circles).toEqual([]);
  });

  it("nodes are filled by color and NIL squares drawn", () => {
    const report = t1Report();
    const scene = buildScene(report.before);
    expect(scene.circles.length).toBe(3);
    expect(scene.squares.length).toBe(4);
    expect(new Set(scene.circles.map((c) => c.fill)).size).toBe(1);
    const at2 = buildScene(deriveSnapshot(report, 2));
    const red = at2.circles.find((c) => c.key === 20);
    expect(red?.fill).not.toBe(at2.circles.find((c) => c.key === 30)?.fill);
  });

  it("double-black node mid-playback gets a double ring", () => {
    const report = t1Report();
    const scene = buildScene(deriveSnapshot(report, 3));
    const db = scene.circles.find((c) => c.key === 30);
    expect(db?.doubleRing).toBe(true);
  });

  it("double-black NIL is a double-ringed square", () => {
    const report = t1Report();
    const scene = buildScene(report.afterDetach);
    const marked = scene.squares.filter((s) => s.doubleRing);
    expect(marked.length).toBe(1);
    expect(marked[0]?.label).toBe("NIL DB");
  });

  it("highlights the operated node", () => {
    const report = t1Report();
    const scene = buildScene(deriveSnapshot(report, 2), 20);
    expect(scene.circles.find((c) => c.key === 20)?.highlighted).toBe(true);
    expect(scene.circles.find((c) => c.key === 30)?.highlighted).toBe(false);
  });
});
