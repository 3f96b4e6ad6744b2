// Scene construction: turn a snapshot into a flat draw list. Keeping
// this pure (no DOM) makes the visual rules unit-testable; render.ts
// only transcribes the scene into SVG elements.

import { layoutSnapshot } from "./layout.js";
import type { Snapshot } from "./protocol.js";

export const SCALE = 64;
export const NODE_RADIUS = 18;

export interface CircleSpec {
  key: number;
  cx: number;
  cy: number;
  fill: string;
  doubleRing: boolean;
  highlighted: boolean;
  label: string;
}

export interface SquareSpec {
  x: number;
  y: number;
  size: number;
  doubleRing: boolean;
  label: string;
}

export interface LineSpec {
  x1: number;
  y1: number;
  x2: number;
  y2: number;
}

export interface Scene {
  width: number;
  height: number;
  lines: LineSpec[];
  circles: CircleSpec[];
  squares: SquareSpec[];
  hint: string | null;
}

const FILL: Record<string, string> = {
  R: "#c0392b",
  B: "#1c1c1c",
  DB: "#4a4a4a",
};

export function buildScene(
  snapshot: Snapshot,
  highlightKey: number | null = null,
): Scene {
  if (snapshot.entries.length === 0) {
    return {
      width: 4 * SCALE,
      height: 2 * SCALE,
      lines: [],
      circles: [],
      squares: [],
      hint: "empty tree: insert a key or build a session",
    };
  }
  const layout = layoutSnapshot(snapshot);
  const pos = new Map(layout.nodes.map((n) => [n.key, n]));
  const colors = new Map(snapshot.entries.map((e) => [e.key, e.color]));

  const px = (x: number) => (x + 0.5) * SCALE;
  const py = (y: number) => (y + 0.5) * SCALE;

  const lines: LineSpec[] = layout.edges.map((edge) => {
    const a = pos.get(edge.fromKey);
    const b = pos.get(edge.toKey);
    if (!a || !b) throw new Error("scene: dangling edge");
    return { x1: px(a.x), y1: py(a.y), x2: px(b.x), y2: py(b.y) };
  });

  const squares: SquareSpec[] = layout.nils.map((nil) => {
    const parent = pos.get(nil.parentKey);
    if (parent) {
      lines.push({
        x1: px(parent.x),
        y1: py(parent.y),
        x2: px(nil.x),
        y2: py(nil.y),
      });
    }
    return {
      x: px(nil.x),
      y: py(nil.y),
      size: 14,
      doubleRing: nil.doubleBlack,
      label: nil.doubleBlack ? "NIL DB" : "NIL",
    };
  });

  const circles: CircleSpec[] = layout.nodes.map((node) => {
    const color = colors.get(node.key) ?? "B";
    return {
      key: node.key,
      cx: px(node.x),
      cy: py(node.y),
      fill: FILL[color] ?? FILL.B!,
      doubleRing: color === "DB",
      highlighted: node.key === highlightKey,
      label: String(node.key),
    };
  });

  return {
    width: (layout.width + 1) * SCALE,
    height: (layout.height + 1) * SCALE,
    lines,
    circles,
    squares,
    hint: null,
  };
}
