// Tiered binary-tree layout from a snapshot: x is the in-order rank
// (entries are key-sorted), y the depth. NIL leaves get small slots
// under their parent. Pure geometry; rendering applies the scale.

import type { Snapshot } from "./protocol.js";

export interface NodePosition {
  key: number;
  x: number;
  y: number;
}

export interface NilPosition {
  parentKey: number;
  side: "left" | "right";
  x: number;
  y: number;
  doubleBlack: boolean;
}

export interface Edge {
  fromKey: number;
  toKey: number;
}

export interface Layout {
  nodes: NodePosition[];
  nils: NilPosition[];
  edges: Edge[];
  width: number;
  height: number;
}

export function layoutSnapshot(snapshot: Snapshot): Layout {
  const entries = [...snapshot.entries].sort((a, b) => a.key - b.key);
  const byKey = new Map(entries.map((e) => [e.key, e]));
  const depths = new Map<number, number>();

  function depthOf(key: number): number {
    const cached = depths.get(key);
    if (cached !== undefined) return cached;
    const entry = byKey.get(key);
    if (!entry) throw new Error(`layout: unknown key ${key}`);
    const d = entry.parent === null ? 0 : depthOf(entry.parent) + 1;
    depths.set(key, d);
    return d;
  }

  const nodes: NodePosition[] = entries.map((e, rank) => ({
    key: e.key,
    x: rank,
    y: depthOf(e.key),
  }));
  const xOf = new Map(nodes.map((n) => [n.key, n.x]));

  const children = new Map<number, Set<string>>();
  const edges: Edge[] = [];
  for (const e of entries) {
    if (e.parent === null) continue;
    edges.push({ fromKey: e.parent, toKey: e.key });
    let sides = children.get(e.parent);
    if (!sides) {
      sides = new Set();
      children.set(e.parent, sides);
    }
    sides.add(e.side);
  }

  const nils: NilPosition[] = [];
  for (const e of entries) {
    const taken = children.get(e.key) ?? new Set<string>();
    for (const side of ["left", "right"] as const) {
      if (taken.has(side)) continue;
      const dx = side === "left" ? -0.35 : 0.35;
      nils.push({
        parentKey: e.key,
        side,
        x: (xOf.get(e.key) ?? 0) + dx,
        y: depthOf(e.key) + 0.8,
        doubleBlack:
          snapshot.dbNil !== null &&
          snapshot.dbNil.parent === e.key &&
          snapshot.dbNil.side === side,
      });
    }
  }

  const maxDepth = nodes.reduce((m, n) => Math.max(m, n.y), 0);
  return {
    nodes,
    nils,
    edges,
    width: Math.max(1, entries.length),
    height: maxDepth + 1.4,
  };
}
