// Wire types for the session service (docs/protocol.md, docs/schemas/).
// Parsers throw on malformed payloads so errors surface at the boundary.

export type ColorCode = "R" | "B" | "DB";
export type Side = "left" | "right" | "root";

export interface SnapshotEntry {
  key: number;
  color: ColorCode;
  parent: number | null;
  side: Side;
}

export interface DbNil {
  parent: number;
  side: "left" | "right";
}

export interface Snapshot {
  entries: SnapshotEntry[];
  dbNil: DbNil | null;
}

export interface TraceStep {
  step: number;
  description: string;
  operatedNode: string;
  operatedKey: number | null;
  initialColor: ColorCode;
  operation: string;
  eqUsed: string;
  changeFactor: string;
  finalColor: string;
  finalColorCode: ColorCode;
  balanced: "YES" | "NO";
  snapshotAfter: Snapshot | null;
}

export interface DeleteReport {
  key: number;
  deletionCase: string;
  siblingCases: string[];
  mode: string;
  usedRotationFallback: boolean;
  before: Snapshot;
  afterDetach: Snapshot;
  after: Snapshot;
  trace: TraceStep[];
}

export interface SessionInfo {
  id: string;
  mode: string;
  snapshot: Snapshot;
}

export class ProtocolError extends Error {}

const COLORS: ReadonlySet<string> = new Set(["R", "B", "DB"]);
const SIDES: ReadonlySet<string> = new Set(["left", "right", "root"]);

function fail(context: string): never {
  throw new ProtocolError(`malformed payload: ${context}`);
}

function obj(x: unknown, context: string): Record<string, unknown> {
  if (typeof x !== "object" || x === null || Array.isArray(x)) fail(context);
  return x as Record<string, unknown>;
}

function num(x: unknown, context: string): number {
  if (typeof x !== "number" || !Number.isFinite(x)) fail(context);
  return x;
}

function str(x: unknown, context: string): string {
  if (typeof x !== "string") fail(context);
  return x;
}

export function parseSnapshot(x: unknown): Snapshot {
  const o = obj(x, "snapshot");
  if (!Array.isArray(o.entries)) fail("snapshot.entries");
  const entries = o.entries.map((raw, i): SnapshotEntry => {
    const e = obj(raw, `entry ${i}`);
    const color = str(e.color, "entry.color");
    const side = str(e.side, "entry.side");
    if (!COLORS.has(color)) fail(`entry color ${color}`);
    if (!SIDES.has(side)) fail(`entry side ${side}`);
    const parent = e.parent === null ? null : num(e.parent, "entry.parent");
    return {
      key: num(e.key, "entry.key"),
      color: color as ColorCode,
      parent,
      side: side as Side,
    };
  });
  let dbNil: DbNil | null = null;
  if (o.dbNil !== null && o.dbNil !== undefined) {
    const d = obj(o.dbNil, "dbNil");
    const side = str(d.side, "dbNil.side");
    if (side !== "left" && side !== "right") fail(`dbNil side ${side}`);
    dbNil = { parent: num(d.parent, "dbNil.parent"), side };
  }
  return { entries, dbNil };
}

export function parseTraceStep(x: unknown): TraceStep {
  const o = obj(x, "trace step");
  const initialColor = str(o.initialColor, "initialColor");
  const finalColorCode = str(o.finalColorCode, "finalColorCode");
  const balanced = str(o.balanced, "balanced");
  if (!COLORS.has(initialColor)) fail(`initialColor ${initialColor}`);
  if (!COLORS.has(finalColorCode)) fail(`finalColorCode ${finalColorCode}`);
  if (balanced !== "YES" && balanced !== "NO") fail(`balanced ${balanced}`);
  return {
    step: num(o.step, "step"),
    description: str(o.description, "description"),
    operatedNode: str(o.operatedNode, "operatedNode"),
    operatedKey: o.operatedKey === null ? null : num(o.operatedKey, "operatedKey"),
    initialColor: initialColor as ColorCode,
    operation: str(o.operation, "operation"),
    eqUsed: str(o.eqUsed, "eqUsed"),
    changeFactor: str(o.changeFactor, "changeFactor"),
    finalColor: str(o.finalColor, "finalColor"),
    finalColorCode: finalColorCode as ColorCode,
    balanced,
    snapshotAfter:
      o.snapshotAfter === null || o.snapshotAfter === undefined
        ? null
        : parseSnapshot(o.snapshotAfter),
  };
}

export function parseDeleteReport(x: unknown): DeleteReport {
  const o = obj(x, "delete report");
  if (!Array.isArray(o.trace)) fail("report.trace");
  if (!Array.isArray(o.siblingCases)) fail("report.siblingCases");
  return {
    key: num(o.key, "report.key"),
    deletionCase: str(o.deletionCase, "report.deletionCase"),
    siblingCases: o.siblingCases.map((c) => str(c, "siblingCase")),
    mode: str(o.mode, "report.mode"),
    usedRotationFallback: Boolean(o.usedRotationFallback),
    before: parseSnapshot(o.before),
    afterDetach: parseSnapshot(o.afterDetach),
    after: parseSnapshot(o.after),
    trace: o.trace.map(parseTraceStep),
  };
}

export function parseSessionInfo(x: unknown): SessionInfo {
  const o = obj(x, "session");
  return {
    id: str(o.id, "session.id"),
    mode: str(o.mode, "session.mode"),
    snapshot: parseSnapshot(o.snapshot),
  };
}

/** Canonical serialized form: entries sorted by key (the service already
 * sends them sorted; normalizing keeps equality checks honest). */
export function normalizeSnapshot(s: Snapshot): Snapshot {
  return {
    entries: [...s.entries].sort((a, b) => a.key - b.key),
    dbNil: s.dbNil ? { ...s.dbNil } : null,
  };
}

export function snapshotsEqual(a: Snapshot, b: Snapshot): boolean {
  return (
    JSON.stringify(normalizeSnapshot(a)) === JSON.stringify(normalizeSnapshot(b))
  );
}
