// Thin fetch client for the session service. Service error bodies are
// surfaced as ServiceError so the app can show them inline.

import {
  parseDeleteReport,
  parseSessionInfo,
  parseSnapshot,
  type DeleteReport,
  type SessionInfo,
  type Snapshot,
} from "./protocol.js";

export class ServiceError extends Error {
  readonly code: string;
  readonly body: Record<string, unknown>;

  constructor(code: string, body: Record<string, unknown>) {
    super(code);
    this.code = code;
    this.body = body;
  }
}

async function request(
  base: string,
  path: string,
  init?: RequestInit,
): Promise<unknown> {
  const resp = await fetch(`${base}${path}`, {
    headers: { "Content-Type": "application/json" },
    ...init,
  });
  if (resp.status === 204) return null;
  const body = (await resp.json()) as Record<string, unknown>;
  if (!resp.ok) {
    const code = typeof body.error === "string" ? body.error : `HTTP ${resp.status}`;
    throw new ServiceError(code, body);
  }
  return body;
}

export class SessionClient {
  constructor(
    readonly base: string,
    readonly id: string,
    readonly mode: string,
  ) {}

  static async create(
    base: string,
    options: { keys?: number[]; mode?: string; snapshot?: Snapshot },
  ): Promise<{ client: SessionClient; snapshot: Snapshot }> {
    const body = await request(base, "/sessions", {
      method: "POST",
      body: JSON.stringify({
        keys: options.keys ?? [],
        mode: options.mode ?? "hybrid",
        ...(options.snapshot ? { snapshot: options.snapshot } : {}),
      }),
    });
    const info: SessionInfo = parseSessionInfo(body);
    return {
      client: new SessionClient(base, info.id, info.mode),
      snapshot: info.snapshot,
    };
  }

  async insert(key: number): Promise<Snapshot> {
    const body = (await request(this.base, `/sessions/${this.id}/insert`, {
      method: "POST",
      body: JSON.stringify({ key }),
    })) as Record<string, unknown>;
    return parseSnapshot(body.snapshot);
  }

  async delete(key: number): Promise<DeleteReport> {
    const body = (await request(this.base, `/sessions/${this.id}/delete`, {
      method: "POST",
      body: JSON.stringify({ key }),
    })) as Record<string, unknown>;
    return parseDeleteReport(body.report);
  }

  async drop(): Promise<void> {
    await request(this.base, `/sessions/${this.id}`, { method: "DELETE" });
  }
}
