// Application wiring: session controls, deletion playback, step panel.
// One active session per tab; controls are disabled while a request is
// in flight so mutations stay serialized.

import { SessionClient, ServiceError } from "./api.js";
import type { DeleteReport, Snapshot } from "./protocol.js";
import { snapshotsEqual } from "./protocol.js";
import {
  atEnd,
  currentStep,
  deriveSnapshot,
  finalBalanced,
  startPlayback,
  stepBack,
  stepForward,
  type PlaybackState,
} from "./replay.js";
import { buildScene } from "./scene.js";
import { renderScene } from "./render.js";

// The worked three-node scenario, for one-click classroom demos.
const WORKED_SNAPSHOT: Snapshot = {
  entries: [
    { key: 20, color: "B", parent: 30, side: "left" },
    { key: 30, color: "B", parent: null, side: "root" },
    { key: 35, color: "B", parent: 30, side: "right" },
  ],
  dbNil: null,
};

function byId<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

class App {
  private session: SessionClient | null = null;
  private snapshot: Snapshot = { entries: [], dbNil: null };
  private playback: PlaybackState | null = null;
  private busy = false;

  private readonly canvas = byId<HTMLDivElement>("canvas");
  private readonly notice = byId<HTMLDivElement>("notice");
  private readonly panel = byId<HTMLDivElement>("step-panel");
  private readonly banner = byId<HTMLDivElement>("banner");
  private readonly sessionLabel = byId<HTMLSpanElement>("session-label");

  constructor() {
    byId<HTMLButtonElement>("btn-start").addEventListener("click", () => {
      void this.startSession(null);
    });
    byId<HTMLButtonElement>("btn-worked").addEventListener("click", () => {
      void this.startSession(WORKED_SNAPSHOT);
    });
    byId<HTMLButtonElement>("btn-insert").addEventListener("click", () => {
      void this.insert();
    });
    byId<HTMLButtonElement>("btn-delete").addEventListener("click", () => {
      void this.delete();
    });
    byId<HTMLButtonElement>("btn-back").addEventListener("click", () => {
      this.seek(stepBack);
    });
    byId<HTMLButtonElement>("btn-forward").addEventListener("click", () => {
      this.seek(stepForward);
    });
    this.draw();
  }

  private base(): string {
    return byId<HTMLInputElement>("service-url").value.replace(/\/+$/, "");
  }

  private setBusy(busy: boolean): void {
    this.busy = busy;
    for (const button of document.querySelectorAll("button")) {
      button.disabled = busy;
    }
  }

  private showError(message: string): void {
    this.notice.textContent = message;
    this.notice.className = "notice error";
  }

  private showInfo(message: string): void {
    this.notice.textContent = message;
    this.notice.className = "notice";
  }

  private async guard(action: () => Promise<void>): Promise<void> {
    if (this.busy) return;
    this.setBusy(true);
    this.showInfo("");
    try {
      await action();
    } catch (err) {
      if (err instanceof ServiceError) {
        this.showError(describeServiceError(err));
      } else {
        this.showError(String(err));
      }
    } finally {
      this.setBusy(false);
      this.draw();
    }
  }

  private async startSession(snapshot: Snapshot | null): Promise<void> {
    await this.guard(async () => {
      const keysField = byId<HTMLInputElement>("keys").value.trim();
      const keys = snapshot
        ? []
        : keysField === ""
          ? []
          : keysField.split(",").map((part) => {
              const n = Number(part.trim());
              if (!Number.isInteger(n)) throw new Error(`bad key: ${part}`);
              return n;
            });
      const mode = byId<HTMLSelectElement>("mode").value;
      const created = await SessionClient.create(this.base(), {
        keys,
        mode,
        ...(snapshot ? { snapshot } : {}),
      });
      this.session = created.client;
      this.snapshot = created.snapshot;
      this.playback = null;
      this.sessionLabel.textContent =
        `${created.client.id.slice(0, 8)}… (${created.client.mode})`;
    });
  }

  private async insert(): Promise<void> {
    const session = this.session;
    if (!session) {
      this.showError("start a session first");
      return;
    }
    await this.guard(async () => {
      const key = readKey("op-key");
      this.snapshot = await session.insert(key);
      this.playback = null;
      this.showInfo(`inserted ${key}`);
    });
  }

  private async delete(): Promise<void> {
    const session = this.session;
    if (!session) {
      this.showError("start a session first");
      return;
    }
    await this.guard(async () => {
      const key = readKey("op-key");
      const report = await session.delete(key);
      this.snapshot = report.after;
      this.playback = startPlayback(report);
      this.showInfo(
        `deleted ${key}: ${report.trace.length} steps ` +
        `(${report.deletionCase}); step through below`,
      );
    });
  }

  private seek(move: (s: PlaybackState) => PlaybackState): void {
    if (!this.playback) return;
    this.playback = move(this.playback);
    this.draw();
  }

  private draw(): void {
    let shown = this.snapshot;
    let highlight: number | null = null;
    if (this.playback) {
      shown = deriveSnapshot(this.playback.report, this.playback.cursor);
      highlight = currentStep(this.playback)?.operatedKey ?? null;
    }
    renderScene(buildScene(shown, highlight), this.canvas);
    this.drawPanel();
  }

  private drawPanel(): void {
    const playback = this.playback;
    if (!playback) {
      this.panel.textContent = "no deletion in playback";
      this.banner.textContent = "";
      return;
    }
    const report = playback.report;
    const step = currentStep(playback);
    const total = report.trace.length;
    if (!step) {
      this.panel.textContent =
        total === 0
          ? `deletion of ${report.key} needed no recoloring`
          : `ready: step 0 of ${total} (tree before deleting ${report.key})`;
    } else {
      this.panel.replaceChildren(
        line(`step ${step.step} of ${total}: ${step.description}`),
        line(`operation: ${step.operation}`),
        line(`rule: ${step.eqUsed}   change factor: ${step.changeFactor}`),
        line(`balanced: ${step.balanced}`),
      );
    }
    if (atEnd(playback)) {
      const ok = snapshotsEqual(
        deriveSnapshot(report, report.trace.length),
        report.after,
      );
      this.banner.textContent =
        `Tree balanced: ${finalBalanced(report)}` +
        (ok ? "" : " (replay mismatch!)");
      this.banner.className = "banner done";
    } else {
      this.banner.textContent = "";
      this.banner.className = "banner";
    }
  }
}

function line(text: string): HTMLDivElement {
  const div = document.createElement("div");
  div.textContent = text;
  return div;
}

function readKey(id: string): number {
  const raw = byId<HTMLInputElement>(id).value.trim();
  const n = Number(raw);
  if (!Number.isInteger(n)) throw new Error(`bad key: ${raw || "(empty)"}`);
  return n;
}

function describeServiceError(err: ServiceError): string {
  switch (err.code) {
    case "DuplicateKey":
      return `duplicate key ${String(err.body.key)}: already in the tree`;
    case "KeyNotFound":
      return `key ${String(err.body.key)} is not in the tree`;
    case "UnsupportedCase": {
      const which = err.body.case === "B"
        ? "sibling is red"
        : "sibling is black with a red child";
      return `${which}: rotation required (outside the symbolic rule set); ` +
        `sibling node ${String(err.body.node)}. Retry in hybrid mode.`;
    }
    case "UnknownSession":
      return "session expired or unknown: start a new one";
    default:
      return `service error: ${err.code}`;
  }
}

new App();
