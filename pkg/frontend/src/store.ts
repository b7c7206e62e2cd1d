// Client view state: a pure reflection of server messages in seq order.
// The client is never authoritative; frames older than the newest seen seq
// are dropped (state_update and preview produced by one change share a seq,
// so "stale" means strictly smaller).

import {
  Envelope,
  PreviewPayload,
  SceneDoc,
  SelectionDoc,
  StateUpdatePayload,
  VerdictDoc,
  WidgetDef,
} from "./protocol.js";

export type ConnectionStatus = "idle" | "connecting" | "connected" | "disconnected";

export class ClientViewState {
  status: ConnectionStatus = "idle";
  scene: SceneDoc | null = null;
  params: Record<string, WidgetDef> | null = null;
  selection: SelectionDoc | null = null;
  preview: PreviewPayload | null = null;
  verdict: VerdictDoc | null = null;
  verdictVisible = false;
  lastError: { code: string; detail: string } | null = null;
  highestSeq = -1;

  /** Verdict of every rendered preview, in order ("feasible" or the reason). */
  readonly verdictLog: string[] = [];

  /** Apply one server frame; returns false when dropped as stale. */
  apply(env: Envelope): boolean {
    if (env.type === "error") {
      const p = env.payload as { code?: string; detail?: string };
      this.lastError = { code: p.code ?? "unknown", detail: p.detail ?? "" };
      return true;
    }
    if (env.seq !== null && env.seq < this.highestSeq) return false;
    if (env.seq !== null) this.highestSeq = env.seq;

    switch (env.type) {
      case "scene":
        this.scene = env.payload as unknown as SceneDoc;
        return true;
      case "state_update": {
        const p = env.payload as unknown as StateUpdatePayload;
        this.params = p.params;
        this.selection = p.selection;
        return true;
      }
      case "preview": {
        const p = env.payload as unknown as PreviewPayload;
        this.preview = p;
        this.verdict = p.verdict ?? null;
        this.verdictVisible = p.verdict !== undefined;
        this.verdictLog.push(
          p.verdict === undefined
            ? "hidden"
            : p.verdict.reason ?? p.verdict.status,
        );
        return true;
      }
      case "snapshot": {
        const p = env.payload as { verdict?: VerdictDoc | null };
        if (p.verdict != null) {
          this.verdict = p.verdict;
          this.verdictVisible = true;
        }
        return true;
      }
      default:
        return true; // unknown server frames are ignored but not stale
    }
  }
}
