// Wire types for the morphplay sync protocol. One JSON envelope per frame:
// {"payload": ..., "seq": N, "session": "...", "type": "..."}; the client
// sends hello / set_param / select_part / set_mode / reset / snapshot_request
// and receives scene / state_update / preview / snapshot / error.

export type Vec3 = [number, number, number];

export interface Envelope {
  type: string;
  session: string;
  seq: number | null;
  payload: Record<string, unknown>;
}

export interface PoseDoc {
  rotation: number[]; // 9 row-major entries
  translation: Vec3;
}

export interface PartDoc {
  id: string;
  name: string;
  bbox: { min: Vec3; max: Vec3 };
  pose: PoseDoc;
  mesh_ref?: string;
}

export interface SceneDoc {
  name: string;
  parts: PartDoc[];
  constraints: Record<string, { kind: string }>;
}

export interface SliderDef {
  kind: "slider";
  label: string;
  min: number;
  max: number;
  step: number;
  value: number;
}

export interface ToggleDef {
  kind: "toggle";
  label: string;
  value: boolean;
}

export interface IndexDef {
  kind: "index";
  label: string;
  count: number;
  value: number;
}

export type WidgetDef = SliderDef | ToggleDef | IndexDef;

export interface SelectionDoc {
  part_id: string;
  origin: Vec3;
  axes: [Vec3, Vec3, Vec3];
}

export interface StateUpdatePayload {
  params: Record<string, WidgetDef>;
  selection: SelectionDoc | null;
  seq: number;
}

export interface VerdictDoc {
  status: "feasible" | "infeasible";
  reason: string | null;
  detail: string;
}

export type ColorHint =
  | "axis-x"
  | "axis-y"
  | "axis-z"
  | "neutral"
  | "feasible"
  | "infeasible";

export interface AnnotationDoc {
  kind: "arrow" | "arc" | "triad" | "label";
  points: Vec3[];
  anchor: Vec3;
  text: string | null;
  color_hint: ColorHint;
}

export interface PreviewPayload {
  part_id: string;
  pose: PoseDoc;
  annotations: AnnotationDoc[];
  seq: number;
  verdict?: VerdictDoc; // absent in silent-verdict mode
}

export interface SnapshotPayload {
  mode: string;
  params: Record<string, number | boolean>;
  selection: SelectionDoc | null;
  seq: number;
  session: string;
  verdict: VerdictDoc | null;
}

export interface ErrorPayload {
  code: string;
  detail: string;
}

export function parseEnvelope(text: string): Envelope {
  const raw = JSON.parse(text) as Partial<Envelope>;
  if (typeof raw.type !== "string") throw new Error("frame without a type");
  return {
    type: raw.type,
    session: typeof raw.session === "string" ? raw.session : "",
    seq: typeof raw.seq === "number" ? raw.seq : null,
    payload: (raw.payload ?? {}) as Record<string, unknown>,
  };
}

export function clientMessage(type: string, payload: Record<string, unknown>): string {
  return JSON.stringify({ type, payload });
}

// Apply a rigid pose to a point: R p + t.
export function applyPose(pose: PoseDoc, p: Vec3): Vec3 {
  const r = pose.rotation;
  const t = pose.translation;
  return [
    r[0]! * p[0] + r[1]! * p[1] + r[2]! * p[2] + t[0],
    r[3]! * p[0] + r[4]! * p[1] + r[5]! * p[2] + t[1],
    r[6]! * p[0] + r[7]! * p[1] + r[8]! * p[2] + t[2],
  ];
}
