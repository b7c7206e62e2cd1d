// Widget gestures -> protocol messages. Every gesture maps to exactly one
// set_param, and the raw input is clamped to the ParamDef mirror first, so an
// out-of-range value can never reach the server no matter what the DOM (or a
// fuzzer) hands us.

import { clientMessage, WidgetDef } from "./protocol.js";

export function clampToDef(def: WidgetDef, raw: unknown): number | boolean {
  if (def.kind === "toggle") return raw === true || raw === "true" || raw === 1;
  let v = typeof raw === "number" ? raw : Number(raw);
  if (def.kind === "index") {
    if (Number.isNaN(v)) v = 0;
    return Math.min(Math.max(Math.round(v), 0), Math.max(def.count - 1, 0));
  }
  if (Number.isNaN(v)) v = def.min;
  if (v >= def.max) return def.max; // max stays reachable on non-dividing steps
  if (v <= def.min) return def.min;
  const snapped = def.min + Math.round((v - def.min) / def.step) * def.step;
  return Math.min(Math.max(snapped, def.min), def.max);
}

export function gestureMessage(id: string, def: WidgetDef, raw: unknown): string {
  return clientMessage("set_param", { id, value: clampToDef(def, raw) });
}
