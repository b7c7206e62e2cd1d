// Canvas 2D scene renderer: parts as wireframe boxes, the previewed part at
// its preview pose, annotations per color hint. The camera is a client-local
// orbit (yaw/pitch/zoom) and is never synchronized.

import {
  AnnotationDoc,
  applyPose,
  ColorHint,
  PartDoc,
  PoseDoc,
  Vec3,
} from "./protocol.js";
import { ClientViewState } from "./store.js";

export interface Camera {
  yaw: number;
  pitch: number;
  zoom: number;
  target: Vec3;
}

export function defaultCamera(): Camera {
  return { yaw: -0.7, pitch: 0.45, zoom: 28, target: [8, 5, 4] };
}

const COLORS: Record<ColorHint, string> = {
  "axis-x": "#e05252",
  "axis-y": "#4caf50",
  "axis-z": "#4285f4",
  neutral: "#9aa0a6",
  feasible: "#1db954",
  infeasible: "#e53935",
};

export function project(camera: Camera, p: Vec3, width: number, height: number): [number, number] {
  const [tx, ty, tz] = camera.target;
  const x = p[0] - tx;
  const y = p[1] - ty;
  const z = p[2] - tz;
  const cy = Math.cos(camera.yaw);
  const sy = Math.sin(camera.yaw);
  const cp = Math.cos(camera.pitch);
  const sp = Math.sin(camera.pitch);
  const rx = cy * x + sy * y;
  const ry = -sy * x + cy * y;
  const sx = rx;
  const sz = cp * z - sp * ry;
  return [width / 2 + sx * camera.zoom, height / 2 - sz * camera.zoom];
}

function boxCorners(part: PartDoc, pose: PoseDoc): Vec3[] {
  const { min, max } = part.bbox;
  const corners: Vec3[] = [];
  for (const x of [min[0], max[0]]) {
    for (const y of [min[1], max[1]]) {
      for (const z of [min[2], max[2]]) {
        corners.push(applyPose(pose, [x, y, z]));
      }
    }
  }
  return corners;
}

const BOX_EDGES: [number, number][] = [
  [0, 1], [2, 3], [4, 5], [6, 7],
  [0, 2], [1, 3], [4, 6], [5, 7],
  [0, 4], [1, 5], [2, 6], [3, 7],
];

function stroke(
  ctx: CanvasRenderingContext2D,
  camera: Camera,
  points: Vec3[],
  color: string,
  width: number,
): void {
  const w = ctx.canvas.width;
  const h = ctx.canvas.height;
  ctx.strokeStyle = color;
  ctx.lineWidth = width;
  ctx.beginPath();
  points.forEach((p, i) => {
    const [x, y] = project(camera, p, w, h);
    if (i === 0) ctx.moveTo(x, y);
    else ctx.lineTo(x, y);
  });
  ctx.stroke();
}

function drawBox(
  ctx: CanvasRenderingContext2D,
  camera: Camera,
  part: PartDoc,
  pose: PoseDoc,
  color: string,
  width: number,
): void {
  const corners = boxCorners(part, pose);
  for (const [a, b] of BOX_EDGES) {
    stroke(ctx, camera, [corners[a]!, corners[b]!], color, width);
  }
}

function drawAnnotation(ctx: CanvasRenderingContext2D, camera: Camera, a: AnnotationDoc): void {
  const color = COLORS[a.color_hint];
  const w = ctx.canvas.width;
  const h = ctx.canvas.height;
  switch (a.kind) {
    case "arrow": {
      stroke(ctx, camera, a.points, color, 2);
      const [hx, hy] = project(camera, a.points[1]!, w, h);
      ctx.fillStyle = color;
      ctx.beginPath();
      ctx.arc(hx, hy, 4, 0, 2 * Math.PI);
      ctx.fill();
      break;
    }
    case "arc":
      stroke(ctx, camera, a.points, color, 2);
      break;
    case "triad":
      for (let i = 0; i < 3; i++) {
        const axisColor = COLORS[(["axis-x", "axis-y", "axis-z"] as const)[i]!];
        stroke(ctx, camera, [a.points[2 * i]!, a.points[2 * i + 1]!], axisColor, 2);
      }
      break;
    case "label": {
      const [x, y] = project(camera, a.anchor, w, h);
      ctx.fillStyle = color;
      ctx.font = "13px system-ui, sans-serif";
      ctx.fillText(a.text ?? "", x + 6, y - 6);
      break;
    }
  }
}

export function renderView(
  ctx: CanvasRenderingContext2D,
  camera: Camera,
  view: ClientViewState,
): void {
  ctx.clearRect(0, 0, ctx.canvas.width, ctx.canvas.height);
  if (view.scene === null) return;
  const previewId = view.preview?.part_id ?? null;
  const selectedId = view.selection?.part_id ?? null;
  for (const part of view.scene.parts) {
    if (part.id === previewId) continue; // drawn at its preview pose below
    const highlight = part.id === selectedId;
    drawBox(ctx, camera, part, part.pose, highlight ? "#ffb300" : "#5f6368", highlight ? 2 : 1);
  }
  if (view.preview !== null) {
    const part = view.scene.parts.find((p) => p.id === previewId);
    if (part !== undefined) {
      const color =
        view.verdict === null ? "#ffb300" : COLORS[view.verdict.status === "feasible" ? "feasible" : "infeasible"];
      drawBox(ctx, camera, part, view.preview.pose, color, 2.5);
    }
    for (const a of view.preview.annotations) drawAnnotation(ctx, camera, a);
  }
}
