// DOM bootstrap: connection form, control panel, verdict banner, canvas.

import { LiveConnection } from "./connection.js";
import { gestureMessage } from "./controls.js";
import { WidgetDef } from "./protocol.js";
import { Camera, defaultCamera, renderView } from "./render.js";

const app = document.getElementById("app")!;
app.innerHTML = `
  <header>
    <input id="url" value="ws://127.0.0.1:8765" size="28">
    <button id="connect">Connect</button>
    <span id="status" class="status">idle</span>
  </header>
  <main>
    <canvas id="view" width="900" height="600"></canvas>
    <aside>
      <div id="verdict" class="verdict" hidden></div>
      <div id="error" class="error" hidden></div>
      <form id="panel"></form>
    </aside>
  </main>
`;

const canvas = document.getElementById("view") as HTMLCanvasElement;
const ctx = canvas.getContext("2d")!;
const statusEl = document.getElementById("status")!;
const verdictEl = document.getElementById("verdict")!;
const errorEl = document.getElementById("error")!;
const panel = document.getElementById("panel") as HTMLFormElement;
const connectBtn = document.getElementById("connect") as HTMLButtonElement;
const urlInput = document.getElementById("url") as HTMLInputElement;

const camera: Camera = defaultCamera();
let connection: LiveConnection | null = null;
let panelSignature = "";

function emitGesture(id: string, def: WidgetDef, raw: unknown): void {
  connection?.send(gestureMessage(id, def, raw));
}

function buildPanel(params: Record<string, WidgetDef>): void {
  panel.innerHTML = "";
  for (const [id, def] of Object.entries(params)) {
    const row = document.createElement("label");
    row.className = "row";
    const caption = document.createElement("span");
    caption.textContent = def.label;
    row.appendChild(caption);
    if (def.kind === "slider") {
      const input = document.createElement("input");
      input.type = "range";
      input.min = String(def.min);
      input.max = String(def.max);
      input.step = String(def.step);
      input.value = String(def.value);
      const readout = document.createElement("output");
      readout.textContent = String(def.value);
      input.oninput = () => emitGesture(id, def, input.valueAsNumber);
      row.append(input, readout);
    } else if (def.kind === "toggle") {
      const input = document.createElement("input");
      input.type = "checkbox";
      input.checked = def.value;
      input.onchange = () => emitGesture(id, def, input.checked);
      row.appendChild(input);
    } else {
      const dec = document.createElement("button");
      const out = document.createElement("output");
      const inc = document.createElement("button");
      dec.type = "button";
      inc.type = "button";
      dec.textContent = "−";
      inc.textContent = "+";
      out.textContent = `${def.value} / ${def.count - 1}`;
      dec.onclick = () => emitGesture(id, def, def.value - 1);
      inc.onclick = () => emitGesture(id, def, def.value + 1);
      row.append(dec, out, inc);
    }
    panel.appendChild(row);
  }
}

function refreshPanelValues(params: Record<string, WidgetDef>): void {
  const rows = Array.from(panel.querySelectorAll(".row"));
  Object.values(params).forEach((def, i) => {
    const row = rows[i];
    if (row === undefined) return;
    const out = row.querySelector("output");
    const input = row.querySelector("input");
    if (def.kind === "slider" && input instanceof HTMLInputElement) {
      input.value = String(def.value);
      if (out !== null) out.textContent = String(def.value);
    } else if (def.kind === "toggle" && input instanceof HTMLInputElement) {
      input.checked = def.value;
    } else if (def.kind === "index" && out !== null) {
      out.textContent = `${def.value} / ${def.count - 1}`;
    }
  });
}

function redraw(): void {
  if (connection === null) return;
  const view = connection.view;
  statusEl.textContent = view.status;
  statusEl.className = `status ${view.status}`;
  connectBtn.textContent = view.status === "disconnected" ? "Reconnect" : "Connect";

  if (view.params !== null) {
    const signature = JSON.stringify(Object.keys(view.params));
    if (signature !== panelSignature) {
      panelSignature = signature;
      buildPanel(view.params);
    } else {
      refreshPanelValues(view.params);
    }
  }

  verdictEl.hidden = !view.verdictVisible || view.verdict === null;
  if (view.verdict !== null) {
    verdictEl.textContent =
      view.verdict.status === "feasible"
        ? "feasible"
        : `infeasible: ${view.verdict.reason ?? ""}`;
    verdictEl.className = `verdict ${view.verdict.status}`;
  }
  errorEl.hidden = view.lastError === null;
  if (view.lastError !== null) {
    errorEl.textContent = `${view.lastError.code}: ${view.lastError.detail}`;
  }
  renderView(ctx, camera, view);
}

function connect(): void {
  connection?.disconnect();
  connection = new LiveConnection(urlInput.value, (url) => new WebSocket(url));
  connection.onChange = redraw;
  connection.connect();
}

connectBtn.onclick = connect;

let dragging = false;
let lastX = 0;
let lastY = 0;
canvas.onmousedown = (ev) => {
  dragging = true;
  lastX = ev.clientX;
  lastY = ev.clientY;
};
window.onmouseup = () => {
  dragging = false;
};
window.onmousemove = (ev) => {
  if (!dragging) return;
  camera.yaw += (ev.clientX - lastX) * 0.008;
  camera.pitch = Math.min(Math.max(camera.pitch + (ev.clientY - lastY) * 0.008, -1.4), 1.4);
  lastX = ev.clientX;
  lastY = ev.clientY;
  redraw();
};
canvas.onwheel = (ev) => {
  ev.preventDefault();
  camera.zoom = Math.min(Math.max(camera.zoom * (ev.deltaY < 0 ? 1.1 : 0.9), 4), 200);
  redraw();
};
