// WebSocket lifecycle: hello on open, snapshot_request after a reconnect,
// incoming frames fed to the view state in arrival order. The socket factory
// is injectable so tests can use the `ws` package instead of the browser
// WebSocket.

import { clientMessage, parseEnvelope } from "./protocol.js";
import { ClientViewState } from "./store.js";

// Handler params are `any` so both the browser WebSocket and the `ws`
// package instances satisfy the shape structurally.
export interface SocketLike {
  send(data: string): void;
  close(): void;
  onopen: ((ev?: any) => void) | null;
  onmessage: ((ev: any) => void) | null;
  onclose: ((ev?: any) => void) | null;
  onerror: ((ev?: any) => void) | null;
}

export type SocketFactory = (url: string) => SocketLike;

export class LiveConnection {
  readonly view = new ClientViewState();
  onChange: (() => void) | null = null;

  private socket: SocketLike | null = null;
  private wasConnected = false;

  constructor(
    private readonly url: string,
    private readonly factory: SocketFactory,
    private readonly clientName = "web-client",
  ) {}

  connect(): void {
    this.view.status = "connecting";
    this.notify();
    let socket: SocketLike;
    try {
      socket = this.factory(this.url);
    } catch {
      this.view.status = "disconnected";
      this.notify();
      return;
    }
    this.socket = socket;
    socket.onopen = () => {
      this.view.status = "connected";
      socket.send(clientMessage("hello", { client_name: this.clientName }));
      if (this.wasConnected) {
        // dropped and came back: the snapshot restores the verdict state
        socket.send(clientMessage("snapshot_request", {}));
      }
      this.wasConnected = true;
      this.notify();
    };
    socket.onmessage = (ev: { data: unknown }) => {
      this.view.apply(parseEnvelope(String(ev.data)));
      this.notify();
    };
    socket.onclose = () => {
      this.view.status = "disconnected";
      this.notify();
    };
    socket.onerror = () => {
      this.view.status = "disconnected";
      this.notify();
    };
  }

  /** Send one raw protocol message (already JSON). */
  send(frame: string): void {
    if (this.view.status !== "connected" || this.socket === null) return;
    this.socket.send(frame);
  }

  disconnect(): void {
    this.socket?.close();
  }

  private notify(): void {
    this.onChange?.();
  }
}
