/**
 * WebSocket transport with reconnect.  While disconnected, outgoing events
 * are dropped (never queued: stale gestures must not replay later) and the
 * session surfaces a banner state.
 */

import { ClientMessage, ServerMessage, decode, encode, hello } from "./protocol.js";

/** Minimal WebSocket surface so node tests can inject the `ws` package. */
export interface SocketLike {
  send(data: string): void;
  close(): void;
  addEventListener(type: "open" | "close" | "error", cb: () => void): void;
  addEventListener(type: "message", cb: (ev: { data: unknown }) => void): void;
  readyState: number;
}

export type SocketFactory = (url: string) => SocketLike;

export interface TransportEvents {
  message?: (msg: ServerMessage) => void;
  status?: (connected: boolean) => void;
}

const OPEN = 1;

export class Transport {
  private socket: SocketLike | null = null;
  private connected = false;
  private closed = false;
  private reconnectDelayMs = 500;

  constructor(
    private url: string,
    private events: TransportEvents,
    private makeSocket: SocketFactory,
    private reconnect = true,
  ) {}

  open(): void {
    this.closed = false;
    this.dial();
  }

  private dial(): void {
    const socket = this.makeSocket(this.url);
    this.socket = socket;
    socket.addEventListener("open", () => {
      this.connected = true;
      socket.send(encode(hello()));
      this.events.status?.(true);
    });
    socket.addEventListener("message", (ev) => {
      const text = typeof ev.data === "string" ? ev.data : String(ev.data);
      for (const line of text.split("\n")) {
        if (!line.trim()) continue;
        const msg = decode(line);
        if (msg !== null) this.events.message?.(msg);
      }
    });
    const drop = () => {
      if (this.socket !== socket) return;
      const wasConnected = this.connected;
      this.connected = false;
      this.socket = null;
      if (wasConnected) this.events.status?.(false);
      if (!this.closed && this.reconnect) {
        setTimeout(() => !this.closed && this.dial(), this.reconnectDelayMs);
      }
    };
    socket.addEventListener("close", drop);
    socket.addEventListener("error", drop);
  }

  /** Send if connected; dropped otherwise (returns whether it went out). */
  send(msg: ClientMessage): boolean {
    if (!this.connected || this.socket === null || this.socket.readyState !== OPEN) {
      return false;
    }
    this.socket.send(encode(msg));
    return true;
  }

  isConnected(): boolean {
    return this.connected;
  }

  close(): void {
    this.closed = true;
    this.socket?.close();
  }
}
