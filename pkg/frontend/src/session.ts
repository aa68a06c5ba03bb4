/**
 * ClientSession glues transport, renderer, and pointer capture together:
 * it renders only the newest frame, forwards pointer traces in board
 * coordinates with a tick estimate, and overlays recognition hints whose
 * click sends the confirming message.
 */

import { BOARD_SIZE, ClientMessage, PROTOCOL_VERSION, ServerMessage } from "./protocol.js";
import { Canvas2D, FrameRenderer } from "./renderer.js";
import { SocketFactory, Transport } from "./transport.js";

export interface Hint {
  name: string;
  score: number;
  bounds: [number, number, number, number];
}

export interface SessionHooks {
  onStatus?: (connected: boolean) => void;
  onHint?: (hint: Hint | null) => void;
  onError?: (code: string, text: string) => void;
  now?: () => number; // injectable clock for tests
}

const MS_PER_TICK = 1000 / 60;

export class ClientSession {
  readonly renderer: FrameRenderer;
  private transport: Transport;
  private lastFrameTick = -1;
  private lastFrameAt = 0;
  private hint: Hint | null = null;
  private now: () => number;
  framesRendered = 0;
  framesSkipped = 0;

  constructor(
    url: string,
    ctx: Canvas2D,
    private widthPx: number,
    private heightPx: number,
    private hooks: SessionHooks,
    makeSocket: SocketFactory,
  ) {
    this.renderer = new FrameRenderer(ctx, widthPx, heightPx);
    this.now = hooks.now ?? (() => Date.now());
    this.transport = new Transport(
      url,
      {
        message: (msg) => this.onMessage(msg),
        status: (connected) => hooks.onStatus?.(connected),
      },
      makeSocket,
    );
  }

  open(): void {
    this.transport.open();
  }

  close(): void {
    this.transport.close();
  }

  isConnected(): boolean {
    return this.transport.isConnected();
  }

  lastTick(): number {
    return this.lastFrameTick;
  }

  /** The engine tick the next input will land on, give or take latency. */
  tickEstimate(): number {
    if (this.lastFrameTick < 0) return 0;
    const elapsed = this.now() - this.lastFrameAt;
    return this.lastFrameTick + Math.max(0, Math.round(elapsed / MS_PER_TICK));
  }

  onMessage(msg: ServerMessage): void {
    if (msg.type === "frame") {
      if (msg.tick <= this.lastFrameTick) {
        this.framesSkipped++;
        return; // never render out of order
      }
      this.lastFrameTick = msg.tick;
      this.lastFrameAt = this.now();
      this.renderer.render(msg.drawlist);
      this.framesRendered++;
    } else if (msg.type === "recognized") {
      this.hint = { name: msg.name, score: msg.score, bounds: msg.bounds };
      this.hooks.onHint?.(this.hint);
    } else if (msg.type === "error") {
      this.hooks.onError?.(msg.code, msg.text);
    }
  }

  /** Canvas pixel coordinates to board units. */
  toBoard(px: number, py: number): [number, number] {
    const k = Math.min(this.widthPx, this.heightPx) / BOARD_SIZE;
    return [px / k, py / k];
  }

  pointer(phase: "down" | "move" | "up", px: number, py: number): boolean {
    const [x, y] = this.toBoard(px, py);
    return this.send({
      type: "pointer",
      v: PROTOCOL_VERSION,
      phase,
      x,
      y,
      tick: this.tickEstimate(),
    });
  }

  /** Click on the recognition hint overlay: the confirming click. */
  clickHint(px: number, py: number): boolean {
    if (this.hint === null) return false;
    const [x, y] = this.toBoard(px, py);
    const [x0, y0, x1, y1] = this.hint.bounds;
    if (x < x0 || x > x1 || y < y0 || y > y1) return false;
    this.hint = null;
    this.hooks.onHint?.(null);
    return this.send({ type: "confirm", v: PROTOCOL_VERSION, tick: this.tickEstimate() });
  }

  resumeBreakpoint(sketch: number): boolean {
    return this.send({
      type: "resume",
      v: PROTOCOL_VERSION,
      sketch,
      tick: this.tickEstimate(),
    });
  }

  spawnNumeric(value: number, x: number, y: number): boolean {
    return this.send({
      type: "spawn_numeric",
      v: PROTOCOL_VERSION,
      value,
      x,
      y,
      tick: this.tickEstimate(),
    });
  }

  private send(msg: ClientMessage): boolean {
    // disconnected sends are dropped by design; the banner tells the user
    return this.transport.send(msg);
  }
}
