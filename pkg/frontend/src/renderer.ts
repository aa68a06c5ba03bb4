/**
 * Replays a frame's draw list onto a 2D canvas context.  Rendering is
 * stateless per frame: the canvas is cleared, commands run in order, and
 * transform push/pop map onto context save/restore.
 */

import { BOARD_SIZE, DrawCommand } from "./protocol.js";

/** The slice of CanvasRenderingContext2D the renderer uses (stubbed in tests). */
export interface Canvas2D {
  save(): void;
  restore(): void;
  translate(x: number, y: number): void;
  rotate(r: number): void;
  scale(x: number, y: number): void;
  beginPath(): void;
  moveTo(x: number, y: number): void;
  lineTo(x: number, y: number): void;
  quadraticCurveTo(cx: number, cy: number, x: number, y: number): void;
  ellipse(x: number, y: number, rx: number, ry: number, rot: number, a0: number, a1: number): void;
  stroke(): void;
  fill(): void;
  fillText(text: string, x: number, y: number): void;
  clearRect(x: number, y: number, w: number, h: number): void;
  strokeStyle: string | unknown;
  fillStyle: string | unknown;
  lineWidth: number;
  font: string;
  textAlign: string;
  textBaseline: string;
}

function smoothedPolyline(ctx: Canvas2D, points: [number, number][]): void {
  ctx.beginPath();
  ctx.moveTo(points[0][0], points[0][1]);
  if (points.length === 2) {
    ctx.lineTo(points[1][0], points[1][1]);
  } else {
    // quadratic segments through midpoints read as a hand-drawn curve
    for (let i = 1; i < points.length - 1; i++) {
      const [x0, y0] = points[i];
      const [x1, y1] = points[i + 1];
      ctx.quadraticCurveTo(x0, y0, (x0 + x1) / 2, (y0 + y1) / 2);
    }
    const last = points[points.length - 1];
    ctx.lineTo(last[0], last[1]);
  }
  ctx.stroke();
}

export class FrameRenderer {
  constructor(
    private ctx: Canvas2D,
    private widthPx: number,
    private heightPx: number,
  ) {}

  resize(widthPx: number, heightPx: number): void {
    this.widthPx = widthPx;
    this.heightPx = heightPx;
  }

  /** Board units to pixels (the board is square; letterbox by min side). */
  pixelsPerUnit(): number {
    return Math.min(this.widthPx, this.heightPx) / BOARD_SIZE;
  }

  render(drawlist: DrawCommand[]): void {
    const ctx = this.ctx;
    ctx.clearRect(0, 0, this.widthPx, this.heightPx);
    ctx.save();
    const k = this.pixelsPerUnit();
    ctx.scale(k, k);
    let depth = 0;
    for (const cmd of drawlist) {
      switch (cmd.op) {
        case "push":
          ctx.save();
          depth++;
          ctx.translate(cmd.position[0], cmd.position[1]);
          ctx.rotate(cmd.rotation);
          ctx.scale(cmd.scale, cmd.scale);
          break;
        case "pop":
          if (depth > 0) {
            ctx.restore();
            depth--;
          }
          break;
        case "curve":
          if (cmd.points.length >= 2) {
            ctx.strokeStyle = cmd.color;
            ctx.lineWidth = cmd.width;
            smoothedPolyline(ctx, cmd.points);
          }
          break;
        case "line":
          ctx.strokeStyle = cmd.color;
          ctx.lineWidth = cmd.width;
          ctx.beginPath();
          ctx.moveTo(cmd.p0[0], cmd.p0[1]);
          ctx.lineTo(cmd.p1[0], cmd.p1[1]);
          ctx.stroke();
          break;
        case "oval":
          ctx.beginPath();
          ctx.ellipse(cmd.center[0], cmd.center[1], cmd.rx, cmd.ry, 0, 0, Math.PI * 2);
          if (cmd.filled) {
            ctx.fillStyle = cmd.color;
            ctx.fill();
          } else {
            ctx.strokeStyle = cmd.color;
            ctx.lineWidth = 1;
            ctx.stroke();
          }
          break;
        case "text":
          ctx.fillStyle = cmd.color;
          ctx.font = `${cmd.size}px sans-serif`;
          ctx.textAlign = "center";
          ctx.textBaseline = "middle";
          ctx.fillText(cmd.text, cmd.anchor[0], cmd.anchor[1]);
          break;
      }
    }
    while (depth-- > 0) ctx.restore();
    ctx.restore();
  }
}
