/**
 * Wire protocol version 1: single-line JSON messages, every message
 * carrying `v: 1`.  Unknown fields are ignored; decoding is defensive
 * because malformed frames must never crash the client.
 */

export const PROTOCOL_VERSION = 1;
export const BOARD_SIZE = 1000;

export type Transform = { position: [number, number]; scale: number; rotation: number };

export type DrawCommand =
  | { op: "curve"; points: [number, number][]; color: string; width: number }
  | { op: "line"; p0: [number, number]; p1: [number, number]; color: string; width: number }
  | { op: "oval"; center: [number, number]; rx: number; ry: number; color: string; filled: boolean }
  | { op: "text"; text: string; anchor: [number, number]; size: number; color: string }
  | { op: "push"; position: [number, number]; scale: number; rotation: number }
  | { op: "pop" };

export type ServerMessage =
  | { type: "frame"; v: number; tick: number; digest: string; drawlist: DrawCommand[] }
  | { type: "recognized"; v: number; name: string; sketch_type: string; score: number; bounds: [number, number, number, number] }
  | { type: "error"; v: number; code: string; text: string };

export type ClientMessage =
  | { type: "hello"; v: number; version: number }
  | { type: "pointer"; v: number; phase: "down" | "move" | "up"; x: number; y: number; tick?: number }
  | { type: "resume"; v: number; sketch: number; tick?: number }
  | { type: "confirm"; v: number; tick?: number }
  | { type: "spawn_numeric"; v: number; value: number; x: number; y: number; tick?: number };

export function hello(): ClientMessage {
  return { type: "hello", v: PROTOCOL_VERSION, version: PROTOCOL_VERSION };
}

export function encode(msg: ClientMessage): string {
  return JSON.stringify(msg);
}

const POINT = (p: unknown): p is [number, number] =>
  Array.isArray(p) && p.length === 2 && p.every((c) => typeof c === "number" && isFinite(c));

function isDrawCommand(c: unknown): c is DrawCommand {
  if (typeof c !== "object" || c === null) return false;
  const cmd = c as Record<string, unknown>;
  switch (cmd.op) {
    case "curve":
      return Array.isArray(cmd.points) && cmd.points.every(POINT) && typeof cmd.color === "string";
    case "line":
      return POINT(cmd.p0) && POINT(cmd.p1) && typeof cmd.color === "string";
    case "oval":
      return POINT(cmd.center) && typeof cmd.rx === "number" && typeof cmd.ry === "number";
    case "text":
      return typeof cmd.text === "string" && POINT(cmd.anchor) && typeof cmd.size === "number";
    case "push":
      return POINT(cmd.position) && typeof cmd.scale === "number" && typeof cmd.rotation === "number";
    case "pop":
      return true;
    default:
      return false;
  }
}

/** Decode one server message; null when the line is not usable. */
export function decode(raw: string): ServerMessage | null {
  let obj: unknown;
  try {
    obj = JSON.parse(raw);
  } catch {
    return null;
  }
  if (typeof obj !== "object" || obj === null) return null;
  const msg = obj as Record<string, unknown>;
  if (msg.type === "frame") {
    if (typeof msg.tick !== "number" || typeof msg.digest !== "string") return null;
    if (!Array.isArray(msg.drawlist) || !msg.drawlist.every(isDrawCommand)) return null;
    return msg as unknown as ServerMessage;
  }
  if (msg.type === "recognized") {
    if (typeof msg.name !== "string" || typeof msg.score !== "number") return null;
    if (!Array.isArray(msg.bounds) || msg.bounds.length !== 4) return null;
    return msg as unknown as ServerMessage;
  }
  if (msg.type === "error") {
    if (typeof msg.code !== "string") return null;
    return msg as unknown as ServerMessage;
  }
  return null;
}
