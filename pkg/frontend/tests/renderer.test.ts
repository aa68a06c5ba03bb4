import { describe, expect, it } from "vitest";

import { DrawCommand } from "../src/protocol.js";
import { FrameRenderer } from "../src/renderer.js";
import { RecordingCanvas } from "./stubs.js";

const SAMPLE: DrawCommand[] = [
  { op: "push", position: [400, 300], scale: 2, rotation: 0.25 },
  { op: "line", p0: [-10, 0], p1: [10, 0], color: "#fff", width: 2 },
  { op: "oval", center: [0, 0], rx: 7, ry: 7, color: "#1f6feb", filled: true },
  { op: "text", text: "8", anchor: [0, 0], size: 36, color: "#e6edf3" },
  { op: "pop" },
  { op: "curve", points: [[10, 10], [50, 60], [90, 20]], color: "#8b949e", width: 2 },
];

describe("FrameRenderer", () => {
  it("rendering the same frame twice produces identical traces", () => {
    const a = new RecordingCanvas();
    const b = new RecordingCanvas();
    new FrameRenderer(a, 800, 800).render(SAMPLE);
    const rb = new FrameRenderer(b, 800, 800);
    rb.render(SAMPLE);
    expect(a.log).toEqual(b.log);
    // and a re-render on the same renderer instance matches too
    const before = [...b.log];
    b.log.length = 0;
    rb.render(SAMPLE);
    expect(b.log).toEqual(before);
  });

  it("clears the board first and balances save/restore", () => {
    const ctx = new RecordingCanvas();
    new FrameRenderer(ctx, 800, 800).render(SAMPLE);
    expect(ctx.log[0]).toBe("clearRect(0,0,800,800)");
    const saves = ctx.log.filter((l) => l === "save()").length;
    const restores = ctx.log.filter((l) => l === "restore()").length;
    expect(saves).toBe(restores);
  });

  it("empty drawlist just clears the board", () => {
    const ctx = new RecordingCanvas();
    new FrameRenderer(ctx, 500, 500).render([]);
    expect(ctx.log.filter((l) => l.startsWith("clearRect"))).toHaveLength(1);
    expect(ctx.log.some((l) => l.startsWith("stroke") || l.startsWith("fill"))).toBe(false);
  });

  it("scales board units to the canvas size", () => {
    const ctx = new RecordingCanvas();
    new FrameRenderer(ctx, 500, 500).render([]);
    expect(ctx.log).toContain("scale(0.5,0.5)");
  });

  it("survives unbalanced pops without corrupting the context", () => {
    const ctx = new RecordingCanvas();
    new FrameRenderer(ctx, 800, 800).render([{ op: "pop" }, { op: "pop" }] as DrawCommand[]);
    const saves = ctx.log.filter((l) => l === "save()").length;
    const restores = ctx.log.filter((l) => l === "restore()").length;
    expect(saves).toBe(restores);
  });

  it("transform stack applies before sketch-local commands", () => {
    const ctx = new RecordingCanvas();
    new FrameRenderer(ctx, 1000, 1000).render(SAMPLE);
    const t = ctx.log.indexOf("translate(400,300)");
    const line = ctx.log.findIndex((l) => l.startsWith("moveTo(-10,0)"));
    expect(t).toBeGreaterThan(-1);
    expect(line).toBeGreaterThan(t);
  });
});
