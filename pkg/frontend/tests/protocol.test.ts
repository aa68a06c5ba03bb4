import { describe, expect, it } from "vitest";

import { decode, encode, hello } from "../src/protocol.js";

describe("encode", () => {
  it("hello carries protocol version 1 twice over", () => {
    const msg = JSON.parse(encode(hello()));
    expect(msg.type).toBe("hello");
    expect(msg.v).toBe(1);
    expect(msg.version).toBe(1);
  });

  it("messages are single lines", () => {
    expect(encode(hello())).not.toContain("\n");
  });
});

describe("decode", () => {
  it("round-trips a frame", () => {
    const frame = {
      type: "frame",
      v: 1,
      tick: 7,
      digest: "0123456789abcdef",
      drawlist: [
        { op: "push", position: [400, 400], scale: 2, rotation: 0 },
        { op: "text", text: "8", anchor: [0, 0], size: 36, color: "#e6edf3" },
        { op: "pop" },
      ],
    };
    const decoded = decode(JSON.stringify(frame));
    expect(decoded).toEqual(frame);
  });

  it("accepts recognized and error messages", () => {
    expect(
      decode('{"type":"recognized","v":1,"name":"8","sketch_type":"numeric","score":0.01,"bounds":[1,2,3,4]}'),
    ).not.toBeNull();
    expect(decode('{"type":"error","v":1,"code":"parse","text":"nope"}')).not.toBeNull();
  });

  it.each([
    "not json at all",
    "42",
    "[]",
    '{"type":"frame","v":1}',
    '{"type":"frame","v":1,"tick":"x","digest":"00","drawlist":[]}',
    '{"type":"frame","v":1,"tick":0,"digest":"00","drawlist":[{"op":"warp"}]}',
    '{"type":"frame","v":1,"tick":0,"digest":"00","drawlist":[{"op":"line","p0":[1],"p1":[2,3],"color":"x"}]}',
    '{"type":"mystery","v":1}',
  ])("rejects malformed input %#", (raw) => {
    expect(decode(raw)).toBeNull();
  });
});
