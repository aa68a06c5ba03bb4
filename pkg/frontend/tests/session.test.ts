import { beforeEach, describe, expect, it } from "vitest";

import { ClientSession } from "../src/session.js";
import { FakeSocket, RecordingCanvas } from "./stubs.js";

function makeSession(widthPx = 500, heightPx = 500) {
  FakeSocket.instances.length = 0;
  const ctx = new RecordingCanvas();
  const events: { status: boolean[]; errors: string[]; hints: unknown[] } = {
    status: [],
    errors: [],
    hints: [],
  };
  let clock = 0;
  const session = new ClientSession(
    "ws://test",
    ctx,
    widthPx,
    heightPx,
    {
      onStatus: (c) => events.status.push(c),
      onError: (code) => events.errors.push(code),
      onHint: (h) => events.hints.push(h),
      now: () => clock,
    },
    (url) => new FakeSocket(url),
  );
  session.open();
  const socket = FakeSocket.instances[0];
  return { session, socket, ctx, events, tick: (ms: number) => (clock += ms) };
}

function frame(tick: number, drawlist: unknown[] = []) {
  return JSON.stringify({ type: "frame", v: 1, tick, digest: "00", drawlist });
}

describe("handshake and frames", () => {
  it("sends hello on connect", () => {
    const { socket } = makeSession();
    socket.connect();
    expect(JSON.parse(socket.sent[0]).type).toBe("hello");
  });

  it("renders the latest frame and ignores out-of-order ones", () => {
    const { session, socket } = makeSession();
    socket.connect();
    socket.receive(frame(5));
    socket.receive(frame(9));
    socket.receive(frame(7)); // stale: must be dropped
    expect(session.lastTick()).toBe(9);
    expect(session.framesRendered).toBe(2);
    expect(session.framesSkipped).toBe(1);
  });

  it("skips malformed frames and keeps going", () => {
    const { session, socket } = makeSession();
    socket.connect();
    socket.receive("garbage {{{");
    socket.receive(JSON.stringify({ type: "frame", v: 1, tick: 1, digest: "00", drawlist: [{ op: "warp" }] }));
    socket.receive(frame(2));
    expect(session.framesRendered).toBe(1);
    expect(session.lastTick()).toBe(2);
  });

  it("surfaces server errors", () => {
    const { socket, events } = makeSession();
    socket.connect();
    socket.receive(JSON.stringify({ type: "error", v: 1, code: "parse", text: "bad" }));
    expect(events.errors).toEqual(["parse"]);
  });
});

describe("pointer capture", () => {
  it("maps canvas center of a 500x500 canvas to board 500,500", () => {
    const { session, socket } = makeSession(500, 500);
    socket.connect();
    session.pointer("down", 250, 250);
    const msg = JSON.parse(socket.sent[1]);
    expect(msg).toMatchObject({ type: "pointer", phase: "down", x: 500, y: 500 });
  });

  it("sends k move messages in order for a k-sample drag", () => {
    const { session, socket } = makeSession();
    socket.connect();
    session.pointer("down", 10, 10);
    for (let i = 1; i <= 5; i++) session.pointer("move", 10 + i, 10);
    session.pointer("up", 16, 10);
    const kinds = socket.sent.slice(1).map((s) => JSON.parse(s).phase);
    expect(kinds).toEqual(["down", "move", "move", "move", "move", "move", "up"]);
    const xs = socket.sent.slice(2, 7).map((s) => JSON.parse(s).x);
    expect(xs).toEqual([22, 24, 26, 28, 30]);
  });

  it("drops events while disconnected", () => {
    const { session, socket, events } = makeSession();
    socket.connect();
    socket.drop();
    const sentBefore = socket.sent.length;
    expect(session.pointer("down", 10, 10)).toBe(false);
    expect(socket.sent.length).toBe(sentBefore);
    expect(events.status).toEqual([true, false]); // reconnect banner state
  });

  it("estimates the tick from the last frame plus elapsed time", () => {
    const { session, socket, tick } = makeSession();
    socket.connect();
    socket.receive(frame(120));
    tick(500); // half a second later: ~30 ticks
    session.pointer("down", 0, 0);
    const msg = JSON.parse(socket.sent.at(-1)!);
    expect(msg.tick).toBe(150);
  });
});

describe("recognition hints", () => {
  it("click inside the hint bounds sends confirm and clears the hint", () => {
    const { session, socket, events } = makeSession(1000, 1000);
    socket.connect();
    socket.receive(
      JSON.stringify({
        type: "recognized",
        v: 1,
        name: "8",
        sketch_type: "numeric",
        score: 0.01,
        bounds: [300, 300, 400, 400],
      }),
    );
    expect(events.hints).toHaveLength(1);
    expect(session.clickHint(50, 50)).toBe(false); // outside: not a confirm
    expect(session.clickHint(350, 350)).toBe(true);
    const last = JSON.parse(socket.sent.at(-1)!);
    expect(last.type).toBe("confirm");
    expect(events.hints.at(-1)).toBeNull();
  });
});
