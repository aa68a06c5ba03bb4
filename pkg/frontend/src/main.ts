/**
 * Browser entry point: binds a ClientSession to the page canvas, wires
 * pointer events, and shows the reconnect banner and recognition hints.
 */

import { ClientSession } from "./session.js";

function start(): void {
  const canvas = document.getElementById("board") as HTMLCanvasElement;
  const banner = document.getElementById("banner") as HTMLElement;
  const hintBox = document.getElementById("hint") as HTMLElement;
  const ctx = canvas.getContext("2d");
  if (ctx === null) throw new Error("canvas 2d context unavailable");

  const url = `ws://${location.hostname}:${location.port || 8765}`;
  const session = new ClientSession(
    url,
    ctx,
    canvas.width,
    canvas.height,
    {
      onStatus: (connected) => {
        banner.style.display = connected ? "none" : "block";
      },
      onHint: (hint) => {
        if (hint === null) {
          hintBox.style.display = "none";
          return;
        }
        const k = Math.min(canvas.width, canvas.height) / 1000;
        hintBox.textContent = `${hint.name}? click to place`;
        hintBox.style.left = `${hint.bounds[0] * k}px`;
        hintBox.style.top = `${hint.bounds[1] * k - 24}px`;
        hintBox.style.display = "block";
      },
      onError: (code, text) => console.warn(`server error ${code}: ${text}`),
    },
    (wsUrl) => new WebSocket(wsUrl) as never,
  );
  session.open();

  let down = false;
  const pos = (ev: PointerEvent): [number, number] => {
    const rect = canvas.getBoundingClientRect();
    return [
      ((ev.clientX - rect.left) * canvas.width) / rect.width,
      ((ev.clientY - rect.top) * canvas.height) / rect.height,
    ];
  };
  canvas.addEventListener("pointerdown", (ev) => {
    const [px, py] = pos(ev);
    if (session.clickHint(px, py)) return;
    down = true;
    session.pointer("down", px, py);
  });
  canvas.addEventListener("pointermove", (ev) => {
    if (!down) return;
    const [px, py] = pos(ev);
    session.pointer("move", px, py);
  });
  const up = (ev: PointerEvent) => {
    if (!down) return;
    down = false;
    const [px, py] = pos(ev);
    session.pointer("up", px, py);
  };
  canvas.addEventListener("pointerup", up);
  canvas.addEventListener("pointerleave", up);
}

start();
