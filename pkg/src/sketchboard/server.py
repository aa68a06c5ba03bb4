"""Wire-protocol server: one isolated engine session per connection.

Messages are single-line JSON over a WebSocket (the browser-compatible
socket transport); every message carries protocol version 1.  Frames stream
whenever the draw-list digest changes, with a once-per-second keepalive.
Malformed input gets an error reply and the session continues; only a
version mismatch in the handshake closes the connection.
"""

from __future__ import annotations

import asyncio
import json

from websockets.asyncio.server import serve as ws_serve
from websockets.exceptions import ConnectionClosed

from .drawlist import drawlist_digest, drawlist_to_jsonable
from .engine import Confirm, Engine, PointerEvent, ResumeBreakpoint, SpawnNumeric
from .recognizer import GlyphLibrary

PROTOCOL_VERSION = 1
TICKS_PER_SECOND = 60
KEEPALIVE_TICKS = 60


def _msg(**fields) -> str:
    fields.setdefault("v", PROTOCOL_VERSION)
    return json.dumps(fields, separators=(",", ":"))


def _error(code: str, text: str) -> str:
    return _msg(type="error", code=code, text=text)


class Session:
    """Protocol state for one connection."""

    def __init__(self, websocket, library: GlyphLibrary | None, realtime: bool):
        self.ws = websocket
        self.library = library
        self.realtime = realtime
        self.engine: Engine | None = None
        self.last_digest: int | None = None
        self.last_sent_tick = -KEEPALIVE_TICKS
        self.last_hint_key = None

    async def run(self) -> None:
        ticker: asyncio.Task | None = None
        try:
            async for raw in self.ws:
                reply = self.handle_message(raw)
                if reply is not None:
                    await self.ws.send(reply)
                if self.engine is not None and ticker is None:
                    ticker = asyncio.create_task(self._tick_loop())
                if self.engine is None and reply is not None and '"version"' in reply:
                    return  # version mismatch: error already sent, close
        except ConnectionClosed:
            pass
        finally:
            if ticker is not None:
                ticker.cancel()

    def handle_message(self, raw) -> str | None:
        """Parse one client message; returns an immediate reply or None."""
        try:
            if isinstance(raw, bytes):
                raw = raw.decode("utf-8")
            obj = json.loads(raw)
            if not isinstance(obj, dict):
                raise ValueError("message must be an object")
        except (ValueError, UnicodeDecodeError) as exc:
            return _error("parse", f"malformed message: {exc}")

        kind = obj.get("type")
        if self.engine is None:
            if kind != "hello":
                return _error("ordering", "expected hello first")
            if obj.get("version") != PROTOCOL_VERSION:
                return _error("version", f"server speaks version {PROTOCOL_VERSION}")
            self.engine = Engine(library=self.library)
            return None

        if kind == "hello":
            return _error("ordering", "session already started")
        if kind == "pointer":
            return self._pointer(obj)
        if kind == "resume":
            sketch = obj.get("sketch")
            if not isinstance(sketch, int):
                return _error("parse", "resume needs an integer sketch id")
            self._schedule(obj, ResumeBreakpoint(sketch=sketch))
            return None
        if kind == "confirm":
            self._schedule(obj, Confirm())
            return None
        if kind == "spawn_numeric":
            value = obj.get("value")
            if not isinstance(value, int) or isinstance(value, bool):
                return _error("parse", "spawn_numeric needs an integer value")
            x = obj.get("x", 100.0)
            y = obj.get("y", 100.0)
            if not all(isinstance(c, (int, float)) for c in (x, y)):
                return _error("parse", "spawn_numeric coordinates must be numbers")
            self._schedule(obj, SpawnNumeric(value=value, x=float(x), y=float(y)))
            return None
        return _error("unknown-type", f"unknown message type {kind!r}")

    def _pointer(self, obj: dict) -> str | None:
        phase = obj.get("phase")
        x, y = obj.get("x"), obj.get("y")
        if phase not in ("down", "move", "up"):
            return _error("parse", "pointer phase must be down|move|up")
        if not all(isinstance(c, (int, float)) and not isinstance(c, bool) for c in (x, y)):
            return _error("parse", "pointer coordinates must be numbers")
        self._schedule(obj, PointerEvent(phase=phase, x=float(x), y=float(y)))
        return None

    def _schedule(self, obj: dict, event) -> None:
        tick = obj.get("tick")
        if not isinstance(tick, int) or tick < self.engine.scene.tick:
            tick = self.engine.scene.tick
        self.engine.schedule(tick, event)

    def _frame_message(self) -> str | None:
        engine = self.engine
        drawlist = engine.render()
        digest = drawlist_digest(drawlist)
        tick = engine.scene.tick - 1
        if digest == self.last_digest and tick - self.last_sent_tick < KEEPALIVE_TICKS:
            return None
        self.last_digest = digest
        self.last_sent_tick = tick
        return _msg(
            type="frame",
            tick=tick,
            digest=f"{digest:016x}",
            drawlist=drawlist_to_jsonable(drawlist),
        )

    def _hint_message(self) -> str | None:
        hint = self.engine.recognition_hint()
        key = None
        if hint is not None:
            match, bounds = hint
            key = (match.template_name, match.score, bounds)
        if key == self.last_hint_key:
            return None
        self.last_hint_key = key
        if hint is None:
            return None
        match, bounds = hint
        return _msg(
            type="recognized",
            name=match.template_name,
            sketch_type=match.sketch_type,
            score=match.score,
            bounds=list(bounds),
        )

    def _work_remaining(self) -> bool:
        engine = self.engine
        if engine.scene.tick <= engine.last_scheduled_tick + KEEPALIVE_TICKS:
            return True
        if not engine.scene.op_queue.all_idle():
            return True
        # settle with one keepalive past the last scheduled event, so lazy
        # clients always observe a frame at or beyond their final input
        return self.last_sent_tick <= engine.last_scheduled_tick

    async def _tick_loop(self) -> None:
        loop = asyncio.get_running_loop()
        interval = 1.0 / TICKS_PER_SECOND
        next_time = loop.time()
        try:
            while True:
                if not self.realtime and not self._work_remaining():
                    # lazy mode: idle until new messages schedule more work
                    await asyncio.sleep(0.005)
                    continue
                self.engine.run_tick()
                frame = self._frame_message()
                if frame is not None:
                    await self.ws.send(frame)
                hint = self._hint_message()
                if hint is not None:
                    await self.ws.send(hint)
                if self.realtime:
                    next_time += interval
                    await asyncio.sleep(max(0.0, next_time - loop.time()))
                else:
                    await asyncio.sleep(0)
        except ConnectionClosed:
            pass


async def serve(
    port: int,
    library: GlyphLibrary | None = None,
    host: str = "127.0.0.1",
    realtime: bool = True,
    ready: asyncio.Event | None = None,
    port_box: list | None = None,
) -> None:
    """Accept connections until cancelled; each gets an isolated session."""

    async def handler(websocket):
        await Session(websocket, library, realtime).run()

    async with ws_serve(handler, host, port) as server:
        if port_box is not None:
            port_box.append(server.sockets[0].getsockname()[1])
        if ready is not None:
            ready.set()
        await asyncio.get_running_loop().create_future()
