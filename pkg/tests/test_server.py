import asyncio
import json
import random

import pytest
from websockets.asyncio.client import connect
from websockets.exceptions import ConnectionClosed

from sketchboard.server import serve
from sketchboard.session import parse_script, run_script
from test_session import ScriptBuilder, fig8_script


async def start_test_server(realtime=False):
    ready = asyncio.Event()
    port_box: list[int] = []
    task = asyncio.create_task(serve(0, realtime=realtime, ready=ready, port_box=port_box))
    await asyncio.wait_for(ready.wait(), timeout=5)
    return task, port_box[0]


async def send(ws, **fields):
    fields.setdefault("v", 1)
    await ws.send(json.dumps(fields))


async def recv_json(ws, timeout=10):
    raw = await asyncio.wait_for(ws.recv(), timeout=timeout)
    return json.loads(raw)


async def recv_type(ws, wanted, timeout=10):
    while True:
        msg = await recv_json(ws, timeout)
        if msg["type"] == wanted:
            return msg


def run(coro):
    return asyncio.run(coro)


class TestHandshake:
    def test_hello_yields_first_frame(self):
        async def scenario():
            task, port = await start_test_server()
            try:
                async with connect(f"ws://127.0.0.1:{port}") as ws:
                    await send(ws, type="hello", version=1)
                    frame = await recv_type(ws, "frame")
                    assert frame["tick"] == 0
                    assert frame["drawlist"] == []
                    assert frame["v"] == 1
            finally:
                task.cancel()

        run(scenario())

    def test_version_mismatch_errors_and_closes(self):
        async def scenario():
            task, port = await start_test_server()
            try:
                async with connect(f"ws://127.0.0.1:{port}") as ws:
                    await send(ws, type="hello", version=2)
                    msg = await recv_json(ws)
                    assert msg["type"] == "error" and msg["code"] == "version"
                    with pytest.raises(ConnectionClosed):
                        await asyncio.wait_for(ws.recv(), timeout=5)
            finally:
                task.cancel()

        run(scenario())

    def test_message_before_hello_rejected_session_alive(self):
        async def scenario():
            task, port = await start_test_server()
            try:
                async with connect(f"ws://127.0.0.1:{port}") as ws:
                    await send(ws, type="pointer", phase="down", x=1, y=2)
                    msg = await recv_json(ws)
                    assert msg["type"] == "error" and msg["code"] == "ordering"
                    await send(ws, type="hello", version=1)
                    frame = await recv_type(ws, "frame")
                    assert frame["tick"] == 0
            finally:
                task.cancel()

        run(scenario())


class TestRobustness:
    def test_garbage_line_errors_session_continues(self):
        async def scenario():
            task, port = await start_test_server()
            try:
                async with connect(f"ws://127.0.0.1:{port}") as ws:
                    await send(ws, type="hello", version=1)
                    await recv_type(ws, "frame")
                    await ws.send("this is not json {{{")
                    msg = await recv_type(ws, "error")
                    assert msg["code"] == "parse"
                    await send(ws, type="spawn_numeric", value=7, x=500, y=500)
                    frame = await recv_type(ws, "frame")
                    assert any(c.get("text") == "7" for c in frame["drawlist"])
            finally:
                task.cancel()

        run(scenario())

    def test_unknown_type_errors_session_continues(self):
        async def scenario():
            task, port = await start_test_server()
            try:
                async with connect(f"ws://127.0.0.1:{port}") as ws:
                    await send(ws, type="hello", version=1)
                    await recv_type(ws, "frame")
                    await send(ws, type="teleport", x=1)
                    msg = await recv_type(ws, "error")
                    assert msg["code"] == "unknown-type"
            finally:
                task.cancel()

        run(scenario())

    def test_fuzzed_messages_never_kill_the_session(self):
        rng = random.Random(99)

        async def scenario():
            task, port = await start_test_server()
            try:
                async with connect(f"ws://127.0.0.1:{port}") as ws:
                    await send(ws, type="hello", version=1)
                    await recv_type(ws, "frame")
                    for _ in range(60):
                        roll = rng.random()
                        if roll < 0.4:
                            blob = bytes(rng.randrange(256) for _ in range(rng.randrange(1, 40)))
                            await ws.send(blob.decode("utf-8", errors="replace"))
                        elif roll < 0.7:
                            await ws.send(json.dumps(rng.choice([
                                [], 42, {"type": rng.random()},
                                {"type": "pointer", "phase": "down", "x": "NaN", "y": None},
                                {"type": "resume", "sketch": "zero"},
                                {"type": "spawn_numeric", "value": True},
                            ])))
                        else:
                            await ws.send(json.dumps({"type": "pointer", "phase": "move", "x": 1, "y": 2}))
                    # session must still work end to end
                    await send(ws, type="spawn_numeric", value=3, x=400, y=400)
                    frame = await recv_type(ws, "frame")
                    while not any(c.get("text") == "3" for c in frame["drawlist"]):
                        frame = await recv_type(ws, "frame")
            finally:
                task.cancel()

        run(scenario())


class TestRecognitionHints:
    def test_glyph_over_wire_produces_hint(self):
        async def scenario():
            task, port = await start_test_server()
            try:
                async with connect(f"ws://127.0.0.1:{port}") as ws:
                    await send(ws, type="hello", version=1)
                    await recv_type(ws, "frame")
                    b = ScriptBuilder()
                    b.glyph("8", 10, offset=(300.0, 300.0))
                    for line in b.lines:
                        await send(ws, **line)
                    hint = await recv_type(ws, "recognized")
                    assert hint["name"] == "8"
                    assert hint["sketch_type"] == "numeric"
                    assert len(hint["bounds"]) == 4
            finally:
                task.cancel()

        run(scenario())


class TestScriptEquivalence:
    def test_wire_session_matches_run_script_digests(self):
        b, end = fig8_script()
        # shift everything far enough ahead that every message is scheduled
        # before its tick even under worst-case task interleaving (the lazy
        # engine can advance at most one tick per message processed)
        base = 1000
        for line in b.lines:
            line["tick"] += base
        end += base
        last_event = max(line["tick"] for line in b.lines)
        script = parse_script(b.text())
        reference = {f.tick: f.digest_hex() for f in run_script(script, max_tick=end + 200)}

        async def scenario():
            task, port = await start_test_server()
            received: dict[int, str] = {}
            try:
                async with connect(f"ws://127.0.0.1:{port}") as ws:
                    await send(ws, type="hello", version=1)
                    for line in b.lines:
                        await send(ws, **line)
                    while True:
                        msg = await recv_json(ws, timeout=30)
                        if msg["type"] != "frame":
                            continue
                        received[msg["tick"]] = msg["digest"]
                        if msg["tick"] > last_event:
                            break
            finally:
                task.cancel()
            return received

        received = run(scenario())
        assert len(received) >= 10
        for tick, digest in received.items():
            assert digest == reference[tick], f"digest mismatch at tick {tick}"


class TestIsolation:
    def test_two_connections_have_independent_scenes(self):
        async def scenario():
            task, port = await start_test_server()
            try:
                async with connect(f"ws://127.0.0.1:{port}") as a:
                    async with connect(f"ws://127.0.0.1:{port}") as b:
                        await send(a, type="hello", version=1)
                        await send(b, type="hello", version=1)
                        await recv_type(a, "frame")
                        await recv_type(b, "frame")
                        await send(a, type="spawn_numeric", value=9, x=500, y=500)
                        frame_a = await recv_type(a, "frame")
                        while not any(c.get("text") == "9" for c in frame_a["drawlist"]):
                            frame_a = await recv_type(a, "frame")
                        # session b never sees session a's sketch
                        await send(b, type="spawn_numeric", value=2, x=400, y=400)
                        frame_b = await recv_type(b, "frame")
                        while not any(c.get("text") == "2" for c in frame_b["drawlist"]):
                            frame_b = await recv_type(b, "frame")
                        texts = [c.get("text") for c in frame_b["drawlist"] if "text" in c]
                        assert "9" not in texts
            finally:
                task.cancel()

        run(scenario())
