"""JSON-over-HTTP endpoint that the explorer UI drives.

One session per token (query parameter ``session``, default "default");
requests within a session are serialized by a per-session lock.  All
responses are deterministic functions of (session history, request):
payloads are serialized with sorted keys.

Routes:
  GET  /state
  POST /reset {"preset": name} or {"quiver": {...}} or {"surface": {...}}
  POST /mutate {"vertex": k}
  POST /flip {"arc": k}
  POST /undo
  POST /redo
  GET  /exchange-graph?radius=R
  GET  /variables
  GET  /skein?arc1=...&arc2=...
Anything else is served from the static UI directory when one is given.
"""

from __future__ import annotations

import json
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from urllib.parse import parse_qs, urlparse

from .presets import build_preset, preset_names
from .quiver import QuiverError, quiver_from_json
from .session import SessionError, SessionState
from .skein import Multicurve, SurfaceAlgebra, crossings, smooth_crossing
from .surface import (
    SurfaceError,
    arcs_cross,
    curve_from_json,
    curve_to_json,
    triangulation_from_json,
)


class BadRequest(Exception):
    pass


class ServiceState:
    def __init__(self, default_preset: str = "a2", ui_dir: str | None = None):
        self.default_preset = default_preset
        self.ui_dir = Path(ui_dir) if ui_dir else None
        self._sessions: dict[str, SessionState] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._algebras: dict[str, SurfaceAlgebra] = {}
        self._global = threading.Lock()

    def session(self, token: str) -> tuple[SessionState, threading.Lock]:
        with self._global:
            if token not in self._sessions:
                self._sessions[token] = build_preset(self.default_preset)
                self._locks[token] = threading.Lock()
            return self._sessions[token], self._locks[token]

    def replace(self, token: str, state: SessionState) -> None:
        with self._global:
            self._sessions[token] = state
            self._locks.setdefault(token, threading.Lock())
            self._algebras.pop(token, None)

    def algebra(self, token: str, session: SessionState) -> SurfaceAlgebra:
        with self._global:
            algebra = self._algebras.get(token)
            if algebra is None or algebra.t0 != session.triangulation:
                if session.triangulation is None:
                    raise BadRequest("no surface attached to this session")
                algebra = SurfaceAlgebra(session.triangulation)
                self._algebras[token] = algebra
            return algebra


def _parse_arc_spec(session: SessionState, text: str):
    t = session.triangulation
    if t is None:
        raise BadRequest("no surface attached")
    text = text.strip()
    if text.startswith("{"):
        try:
            return curve_from_json(t.surface, json.loads(text))
        except (json.JSONDecodeError, SurfaceError) as exc:
            raise BadRequest(f"bad arc spec {text!r}: {exc}") from exc
    parts = [p for p in text.replace(":", ",").split(",") if p]
    try:
        numbers = [int(p) for p in parts]
    except ValueError as exc:
        raise BadRequest(f"bad arc spec {text!r}") from exc
    try:
        if len(numbers) == 2:
            return curve_from_json(t.surface, numbers)
        if len(numbers) == 3:
            return curve_from_json(
                t.surface,
                {"outer": numbers[0], "inner": numbers[1], "winding": numbers[2]},
            )
    except SurfaceError as exc:
        raise BadRequest(str(exc)) from exc
    raise BadRequest(f"bad arc spec {text!r}")


def handle_request(
    service: ServiceState, method: str, path: str, query: dict, body: dict
) -> tuple[int, dict]:
    token = query.get("session", ["default"])[0]
    session, lock = service.session(token)
    with lock:
        if method == "GET" and path == "/state":
            return 200, session.state_json()
        if method == "GET" and path == "/presets":
            return 200, {"presets": preset_names()}
        if method == "GET" and path == "/variables":
            return 200, {"variables": [str(v) for v in session.seed.cluster]}
        if method == "GET" and path == "/exchange-graph":
            radius = int(query.get("radius", ["2"])[0])
            return 200, session.exchange_ball_json(radius)
        if method == "GET" and path == "/skein":
            return 200, _skein_payload(service, token, session, query)
        if method == "POST" and path == "/reset":
            state = _build_reset_state(body)
            service.replace(token, state)
            return 200, state.state_json()
        if method == "POST" and path == "/mutate":
            vertex = _required_int(body, "vertex")
            session.mutate(vertex)
            return 200, session.state_json()
        if method == "POST" and path == "/flip":
            arc = _required_int(body, "arc")
            session.flip(arc)
            return 200, session.state_json()
        if method == "POST" and path == "/undo":
            changed = session.undo()
            payload = session.state_json()
            payload["undone"] = changed
            return 200, payload
        if method == "POST" and path == "/redo":
            changed = session.redo()
            payload = session.state_json()
            payload["redone"] = changed
            return 200, payload
    raise BadRequest(f"no route {method} {path}")


def _required_int(body: dict, key: str) -> int:
    if key not in body:
        raise BadRequest(f"missing field {key!r}")
    try:
        return int(body[key])
    except (TypeError, ValueError) as exc:
        raise BadRequest(f"field {key!r} must be an integer") from exc


def _build_reset_state(body: dict) -> SessionState:
    if "preset" in body:
        try:
            return build_preset(body["preset"])
        except KeyError as exc:
            raise BadRequest(str(exc)) from exc
    if "surface" in body:
        try:
            return SessionState.from_triangulation(triangulation_from_json(body))
        except SurfaceError as exc:
            raise BadRequest(str(exc)) from exc
    if "quiver" in body or "arrows" in body:
        payload = body.get("quiver", body)
        try:
            return SessionState.from_quiver(quiver_from_json(payload))
        except QuiverError as exc:
            raise BadRequest(str(exc)) from exc
    raise BadRequest("reset needs a preset, quiver, or surface payload")


def _skein_payload(service, token, session, query) -> dict:
    if "arc1" not in query or "arc2" not in query:
        raise BadRequest("skein needs arc1 and arc2")
    c1 = _parse_arc_spec(session, query["arc1"][0])
    c2 = _parse_arc_spec(session, query["arc2"][0])
    t = session.triangulation
    n = arcs_cross(t.surface, c1, c2)
    if n == 0:
        return {
            "arc1": curve_to_json(c1),
            "arc2": curve_to_json(c2),
            "crossings": 0,
            "hint": "arcs are compatible",
        }
    algebra = service.algebra(token, session)
    mc = Multicurve.of(t.surface, [c1, c2])
    m1, m2 = smooth_crossing(mc, crossings(mc)[0])
    v1 = algebra.multicurve_value(m1)
    v2 = algebra.multicurve_value(m2)
    product = algebra.arc_variable(c1) * algebra.arc_variable(c2)
    return {
        "arc1": curve_to_json(c1),
        "arc2": curve_to_json(c2),
        "crossings": n,
        "m1": {"curves": [curve_to_json(c) for c in m1.curves()],
               "contractibles": m1.contractibles},
        "m2": {"curves": [curve_to_json(c) for c in m2.curves()],
               "contractibles": m2.contractibles},
        "values": {"product": str(product), "m1": str(v1), "m2": str(v2)},
        "identity": f"{product} = ({v1}) + ({v2})",
        "holds": product == v1 + v2,
    }


def make_handler(service: ServiceState):
    class Handler(BaseHTTPRequestHandler):
        def log_message(self, fmt, *args):
            pass

        def _reply(self, status: int, payload: dict) -> None:
            data = json.dumps(payload, sort_keys=True).encode()
            self.send_response(status)
            self.send_header("Content-Type", "application/json")
            self.send_header("Content-Length", str(len(data)))
            self.send_header("Access-Control-Allow-Origin", "*")
            self.end_headers()
            self.wfile.write(data)

        def _dispatch(self, method: str) -> None:
            parsed = urlparse(self.path)
            query = parse_qs(parsed.query)
            body = {}
            length = int(self.headers.get("Content-Length") or 0)
            if length:
                try:
                    body = json.loads(self.rfile.read(length) or b"{}")
                except json.JSONDecodeError:
                    self._reply(400, {"error": "malformed JSON body"})
                    return
            try:
                status, payload = handle_request(
                    service, method, parsed.path, query, body
                )
                self._reply(status, payload)
            except BadRequest as exc:
                if method == "GET" and self._try_static(parsed.path):
                    return
                self._reply(400, {"error": str(exc)})
            except (SessionError, SurfaceError, QuiverError) as exc:
                self._reply(400, {"error": str(exc)})
            except Exception as exc:  # pragma: no cover - last resort
                self._reply(500, {"error": f"{type(exc).__name__}: {exc}"})

        def _try_static(self, path: str) -> bool:
            if service.ui_dir is None:
                return False
            rel = path.lstrip("/") or "index.html"
            target = (service.ui_dir / rel).resolve()
            try:
                target.relative_to(service.ui_dir.resolve())
            except ValueError:
                return False
            if not target.is_file():
                return False
            content = target.read_bytes()
            ctype = {
                ".html": "text/html",
                ".js": "application/javascript",
                ".css": "text/css",
                ".svg": "image/svg+xml",
            }.get(target.suffix, "application/octet-stream")
            self.send_response(200)
            self.send_header("Content-Type", ctype)
            self.send_header("Content-Length", str(len(content)))
            self.end_headers()
            self.wfile.write(content)
            return True

        def do_GET(self):
            self._dispatch("GET")

        def do_POST(self):
            self._dispatch("POST")

    return Handler


def serve(
    port: int,
    default_preset: str = "a2",
    ui_dir: str | None = None,
) -> ThreadingHTTPServer:
    """Bind the service; call serve_forever() on the result (the CLI
    does).  Raises OSError when the port is busy."""
    service = ServiceState(default_preset, ui_dir)
    server = ThreadingHTTPServer(("127.0.0.1", port), make_handler(service))
    return server
