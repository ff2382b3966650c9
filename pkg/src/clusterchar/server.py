"""In-memory session store and JSON API server.

Sessions hold a live seed plus its mutation history; every response is
recomputable by replaying the history from the initial seed.  All numeric
payloads ride as decimal strings so arbitrary precision survives any client.
Endpoints:

  POST /session                 {"type": "A3", "ell": 1}
  GET  /session/{id}/seed
  POST /session/{id}/mutate     {"k": 1}
  POST /session/{id}/undo
  GET  /session/{id}/char?var=<index or root>
  GET  /atlas?type=A3&ell=1
"""

from __future__ import annotations

import json
import re
import threading
import uuid
from dataclasses import dataclass, field
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from typing import Dict, List, Optional, Tuple

from .cluster import FrozenDirection, Seed, enumerate_atlas, label_by_denominator
from .levels import build_gamma_ell_seed
from .qchar import (
    OutOfProvedScope,
    QCharError,
    truncated_char_c1,
    y_root_monomial,
)
from .roots import DynkinData, almost_positive_roots


class ApiError(Exception):
    def __init__(self, status: int, message: str):
        super().__init__(message)
        self.status = status
        self.message = message


@dataclass
class Session:
    """One live seed with its mutation history."""

    id: str
    d: DynkinData
    ell: int
    initial: Seed
    history: List[int] = field(default_factory=list)
    seeds: List[Seed] = field(default_factory=list)
    lock: threading.Lock = field(default_factory=threading.Lock)

    def current(self) -> Seed:
        return self.seeds[-1] if self.seeds else self.initial

    def mutate(self, k: int) -> Tuple[Seed, tuple]:
        with self.lock:
            seed, event = self.current().mutate(k)
            self.seeds.append(seed)
            self.history.append(k)
            return seed, event

    def undo(self) -> Seed:
        with self.lock:
            if self.seeds:
                self.seeds.pop()
                self.history.pop()
            return self.current()

    def replay_consistent(self) -> bool:
        seed = self.initial
        for k in self.history:
            seed, _ = seed.mutate(k)
        return seed == self.current()


def _seed_payload(session: Session, seed: Seed) -> dict:
    d = session.d
    n = d.rank
    vids = session.initial.mutable_vids()
    denoms = [list(p.denominator_vector(vids))
              for p in seed.variables[: seed.rank]]
    labels = []
    for p, dv in zip(seed.variables[: seed.rank], denoms):
        if session.ell == 1 and tuple(dv) in set(almost_positive_roots(d)):
            labels.append(list(dv))
        else:
            labels.append(None)
    grid = []
    for k in range(1, session.ell + 2):
        for i in d.vertices:
            grid.append({"i": i, "k": k})
    return {
        "seed": seed.to_json(),
        "texts": [p.text() for p in seed.variables],
        "denominators": denoms,
        "labels": labels,
        "grid": grid,
        "type": d.name(),
        "I0": sorted(d.I0),
        "ell": session.ell,
        "history": list(session.history),
    }


def _exchange_payload(seed_before: Seed, event: tuple) -> dict:
    old, new, plus_f, minus_f = event

    def side(factors):
        parts = []
        for pos, e in factors:
            t = seed_before.variables[pos].text()
            parts.append(t if e == 1 else f"({t})^{e}")
        return " * ".join(parts) if parts else "1"

    return {
        "old": old.text(),
        "new": new.text(),
        "m_plus": side(plus_f),
        "m_minus": side(minus_f),
        "relation": f"({old.text()}) * ({new.text()}) = "
                    f"{side(plus_f)} + {side(minus_f)}",
    }


class SessionStore:
    def __init__(self):
        self._sessions: Dict[str, Session] = {}
        self._lock = threading.Lock()

    def create(self, type_str: str, ell: int, I0=None) -> Session:
        d = DynkinData.make(type_str, I0=I0)
        if ell == 1:
            from .cluster import build_c1_seed

            seed = build_c1_seed(d)
        else:
            seed, _ = build_gamma_ell_seed(d, ell)
        session = Session(id=uuid.uuid4().hex[:12], d=d, ell=ell,
                          initial=seed)
        with self._lock:
            self._sessions[session.id] = session
        return session

    def get(self, sid: str) -> Session:
        with self._lock:
            s = self._sessions.get(sid)
        if s is None:
            raise ApiError(404, f"unknown session {sid}")
        return s


def handle_request(store: SessionStore, method: str, path: str,
                   query: Dict[str, str], body: Optional[dict]) -> Tuple[int, dict]:
    """Route one request; returns (status, payload).  Pure apart from the
    store, so tests can drive it without sockets."""
    if method == "POST" and path == "/session":
        body = body or {}
        try:
            session = store.create(body.get("type", "A3"),
                                   int(body.get("ell", 1)),
                                   I0=body.get("I0"))
        except Exception as exc:   # noqa: BLE001 - surfaced to the client
            raise ApiError(422, f"cannot create session: {exc}") from exc
        return 200, {"session": session.id,
                     **_seed_payload(session, session.current())}

    m = re.fullmatch(r"/session/([0-9a-f]+)/seed", path)
    if method == "GET" and m:
        session = store.get(m.group(1))
        return 200, _seed_payload(session, session.current())

    m = re.fullmatch(r"/session/([0-9a-f]+)/mutate", path)
    if method == "POST" and m:
        session = store.get(m.group(1))
        k = int((body or {}).get("k", 0))
        before = session.current()
        try:
            seed, event = session.mutate(k)
        except FrozenDirection as exc:
            raise ApiError(409, str(exc)) from exc
        return 200, {"exchange": _exchange_payload(before, event),
                     **_seed_payload(session, seed)}

    m = re.fullmatch(r"/session/([0-9a-f]+)/undo", path)
    if method == "POST" and m:
        session = store.get(m.group(1))
        seed = session.undo()
        return 200, _seed_payload(session, seed)

    m = re.fullmatch(r"/session/([0-9a-f]+)/variable", path)
    if method == "GET" and m:
        session = store.get(m.group(1))
        d = session.d
        try:
            idx = int(query.get("var", ""))
            poly = session.current().variables[idx]
        except (ValueError, IndexError) as exc:
            raise ApiError(422, f"no variable {query.get('var')!r}") from exc
        payload = {"index": idx, "expansion": poly.text(),
                   "frozen": idx >= session.current().rank}
        if session.ell == 1 and idx < session.current().rank:
            vids = session.initial.mutable_vids()
            root = poly.denominator_vector(vids)
            if root in set(almost_positive_roots(d)):
                from .fpoly import f_poly
                from .roots import g_vector, tau_minus

                payload["label"] = list(root)
                payload["g_vector"] = list(g_vector(root, d))
                fp = f_poly(tau_minus(root, d), d)
                payload["f_polynomial"] = [
                    {"exponents": list(e), "coeff": c}
                    for e, c in sorted(fp.items())]
                char = truncated_char_c1(y_root_monomial(root, d), d)
                payload["character"] = {
                    "polynomial": char.flatten().text(),
                    "terms": char.dimension(),
                }
        elif session.ell == 1 and idx >= session.current().rank:
            i = idx - session.current().rank + 1
            payload["label"] = None
            payload["kr_label"] = f"W^({i})_(2,{d.xi(i)})"
        return 200, payload

    m = re.fullmatch(r"/session/([0-9a-f]+)/char", path)
    if method == "GET" and m:
        session = store.get(m.group(1))
        if session.ell != 1:
            raise ApiError(422, "truncated characters are served for "
                                "level-1 sessions only")
        spec = query.get("var", "")
        d = session.d
        try:
            if re.fullmatch(r"-?\d+(,-?\d+)*", spec):
                root = tuple(int(x) for x in spec.split(","))
            else:
                idx = int(spec)
                vids = session.initial.mutable_vids()
                root = session.current().variables[idx].denominator_vector(vids)
        except (ValueError, IndexError) as exc:
            raise ApiError(422, f"cannot resolve variable {spec!r}") from exc
        if root not in set(almost_positive_roots(d)):
            raise ApiError(422, f"{root} is not an almost positive root")
        char = truncated_char_c1(y_root_monomial(root, d), d)
        return 200, {"root": list(root),
                     "character": char.to_json(),
                     "polynomial": char.flatten().text(),
                     "terms": char.dimension()}

    if method == "GET" and path == "/atlas":
        type_str = query.get("type", "A3")
        ell = int(query.get("ell", "1"))
        d = DynkinData.make(type_str)
        if ell == 1:
            from .cluster import build_c1_seed

            seed = build_c1_seed(d)
        else:
            seed, _ = build_gamma_ell_seed(d, ell)
        try:
            atlas = enumerate_atlas(
                seed, max_seeds=int(query.get("max_seeds", 10 ** 5)))
        except Exception as exc:   # noqa: BLE001
            raise ApiError(422, f"enumeration failed: {exc}") from exc
        payload = {
            "clusters": atlas.n_clusters(),
            "variables": atlas.n_variables(),
            "frozen": len(atlas.frozen),
        }
        if ell == 1:
            label_by_denominator(atlas, d)
            payload["labels"] = sorted(
                [list(lab) for lab in atlas.by_label])
        return 200, payload

    raise ApiError(404, f"no route for {method} {path}")


def make_handler(store: SessionStore, static_dir: Optional[str] = None):
    class Handler(BaseHTTPRequestHandler):
        def log_message(self, *args):   # quiet by default
            pass

        def _send(self, status: int, payload: dict):
            data = json.dumps(payload, sort_keys=True).encode()
            self.send_response(status)
            self.send_header("Content-Type", "application/json")
            self.send_header("Content-Length", str(len(data)))
            self.send_header("Access-Control-Allow-Origin", "*")
            self.end_headers()
            self.wfile.write(data)

        def _run(self, method):
            from urllib.parse import parse_qsl, urlparse

            parsed = urlparse(self.path)
            query = dict(parse_qsl(parsed.query))
            body = None
            length = int(self.headers.get("Content-Length") or 0)
            if length:
                body = json.loads(self.rfile.read(length) or b"{}")
            if method == "GET" and static_dir and (
                    parsed.path == "/" or parsed.path.startswith("/ui")):
                return self._static(parsed.path)
            try:
                status, payload = handle_request(
                    store, method, parsed.path, query, body)
            except ApiError as exc:
                status, payload = exc.status, {"error": exc.message}
            self._send(status, payload)

        def _static(self, path):
            import os

            rel = "index.html" if path in ("/", "/ui", "/ui/") \
                else path[len("/ui/"):]
            full = os.path.join(static_dir, rel.lstrip("/"))
            if not os.path.isfile(full):
                return self._send(404, {"error": f"no static file {rel}"})
            ctype = ("text/html" if full.endswith(".html")
                     else "application/javascript" if full.endswith(".js")
                     else "text/css" if full.endswith(".css")
                     else "application/octet-stream")
            with open(full, "rb") as fh:
                data = fh.read()
            self.send_response(200)
            self.send_header("Content-Type", ctype)
            self.send_header("Content-Length", str(len(data)))
            self.end_headers()
            self.wfile.write(data)

        def do_GET(self):
            self._run("GET")

        def do_POST(self):
            self._run("POST")

    return Handler


def serve(port: int = 8630, static_dir: Optional[str] = None):
    store = SessionStore()
    server = ThreadingHTTPServer(("127.0.0.1", port),
                                 make_handler(store, static_dir))
    return server
