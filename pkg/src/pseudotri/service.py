"""Session-based HTTP JSON API powering the interactive flip explorer."""

from __future__ import annotations

import json
import threading
import uuid
from dataclasses import dataclass, field

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel

from .chords import Chord, CsPair, table
from .cluster import Seed, initial_seed, mutate
from .pseudo import Pseudotriangulation, classify, flips, enumerate_flip_graph, star
from .cli import load_seed


class CreateSession(BaseModel):
    n: int
    seed: str | dict | None = None


class FlipRequest(BaseModel):
    pair: dict | str
    version: int | None = None


@dataclass
class Session:
    id: str
    n: int
    initial: Seed
    seed: Seed
    history: list = field(default_factory=list)  # (removed json, added json)
    version: int = 0
    lock: threading.Lock = field(default_factory=threading.Lock)


def _parse_pair(data, n: int) -> CsPair:
    if isinstance(data, str):
        from .cli import parse_pair

        return parse_pair(data, n)
    if "rep" in data:
        return CsPair.from_json(data, n)
    return CsPair.of(Chord.from_json(data, n), n)


def _state(s: Session) -> dict:
    t = table(s.n)
    names = [f"x{i+1}" for i in range(s.n)]
    pairs = []
    for pid in sorted(s.seed.vars):
        v = s.seed.vars[pid]
        pairs.append(
            {
                "pair": t.pairs[pid].to_json(),
                "name": t.pairs[pid].name(),
                "variable": v.to_text(names),
                "poly": v.to_json(names),
            }
        )
    flippable = []
    for chi, _pt2, added in flips(s.seed.pt):
        flippable.append(
            {
                "pair": chi.to_json(),
                "name": chi.name(),
                "replacement": added.to_json(),
                "replacementName": added.name(),
            }
        )
    return {
        "sessionId": s.id,
        "n": s.n,
        "version": s.version,
        "classification": classify(s.seed.pt),
        "pseudotriangulation": s.seed.pt.to_json(),
        "pairs": pairs,
        "flippable": flippable,
        "quiver": {
            "nodes": [t.pairs[i].name() for i in sorted(s.seed.quiver.nodes)],
            "arcs": [
                [t.pairs[i].name(), t.pairs[j].name(), m]
                for i, j, m in s.seed.quiver.arcs()
            ],
        },
        "history": [
            {"removed": r, "added": a} for r, a in s.history
        ],
    }


def create_app(persist: str | None = None) -> FastAPI:
    app = FastAPI(title="pseudotri explorer API")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    sessions: dict[str, Session] = {}
    store_lock = threading.Lock()

    def save():
        if not persist:
            return
        data = {
            sid: {
                "n": s.n,
                "initial": s.initial.pt.to_json(),
                "history": s.history,
            }
            for sid, s in sessions.items()
        }
        with open(persist, "w") as fh:
            json.dump(data, fh, indent=2, sort_keys=True)

    def load():
        if not persist:
            return
        try:
            with open(persist) as fh:
                data = json.load(fh)
        except FileNotFoundError:
            return
        for sid, entry in data.items():
            pt = Pseudotriangulation.from_json(entry["initial"])
            seed = initial_seed(pt)
            s = Session(sid, entry["n"], seed, seed)
            for removed, _added in entry["history"]:
                chi = _parse_pair(removed, s.n)
                s.seed = mutate(s.seed, chi)
                s.history.append((removed, _added))
                s.version += 1
            sessions[sid] = s

    load()

    def get_session(sid: str) -> Session:
        s = sessions.get(sid)
        if s is None:
            raise HTTPException(status_code=404, detail="unknown session")
        return s

    @app.post("/sessions")
    def create_session(req: CreateSession):
        if req.n < 3:
            raise HTTPException(status_code=400, detail="n must be >= 3")
        try:
            if req.seed is None:
                pt = star(req.n, "L")
            elif isinstance(req.seed, str):
                pt = load_seed(req.seed, req.n)
            else:
                pt = Pseudotriangulation.from_json(req.seed)
        except (ValueError, KeyError) as exc:
            raise HTTPException(status_code=400, detail=f"malformed seed: {exc}")
        seed = initial_seed(pt)
        sid = uuid.uuid4().hex[:12]
        with store_lock:
            sessions[sid] = Session(sid, req.n, seed, seed)
            save()
        return {"sessionId": sid, "state": _state(sessions[sid])}

    @app.get("/sessions/{sid}")
    def get_state(sid: str):
        return _state(get_session(sid))

    @app.post("/sessions/{sid}/flip")
    def do_flip(sid: str, req: FlipRequest):
        s = get_session(sid)
        try:
            chi = _parse_pair(req.pair, s.n)
        except (ValueError, KeyError, TypeError) as exc:
            raise HTTPException(status_code=400, detail=f"malformed chord: {exc}")
        with s.lock:
            if req.version is not None and req.version != s.version:
                raise HTTPException(status_code=409, detail="stale version")
            t = table(s.n)
            if t.pair_index.get(chi) not in s.seed.vars:
                raise HTTPException(status_code=422, detail="pair not in the cluster")
            before = set(s.seed.vars)
            s.seed = mutate(s.seed, chi)
            added = (set(s.seed.vars) - before).pop()
            s.history.append((chi.to_json(), t.pairs[added].to_json()))
            s.version += 1
            save()
        return _state(s)

    @app.post("/sessions/{sid}/undo")
    def undo(sid: str):
        s = get_session(sid)
        with s.lock:
            if not s.history:
                raise HTTPException(status_code=422, detail="nothing to undo")
            _removed, added = s.history.pop()
            chi = _parse_pair(added, s.n)
            s.seed = mutate(s.seed, chi)
            s.version += 1
            save()
        return _state(s)

    @app.get("/sessions/{sid}/variables")
    def variables(sid: str):
        s = get_session(sid)
        t = table(s.n)
        names = [f"x{i+1}" for i in range(s.n)]
        from .cluster import all_cluster_variables

        av = all_cluster_variables(s.initial)
        return {
            "rows": [
                {
                    "pair": t.pairs[pid].name(),
                    "variable": av[pid].to_text(names),
                    "d_vector": list(av[pid].denominator_vector()),
                }
                for pid in sorted(av)
            ]
        }

    @app.get("/sessions/{sid}/quiver")
    def quiver(sid: str):
        s = get_session(sid)
        t = table(s.n)
        return {
            "nodes": [t.pairs[i].name() for i in sorted(s.seed.quiver.nodes)],
            "arcs": [
                [t.pairs[i].name(), t.pairs[j].name(), m]
                for i, j, m in s.seed.quiver.arcs()
            ],
        }

    @app.get("/meta/flipgraph")
    def flipgraph(n: int):
        if n < 3 or n > 8:
            raise HTTPException(status_code=400, detail="supported range: 3 <= n <= 8")
        return enumerate_flip_graph(n).to_json()

    return app
