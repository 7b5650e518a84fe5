"""HTTP API over a directory of EGML documents.

Documents are whole-file EGML on disk, edited in memory and written back on
save.  Every response carries the document revision; writes must quote the
revision they were based on and fail with 409 when it moved, which is the
whole concurrency story (single-user optimistic editing).  A layout job
computes on a snapshot off the lock and re-checks the revision before
applying, so a conflicting edit wins; concurrent layout jobs on one
document are rejected with 423.
"""

from __future__ import annotations

import threading
from dataclasses import replace
from pathlib import Path

from fastapi import FastAPI, HTTPException, Query
from pydantic import BaseModel

from . import egml
from .errors import EvographError
from .layout import (Frame, LayoutConfig, circular_layout, layout_from_graph,
                     random_placement, store_layout, vector_optimization,
                     vertex_optimization)
from .layout import EvolvingLayout
from .metrics import distance_report
from .model import EvolvingGraph, Position
from .render import interpolate_frames

DEFAULT_FRAME_STEPS = 30


class _Entry:
    def __init__(self, doc: egml.EgmlDocument):
        self.doc = doc
        self.revision = 1
        self.lock = threading.RLock()
        self.layout_busy = False


class DocumentStore:
    def __init__(self, directory: Path):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)
        self.entries: dict[str, _Entry] = {}
        self._lock = threading.Lock()
        for path in sorted(self.directory.glob("*.egml")):
            try:
                self.entries[path.stem] = _Entry(egml.read_egml(path))
            except EvographError:
                continue  # unreadable documents are skipped, not fatal

    def ids(self) -> list[str]:
        with self._lock:
            return sorted(self.entries)

    def get(self, doc_id: str) -> _Entry:
        with self._lock:
            entry = self.entries.get(doc_id)
        if entry is None:
            raise HTTPException(404, f"no document {doc_id!r}")
        return entry

    def add(self, doc_id: str, doc: egml.EgmlDocument) -> _Entry:
        with self._lock:
            entry = _Entry(doc)
            self.entries[doc_id] = entry
            return entry

    def save(self, doc_id: str, entry: _Entry) -> Path:
        path = self.directory / f"{doc_id}.egml"
        tmp = path.with_suffix(".egml.tmp")
        tmp.write_bytes(egml.serialize_egml(entry.doc))
        tmp.replace(path)
        return path


# -- payload shapes ---------------------------------------------------------


class PositionBody(BaseModel):
    x: float
    y: float
    revision: int


class VertexBody(BaseModel):
    instance: int
    id: str
    x: float = 0.0
    y: float = 0.0
    revision: int


class EdgeBody(BaseModel):
    instance: int
    source: str
    target: str
    weight: float = 1.0
    revision: int


class InstanceBody(BaseModel):
    timestamp: int | str | None = None
    revision: int


class LayoutBody(BaseModel):
    algorithm: str = "vertex-opt"
    config: dict = {}
    revision: int


def _instance_payload(inst) -> dict:
    return {
        "index": inst.index,
        "timestamp": inst.timestamp,
        "vertices": {vid: {"x": data.position.x, "y": data.position.y,
                           "attributes": data.attributes}
                     for vid, data in sorted(inst.vertices.items())},
        "edges": [{"source": key[0], "target": key[1], "weight": data.weight,
                   "attributes": data.attributes}
                  for key, data in sorted(inst.edges.items())],
    }


def _doc_payload(doc_id: str, entry: _Entry) -> dict:
    doc = entry.doc
    eg = doc.evolving_graph
    return {
        "id": doc_id,
        "revision": entry.revision,
        "name": eg.name,
        "instances": [_instance_payload(inst) for inst in eg.instances],
        "metrics": [[{"name": m.name, "algorithm_name": m.algorithm_name,
                      "payload": m.payload} for m in per_inst]
                    for per_inst in doc.instance_metrics],
        "clusters": [None if c is None else {"name": c.name,
                                             "algorithm_name": c.algorithm_name,
                                             "node_sets": c.node_sets}
                     for c in doc.instance_clusters],
        "ranks": [None if r is None else {
            "name": r.name, "algorithm_name": r.algorithm_name,
            "entries": [{"ref": list(e.ref), "position": e.position, "value": e.value}
                        for e in r.entries]}
            for r in doc.instance_ranks],
        "prediction": None if doc.prediction is None else {
            "timestamp": doc.prediction.timestamp,
            "entries": [{"ref": list(e.ref), "position": e.position, "value": e.value}
                        for e in doc.prediction.entries],
        },
    }


def _check_revision(entry: _Entry, expected: int) -> None:
    if entry.revision != expected:
        raise HTTPException(409, {"error": "revision-conflict",
                                  "expected": expected, "actual": entry.revision})


def _instance_of(eg: EvolvingGraph, index: int):
    if not 0 <= index < eg.p:
        raise HTTPException(404, f"no instance {index}; document has {eg.p}")
    return eg.instances[index]


_LAYOUT_FIELDS = {"iterations", "initial_temperature", "k_constant", "window_size",
                  "cross_scale", "penalty", "sweeps", "seed"}


def _config_from(body: dict) -> LayoutConfig:
    unknown = set(body) - _LAYOUT_FIELDS - {"frame_width", "frame_height"}
    if unknown:
        raise HTTPException(400, f"unknown layout config fields: {sorted(unknown)}")
    frame = Frame(body.get("frame_width", 1000.0), body.get("frame_height", 1000.0))
    kwargs = {k: v for k, v in body.items() if k in _LAYOUT_FIELDS}
    try:
        return LayoutConfig(frame=frame, **kwargs)
    except EvographError as exc:
        raise HTTPException(400, str(exc)) from None


def _run_layout(eg: EvolvingGraph, algorithm: str, cfg: LayoutConfig) -> EvolvingLayout:
    if algorithm == "vertex-opt":
        return vertex_optimization(eg, cfg)
    if algorithm == "vector-opt":
        return vector_optimization(eg, cfg)
    if algorithm == "fr":
        return vertex_optimization(eg, replace(cfg, window_size=0))
    if algorithm == "random":
        return random_placement(eg, cfg)
    if algorithm == "circular":
        return EvolvingLayout([circular_layout(inst, cfg.frame) for inst in eg.instances], cfg)
    raise HTTPException(400, f"unknown algorithm {algorithm!r}")


def create_app(docs_dir: Path | str = "docs") -> FastAPI:
    store = DocumentStore(Path(docs_dir))
    app = FastAPI(title="evograph")
    app.state.store = store

    @app.get("/api/docs")
    def list_docs():
        out = []
        for doc_id in store.ids():
            entry = store.get(doc_id)
            with entry.lock:
                eg = entry.doc.evolving_graph
                out.append({"id": doc_id, "name": eg.name,
                            "revision": entry.revision, "instances": eg.p})
        return out

    @app.get("/api/docs/{doc_id}")
    def get_doc(doc_id: str):
        entry = store.get(doc_id)
        with entry.lock:
            return _doc_payload(doc_id, entry)

    @app.put("/api/docs/{doc_id}/instances/{index}/vertices/{vid}/position")
    def put_position(doc_id: str, index: int, vid: str, body: PositionBody):
        entry = store.get(doc_id)
        with entry.lock:
            _check_revision(entry, body.revision)
            inst = _instance_of(entry.doc.evolving_graph, index)
            if vid not in inst.vertices:
                raise HTTPException(404, f"no vertex {vid!r} in instance {index}")
            inst.set_position(vid, Position(body.x, body.y))
            entry.revision += 1
            return {"revision": entry.revision}

    @app.post("/api/docs/{doc_id}/vertices")
    def post_vertex(doc_id: str, body: VertexBody):
        entry = store.get(doc_id)
        with entry.lock:
            _check_revision(entry, body.revision)
            inst = _instance_of(entry.doc.evolving_graph, body.instance)
            try:
                inst.add_vertex(body.id, Position(body.x, body.y))
            except EvographError as exc:
                raise HTTPException(400, str(exc)) from None
            entry.revision += 1
            return {"revision": entry.revision}

    @app.post("/api/docs/{doc_id}/edges")
    def post_edge(doc_id: str, body: EdgeBody):
        entry = store.get(doc_id)
        with entry.lock:
            _check_revision(entry, body.revision)
            inst = _instance_of(entry.doc.evolving_graph, body.instance)
            try:
                inst.add_edge(body.source, body.target, body.weight)
            except EvographError as exc:
                raise HTTPException(400, str(exc)) from None
            entry.revision += 1
            return {"revision": entry.revision}

    @app.post("/api/docs/{doc_id}/instances")
    def post_instance(doc_id: str, body: InstanceBody):
        entry = store.get(doc_id)
        with entry.lock:
            _check_revision(entry, body.revision)
            doc = entry.doc
            try:
                doc.evolving_graph.new_instance(body.timestamp)
            except EvographError as exc:
                raise HTTPException(400, str(exc)) from None
            doc.instance_metrics.append([])
            doc.instance_clusters.append(None)
            doc.instance_ranks.append(None)
            entry.revision += 1
            return {"revision": entry.revision, "instances": doc.evolving_graph.p}

    @app.post("/api/docs/{doc_id}/layout")
    def post_layout(doc_id: str, body: LayoutBody):
        entry = store.get(doc_id)
        with entry.lock:
            _check_revision(entry, body.revision)
            if entry.layout_busy:
                raise HTTPException(423, {"error": "busy",
                                          "detail": "a layout job is already running"})
            entry.layout_busy = True
            snapshot = entry.doc.evolving_graph.copy()
        try:
            cfg = _config_from(body.config)
            layout = _run_layout(snapshot, body.algorithm, cfg)
            with entry.lock:
                if entry.revision != body.revision:
                    raise HTTPException(409, {"error": "revision-conflict",
                                              "expected": body.revision,
                                              "actual": entry.revision})
                store_layout(entry.doc.evolving_graph, layout)
                entry.revision += 1
                positions = [{vid: {"x": p.x, "y": p.y} for vid, p in sorted(per.items())}
                             for per in layout.positions]
                return {"revision": entry.revision, "positions": positions}
        finally:
            with entry.lock:
                entry.layout_busy = False

    @app.get("/api/docs/{doc_id}/frames")
    def get_frames(doc_id: str, frm: int = Query(0, alias="from"),
                   steps: int = DEFAULT_FRAME_STEPS):
        entry = store.get(doc_id)
        with entry.lock:
            eg = entry.doc.evolving_graph
            if not 0 <= frm < eg.p - 1:
                raise HTTPException(404, f"no transition {frm}; valid: 0..{eg.p - 2}")
            if steps < 1:
                raise HTTPException(400, "steps must be >= 1")
            a = {vid: d.position for vid, d in eg.instances[frm].vertices.items()}
            b = {vid: d.position for vid, d in eg.instances[frm + 1].vertices.items()}
            frames = interpolate_frames(a, b, steps)
            return {"revision": entry.revision, "from": frm, "steps": steps,
                    "frames": [{vid: {"x": p.x, "y": p.y} for vid, p in sorted(f.items())}
                               for f in frames]}

    @app.get("/api/docs/{doc_id}/metrics")
    def get_metrics(doc_id: str):
        entry = store.get(doc_id)
        with entry.lock:
            eg = entry.doc.evolving_graph
            report = distance_report(layout_from_graph(eg), eg)
            return {
                "revision": entry.revision,
                "td_eg": report.td_eg,
                "per_graph": report.per_graph,
                "per_vertex": {vid: {"total": row.total, "transitions": row.transitions,
                                     "avg": row.average}
                               for vid, row in sorted(report.per_vertex.items())},
            }

    @app.post("/api/docs/{doc_id}/save")
    def post_save(doc_id: str):
        entry = store.get(doc_id)
        with entry.lock:
            path = store.save(doc_id, entry)
            return {"revision": entry.revision, "path": str(path)}

    frontend = Path(__file__).resolve().parents[2] / "frontend" / "dist"
    if frontend.is_dir():
        from fastapi.staticfiles import StaticFiles
        app.mount("/", StaticFiles(directory=frontend, html=True), name="viewer")

    return app
