"""Core data model for evolving graphs.

An evolving graph is an ordered sequence of snapshots ("instances") over a
shared vertex identity space: vertices carrying the same string id in
different instances denote the same entity, which is what makes
cross-instance layout coupling and movement metrics well defined.

Instances are undirected weighted simple graphs.  Edge keys are normalized
unordered pairs, self loops are rejected at construction, and weights must
be non-negative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import GraphModelError


@dataclass(frozen=True)
class Position:
    """A 2-D point in frame units."""

    x: float
    y: float

    def distance_to(self, other: "Position") -> float:
        dx = self.x - other.x
        dy = self.y - other.y
        return math.sqrt(dx * dx + dy * dy)


ORIGIN = Position(0.0, 0.0)


@dataclass(frozen=True)
class Frame:
    """The drawing area; all layout positions live in [0, width] x [0, height]."""

    width: float = 1000.0
    height: float = 1000.0

    def __post_init__(self):
        if not (self.width > 0 and self.height > 0):
            raise GraphModelError(f"frame dimensions must be positive, got {self.width}x{self.height}")

    @property
    def area(self) -> float:
        return self.width * self.height

    @property
    def center(self) -> Position:
        return Position(self.width / 2.0, self.height / 2.0)

    def clamp(self, x: float, y: float) -> Position:
        return Position(min(max(x, 0.0), self.width), min(max(y, 0.0), self.height))


@dataclass
class VertexData:
    position: Position = ORIGIN
    attributes: dict[str, str] = field(default_factory=dict)


@dataclass
class EdgeData:
    weight: float = 1.0
    attributes: dict[str, str] = field(default_factory=dict)


def edge_key(u: str, v: str) -> tuple[str, str]:
    """Normalize an unordered endpoint pair; self loops are illegal."""
    if u == v:
        raise GraphModelError(f"self loop on vertex {u!r} is not allowed")
    return (u, v) if u < v else (v, u)


class GraphInstance:
    """One snapshot of an evolving graph: vertices with positions, weighted edges."""

    def __init__(self, index: int = 0, timestamp: int | str = 0):
        self.index = index
        self.timestamp = timestamp
        self.vertices: dict[str, VertexData] = {}
        self.edges: dict[tuple[str, str], EdgeData] = {}

    def add_vertex(self, vid: str, position: Position = ORIGIN,
                   attributes: dict[str, str] | None = None) -> None:
        if not vid:
            raise GraphModelError("vertex id must be a non-empty string")
        if vid in self.vertices:
            raise GraphModelError(f"duplicate vertex id {vid!r} in instance {self.index}")
        self.vertices[vid] = VertexData(position, dict(attributes or {}))

    def add_edge(self, u: str, v: str, weight: float = 1.0,
                 attributes: dict[str, str] | None = None) -> None:
        key = edge_key(u, v)
        for end in key:
            if end not in self.vertices:
                raise GraphModelError(
                    f"edge ({u!r}, {v!r}) references missing vertex {end!r} in instance {self.index}")
        if key in self.edges:
            raise GraphModelError(f"duplicate edge {key!r} in instance {self.index}")
        if not (weight >= 0):
            raise GraphModelError(f"edge {key!r} has negative weight {weight}")
        self.edges[key] = EdgeData(float(weight), dict(attributes or {}))

    def remove_vertex(self, vid: str) -> None:
        if vid not in self.vertices:
            raise GraphModelError(f"no vertex {vid!r} in instance {self.index}")
        del self.vertices[vid]
        self.edges = {k: e for k, e in self.edges.items() if vid not in k}

    def remove_edge(self, u: str, v: str) -> None:
        key = edge_key(u, v)
        if key not in self.edges:
            raise GraphModelError(f"no edge {key!r} in instance {self.index}")
        del self.edges[key]

    def has_edge(self, u: str, v: str) -> bool:
        return edge_key(u, v) in self.edges

    def position(self, vid: str) -> Position:
        return self.vertices[vid].position

    def set_position(self, vid: str, position: Position) -> None:
        if vid not in self.vertices:
            raise GraphModelError(f"no vertex {vid!r} in instance {self.index}")
        self.vertices[vid].position = position

    def vertex_ids(self) -> list[str]:
        return sorted(self.vertices)

    def edge_keys(self) -> list[tuple[str, str]]:
        return sorted(self.edges)

    def degree(self, vid: str) -> int:
        return sum(1 for k in self.edges if vid in k)

    def copy(self) -> "GraphInstance":
        out = GraphInstance(self.index, self.timestamp)
        for vid, data in self.vertices.items():
            out.vertices[vid] = VertexData(data.position, dict(data.attributes))
        for key, data in self.edges.items():
            out.edges[key] = EdgeData(data.weight, dict(data.attributes))
        return out

    def __eq__(self, other):
        if not isinstance(other, GraphInstance):
            return NotImplemented
        return (self.index == other.index and self.timestamp == other.timestamp
                and self.vertices == other.vertices and self.edges == other.edges)

    def __repr__(self):
        return (f"GraphInstance(index={self.index}, timestamp={self.timestamp!r}, "
                f"|V|={len(self.vertices)}, |E|={len(self.edges)})")


def _timestamp_key(ts) -> tuple:
    # ints sort before strings; mixed documents stay totally ordered
    return (0, ts, "") if isinstance(ts, (int, float)) else (1, 0, str(ts))


class EvolvingGraph:
    """Ordered sequence of graph instances (p >= 1 once populated)."""

    def __init__(self, name: str = "", instances: list[GraphInstance] | None = None):
        self.name = name
        self.instances: list[GraphInstance] = list(instances or [])
        if self.instances:
            self.validate()

    @property
    def p(self) -> int:
        return len(self.instances)

    def __len__(self) -> int:
        return len(self.instances)

    def __iter__(self):
        return iter(self.instances)

    def __getitem__(self, i: int) -> GraphInstance:
        return self.instances[i]

    def new_instance(self, timestamp: int | str | None = None) -> GraphInstance:
        """Append an empty instance; timestamp defaults to the next index."""
        inst = GraphInstance(len(self.instances),
                             len(self.instances) if timestamp is None else timestamp)
        if self.instances:
            prev = self.instances[-1].timestamp
            if _timestamp_key(inst.timestamp) < _timestamp_key(prev):
                raise GraphModelError(
                    f"timestamp {inst.timestamp!r} would decrease after {prev!r}")
        self.instances.append(inst)
        return inst

    def all_vertex_ids(self) -> list[str]:
        ids = set()
        for inst in self.instances:
            ids.update(inst.vertices)
        return sorted(ids)

    def validate(self) -> None:
        """Raise GraphModelError on any model invariant violation."""
        for i, inst in enumerate(self.instances):
            if inst.index != i:
                raise GraphModelError(f"instance at slot {i} carries index {inst.index}")
            for key, data in inst.edges.items():
                u, v = key
                if key != edge_key(u, v):
                    raise GraphModelError(f"edge key {key!r} is not normalized")
                if u not in inst.vertices or v not in inst.vertices:
                    raise GraphModelError(f"edge {key!r} dangles in instance {i}")
                if not (data.weight >= 0):
                    raise GraphModelError(f"edge {key!r} in instance {i} has negative weight")
        stamps = [_timestamp_key(inst.timestamp) for inst in self.instances]
        if any(b < a for a, b in zip(stamps, stamps[1:])):
            raise GraphModelError("timestamps must be non-decreasing")

    def copy(self) -> "EvolvingGraph":
        return EvolvingGraph(self.name, [inst.copy() for inst in self.instances])

    def __eq__(self, other):
        if not isinstance(other, EvolvingGraph):
            return NotImplemented
        return self.name == other.name and self.instances == other.instances

    def __repr__(self):
        return f"EvolvingGraph(name={self.name!r}, p={self.p})"


def shared_vertices(a: GraphInstance, b: GraphInstance) -> set[str]:
    """Vertex ids present in both instances (the matched pairs of the metrics)."""
    return set(a.vertices) & set(b.vertices)


def instance_window(eg: EvolvingGraph, i: int, w: int) -> list[int]:
    """Indices j with 0 < |i - j| <= w, clipped to the sequence, ascending.

    The window is symmetric: w instances on each side where they exist.
    w = 0 yields no neighbors.
    """
    if not 0 <= i < eg.p:
        raise IndexError(f"instance index {i} out of range 0..{eg.p - 1}")
    if w < 0:
        raise GraphModelError(f"window size must be >= 0, got {w}")
    lo = max(0, i - w)
    hi = min(eg.p - 1, i + w)
    return [j for j in range(lo, hi + 1) if j != i]


@dataclass
class GraphDelta:
    """Difference between two instances, rich enough to replay onto the first.

    added_vertices / added_edges carry their payloads (position, attributes,
    weight) so that apply_delta can reconstruct the target instance; their
    key views act as the plain id/key sets.
    """

    added_vertices: dict[str, VertexData] = field(default_factory=dict)
    removed_vertices: set[str] = field(default_factory=set)
    added_edges: dict[tuple[str, str], EdgeData] = field(default_factory=dict)
    removed_edges: set[tuple[str, str]] = field(default_factory=set)
    moved_vertices: dict[str, tuple[Position, Position]] = field(default_factory=dict)

    def is_empty(self) -> bool:
        return not (self.added_vertices or self.removed_vertices or self.added_edges
                    or self.removed_edges or self.moved_vertices)


def diff(a: GraphInstance, b: GraphInstance, move_epsilon: float = 1e-9) -> GraphDelta:
    """Key-wise delta from a to b; moves are shared vertices displaced > move_epsilon."""
    delta = GraphDelta()
    for vid, data in b.vertices.items():
        if vid not in a.vertices:
            delta.added_vertices[vid] = VertexData(data.position, dict(data.attributes))
    delta.removed_vertices = {vid for vid in a.vertices if vid not in b.vertices}
    for key, data in b.edges.items():
        if key not in a.edges:
            delta.added_edges[key] = EdgeData(data.weight, dict(data.attributes))
    delta.removed_edges = {key for key in a.edges if key not in b.edges}
    for vid in shared_vertices(a, b):
        pa, pb = a.position(vid), b.position(vid)
        if pa.distance_to(pb) > move_epsilon:
            delta.moved_vertices[vid] = (pa, pb)
    return delta


def apply_delta(a: GraphInstance, delta: GraphDelta) -> GraphInstance:
    """Replay a delta onto an instance; inverse of diff up to move_epsilon."""
    out = a.copy()
    for key in delta.removed_edges:
        out.remove_edge(*key)
    for vid in delta.removed_vertices:
        out.remove_vertex(vid)
    for vid, data in delta.added_vertices.items():
        out.add_vertex(vid, data.position, data.attributes)
    for key, data in delta.added_edges.items():
        out.add_edge(key[0], key[1], data.weight, data.attributes)
    for vid, (_, new) in delta.moved_vertices.items():
        out.set_position(vid, new)
    return out
