"""Movement metrics over an evolving layout.

All three measurements sum the Euclidean displacement of matched vertices
(same id in consecutive instances):

* total_distance: over every transition and every matched vertex;
* total_distance_per_graph: one transition i -> i+1;
* total_distance_per_vertex: one vertex across all transitions, together
  with the number of transitions in which it was matched.

Vertices absent from either side of a transition contribute nothing there;
a vertex never present in two consecutive instances reports (0, 0) and an
average of 0.  Summation follows a canonical order (ascending transition
index, ascending vertex id) so results are bit-reproducible.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

from .egml import EgmlDocument, attach_metric
from .errors import CoverageError
from .layout import EvolvingLayout
from .model import EvolvingGraph


def _dist(a, b) -> float:
    dx = a.x - b.x
    dy = a.y - b.y
    return math.sqrt(dx * dx + dy * dy)


def _pos(layout: EvolvingLayout, i: int, vid: str):
    try:
        return layout.positions[i][vid]
    except (IndexError, KeyError):
        raise CoverageError(f"layout has no position for vertex {vid!r} in instance {i}") from None


def total_distance_per_graph(layout: EvolvingLayout, eg: EvolvingGraph, i: int) -> float:
    """Movement summed over vertices matched between instance i and i+1."""
    if not 0 <= i < eg.p - 1:
        raise IndexError(f"transition index {i} out of range 0..{eg.p - 2} "
                         f"(instance {eg.p - 1} has no next instance)")
    a, b = eg.instances[i], eg.instances[i + 1]
    total = 0.0
    for vid in sorted(set(a.vertices) & set(b.vertices)):
        total += _dist(_pos(layout, i, vid), _pos(layout, i + 1, vid))
    return total


def total_distance(layout: EvolvingLayout, eg: EvolvingGraph) -> float:
    """Movement summed over all transitions; 0 for a single instance."""
    return sum(total_distance_per_graph(layout, eg, i) for i in range(eg.p - 1))


def total_distance_per_vertex(layout: EvolvingLayout, eg: EvolvingGraph,
                              vid: str) -> tuple[float, int]:
    """(total movement, number of transitions in which vid was matched)."""
    total = 0.0
    count = 0
    for i in range(eg.p - 1):
        a, b = eg.instances[i], eg.instances[i + 1]
        if vid in a.vertices and vid in b.vertices:
            total += _dist(_pos(layout, i, vid), _pos(layout, i + 1, vid))
            count += 1
    return total, count


@dataclass(frozen=True)
class VertexDistance:
    total: float
    transitions: int
    average: float


@dataclass
class DistanceReport:
    """All three measurements of one layout, ready for CSV or EGML export."""

    td_eg: float
    per_graph: list[float]  # transition i -> i+1 at index i
    per_vertex: dict[str, VertexDistance]

    def rows_by_average(self) -> list[tuple[str, VertexDistance]]:
        return sorted(self.per_vertex.items(), key=lambda kv: (kv[1].average, kv[0]))

    def to_csv(self) -> bytes:
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["vertex_id", "total_distance", "transitions", "avg"])
        for vid in sorted(self.per_vertex):
            row = self.per_vertex[vid]
            writer.writerow([vid, repr(row.total), row.transitions, repr(row.average)])
        return buf.getvalue().encode("utf-8")


def distance_report(layout: EvolvingLayout, eg: EvolvingGraph) -> DistanceReport:
    layout.check_covers(eg)
    per_graph = [total_distance_per_graph(layout, eg, i) for i in range(eg.p - 1)]
    per_vertex = {}
    for vid in eg.all_vertex_ids():
        total, count = total_distance_per_vertex(layout, eg, vid)
        average = total / count if count > 0 else 0.0
        per_vertex[vid] = VertexDistance(total, count, average)
    return DistanceReport(sum(per_graph), per_graph, per_vertex)


def attach_report(doc: EgmlDocument, report: DistanceReport,
                  algorithm_name: str = "") -> EgmlDocument:
    """Persist a report into the document's metric elements.

    Instance i (i < p-1) receives the scalar movement of its outgoing
    transition; instance 0 additionally carries the grand total and the
    whole per-transition series.
    """
    attach_metric(doc, 0, "total-distance", algorithm_name, report.td_eg)
    if report.per_graph:
        attach_metric(doc, 0, "total-distance-series", algorithm_name, list(report.per_graph))
    for i, value in enumerate(report.per_graph):
        attach_metric(doc, i, "total-distance-per-graph", algorithm_name, value)
    return doc
