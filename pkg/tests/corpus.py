"""EGML fixture corpus: seeded valid documents and hand-broken invalid ones."""

from __future__ import annotations

import random

from evograph.egml import (ClusterRecord, EgmlDocument, MetricRecord,
                           PredictionRecord, RankEntry, RankRecord,
                           serialize_egml)
from evograph.model import EvolvingGraph, Position


def random_document(seed: int) -> EgmlDocument:
    rng = random.Random(seed)
    eg = EvolvingGraph(f"doc{seed}")
    p = rng.randint(1, 5)
    pool = [f"n{i}" for i in range(1, rng.randint(3, 8))]
    for i in range(p):
        inst = eg.new_instance(1950 + i)
        members = sorted(rng.sample(pool, rng.randint(1, len(pool))))
        for vid in members:
            attrs = {}
            if rng.random() < 0.4:
                attrs["label"] = vid.upper()
            if rng.random() < 0.3:
                attrs["group"] = rng.choice(["a", "b"])
            inst.add_vertex(vid, Position(round(rng.uniform(0, 1000), 3),
                                          round(rng.uniform(0, 1000), 3)), attrs)
        for a in range(len(members)):
            for b in range(a + 1, len(members)):
                if rng.random() < 0.5:
                    inst.add_edge(members[a], members[b],
                                  rng.choice([1.0, 2.5, 7.0]),
                                  {"kind": "x"} if rng.random() < 0.3 else None)
    doc = EgmlDocument(eg)
    for i in range(p):
        if rng.random() < 0.7:
            doc.instance_metrics[i].append(MetricRecord("score", "algo-a", rng.uniform(0, 10)))
        if rng.random() < 0.5:
            doc.instance_metrics[i].append(
                MetricRecord("series", "algo-b", [round(rng.uniform(0, 1), 6) for _ in range(3)]))
        members = sorted(eg.instances[i].vertices)
        if rng.random() < 0.4 and len(members) >= 2:
            doc.instance_clusters[i] = ClusterRecord(
                "parts", "algo-c", [members[: len(members) // 2], members[len(members) // 2:]])
        if rng.random() < 0.4:
            doc.instance_ranks[i] = RankRecord("top", "algo-d", [
                RankEntry(("node", members[0]), 1, rng.uniform(0, 1))])
    if rng.random() < 0.5:
        doc.prediction = PredictionRecord(2000 + p, "next", "algo-e", [
            RankEntry(("node", pool[0]), 1, 0.5)])
    return doc


def valid_corpus(n: int = 40) -> list[bytes]:
    return [serialize_egml(random_document(seed)) for seed in range(n)]


_HEAD = '<?xml version="1.0" encoding="UTF-8"?>\n'
_NS = 'xmlns="http://www.cs.rpi.edu/XGMML"'


def _doc(body: str) -> bytes:
    return (_HEAD + f"<evolving-graph {_NS}>" + body + "</evolving-graph>").encode()


def _instance(graph: str = '<graph><node id="a"/><node id="b"/></graph>',
              rest: str = "<timestamp>1999</timestamp>") -> str:
    return f"<graph-instance>{graph}{rest}</graph-instance>"


def invalid_corpus() -> dict[str, bytes]:
    """Each entry violates exactly one structural rule."""
    ok_graph = '<graph><node id="a"/><node id="b"/></graph>'
    return {
        "missing-timestamp": _doc(_instance(rest="")),
        "missing-graph": _doc("<graph-instance><timestamp>1999</timestamp></graph-instance>"),
        "two-graphs": _doc(_instance(rest=f"{ok_graph}<timestamp>1999</timestamp>")),
        "two-timestamps": _doc(_instance(rest="<timestamp>1</timestamp><timestamp>2</timestamp>")),
        "prediction-before-instances": _doc(
            "<prediction><timestamp>2001</timestamp></prediction>" + _instance()),
        "two-predictions": _doc(_instance()
                                + "<prediction><timestamp>1</timestamp></prediction>" * 2),
        "rank-element-missing-position": _doc(_instance(
            rest="<timestamp>1999</timestamp><rank><rank-element><node id=\"a\"/>"
                 "<value>0.5</value></rank-element></rank>")),
        "rank-element-missing-value": _doc(_instance(
            rest="<timestamp>1999</timestamp><rank><rank-element><node id=\"a\"/>"
                 "<position>1</position></rank-element></rank>")),
        "rank-element-missing-ref": _doc(_instance(
            rest="<timestamp>1999</timestamp><rank><rank-element><position>1</position>"
                 "<value>0.5</value></rank-element></rank>")),
        "rank-position-not-positive": _doc(_instance(
            rest="<timestamp>1999</timestamp><rank><rank-element><node id=\"a\"/>"
                 "<position>0</position><value>0.5</value></rank-element></rank>")),
        "rank-ref-unresolved": _doc(_instance(
            rest="<timestamp>1999</timestamp><rank><rank-element><node id=\"zz\"/>"
                 "<position>1</position><value>0.5</value></rank-element></rank>")),
        "cluster-ref-unresolved": _doc(_instance(
            rest="<timestamp>1999</timestamp><cluster><node-set><node id=\"zz\"/>"
                 "</node-set></cluster>")),
        "cluster-after-rank": _doc(_instance(
            rest="<timestamp>1999</timestamp><rank/><cluster/>")),
        "dangling-edge": _doc(_instance(
            graph='<graph><node id="a"/><edge source="a" target="ghost"/></graph>')),
        "self-loop": _doc(_instance(
            graph='<graph><node id="a"/><edge source="a" target="a"/></graph>')),
        "duplicate-edge": _doc(_instance(
            graph='<graph><node id="a"/><node id="b"/>'
                  '<edge source="a" target="b"/><edge source="b" target="a"/></graph>')),
        "duplicate-node": _doc(_instance(
            graph='<graph><node id="a"/><node id="a"/></graph>')),
        "node-without-id": _doc(_instance(graph="<graph><node/></graph>")),
        "edge-missing-target": _doc(_instance(
            graph='<graph><node id="a"/><edge source="a"/></graph>')),
        "negative-weight": _doc(_instance(
            graph='<graph><node id="a"/><node id="b"/>'
                  '<edge source="a" target="b" weight="-3"/></graph>')),
        "metric-empty": _doc(_instance(
            rest="<timestamp>1999</timestamp><metric name=\"m\"/>")),
        "metric-two-payloads": _doc(_instance(
            rest="<timestamp>1999</timestamp><metric><value>1</value>"
                 "<value-list/></metric>")),
        "value-list-count-mismatch": _doc(_instance(
            rest="<timestamp>1999</timestamp><metric><value-list no=\"3\">"
                 "<value>1</value></value-list></metric>")),
        "doc-count-mismatch": (_HEAD + f'<evolving-graph {_NS} no="5">' + _instance()
                               + "</evolving-graph>").encode(),
        "unknown-element": _doc(_instance(
            rest="<timestamp>1999</timestamp><banana/>")),
        "decreasing-timestamps": _doc(
            _instance(rest="<timestamp>2002</timestamp>")
            + _instance(rest="<timestamp>1998</timestamp>")),
        "value-not-number": _doc(_instance(
            rest="<timestamp>1999</timestamp><metric><value>abc</value></metric>")),
        "malformed-xml": b"<evolving-graph><graph-instance>",
        "wrong-root": (_HEAD + f"<graph {_NS}/>").encode(),
        "graphics-after-att": _doc(_instance(
            graph='<graph><node id="a"><att name="k" value="v"/><graphics x="1" y="2"/>'
                  "</node></graph>")),
    }
