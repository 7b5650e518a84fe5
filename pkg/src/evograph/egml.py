"""EGML: the XML interchange format for evolving graphs.

EGML extends the XGMML graph vocabulary with evolving-graph, graph-instance,
timestamp, metric, cluster, rank and prediction elements.  The grammar is::

    evolving-graph  (graph-instance*, prediction?)
    graph-instance  (graph, timestamp, metric*, cluster?, rank?)
    graph           (att*, (node | edge)*)
    node            (graphics?, att*)
    edge            (graphics?, att*)
    graphics        ((Line? | center?), att*)
    metric          (value | value-list)
    value-list      (value*)
    cluster         (node-set*)        node-set (node*)
    rank            (rank-element*)    rank-element ((node | edge), position, value)
    prediction      (timestamp, rank-element*)

Structural validation is implemented natively against this grammar; no
external schema engine is involved.  Vertex positions live on the node's
graphics child (x/y attributes, center child accepted on input); edge
weights on a weight attribute, with an att child named "weight" accepted
and a default of 1.0.  Attributes the engine does not model are preserved
opaquely and re-emitted on serialization, keyed by element path.

Serialization is deterministic: instances by index, vertices by id, edges
by sorted endpoint pair, fixed attribute order, so equal documents produce
byte-identical files.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from xml.sax.saxutils import escape, quoteattr

from .errors import EgmlError
from .model import EvolvingGraph, GraphInstance, Position

EGML_NAMESPACE = "http://www.cs.rpi.edu/XGMML"

ERROR = "error"
WARNING = "warning"


@dataclass(frozen=True)
class ValidationIssue:
    severity: str
    element_path: str
    message: str

    def __str__(self):
        return f"{self.severity}: {self.element_path}: {self.message}"


@dataclass
class MetricRecord:
    """A named measurement attached to a graph instance.

    payload is a plain float (serialized as a value element) or a list of
    floats (serialized as a value-list with its count attribute).
    """

    name: str = ""
    algorithm_name: str = ""
    payload: float | list[float] = 0.0


@dataclass
class ClusterRecord:
    name: str = ""
    algorithm_name: str = ""
    node_sets: list[list[str]] = field(default_factory=list)


@dataclass
class RankEntry:
    ref: tuple[str, ...]  # ("node", id) or ("edge", source, target)
    position: int
    value: float


@dataclass
class RankRecord:
    name: str = ""
    algorithm_name: str = ""
    entries: list[RankEntry] = field(default_factory=list)


@dataclass
class PredictionRecord:
    timestamp: int | str = 0
    name: str = ""
    algorithm_name: str = ""
    entries: list[RankEntry] = field(default_factory=list)


@dataclass
class EgmlDocument:
    """An evolving graph plus every carried payload from the file."""

    evolving_graph: EvolvingGraph
    instance_metrics: list[list[MetricRecord]] = field(default_factory=list)
    instance_clusters: list[ClusterRecord | None] = field(default_factory=list)
    instance_ranks: list[RankRecord | None] = field(default_factory=list)
    prediction: PredictionRecord | None = None
    unknown_atts: dict[str, dict[str, str]] = field(default_factory=dict)
    issues: list[ValidationIssue] = field(default_factory=list, compare=False)

    def __post_init__(self):
        p = self.evolving_graph.p
        while len(self.instance_metrics) < p:
            self.instance_metrics.append([])
        while len(self.instance_clusters) < p:
            self.instance_clusters.append(None)
        while len(self.instance_ranks) < p:
            self.instance_ranks.append(None)


def attach_metric(doc: EgmlDocument, instance: int, name: str,
                  algorithm_name: str, payload: float | list[float]) -> EgmlDocument:
    """Append a MetricRecord to an instance; it will be serialized with the doc."""
    if not 0 <= instance < doc.evolving_graph.p:
        raise EgmlError(f"instance {instance} out of range 0..{doc.evolving_graph.p - 1}")
    if isinstance(payload, (list, tuple)):
        payload = [float(v) for v in payload]
    else:
        payload = float(payload)
    doc.instance_metrics[instance].append(MetricRecord(name, algorithm_name, payload))
    return doc


# ---------------------------------------------------------------------------
# parsing


def _local(tag: str) -> str:
    if tag.startswith("{"):
        ns, _, name = tag[1:].partition("}")
        return name if ns == EGML_NAMESPACE else f"{{{ns}}}{name}"
    return tag


_KNOWN_ATTS = {
    "evolving-graph": {"name", "no"},
    "graph-instance": set(),
    "graph": set(),
    "node": {"id", "name", "label"},
    "edge": {"source", "target", "weight", "label", "name"},
    "graphics": {"x", "y"},
    "center": {"x", "y"},
    "metric": {"name", "algorithm-name"},
    "value": set(),
    "value-list": {"no"},
    "cluster": {"name", "algorithm-name"},
    "node-set": set(),
    "rank": {"name", "algorithm-name"},
    "rank-element": set(),
    "position": set(),
    "timestamp": set(),
    "prediction": {"name", "algorithm-name"},
    "ref-node": {"id", "name"},
    "ref-edge": {"source", "target"},
}

# child grammar: list of (allowed names, min, max); None max = unbounded
_GRAMMAR = {
    "evolving-graph": [(("graph-instance",), 0, None), (("prediction",), 0, 1)],
    "graph-instance": [(("graph",), 1, 1), (("timestamp",), 1, 1),
                       (("metric",), 0, None), (("cluster",), 0, 1), (("rank",), 0, 1)],
    "graph": [(("att",), 0, None), (("node", "edge"), 0, None)],
    "node": [(("graphics",), 0, 1), (("att",), 0, None)],
    "edge": [(("graphics",), 0, 1), (("att",), 0, None)],
    "graphics": [(("Line", "center"), 0, 1), (("att",), 0, None)],
    "metric": [(("value", "value-list"), 1, 1)],
    "value-list": [(("value",), 0, None)],
    "cluster": [(("node-set",), 0, None)],
    "node-set": [(("node",), 0, None)],
    "rank": [(("rank-element",), 0, None)],
    "rank-element": [(("node", "edge"), 1, 1), (("position",), 1, 1), (("value",), 1, 1)],
    "prediction": [(("timestamp",), 1, 1), (("rank-element",), 0, None)],
}


class _Parser:
    """Best-effort tree walk that accumulates issues rather than bailing out."""

    def __init__(self):
        self.issues: list[ValidationIssue] = []
        self.unknown_atts: dict[str, dict[str, str]] = {}

    def error(self, path: str, message: str) -> None:
        self.issues.append(ValidationIssue(ERROR, path, message))

    def warning(self, path: str, message: str) -> None:
        self.issues.append(ValidationIssue(WARNING, path, message))

    def take_atts(self, el: ET.Element, path: str, kind: str) -> dict[str, str]:
        """Split attributes into the known set; stash the rest in the opaque bag."""
        known = {}
        unknown = {}
        for key, value in el.attrib.items():
            name = _local(key)
            if name in _KNOWN_ATTS.get(kind, set()):
                known[name] = value
            else:
                unknown[name] = value
        if unknown:
            self.unknown_atts[path] = unknown
            for name in unknown:
                self.warning(path, f"unknown attribute {name!r} preserved opaquely")
        return known

    def match_children(self, el: ET.Element, path: str, kind: str) -> list[tuple[str, ET.Element]]:
        """Check child order/cardinality against the grammar; return (name, element) pairs."""
        children = [(_local(c.tag), c) for c in el]
        slots = _GRAMMAR.get(kind, [])
        out = []
        pos = 0
        for names, lo, hi in slots:
            count = 0
            while pos < len(children) and children[pos][0] in names and (hi is None or count < hi):
                out.append(children[pos])
                pos += 1
                count += 1
            if count < lo:
                self.error(path, f"missing required child {' or '.join(names)}")
        for name, child in children[pos:]:
            self.error(f"{path}/{name}", "element not allowed here")
        return out

    def parse_float(self, text: str | None, path: str, what: str) -> float | None:
        try:
            return float((text or "").strip())
        except ValueError:
            self.error(path, f"{what} is not a number: {text!r}")
            return None

    def parse_timestamp(self, el: ET.Element, path: str) -> int | str:
        text = (el.text or "").strip()
        try:
            return int(text)
        except ValueError:
            return text

    # -- per element ------------------------------------------------------

    def parse_document(self, root: ET.Element) -> EgmlDocument:
        path = "evolving-graph"
        name = _local(root.tag)
        if name != "evolving-graph":
            self.error(name, "root element must be evolving-graph")
            return EgmlDocument(EvolvingGraph())
        atts = self.take_atts(root, path, "evolving-graph")
        eg = EvolvingGraph(name=atts.get("name", ""))
        metrics: list[list[MetricRecord]] = []
        clusters: list[ClusterRecord | None] = []
        ranks: list[RankRecord | None] = []
        prediction = None
        index = 0
        for child_name, child in self.match_children(root, path, "evolving-graph"):
            if child_name == "graph-instance":
                cpath = f"{path}/graph-instance[{index}]"
                inst, m, c, r = self.parse_instance(child, cpath, index)
                eg.instances.append(inst)
                metrics.append(m)
                clusters.append(c)
                ranks.append(r)
                index += 1
            elif child_name == "prediction":
                prediction = self.parse_prediction(child, f"{path}/prediction")
        if "no" in atts:
            declared = self.parse_float(atts["no"], path, "count attribute")
            if declared is not None and int(declared) != eg.p:
                self.error(path, f"count attribute says {atts['no']} but document has {eg.p} instances")
        stamps = [inst.timestamp for inst in eg.instances]
        from .model import _timestamp_key
        keyed = [_timestamp_key(t) for t in stamps]
        if any(b < a for a, b in zip(keyed, keyed[1:])):
            self.error(path, "timestamps must be non-decreasing across graph instances")
        return EgmlDocument(eg, metrics, clusters, ranks, prediction, self.unknown_atts)

    def parse_instance(self, el: ET.Element, path: str, index: int):
        self.take_atts(el, path, "graph-instance")
        inst = GraphInstance(index, index)
        metrics: list[MetricRecord] = []
        cluster = None
        rank = None
        saw_timestamp = False
        for name, child in self.match_children(el, path, "graph-instance"):
            if name == "graph":
                self.parse_graph(child, f"{path}/graph", inst)
            elif name == "timestamp":
                inst.timestamp = self.parse_timestamp(child, f"{path}/timestamp")
                saw_timestamp = True
            elif name == "metric":
                metrics.append(self.parse_metric(child, f"{path}/metric[{len(metrics)}]"))
            elif name == "cluster":
                cluster = self.parse_cluster(child, f"{path}/cluster", inst)
            elif name == "rank":
                rank = self.parse_rank(child, f"{path}/rank", inst)
        if not saw_timestamp:
            inst.timestamp = index
        return inst, metrics, cluster, rank

    def parse_graph(self, el: ET.Element, path: str, inst: GraphInstance) -> None:
        self.take_atts(el, path, "graph")
        graph_atts: dict[str, str] = {}
        pending_edges = []
        for name, child in self.match_children(el, path, "graph"):
            if name == "att":
                att_name, att_value = self.parse_att(child, f"{path}/att")
                if att_name is not None:
                    graph_atts[att_name] = att_value
            elif name == "node":
                self.parse_node(child, path, inst)
            elif name == "edge":
                pending_edges.append(child)
        if graph_atts:
            self.unknown_atts[f"{path}/att"] = graph_atts
        for child in pending_edges:
            self.parse_edge(child, path, inst)

    def parse_att(self, el: ET.Element, path: str):
        name = el.get("name")
        value = el.get("value", (el.text or "").strip())
        if name is None:
            self.error(path, "att element has no name attribute")
            return None, None
        return name, value

    def parse_node(self, el: ET.Element, path: str, inst: GraphInstance) -> None:
        vid = el.get("id") or el.get("name")
        npath = f"{path}/node[{vid or '?'}]"
        atts = self.take_atts(el, npath, "node")
        if not vid:
            self.error(npath, "node has neither id nor name")
            return
        if vid in inst.vertices:
            self.error(npath, f"duplicate node id {vid!r}")
            return
        attributes = {}
        for key in ("name", "label"):
            if key in atts:
                attributes[key] = atts[key]
        position = None
        for name, child in self.match_children(el, npath, "node"):
            if name == "graphics":
                position = self.parse_graphics(child, f"{npath}/graphics")
            elif name == "att":
                att_name, att_value = self.parse_att(child, f"{npath}/att")
                if att_name is not None:
                    attributes[att_name] = att_value
        if position is None:
            self.warning(npath, "node has no graphics; position defaults to (0, 0)")
            position = Position(0.0, 0.0)
        inst.add_vertex(vid, position, attributes)

    def parse_graphics(self, el: ET.Element, path: str) -> Position:
        atts = self.take_atts(el, path, "graphics")
        x = atts.get("x")
        y = atts.get("y")
        for name, child in self.match_children(el, path, "graphics"):
            if name == "center":
                catts = self.take_atts(child, f"{path}/center", "center")
                x = x if x is not None else catts.get("x")
                y = y if y is not None else catts.get("y")
        fx = self.parse_float(x, path, "x") if x is not None else 0.0
        fy = self.parse_float(y, path, "y") if y is not None else 0.0
        return Position(fx if fx is not None else 0.0, fy if fy is not None else 0.0)

    def parse_edge(self, el: ET.Element, path: str, inst: GraphInstance) -> None:
        source = el.get("source")
        target = el.get("target")
        epath = f"{path}/edge[{source or '?'}|{target or '?'}]"
        atts = self.take_atts(el, epath, "edge")
        if not source or not target:
            self.error(epath, "edge needs source and target attributes")
            return
        attributes = {}
        weight_text = atts.get("weight")
        for name, child in self.match_children(el, epath, "edge"):
            if name == "att":
                att_name, att_value = self.parse_att(child, f"{epath}/att")
                if att_name is None:
                    continue
                attributes[att_name] = att_value
                if att_name == "weight" and weight_text is None:
                    weight_text = att_value
            elif name == "graphics":
                self.take_atts(child, f"{epath}/graphics", "graphics")
        for key in ("label", "name"):
            if key in atts:
                attributes[key] = atts[key]
        weight = 1.0
        if weight_text is not None:
            parsed = self.parse_float(weight_text, epath, "weight")
            if parsed is not None:
                weight = parsed
        if source == target:
            self.error(epath, "self loops are not allowed")
            return
        if source not in inst.vertices or target not in inst.vertices:
            missing = source if source not in inst.vertices else target
            self.error(epath, f"edge endpoint {missing!r} is not a node of this graph")
            return
        if inst.has_edge(source, target):
            self.error(epath, "duplicate edge for this endpoint pair")
            return
        if weight < 0:
            self.error(epath, f"negative weight {weight}")
            return
        inst.add_edge(source, target, weight, attributes)

    def parse_metric(self, el: ET.Element, path: str) -> MetricRecord:
        atts = self.take_atts(el, path, "metric")
        record = MetricRecord(atts.get("name", ""), atts.get("algorithm-name", ""))
        for name, child in self.match_children(el, path, "metric"):
            if name == "value":
                value = self.parse_float(child.text, f"{path}/value", "value")
                record.payload = value if value is not None else 0.0
            elif name == "value-list":
                record.payload = self.parse_value_list(child, f"{path}/value-list")
        return record

    def parse_value_list(self, el: ET.Element, path: str) -> list[float]:
        atts = self.take_atts(el, path, "value-list")
        values = []
        for name, child in self.match_children(el, path, "value-list"):
            value = self.parse_float(child.text, f"{path}/value[{len(values)}]", "value")
            values.append(value if value is not None else 0.0)
        if "no" in atts:
            try:
                declared = int(atts["no"])
            except ValueError:
                declared = None
                self.error(path, f"count attribute is not an integer: {atts['no']!r}")
            if declared is not None and declared != len(values):
                self.error(path, f"count attribute says {declared} but list has {len(values)} values")
        return values

    def parse_ref(self, el: ET.Element, name: str, path: str, inst: GraphInstance | None,
                  severity: str = ERROR) -> tuple[str, ...] | None:
        if name == "node":
            vid = el.get("id") or el.get("name")
            self.take_atts(el, path, "ref-node")
            if not vid:
                self.error(path, "node reference has no id")
                return None
            if inst is not None and vid not in inst.vertices:
                self.issues.append(ValidationIssue(
                    severity, path, f"node reference {vid!r} does not resolve in this instance"))
                if severity == ERROR:
                    return None
            return ("node", vid)
        source, target = el.get("source"), el.get("target")
        self.take_atts(el, path, "ref-edge")
        if not source or not target:
            self.error(path, "edge reference needs source and target")
            return None
        if inst is not None and not (source in inst.vertices and target in inst.vertices
                                     and inst.has_edge(source, target)):
            self.issues.append(ValidationIssue(
                severity, path, f"edge reference ({source!r}, {target!r}) does not resolve in this instance"))
            if severity == ERROR:
                return None
        return ("edge", source, target)

    def parse_cluster(self, el: ET.Element, path: str, inst: GraphInstance) -> ClusterRecord:
        atts = self.take_atts(el, path, "cluster")
        record = ClusterRecord(atts.get("name", ""), atts.get("algorithm-name", ""))
        for name, child in self.match_children(el, path, "cluster"):
            spath = f"{path}/node-set[{len(record.node_sets)}]"
            self.take_atts(child, spath, "node-set")
            members = []
            for cname, node in self.match_children(child, spath, "node-set"):
                ref = self.parse_ref(node, "node", f"{spath}/node[{len(members)}]", inst)
                if ref is not None:
                    members.append(ref[1])
            record.node_sets.append(members)
        return record

    def parse_rank_element(self, el: ET.Element, path: str,
                           inst: GraphInstance | None, severity: str = ERROR) -> RankEntry | None:
        ref = None
        position = None
        value = None
        for name, child in self.match_children(el, path, "rank-element"):
            if name in ("node", "edge"):
                ref = self.parse_ref(child, name, f"{path}/{name}", inst, severity)
            elif name == "position":
                text = (child.text or "").strip()
                try:
                    position = int(text)
                except ValueError:
                    self.error(f"{path}/position", f"position is not an integer: {text!r}")
                else:
                    if position < 1:
                        self.error(f"{path}/position", f"position must be a positive integer, got {position}")
                        position = None
            elif name == "value":
                value = self.parse_float(child.text, f"{path}/value", "value")
        if ref is None or position is None or value is None:
            return None
        return RankEntry(ref, position, value)

    def parse_rank(self, el: ET.Element, path: str, inst: GraphInstance) -> RankRecord:
        atts = self.take_atts(el, path, "rank")
        record = RankRecord(atts.get("name", ""), atts.get("algorithm-name", ""))
        for name, child in self.match_children(el, path, "rank"):
            entry = self.parse_rank_element(child, f"{path}/rank-element[{len(record.entries)}]", inst)
            if entry is not None:
                record.entries.append(entry)
        return record

    def parse_prediction(self, el: ET.Element, path: str) -> PredictionRecord:
        atts = self.take_atts(el, path, "prediction")
        record = PredictionRecord(0, atts.get("name", ""), atts.get("algorithm-name", ""))
        for name, child in self.match_children(el, path, "prediction"):
            if name == "timestamp":
                record.timestamp = self.parse_timestamp(child, f"{path}/timestamp")
            else:
                # prediction targets a future instance, so refs cannot be resolved here
                entry = self.parse_rank_element(
                    child, f"{path}/rank-element[{len(record.entries)}]", None, WARNING)
                if entry is not None:
                    record.entries.append(entry)
        return record


def _run_parser(data: bytes | str) -> tuple[EgmlDocument | None, list[ValidationIssue]]:
    parser = _Parser()
    try:
        root = ET.fromstring(data)
    except ET.ParseError as exc:
        line, column = getattr(exc, "position", (0, 0))
        parser.error("", f"malformed XML at line {line}, column {column}: {exc.msg if hasattr(exc, 'msg') else exc}")
        return None, parser.issues
    doc = parser.parse_document(root)
    return doc, parser.issues


def parse_egml(data: bytes | str, strict: bool = True) -> EgmlDocument:
    """Parse EGML bytes into a document.

    strict=True raises EgmlError on any structural error; strict=False
    returns a best-effort document with all issues (errors included)
    recorded on doc.issues.
    """
    doc, issues = _run_parser(data)
    errors = [i for i in issues if i.severity == ERROR]
    if strict and errors:
        first = errors[0]
        raise EgmlError(f"{first.element_path}: {first.message}", issues)
    if doc is None:
        raise EgmlError("document is not well-formed XML", issues)
    doc.issues = issues
    return doc


def validate(data: bytes | str) -> list[ValidationIssue]:
    """All structural issues for the given bytes; empty iff a strict parse succeeds
    with nothing to warn about."""
    _, issues = _run_parser(data)
    return issues


# ---------------------------------------------------------------------------
# serialization


def _fmt(value: float) -> str:
    return repr(float(value))


def _att_str(pairs: list[tuple[str, str]]) -> str:
    return "".join(f" {name}={quoteattr(value)}" for name, value in pairs)


class _Writer:
    def __init__(self, doc: EgmlDocument):
        self.doc = doc
        self.lines: list[str] = []

    def extra(self, path: str) -> list[tuple[str, str]]:
        bag = self.doc.unknown_atts.get(path, {})
        return list(bag.items())

    def line(self, depth: int, text: str) -> None:
        self.lines.append("  " * depth + text)

    def write(self) -> bytes:
        doc = self.doc
        eg = doc.evolving_graph
        self.lines = ['<?xml version="1.0" encoding="UTF-8"?>']
        atts = [("xmlns", EGML_NAMESPACE)]
        if eg.name:
            atts.append(("name", eg.name))
        atts.append(("no", str(eg.p)))
        atts += self.extra("evolving-graph")
        self.line(0, f"<evolving-graph{_att_str(atts)}>")
        for inst in eg.instances:
            self.write_instance(inst)
        if doc.prediction is not None:
            self.write_prediction(doc.prediction)
        self.line(0, "</evolving-graph>")
        return ("\n".join(self.lines) + "\n").encode("utf-8")

    def write_instance(self, inst: GraphInstance) -> None:
        doc = self.doc
        path = f"evolving-graph/graph-instance[{inst.index}]"
        self.line(1, f"<graph-instance{_att_str(self.extra(path))}>")
        self.write_graph(inst, f"{path}/graph")
        self.line(2, f"<timestamp>{escape(str(inst.timestamp))}</timestamp>")
        for j, metric in enumerate(doc.instance_metrics[inst.index]):
            self.write_metric(metric, f"{path}/metric[{j}]")
        cluster = doc.instance_clusters[inst.index]
        if cluster is not None:
            self.write_cluster(cluster, f"{path}/cluster")
        rank = doc.instance_ranks[inst.index]
        if rank is not None:
            self.write_rank(rank, f"{path}/rank")
        self.line(1, "</graph-instance>")

    def write_graph(self, inst: GraphInstance, path: str) -> None:
        self.line(2, f"<graph{_att_str(self.extra(path))}>")
        for name, value in self.extra(f"{path}/att"):
            self.line(3, f"<att name={quoteattr(name)} value={quoteattr(value)}/>")
        for vid in inst.vertex_ids():
            self.write_node(vid, inst, path)
        for key in inst.edge_keys():
            self.write_edge(key, inst, path)
        self.line(2, "</graph>")

    def write_node(self, vid: str, inst: GraphInstance, path: str) -> None:
        data = inst.vertices[vid]
        npath = f"{path}/node[{vid}]"
        atts = [("id", vid)]
        for key in ("name", "label"):
            if key in data.attributes:
                atts.append((key, data.attributes[key]))
        atts += self.extra(npath)
        gq = [("x", _fmt(data.position.x)), ("y", _fmt(data.position.y))]
        gq += self.extra(f"{npath}/graphics")
        rest = sorted(k for k in data.attributes if k not in ("name", "label"))
        if not rest:
            self.line(3, f"<node{_att_str(atts)}><graphics{_att_str(gq)}/></node>")
            return
        self.line(3, f"<node{_att_str(atts)}>")
        self.line(4, f"<graphics{_att_str(gq)}/>")
        for key in rest:
            self.line(4, f"<att name={quoteattr(key)} value={quoteattr(data.attributes[key])}/>")
        self.line(3, "</node>")

    def write_edge(self, key: tuple[str, str], inst: GraphInstance, path: str) -> None:
        data = inst.edges[key]
        epath = f"{path}/edge[{key[0]}|{key[1]}]"
        atts = [("source", key[0]), ("target", key[1]), ("weight", _fmt(data.weight))]
        for k in ("label", "name"):
            if k in data.attributes:
                atts.append((k, data.attributes[k]))
        atts += self.extra(epath)
        rest = sorted(k for k in data.attributes if k not in ("label", "name"))
        if not rest:
            self.line(3, f"<edge{_att_str(atts)}/>")
            return
        self.line(3, f"<edge{_att_str(atts)}>")
        for k in rest:
            self.line(4, f"<att name={quoteattr(k)} value={quoteattr(data.attributes[k])}/>")
        self.line(3, "</edge>")

    def write_metric(self, metric: MetricRecord, path: str) -> None:
        atts = []
        if metric.name:
            atts.append(("name", metric.name))
        if metric.algorithm_name:
            atts.append(("algorithm-name", metric.algorithm_name))
        atts += self.extra(path)
        self.line(2, f"<metric{_att_str(atts)}>")
        if isinstance(metric.payload, list):
            self.line(3, f'<value-list no="{len(metric.payload)}">')
            for value in metric.payload:
                self.line(4, f"<value>{_fmt(value)}</value>")
            self.line(3, "</value-list>")
        else:
            self.line(3, f"<value>{_fmt(metric.payload)}</value>")
        self.line(2, "</metric>")

    def write_cluster(self, cluster: ClusterRecord, path: str) -> None:
        atts = []
        if cluster.name:
            atts.append(("name", cluster.name))
        if cluster.algorithm_name:
            atts.append(("algorithm-name", cluster.algorithm_name))
        atts += self.extra(path)
        self.line(2, f"<cluster{_att_str(atts)}>")
        for i, members in enumerate(cluster.node_sets):
            spath = f"{path}/node-set[{i}]"
            self.line(3, f"<node-set{_att_str(self.extra(spath))}>")
            for vid in members:
                self.line(4, f"<node id={quoteattr(vid)}/>")
            self.line(3, "</node-set>")
        self.line(2, "</cluster>")

    def write_rank_entry(self, entry: RankEntry, depth: int) -> None:
        self.line(depth, "<rank-element>")
        if entry.ref[0] == "node":
            self.line(depth + 1, f"<node id={quoteattr(entry.ref[1])}/>")
        else:
            self.line(depth + 1,
                      f"<edge source={quoteattr(entry.ref[1])} target={quoteattr(entry.ref[2])}/>")
        self.line(depth + 1, f"<position>{entry.position}</position>")
        self.line(depth + 1, f"<value>{_fmt(entry.value)}</value>")
        self.line(depth, "</rank-element>")

    def write_rank(self, rank: RankRecord, path: str) -> None:
        atts = []
        if rank.name:
            atts.append(("name", rank.name))
        if rank.algorithm_name:
            atts.append(("algorithm-name", rank.algorithm_name))
        atts += self.extra(path)
        self.line(2, f"<rank{_att_str(atts)}>")
        for entry in rank.entries:
            self.write_rank_entry(entry, 3)
        self.line(2, "</rank>")

    def write_prediction(self, prediction: PredictionRecord) -> None:
        atts = []
        if prediction.name:
            atts.append(("name", prediction.name))
        if prediction.algorithm_name:
            atts.append(("algorithm-name", prediction.algorithm_name))
        atts += self.extra("evolving-graph/prediction")
        self.line(1, f"<prediction{_att_str(atts)}>")
        self.line(2, f"<timestamp>{escape(str(prediction.timestamp))}</timestamp>")
        for entry in prediction.entries:
            self.write_rank_entry(entry, 2)
        self.line(1, "</prediction>")


def serialize_egml(doc: EgmlDocument) -> bytes:
    """Serialize a document to deterministic UTF-8 EGML bytes."""
    doc.evolving_graph.validate()
    return _Writer(doc).write()


def document_for(eg: EvolvingGraph) -> EgmlDocument:
    """Wrap a bare evolving graph in an empty document."""
    return EgmlDocument(eg)


def write_egml(eg_or_doc: EvolvingGraph | EgmlDocument, path) -> None:
    doc = eg_or_doc if isinstance(eg_or_doc, EgmlDocument) else document_for(eg_or_doc)
    with open(path, "wb") as fh:
        fh.write(serialize_egml(doc))


def read_egml(path, strict: bool = True) -> EgmlDocument:
    with open(path, "rb") as fh:
        return parse_egml(fh.read(), strict=strict)
