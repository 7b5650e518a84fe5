"""Command-line entry points.

Subcommands: generate, ingest, layout, metrics, render, experiment,
validate, serve.  EGML flows through stdin/stdout (path "-") so the
commands compose into pipelines.

Exit codes: 0 success, 1 usage error, 2 data error.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import replace
from pathlib import Path

from . import egml, generators, ingest, render
from .errors import EvographError
from .experiment import run_experiment
from .layout import (Frame, LayoutConfig, circular_layout, layout_from_graph,
                     random_placement, store_layout, vector_optimization,
                     vertex_optimization)
from .layout import EvolvingLayout
from .metrics import attach_report, distance_report


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _read_bytes(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None


def _write_bytes(data: bytes, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    else:
        Path(path).write_bytes(data)


def _read_doc(path: str) -> egml.EgmlDocument:
    try:
        return egml.parse_egml(_read_bytes(path), strict=True)
    except EvographError as exc:
        raise type(exc)(f"{path}: {exc}") from None


def _int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip() != ""]
    except ValueError:
        raise UsageError(f"expected a comma-separated integer list, got {text!r}") from None


def _layout_config(args) -> LayoutConfig:
    return LayoutConfig(
        frame=Frame(args.frame_width, args.frame_height),
        iterations=args.iterations,
        initial_temperature=args.temperature,
        window_size=args.window,
        cross_scale=args.alpha,
        penalty=args.beta,
        sweeps=args.sweeps,
        seed=args.seed,
    )


def _add_layout_flags(parser) -> None:
    parser.add_argument("--window", type=int, default=5, help="window size (vertex-opt)")
    parser.add_argument("--iterations", type=int, default=100)
    parser.add_argument("--temperature", type=float, default=None,
                        help="initial temperature (default frame width / 10)")
    parser.add_argument("--alpha", type=float, default=1.0, help="cross-instance force scale")
    parser.add_argument("--beta", type=float, default=2.0, help="reversal penalty (vector-opt)")
    parser.add_argument("--sweeps", type=int, default=1)
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--frame-width", type=float, default=1000.0)
    parser.add_argument("--frame-height", type=float, default=1000.0)


# ---------------------------------------------------------------------------


def cmd_generate(args) -> int:
    params = {"p": args.instances}
    if args.family == "random":
        params.update(n0=args.n0 or 50, e0=args.e0, edges_per_step=args.edges_per_step)
    elif args.family in ("exponential", "scalefree"):
        params.update(n0=args.n0 or 31, m=args.m)
    else:
        params = {"p": args.instances}
    eg = generators.generate(args.family, seed=args.seed, **params)
    if args.name:
        eg.name = args.name
    _write_bytes(egml.serialize_egml(egml.document_for(eg)), args.output)
    return 0


def cmd_ingest_eurovision(args) -> int:
    records, issues = ingest.parse_votes_csv(_read_bytes(args.votes), strict=args.strict)
    for issue in issues:
        print(f"{args.votes}: {issue}", file=sys.stderr)
    eg = ingest.build_eurovision_eg(records)
    _write_bytes(egml.serialize_egml(egml.document_for(eg)), args.output)
    return 0


def cmd_ingest_house(args) -> int:
    cfg = ingest.IngestConfig(weight_threshold=args.tau,
                              vote_column_offset=args.vote_offset,
                              threshold_mode=args.threshold_mode)
    files = []
    for path in sorted(args.files):
        members, issues = ingest.parse_rollcall_file(_read_bytes(path), cfg, strict=args.strict)
        for issue in issues:
            print(f"{path}: {issue}", file=sys.stderr)
        files.append(members)
    eg = ingest.build_house_eg(files, cfg, start_year=args.start_year)
    _write_bytes(egml.serialize_egml(egml.document_for(eg)), args.output)
    return 0


def cmd_layout(args) -> int:
    doc = _read_doc(args.input)
    eg = doc.evolving_graph
    cfg = _layout_config(args)
    if args.algo == "vertex-opt":
        layout = vertex_optimization(eg, cfg)
    elif args.algo == "vector-opt":
        layout = vector_optimization(eg, cfg)
    elif args.algo == "fr":
        layout = vertex_optimization(eg, replace(cfg, window_size=0))
    elif args.algo == "random":
        layout = random_placement(eg, cfg)
    else:  # circular
        layout = EvolvingLayout([circular_layout(inst, cfg.frame) for inst in eg.instances], cfg)
    store_layout(eg, layout)
    _write_bytes(egml.serialize_egml(doc), args.output)
    return 0


def cmd_metrics(args) -> int:
    doc = _read_doc(args.input)
    eg = doc.evolving_graph
    report = distance_report(layout_from_graph(eg), eg)
    _write_bytes(report.to_csv(), args.csv)
    if args.attach:
        attach_report(doc, report)
        _write_bytes(egml.serialize_egml(doc), args.attach)
    return 0


def cmd_render(args) -> int:
    doc = _read_doc(args.input)
    eg = doc.evolving_graph
    outdir = Path(args.out_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    style = render.RenderStyle(
        vertex_radius=args.radius,
        show_labels=args.labels,
        scale_edge_width_by_weight=args.weight_widths,
        highlight=frozenset(args.highlight.split(",")) if args.highlight else frozenset(),
    )
    frame = Frame(args.frame_width, args.frame_height)
    width = len(str(max(eg.p - 1, 1)))
    for inst in eg.instances:
        positions = {vid: data.position for vid, data in inst.vertices.items()}
        svg = render.render_instance_svg(inst, positions, style, frame)
        (outdir / f"instance_{inst.index:0{width}d}.svg").write_bytes(svg)
    if args.transition_steps > 0:
        import math as _math
        steps = args.transition_steps
        fade_out_last = min(_math.ceil(steps / 2), steps - 1)
        for i in range(eg.p - 1):
            a = {vid: d.position for vid, d in eg.instances[i].vertices.items()}
            b = {vid: d.position for vid, d in eg.instances[i + 1].vertices.items()}
            frames = render.interpolate_frames(a, b, steps)
            for t, positions in enumerate(frames, start=1):
                template = eg.instances[i] if t <= fade_out_last else eg.instances[i + 1]
                partial = _frame_instance(template, positions)
                svg = render.render_instance_svg(partial, positions, style, frame)
                name = f"transition_{i:0{width}d}_{t:02d}.svg"
                (outdir / name).write_bytes(svg)
    return 0


def _frame_instance(template, positions):
    """Instance restricted to the vertices visible in an interpolation frame."""
    out = template.copy()
    for vid in list(out.vertices):
        if vid not in positions:
            out.remove_vertex(vid)
    return out


def cmd_experiment(args) -> int:
    windows = _int_list(args.windows)
    seed_list = _int_list(args.seeds)
    if len(seed_list) == 1 and "," not in args.seeds:
        seed_list = list(range(seed_list[0]))
    if not seed_list:
        raise UsageError("need at least one seed")
    cfg = _layout_config(args)
    families: dict = {}
    if args.input:
        doc = _read_doc(args.input)
        label = doc.evolving_graph.name or Path(args.input).stem
        families[label] = lambda seed, eg=doc.evolving_graph: eg
    for family in args.family or []:
        families[family] = (lambda seed, fam=family:
                            generators.generate(fam, seed=seed, p=args.instances))
    if not families:
        raise UsageError("give --family and/or --input")
    result = run_experiment(families, args.algo, windows, seed_list, cfg)
    written = result.write(args.out_dir)
    for path in written:
        print(path)
    return 0


def cmd_validate(args) -> int:
    issues = egml.validate(_read_bytes(args.input))
    for issue in issues:
        print(f"{args.input}: {issue}")
    if any(issue.severity == egml.ERROR for issue in issues):
        return 2
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(Path(args.docs_dir))
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> _Parser:
    parser = _Parser(prog="evograph", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    g = sub.add_parser("generate", help="emit a synthetic evolving graph as EGML")
    g.add_argument("--family", required=True, choices=generators.FAMILIES)
    g.add_argument("--seed", type=int, default=42)
    g.add_argument("--instances", type=int, default=20)
    g.add_argument("--n0", type=int, default=None, help="initial vertex count")
    g.add_argument("--e0", type=int, default=20, help="initial edges (random family)")
    g.add_argument("--edges-per-step", type=int, default=5)
    g.add_argument("--m", type=int, default=2, help="edges per new vertex (growth families)")
    g.add_argument("--name", default=None)
    g.add_argument("-o", "--output", default=None)
    g.set_defaults(func=cmd_generate)

    ing = sub.add_parser("ingest", help="build EGML from raw vote data")
    ingsub = ing.add_subparsers(dest="source", required=True, metavar="source")
    e = ingsub.add_parser("eurovision", help="vote table CSV (year,from,to,points)")
    e.add_argument("votes")
    e.add_argument("--strict", action="store_true", help="reject files with bad rows")
    e.add_argument("-o", "--output", default=None)
    e.set_defaults(func=cmd_ingest_eurovision)
    h = ingsub.add_parser("house", help="fixed-width roll-call files, one per period")
    h.add_argument("files", nargs="+")
    h.add_argument("--tau", type=float, default=0.9, help="agreement threshold")
    h.add_argument("--threshold-mode", choices=("ratio", "absolute", "percentile"),
                   default="ratio")
    h.add_argument("--vote-offset", type=int, default=36)
    h.add_argument("--start-year", type=int, default=1989)
    h.add_argument("--strict", action="store_true")
    h.add_argument("-o", "--output", default=None)
    h.set_defaults(func=cmd_ingest_house)

    l = sub.add_parser("layout", help="compute vertex positions and write them back")
    l.add_argument("input", nargs="?", default="-")
    l.add_argument("--algo", choices=("fr", "vertex-opt", "vector-opt", "circular", "random"),
                   default="vertex-opt")
    _add_layout_flags(l)
    l.add_argument("-o", "--output", default=None)
    l.set_defaults(func=cmd_layout)

    m = sub.add_parser("metrics", help="movement report from stored positions")
    m.add_argument("input", nargs="?", default="-")
    m.add_argument("--csv", default=None, help="report CSV path (default stdout)")
    m.add_argument("--attach", default=None,
                   help="also write the EGML with metric elements attached")
    m.set_defaults(func=cmd_metrics)

    r = sub.add_parser("render", help="SVG per instance, plus transition frames")
    r.add_argument("input", nargs="?", default="-")
    r.add_argument("--out-dir", required=True)
    r.add_argument("--transition-steps", type=int, default=0,
                   help="frames per transition (0 = stills only)")
    r.add_argument("--labels", action="store_true")
    r.add_argument("--weight-widths", action="store_true",
                   help="scale edge stroke width by weight")
    r.add_argument("--radius", type=float, default=6.0)
    r.add_argument("--highlight", default=None, help="comma-separated vertex ids")
    r.add_argument("--frame-width", type=float, default=1000.0)
    r.add_argument("--frame-height", type=float, default=1000.0)
    r.set_defaults(func=cmd_render)

    x = sub.add_parser("experiment", help="window-size sweep with CSV outputs")
    x.add_argument("--family", action="append", choices=generators.FAMILIES,
                   help="repeatable; generated families to sweep")
    x.add_argument("--input", default=None, help="sweep a fixed EGML file instead")
    x.add_argument("--algo", choices=("vertex-opt", "vector-opt", "fr"), default="vertex-opt")
    x.add_argument("--windows", default="1,2,3,4,5",
                   help="comma list; -1 = random placement, 0 = independent layout")
    x.add_argument("--seeds", default="5",
                   help="a count N (seeds 0..N-1) or a comma list of seeds")
    x.add_argument("--instances", type=int, default=20)
    x.add_argument("--out-dir", required=True)
    _add_layout_flags(x)
    x.set_defaults(func=cmd_experiment)

    v = sub.add_parser("validate", help="list structural issues in an EGML file")
    v.add_argument("input", nargs="?", default="-")
    v.set_defaults(func=cmd_validate)

    s = sub.add_parser("serve", help="HTTP API over a directory of EGML documents")
    s.add_argument("--docs-dir", default="docs")
    s.add_argument("--host", default="127.0.0.1")
    s.add_argument("--port", type=int, default=int(os.environ.get("EVOGRAPH_PORT", "8000")))
    s.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"evograph: {exc}", file=sys.stderr)
        return 1
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"evograph: {exc}", file=sys.stderr)
        return 1
    except EvographError as exc:
        print(f"evograph: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"evograph: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
