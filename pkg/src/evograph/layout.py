"""Force-directed layouts for evolving graphs.

Three placement algorithms share one engine:

* independent force-directed layout of a single instance (spring model with
  repulsion k^2/d between all vertex pairs and attraction d^2/k along edges,
  temperature-capped displacement, linear cooling);
* vertex optimization: the same loop plus attraction between occurrences of
  the same vertex in nearby instances (symmetric window of size w), which
  trades per-instance quality for small movements between instances;
* vector optimization: window fixed to the two adjacent instances, with the
  cross-instance attraction boosted by a penalty factor whenever a vertex's
  movement reverses direction (|v1 + v2| < max(|v1|, |v2|)).

Instances are processed in index order, so earlier instances of a sweep see
already-updated predecessors and not-yet-updated successors.  Every run is
deterministic given the config seed; per-instance randomness is derived from
(seed, stream, sweep, instance).

Edge weights are deliberately ignored by all forces; coupling strength is
controlled by cross_scale and penalty instead.
"""

from __future__ import annotations

import copy
import hashlib
import math
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import GraphModelError
from .model import EvolvingGraph, Frame, GraphInstance, Position, instance_window
from .validation import check_covers, check_evolving_graph

# repulsion saturates below this pair distance; coincident pairs get a
# seeded pseudo-random push of magnitude k^2 / JITTER_EPS
JITTER_EPS = 1e-2

# optimizer initialization: every vertex id owns one seeded random position,
# and a warm chain is relaxed through the instance structures in order
# (skipping runs while the structure is unchanged).  Instance i starts at
# the chain state reflecting structures 0..i-1 plus a small per-instance
# seeded offset, so each run begins where its predecessor's structure
# settled: matched vertices start together and near equilibrium, meaning
# cross-instance anchors never drag layouts toward arbitrary random
# configurations and never leak a later structure backward in time.  The
# offset keeps identical instances from collapsing onto bit-identical
# trajectories, which would make the w=0 baseline degenerate.  Fraction of
# min(frame dims).
INIT_JITTER_FRACTION = 0.05

_INIT_STREAM = 1
_JITTER_STREAM = 2
_PERTURB_STREAM = 3
_PLACEMENT_STREAM = 4
_WARM_STREAM = 5


@dataclass(frozen=True)
class LayoutConfig:
    """Knobs shared by all layout algorithms.

    initial_temperature=None means frame.width / 10.  window_size only
    matters for vertex optimization, penalty only for vector optimization.
    """

    frame: Frame = field(default_factory=Frame)
    iterations: int = 100
    initial_temperature: float | None = None
    k_constant: float = 1.0
    window_size: int = 5
    cross_scale: float = 1.0
    penalty: float = 2.0
    sweeps: int = 1
    seed: int = 42

    def __post_init__(self):
        if self.iterations < 1:
            raise GraphModelError(f"iterations must be >= 1, got {self.iterations}")
        if self.initial_temperature is not None and self.initial_temperature < 0:
            raise GraphModelError("initial_temperature must be >= 0")
        if self.k_constant <= 0:
            raise GraphModelError("k_constant must be positive")
        if self.window_size < 0:
            raise GraphModelError("window_size must be >= 0")
        if self.cross_scale <= 0:
            raise GraphModelError("cross_scale must be positive")
        if self.penalty < 1:
            raise GraphModelError(f"penalty must be >= 1, got {self.penalty}")
        if self.sweeps < 1:
            raise GraphModelError("sweeps must be >= 1")

    @property
    def temperature(self) -> float:
        return self.frame.width / 10.0 if self.initial_temperature is None else self.initial_temperature

    def k_for(self, n: int) -> float:
        return self.k_constant * math.sqrt(self.frame.area / max(n, 1))


@dataclass(frozen=True)
class ForceVector:
    dx: float
    dy: float

    def magnitude(self) -> float:
        return math.sqrt(self.dx * self.dx + self.dy * self.dy)

    def __add__(self, other: "ForceVector") -> "ForceVector":
        return ForceVector(self.dx + other.dx, self.dy + other.dy)

    def __neg__(self) -> "ForceVector":
        return ForceVector(-self.dx, -self.dy)


ZERO_FORCE = ForceVector(0.0, 0.0)


@dataclass
class EvolvingLayout:
    """Per-instance vertex positions, with the config that produced them."""

    positions: list[dict[str, Position]]
    config: LayoutConfig

    def positions_of(self, i: int) -> dict[str, Position]:
        return self.positions[i]

    def check_covers(self, eg: EvolvingGraph) -> "EvolvingLayout":
        check_covers(self.positions, eg)
        return self


def layout_from_graph(eg: EvolvingGraph, config: LayoutConfig | None = None) -> EvolvingLayout:
    """The positions already stored on the graph's vertices, as a layout."""
    positions = [{vid: data.position for vid, data in inst.vertices.items()}
                 for inst in eg.instances]
    return EvolvingLayout(positions, config or LayoutConfig())


def store_layout(eg: EvolvingGraph, layout: EvolvingLayout) -> EvolvingGraph:
    """Write layout positions back onto the graph's vertices."""
    layout.check_covers(eg)
    for inst, positions in zip(eg.instances, layout.positions):
        for vid in inst.vertices:
            inst.vertices[vid].position = positions[vid]
    return eg


# ---------------------------------------------------------------------------
# elementary force operations (scalar reference forms)


def repulsive_force(u: Position, v: Position, k: float, rng=None) -> ForceVector:
    """Force on u pushing it away from v, magnitude k^2 / d.

    Coincident points repel with magnitude k^2 / JITTER_EPS in a
    pseudo-random direction drawn from rng (fixed direction without one).
    """
    dx = u.x - v.x
    dy = u.y - v.y
    d = math.sqrt(dx * dx + dy * dy)
    if d == 0.0:
        angle = rng.uniform(0.0, 2.0 * math.pi) if rng is not None else 0.0
        m = k * k / JITTER_EPS
        return ForceVector(m * math.cos(angle), m * math.sin(angle))
    m = k * k / max(d, JITTER_EPS)
    return ForceVector(m * dx / d, m * dy / d)


def attractive_force(u: Position, v: Position, k: float, scale: float = 1.0) -> ForceVector:
    """Force on u pulling it toward v, magnitude scale * d^2 / k."""
    dx = v.x - u.x
    dy = v.y - u.y
    d = math.sqrt(dx * dx + dy * dy)
    if d == 0.0:
        return ZERO_FORCE
    m = scale * d / k
    return ForceVector(m * dx, m * dy)


def displace(pos: Position, net: ForceVector, temp: float, frame: Frame) -> Position:
    """Move along net by at most temp, then clamp into the frame."""
    if temp < 0:
        raise GraphModelError(f"temperature must be >= 0, got {temp}")
    m = net.magnitude()
    if m == 0.0:
        return frame.clamp(pos.x, pos.y)
    step = min(m, temp)
    return frame.clamp(pos.x + net.dx / m * step, pos.y + net.dy / m * step)


def is_unsmooth(v1: ForceVector, v2: ForceVector) -> bool:
    """True when the combined movement is shorter than the larger leg,
    i.e. the second step partially undoes the first."""
    return (v1 + v2).magnitude() < max(v1.magnitude(), v2.magnitude())


def construct_vector(start: Position, end: Position) -> ForceVector:
    return ForceVector(end.x - start.x, end.y - start.y)


# ---------------------------------------------------------------------------
# circular layout


def circular_layout(inst: GraphInstance, frame: Frame) -> dict[str, Position]:
    """Vertices in ascending id order on a circle of radius 0.45 * min(frame dims)."""
    ids = inst.vertex_ids()
    if not ids:
        return {}
    n = len(ids)
    radius = 0.45 * min(frame.width, frame.height)
    cx, cy = frame.center.x, frame.center.y
    out = {}
    for j, vid in enumerate(ids):
        angle = 2.0 * math.pi * j / n
        out[vid] = Position(cx + radius * math.cos(angle), cy + radius * math.sin(angle))
    return out


# ---------------------------------------------------------------------------
# seeded randomness


def _rng(seed: int, stream: int, *key: int) -> np.random.Generator:
    return np.random.default_rng([seed & 0xFFFFFFFFFFFFFFFF, stream, *key])


def _id_key(vid: str) -> int:
    return int.from_bytes(hashlib.blake2s(vid.encode("utf-8"), digest_size=8).digest(), "big")


def base_position(vid: str, cfg: LayoutConfig) -> Position:
    """The seeded base position owned by a vertex id (identical in every
    instance, stable under vertex-set changes)."""
    rng = _rng(cfg.seed, _INIT_STREAM, _id_key(vid))
    return Position(float(rng.uniform(0.0, cfg.frame.width)),
                    float(rng.uniform(0.0, cfg.frame.height)))


def _perturbed(base: dict[str, Position], inst: GraphInstance,
               cfg: LayoutConfig) -> dict[str, Position]:
    ids = inst.vertex_ids()
    spread = INIT_JITTER_FRACTION * min(cfg.frame.width, cfg.frame.height)
    rng = _rng(cfg.seed, _PERTURB_STREAM, inst.index)
    offsets = rng.uniform(-spread, spread, (len(ids), 2))
    out = {}
    for vid, (ox, oy) in zip(ids, offsets):
        p = base.get(vid) or base_position(vid, cfg)
        out[vid] = cfg.frame.clamp(p.x + float(ox), p.y + float(oy))
    return out


def initial_positions(inst: GraphInstance, cfg: LayoutConfig) -> dict[str, Position]:
    """Per-id seeded base plus a small per-instance seeded perturbation."""
    base = {vid: base_position(vid, cfg) for vid in inst.vertex_ids()}
    return _perturbed(base, inst, cfg)


def random_placement(eg: EvolvingGraph, cfg: LayoutConfig | None = None) -> EvolvingLayout:
    """The no-layout baseline: independent uniform positions per instance,
    the placement a document gets before any optimization runs."""
    cfg = cfg or LayoutConfig()
    check_evolving_graph(eg)
    layout = []
    for inst in eg.instances:
        ids = inst.vertex_ids()
        rng = _rng(cfg.seed, _PLACEMENT_STREAM, inst.index)
        xy = rng.uniform((0.0, 0.0), (cfg.frame.width, cfg.frame.height), (len(ids), 2))
        layout.append({vid: Position(float(x), float(y)) for vid, (x, y) in zip(ids, xy)})
    return EvolvingLayout(layout, cfg)


# ---------------------------------------------------------------------------
# vectorized engine


def _repulsion(pos: np.ndarray, k: float, rng: np.random.Generator) -> np.ndarray:
    n = pos.shape[0]
    delta = pos[:, None, :] - pos[None, :, :]
    dist = np.sqrt(delta[..., 0] ** 2 + delta[..., 1] ** 2)
    d_eff = np.maximum(dist, JITTER_EPS)
    np.fill_diagonal(d_eff, np.inf)
    zero = dist == 0.0
    np.fill_diagonal(zero, False)
    if zero.any():
        iu, ju = np.nonzero(np.triu(zero, 1))
        angles = rng.uniform(0.0, 2.0 * math.pi, iu.size)
        unit = np.stack((np.cos(angles), np.sin(angles)), axis=-1)
        delta[iu, ju] = unit
        delta[ju, iu] = -unit
        dist[iu, ju] = 1.0
        dist[ju, iu] = 1.0
    np.fill_diagonal(dist, 1.0)
    direction = delta / dist[..., None]
    return (direction * (k * k / d_eff)[..., None]).sum(axis=1)


def _edge_attraction(pos: np.ndarray, edges: np.ndarray, k: float) -> np.ndarray:
    out = np.zeros_like(pos)
    if edges.size == 0:
        return out
    src, dst = edges[:, 0], edges[:, 1]
    dvec = pos[dst] - pos[src]
    d = np.sqrt((dvec ** 2).sum(axis=1))
    f = dvec * (d / k)[:, None]
    np.add.at(out, src, f)
    np.add.at(out, dst, -f)
    return out


def _coupling_attraction(pos: np.ndarray, own: np.ndarray, anchor: np.ndarray,
                         k: float, scale: np.ndarray) -> np.ndarray:
    out = np.zeros_like(pos)
    if own.size == 0:
        return out
    dvec = anchor - pos[own]
    d = np.sqrt((dvec ** 2).sum(axis=1))
    out[own] = dvec * (d / k * scale)[:, None]  # own indices are unique
    return out


def _displace_all(pos: np.ndarray, force: np.ndarray, temp: float, wh: np.ndarray) -> None:
    m = np.sqrt((force ** 2).sum(axis=1))
    moving = m > 0.0
    step = np.minimum(m[moving], temp)
    pos[moving] += force[moving] / m[moving, None] * step[:, None]
    np.clip(pos, 0.0, wh, out=pos)


class _InstanceState:
    """Positions and index structure of one instance during optimization."""

    def __init__(self, inst: GraphInstance, init: dict[str, Position], cfg: LayoutConfig):
        self.ids = inst.vertex_ids()
        self.index = {vid: i for i, vid in enumerate(self.ids)}
        self.pos = np.array([[init[vid].x, init[vid].y] for vid in self.ids],
                            dtype=float).reshape(len(self.ids), 2)
        self.edges = np.array(
            [[self.index[u], self.index[v]] for u, v in inst.edge_keys()],
            dtype=np.intp).reshape(-1, 2)
        self.k = cfg.k_for(len(self.ids))

    def to_positions(self) -> dict[str, Position]:
        return {vid: Position(float(x), float(y))
                for vid, (x, y) in zip(self.ids, self.pos)}


def _shared_indices(a: _InstanceState, b: _InstanceState) -> tuple[np.ndarray, np.ndarray]:
    shared = sorted(set(a.ids) & set(b.ids))
    own = np.array([a.index[vid] for vid in shared], dtype=np.intp)
    other = np.array([b.index[vid] for vid in shared], dtype=np.intp)
    return own, other


def _fr_iterations(state: _InstanceState, cfg: LayoutConfig, rng: np.random.Generator,
                   coupling=None) -> None:
    """Run the full force loop in place.  coupling(pos) may add extra forces."""
    if state.pos.shape[0] == 0:
        return
    wh = np.array([cfg.frame.width, cfg.frame.height])
    t0 = cfg.temperature
    iterations = cfg.iterations
    for it in range(iterations):
        temp = t0 * (iterations - it) / iterations
        if temp <= 0.0:
            break
        force = _repulsion(state.pos, state.k, rng)
        force += _edge_attraction(state.pos, state.edges, state.k)
        if coupling is not None:
            force += coupling(state.pos)
        _displace_all(state.pos, force, temp, wh)


def fr_layout(inst: GraphInstance, cfg: LayoutConfig | None = None,
              init: dict[str, Position] | None = None,
              rng: np.random.Generator | None = None) -> dict[str, Position]:
    """Independent force-directed layout of one instance.

    Without an explicit init this warm-starts exactly like the evolving
    optimizers do for a lone instance, so a single-instance pipeline and a
    direct call agree bit for bit.
    """
    cfg = cfg or LayoutConfig()
    if init is None:
        init = _perturbed(_relax(inst, {}, cfg), inst, cfg)
    else:
        missing = [vid for vid in inst.vertices if vid not in init]
        if missing:
            raise GraphModelError(f"init misses positions for {missing[:3]!r}...")
    if rng is None:
        rng = _rng(cfg.seed, _JITTER_STREAM, 0, inst.index)
    state = _InstanceState(inst, init, cfg)
    _fr_iterations(state, cfg, rng)
    return state.to_positions()


# ---------------------------------------------------------------------------
# evolving-graph optimization


def _neighbor_indices(eg: EvolvingGraph, i: int, cfg: LayoutConfig, mode: str) -> list[int]:
    if mode == "vertex":
        w = min(cfg.window_size, eg.p - 1)
        return instance_window(eg, i, w)
    return [j for j in (i - 1, i + 1) if 0 <= j < eg.p]


def _build_coupling(states: list[_InstanceState], i: int, neighbors: list[int],
                    cfg: LayoutConfig, mode: str):
    """Freeze neighbor anchor positions for instance i's run and return the
    per-iteration coupling force callback (None when there is nothing to couple)."""
    cur = states[i]
    specs = []
    for j in neighbors:
        own, other = _shared_indices(cur, states[j])
        if own.size:
            specs.append((j, own, states[j].pos[other].copy()))
    if not specs:
        return None
    alpha = cfg.cross_scale
    if mode == "vertex":
        frozen = [(own, anchor, np.full(own.size, alpha)) for _, own, anchor in specs]

        def coupling(pos: np.ndarray) -> np.ndarray:
            force = np.zeros_like(pos)
            for own, anchor, scale in frozen:
                force += _coupling_attraction(pos, own, anchor, cur.k, scale)
            return force

        return coupling

    # vector mode: at most one predecessor and one successor anchor; vertices
    # present in all three instances get the penalty scale when their
    # movement doubles back on itself
    prev_spec = next(((own, anchor) for j, own, anchor in specs if j == i - 1), None)
    next_spec = next(((own, anchor) for j, own, anchor in specs if j == i + 1), None)
    triple = None
    if prev_spec is not None and next_spec is not None:
        common, p_slot, n_slot = np.intersect1d(prev_spec[0], next_spec[0],
                                                assume_unique=True, return_indices=True)
        if common.size:
            triple = (common, p_slot, n_slot,
                      prev_spec[1][p_slot], next_spec[1][n_slot])

    def coupling(pos: np.ndarray) -> np.ndarray:
        scale_prev = np.full(prev_spec[0].size, alpha) if prev_spec is not None else None
        scale_next = np.full(next_spec[0].size, alpha) if next_spec is not None else None
        if triple is not None:
            common, p_slot, n_slot, prev_anchor, next_anchor = triple
            current = pos[common]
            v1 = current - prev_anchor
            v2 = next_anchor - current
            va = v1 + v2
            unsmooth = (np.sqrt((va ** 2).sum(axis=1))
                        < np.maximum(np.sqrt((v1 ** 2).sum(axis=1)),
                                     np.sqrt((v2 ** 2).sum(axis=1))))
            boosted = np.where(unsmooth, alpha * cfg.penalty, alpha)
            scale_prev[p_slot] = boosted
            scale_next[n_slot] = boosted
        force = np.zeros_like(pos)
        if prev_spec is not None:
            force += _coupling_attraction(pos, prev_spec[0], prev_spec[1], cur.k, scale_prev)
        if next_spec is not None:
            force += _coupling_attraction(pos, next_spec[0], next_spec[1], cur.k, scale_next)
        return force

    return coupling


def _relax(inst: GraphInstance, start: dict[str, Position], cfg: LayoutConfig) -> dict[str, Position]:
    init = {vid: start.get(vid) or base_position(vid, cfg) for vid in inst.vertices}
    state = _InstanceState(inst, init, cfg)
    _fr_iterations(state, cfg, _rng(cfg.seed, _WARM_STREAM, inst.index))
    return state.to_positions()


def _same_structure(a: GraphInstance, b: GraphInstance) -> bool:
    return a.vertices.keys() == b.vertices.keys() and a.edges.keys() == b.edges.keys()


def warm_start_positions(eg: EvolvingGraph, cfg: LayoutConfig) -> list[dict[str, Position]]:
    """Per-instance starting layouts from the lagged warm chain.

    The chain relaxes the per-id seeded base through the instance
    structures in order; instance i starts at the chain state covering
    structures 0..i-1 (instance 0 at its own relaxation), so no start
    reflects structure that lies in the instance's future.
    """
    chain = _relax(eg.instances[0], {}, cfg)
    starts = [chain]
    for inst in eg.instances[1:]:
        starts.append(chain)
        if inst.index < eg.p - 1:  # the chain state after the last instance is never used
            if not _same_structure(inst, eg.instances[inst.index - 1]):
                chain = _relax(inst, chain, cfg)
    return starts


def _optimize(eg: EvolvingGraph, cfg: LayoutConfig, mode: str) -> EvolvingLayout:
    check_evolving_graph(eg)
    warms = warm_start_positions(eg, cfg)
    states = [_InstanceState(inst, _perturbed(warm, inst, cfg), cfg)
              for inst, warm in zip(eg.instances, warms)]
    for sweep in range(cfg.sweeps):
        for i in range(eg.p):
            neighbors = _neighbor_indices(eg, i, cfg, mode)
            coupling = _build_coupling(states, i, neighbors, cfg, mode)
            rng = _rng(cfg.seed, _JITTER_STREAM, sweep, i)
            _fr_iterations(states[i], cfg, rng, coupling)
    return EvolvingLayout([s.to_positions() for s in states], copy.deepcopy(cfg))


def vertex_optimization(eg: EvolvingGraph, cfg: LayoutConfig | None = None) -> EvolvingLayout:
    """Windowed cross-instance layout: same vertex in nearby instances attracts."""
    return _optimize(eg, cfg or LayoutConfig(), "vertex")


def vector_optimization(eg: EvolvingGraph, cfg: LayoutConfig | None = None) -> EvolvingLayout:
    """Adjacent-instance coupling with a penalty boost on direction reversals."""
    return _optimize(eg, cfg or LayoutConfig(), "vector")


def independent_layout(eg: EvolvingGraph, cfg: LayoutConfig | None = None) -> EvolvingLayout:
    """Window-0 baseline: plain force-directed layout per instance."""
    cfg = cfg or LayoutConfig()
    return vertex_optimization(eg, replace(cfg, window_size=0))
