"""Synthetic evolving graphs for experiments.

Three seeded families with matched sizes:

* random: fixed 50 vertices, starts as a uniform random simple graph with
  20 edges, gains 5 uniformly random new edges per instance;
* exponential: growth by uniform attachment, 31 vertices in the first
  instance, one more per instance (50 in the last), m edges per newcomer;
* scalefree: same growth schedule with preferential attachment, so instance
  degree distributions develop a power-law tail instead.

Plus five deterministic, seed-free example graphs on 53 vertices used to
probe layout behavior: an unchanging line graph, a line graph alternating
with an edgeless graph, a line graph whose wiring shifts for the last five
instances, a stride-k line per instance, and a cycle with a decaying fan
around vertex 40.
"""

from __future__ import annotations

import numpy as np

from .errors import GraphModelError
from .model import EvolvingGraph

DEFAULT_INSTANCES = 20


def _vid(i: int) -> str:
    return f"v{i}"


def gen_random_eg(seed: int, n0: int = 50, e0: int = 20, edges_per_step: int = 5,
                  p: int = DEFAULT_INSTANCES, name: str = "random") -> EvolvingGraph:
    """Uniform random growth over a fixed vertex set.

    One seeded permutation of all vertex pairs drives the whole evolution:
    instance k keeps the first e0 + k * edges_per_step pairs, so every
    instance extends the previous one and instance 0 is uniform G(n0, e0).
    """
    needed = e0 + (p - 1) * edges_per_step
    limit = n0 * (n0 - 1) // 2
    if needed > limit:
        raise GraphModelError(
            f"edge budget {needed} exceeds the {limit} pairs of a {n0}-vertex graph")
    rng = np.random.default_rng(seed & 0xFFFFFFFFFFFFFFFF)
    pairs = [(a, b) for a in range(1, n0 + 1) for b in range(a + 1, n0 + 1)]
    order = rng.permutation(len(pairs))
    eg = EvolvingGraph(name)
    for k in range(p):
        inst = eg.new_instance(k)
        for i in range(1, n0 + 1):
            inst.add_vertex(_vid(i))
        for slot in order[: e0 + k * edges_per_step]:
            a, b = pairs[slot]
            inst.add_edge(_vid(a), _vid(b))
    return eg


def _growth_eg(seed: int, n0: int, p: int, m: int, preferential: bool,
               name: str) -> EvolvingGraph:
    if n0 < m + 1:
        raise GraphModelError(f"need at least m+1={m + 1} initial vertices, got {n0}")
    rng = np.random.default_rng(seed & 0xFFFFFFFFFFFFFFFF)
    total = n0 + p - 1
    edges: list[tuple[int, int]] = []
    born_edges: list[int] = [0] * (total + 1)  # edges existing once vertex t is added
    repeated: list[int] = []  # degree-weighted pool for preferential choice
    for new in range(m + 1, total + 1):
        existing = new - 1
        if preferential and repeated:
            targets: set[int] = set()
            while len(targets) < m:
                targets.add(repeated[int(rng.integers(len(repeated)))])
        else:
            picks = rng.choice(existing, size=m, replace=False)
            targets = {int(t) + 1 for t in picks}
        for t in sorted(targets):
            edges.append((t, new))
            repeated.append(t)
        repeated.extend([new] * m)
        born_edges[new] = len(edges)
    for t in range(1, m + 1):
        born_edges[t] = 0
    eg = EvolvingGraph(name)
    for k in range(p):
        size = n0 + k
        inst = eg.new_instance(k)
        for i in range(1, size + 1):
            inst.add_vertex(_vid(i))
        for a, b in edges[: born_edges[size]]:
            inst.add_edge(_vid(a), _vid(b))
    return eg


def gen_exponential_eg(seed: int, n0: int = 31, p: int = DEFAULT_INSTANCES,
                       m: int = 2, name: str = "exponential") -> EvolvingGraph:
    """Uniform-attachment growth; instance degree distributions decay exponentially."""
    return _growth_eg(seed, n0, p, m, preferential=False, name=name)


def gen_scalefree_eg(seed: int, n0: int = 31, p: int = DEFAULT_INSTANCES,
                     m: int = 2, name: str = "scalefree") -> EvolvingGraph:
    """Preferential-attachment growth; instance degree distributions grow a heavy tail."""
    return _growth_eg(seed, n0, p, m, preferential=True, name=name)


# ---------------------------------------------------------------------------
# deterministic example graphs (53 vertices, 20 instances)

_N = 53


def _mod53(i: int) -> int:
    r = i % _N
    return _N if r == 0 else r


def _line_edges() -> list[tuple[int, int]]:
    return [(i, i + 1) for i in range(1, _N)]


def _example_edges(example: int, k: int) -> list[tuple[int, int]]:
    """Edge list of the k-th instance (k is 1-based) of the given example."""
    if example == 1:
        return _line_edges()
    if example == 2:
        return _line_edges() if k % 2 == 1 else []
    if example == 3:
        if k <= 15:
            return _line_edges()
        return [(i, _mod53(i + 2)) for i in list(range(1, 52)) + [53]]
    if example == 4:
        return [(i, _mod53(i + k)) for i in range(1, _N - k + 1)]
    if example == 5:
        cycle = [(i, _mod53(i + 1)) for i in range(1, _N + 1)]
        fan = [(40, j) for j in range(1, 21) if j != k]
        return cycle + fan
    raise GraphModelError(f"example number must be 1..5, got {example}")


def example_eg(example: int, p: int = DEFAULT_INSTANCES) -> EvolvingGraph:
    """One of the five fixed example evolving graphs (seed-free, byte-stable)."""
    if example not in (1, 2, 3, 4, 5):
        raise GraphModelError(f"example number must be 1..5, got {example}")
    eg = EvolvingGraph(f"example{example}")
    for k in range(1, p + 1):
        inst = eg.new_instance(k - 1)
        for i in range(1, _N + 1):
            inst.add_vertex(_vid(i))
        for a, b in _example_edges(example, k):
            inst.add_edge(_vid(a), _vid(b))
    return eg


FAMILIES = ("random", "exponential", "scalefree",
            "example1", "example2", "example3", "example4", "example5")


def generate(family: str, seed: int = 42, **params) -> EvolvingGraph:
    """Dispatch by family name; example graphs ignore the seed."""
    if family == "random":
        return gen_random_eg(seed, **params)
    if family == "exponential":
        return gen_exponential_eg(seed, **params)
    if family == "scalefree":
        return gen_scalefree_eg(seed, **params)
    if family.startswith("example"):
        try:
            n = int(family[len("example"):])
        except ValueError:
            raise GraphModelError(f"unknown family {family!r}") from None
        allowed = {k: v for k, v in params.items() if k == "p"}
        return example_eg(n, **allowed)
    raise GraphModelError(f"unknown family {family!r}; choose one of {FAMILIES}")
