import random

import pytest

from evograph.model import EvolvingGraph, Position


def random_evolving_graph(rng: random.Random, max_vertices=5, max_instances=4,
                          frame=1000.0) -> EvolvingGraph:
    """Small random evolving graph with churn in the vertex sets."""
    pool = [f"v{i}" for i in range(1, max_vertices + 1)]
    eg = EvolvingGraph("fixture")
    p = rng.randint(1, max_instances)
    for i in range(p):
        inst = eg.new_instance(i)
        members = [vid for vid in pool if rng.random() < 0.8]
        if not members:
            members = [rng.choice(pool)]
        for vid in members:
            inst.add_vertex(vid, Position(rng.uniform(0, frame), rng.uniform(0, frame)))
        for a in range(len(members)):
            for b in range(a + 1, len(members)):
                if rng.random() < 0.4:
                    inst.add_edge(members[a], members[b], rng.choice([1.0, 2.0, 5.5]))
    return eg


@pytest.fixture
def small_eg():
    return random_evolving_graph(random.Random(7))
