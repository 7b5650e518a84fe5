"""Input validation helpers shared by the layout estimators and metrics."""

from __future__ import annotations

from .errors import CoverageError, GraphModelError
from .model import EvolvingGraph


def check_evolving_graph(eg) -> EvolvingGraph:
    if not isinstance(eg, EvolvingGraph):
        raise GraphModelError(f"expected an EvolvingGraph, got {type(eg).__name__}")
    if eg.p < 1:
        raise GraphModelError("evolving graph has no instances")
    eg.validate()
    return eg


def check_covers(positions_per_instance, eg: EvolvingGraph) -> None:
    """Every vertex of every instance must have a position."""
    if len(positions_per_instance) != eg.p:
        raise CoverageError(
            f"layout has {len(positions_per_instance)} instances, graph has {eg.p}")
    for inst, positions in zip(eg.instances, positions_per_instance):
        for vid in inst.vertices:
            if vid not in positions:
                raise CoverageError(
                    f"no position for vertex {vid!r} in instance {inst.index}")


def check_positive(name: str, value, strict: bool = True) -> None:
    ok = value > 0 if strict else value >= 0
    if not ok:
        bound = "positive" if strict else "non-negative"
        raise GraphModelError(f"{name} must be {bound}, got {value}")
