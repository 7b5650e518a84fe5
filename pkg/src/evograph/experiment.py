"""Window-size sweeps: distance, wall time, and their trade-off product.

A sweep runs one layout per (family, window, seed) cell.  Window -1 means
the random-placement baseline (initial seeded positions, no layout) and
window 0 means independent per-instance layout; windows >= 1 run the chosen
optimization with that window.
"""

from __future__ import annotations

import csv
import io
import statistics
import time
from dataclasses import dataclass, field, replace
from pathlib import Path

from .errors import GraphModelError
from .layout import (LayoutConfig, random_placement, vector_optimization,
                     vertex_optimization)
from .metrics import total_distance
from .model import EvolvingGraph
from .render import export_distance_csv, product_series


@dataclass(frozen=True)
class RunRow:
    family: str
    window: int
    seed: int
    td_eg: float
    seconds: float


@dataclass
class ExperimentResult:
    rows: list[RunRow] = field(default_factory=list)

    def distance_series(self) -> dict[str, list[tuple[float, float]]]:
        return self._aggregate(lambda rows: statistics.fmean(r.td_eg for r in rows))

    def time_series(self) -> dict[str, list[tuple[float, float]]]:
        return self._aggregate(lambda rows: statistics.median(r.seconds for r in rows))

    def _aggregate(self, reduce_fn) -> dict[str, list[tuple[float, float]]]:
        cells: dict[tuple[str, int], list[RunRow]] = {}
        for row in self.rows:
            cells.setdefault((row.family, row.window), []).append(row)
        out: dict[str, list[tuple[float, float]]] = {}
        for (family, window), rows in sorted(cells.items()):
            out.setdefault(family, []).append((float(window), reduce_fn(rows)))
        return out

    def runs_csv(self) -> bytes:
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["family", "window", "seed", "td_eg", "seconds"])
        for row in sorted(self.rows, key=lambda r: (r.family, r.window, r.seed)):
            writer.writerow([row.family, row.window, row.seed,
                             repr(row.td_eg), repr(row.seconds)])
        return buf.getvalue().encode("utf-8")

    def write(self, outdir: str | Path) -> list[Path]:
        outdir = Path(outdir)
        outdir.mkdir(parents=True, exist_ok=True)
        distance = self.distance_series()
        elapsed = self.time_series()
        files = {
            "runs.csv": self.runs_csv(),
            "distance.csv": export_distance_csv(distance),
            "time.csv": export_distance_csv(elapsed),
            "distance_time.csv": export_distance_csv(product_series(distance, elapsed)),
        }
        written = []
        for name, data in files.items():
            path = outdir / name
            path.write_bytes(data)
            written.append(path)
        return written


def run_single(eg: EvolvingGraph, algorithm: str, window: int, cfg: LayoutConfig
               ) -> tuple[float, float]:
    """(td_eg, seconds) for one cell."""
    start = time.perf_counter()
    if window == -1:
        layout = random_placement(eg, cfg)
    elif window == 0:
        layout = vertex_optimization(eg, replace(cfg, window_size=0))
    elif algorithm == "vector-opt":
        layout = vector_optimization(eg, cfg)
    elif algorithm in ("vertex-opt", "fr"):
        layout = vertex_optimization(eg, replace(cfg, window_size=window))
    else:
        raise GraphModelError(f"unknown algorithm {algorithm!r}")
    seconds = time.perf_counter() - start
    return total_distance(layout, eg), seconds


def run_experiment(families: dict[str, "callable"], algorithm: str,
                   windows: list[int], seeds: list[int],
                   cfg: LayoutConfig | None = None) -> ExperimentResult:
    """families maps a label to a factory seed -> EvolvingGraph (the factory
    may ignore the seed for fixed inputs)."""
    cfg = cfg or LayoutConfig()
    if not windows:
        raise GraphModelError("window list must be non-empty")
    if not seeds:
        raise GraphModelError("seed list must be non-empty")
    result = ExperimentResult()
    for family in sorted(families):
        factory = families[family]
        for seed in seeds:
            eg = factory(seed)
            for window in windows:
                td, seconds = run_single(eg, algorithm, window, replace(cfg, seed=seed))
                result.rows.append(RunRow(family, window, seed, td, seconds))
    return result
