"""Estimator-style wrappers around the layout algorithms.

These follow scikit-learn conventions (keyword-only constructor params,
``get_params`` / ``set_params``, ``fit`` returning self, fitted attributes
with a trailing underscore) without depending on scikit-learn itself, so
they duck-type cleanly with ``sklearn.base.clone`` and pipeline tooling.

X is an EvolvingGraph; the fitted result is an EvolvingLayout stored on
``layout_`` and returned by ``fit_transform``.
"""

from __future__ import annotations

import inspect
from dataclasses import replace

from .layout import (EvolvingLayout, Frame, LayoutConfig, circular_layout,
                     random_placement, vector_optimization, vertex_optimization)
from .model import EvolvingGraph
from .validation import check_evolving_graph


class BaseLayoutEstimator:
    """get_params/set_params over the constructor signature, sklearn style."""

    @classmethod
    def _param_names(cls) -> list[str]:
        sig = inspect.signature(cls.__init__)
        return [p.name for p in sig.parameters.values() if p.name != "self"]

    def get_params(self, deep: bool = True) -> dict:
        return {name: getattr(self, name) for name in self._param_names()}

    def set_params(self, **params) -> "BaseLayoutEstimator":
        valid = set(self._param_names())
        for name, value in params.items():
            if name not in valid:
                raise ValueError(
                    f"invalid parameter {name!r} for {type(self).__name__}; "
                    f"valid parameters are {sorted(valid)}")
            setattr(self, name, value)
        return self

    def __repr__(self):
        args = ", ".join(f"{k}={v!r}" for k, v in self.get_params().items())
        return f"{type(self).__name__}({args})"

    def _config(self) -> LayoutConfig:
        params = self.get_params()
        frame = Frame(params.pop("frame_width"), params.pop("frame_height"))
        return LayoutConfig(frame=frame, **params)

    def _run(self, eg: EvolvingGraph) -> EvolvingLayout:
        raise NotImplementedError

    def fit(self, eg: EvolvingGraph, y=None) -> "BaseLayoutEstimator":
        check_evolving_graph(eg)
        self.layout_ = self._run(eg)
        self.n_instances_ = eg.p
        return self

    def fit_transform(self, eg: EvolvingGraph, y=None) -> EvolvingLayout:
        return self.fit(eg).layout_


class FruchtermanReingoldLayout(BaseLayoutEstimator):
    """Independent force-directed layout of each instance (no coupling)."""

    def __init__(self, iterations=100, initial_temperature=None, k_constant=1.0,
                 seed=42, frame_width=1000.0, frame_height=1000.0):
        self.iterations = iterations
        self.initial_temperature = initial_temperature
        self.k_constant = k_constant
        self.seed = seed
        self.frame_width = frame_width
        self.frame_height = frame_height

    def _run(self, eg):
        return vertex_optimization(eg, replace(self._config(), window_size=0))


class VertexOptimizationLayout(BaseLayoutEstimator):
    """Windowed cross-instance attraction; minimizes movement between instances."""

    def __init__(self, window_size=5, cross_scale=1.0, iterations=100,
                 initial_temperature=None, k_constant=1.0, sweeps=1, seed=42,
                 frame_width=1000.0, frame_height=1000.0):
        self.window_size = window_size
        self.cross_scale = cross_scale
        self.iterations = iterations
        self.initial_temperature = initial_temperature
        self.k_constant = k_constant
        self.sweeps = sweeps
        self.seed = seed
        self.frame_width = frame_width
        self.frame_height = frame_height

    def _run(self, eg):
        return vertex_optimization(eg, self._config())


class VectorOptimizationLayout(BaseLayoutEstimator):
    """Adjacent-instance coupling with a direction-reversal penalty."""

    def __init__(self, penalty=2.0, cross_scale=1.0, iterations=100,
                 initial_temperature=None, k_constant=1.0, sweeps=1, seed=42,
                 frame_width=1000.0, frame_height=1000.0):
        self.penalty = penalty
        self.cross_scale = cross_scale
        self.iterations = iterations
        self.initial_temperature = initial_temperature
        self.k_constant = k_constant
        self.sweeps = sweeps
        self.seed = seed
        self.frame_width = frame_width
        self.frame_height = frame_height

    def _run(self, eg):
        return vector_optimization(eg, self._config())


class RandomPlacement(BaseLayoutEstimator):
    """Seeded uniform positions per instance; the no-layout baseline."""

    def __init__(self, seed=42, frame_width=1000.0, frame_height=1000.0):
        self.seed = seed
        self.frame_width = frame_width
        self.frame_height = frame_height

    def _config(self) -> LayoutConfig:
        return LayoutConfig(frame=Frame(self.frame_width, self.frame_height), seed=self.seed)

    def _run(self, eg):
        return random_placement(eg, self._config())


class CircularLayout(BaseLayoutEstimator):
    """Every instance on a circle, vertices in ascending id order."""

    def __init__(self, frame_width=1000.0, frame_height=1000.0):
        self.frame_width = frame_width
        self.frame_height = frame_height

    def _run(self, eg):
        frame = Frame(self.frame_width, self.frame_height)
        positions = [circular_layout(inst, frame) for inst in eg.instances]
        return EvolvingLayout(positions, LayoutConfig(frame=frame))
