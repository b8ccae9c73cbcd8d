"""Monte-Carlo under-approximation of the output reachable set.

Inputs are piecewise constant with values drawn uniformly from the input
box. Samples 0 and 1 are always the constant corner inputs ``u = a`` and
``u = b``. Sample ``i`` draws from its own Philox stream keyed by
``(seed, i)``, so any sample can be regenerated on its own.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .chenfliess import SampledInput
from .mmreach import DIVERGENCE_LIMIT, DivergenceError
from .polylie import PolySystem
from .reachia import InputBox

__all__ = ["SampleRun", "sample_inputs", "simulate", "simulate_batch", "empirical_reach"]


def _rng(seed: int, index: int) -> np.random.Generator:
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=(int(index),))
    return np.random.Generator(np.random.Philox(ss))


def sample_inputs(m: int, box: InputBox, segments: int, T: float, count: int, seed: int,
                  steps: int = 1000) -> list[SampledInput]:
    """Piecewise-constant admissible inputs on a grid of ``steps`` intervals over [0, T]."""
    if segments < 1 or count < 1:
        raise ValueError("segments and count must be >= 1")
    if steps < 1:
        raise ValueError("steps must be >= 1")
    t = np.linspace(0.0, T, steps + 1)
    # zero-order hold: grid point t_k takes the piece starting at or before it
    piece = np.minimum((np.arange(steps + 1) * segments) // steps, segments - 1)
    out = []
    for i in range(count):
        if i == 0:
            levels = np.full((m, segments), box.a)
        elif i == 1:
            levels = np.full((m, segments), box.b)
        else:
            levels = _rng(seed, i).uniform(box.a, box.b, size=(m, segments))
        out.append(SampledInput(t, levels[:, piece]))
    return out


def simulate_batch(sys: PolySystem, inputs: list[SampledInput], return_states: bool = False):
    """RK4 with zero-order-hold inputs for many inputs sharing one grid.

    Returns outputs of shape ``(len(inputs), n_outputs, len(t_grid))``, and
    with ``return_states`` also the states, ``(len(inputs), n, len(t_grid))``.
    """
    t = inputs[0].t_grid
    for u in inputs[1:]:
        if u.t_grid.shape != t.shape or not np.array_equal(u.t_grid, t):
            raise ValueError("all inputs must share one time grid")
    if any(u.m != sys.m for u in inputs):
        raise ValueError(f"inputs must have {sys.m} channels")
    U = np.stack([u.values for u in inputs], axis=1)  # (m, S, K+1)
    S = len(inputs)
    z = np.repeat(sys.z0[:, None], S, axis=1)
    y = np.empty((S, sys.n_outputs, t.size))
    y[:, :, 0] = sys.output(z).T
    states = np.empty((S, sys.n, t.size)) if return_states else None
    if return_states:
        states[:, :, 0] = z.T
    for k in range(t.size - 1):
        h = t[k + 1] - t[k]
        uk = U[:, :, k]
        k1 = sys.vector_field(z, uk)
        k2 = sys.vector_field(z + 0.5 * h * k1, uk)
        k3 = sys.vector_field(z + 0.5 * h * k2, uk)
        k4 = sys.vector_field(z + h * k3, uk)
        z = z + h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)
        if not np.all(np.isfinite(z)) or np.max(np.abs(z)) > DIVERGENCE_LIMIT:
            raise DivergenceError(t[k + 1], f"simulation diverged at t={t[k + 1]:g}")
        y[:, :, k + 1] = sys.output(z).T
        if return_states:
            states[:, :, k + 1] = z.T
    return (y, states) if return_states else y


def simulate(sys: PolySystem, u: SampledInput) -> np.ndarray:
    """Outputs ``h_j(z(t_k))`` of one trajectory, shape ``(n_outputs, len(t_grid))``."""
    return simulate_batch(sys, [u])[0]


@dataclass
class SampleRun:
    seed: int
    segments: int
    t_grid: np.ndarray
    trajectories: np.ndarray  # (samples, n_outputs, len(t_grid))
    inputs: list[SampledInput]

    @property
    def lower(self) -> np.ndarray:
        return self.trajectories.min(axis=0)

    @property
    def upper(self) -> np.ndarray:
        return self.trajectories.max(axis=0)


def run_samples(sys: PolySystem, box: InputBox, segments: int, count: int, seed: int,
                T: float, steps: int = 1000) -> SampleRun:
    inputs = sample_inputs(sys.m, box, segments, T, count, seed, steps)
    return SampleRun(seed, segments, inputs[0].t_grid, simulate_batch(sys, inputs), inputs)


def empirical_reach(sys: PolySystem, box: InputBox, segments: int, count: int, seed: int,
                    t_grid) -> tuple[np.ndarray, np.ndarray]:
    """Pointwise (min, max) of simulated outputs, each ``(n_outputs, len(t_grid))``.

    ``t_grid`` must be uniform from 0; it is also the integration grid.
    """
    t = np.asarray(t_grid, dtype=float)
    run = run_samples(sys, box, segments, count, seed, float(t[-1]), t.size - 1)
    return run.lower, run.upper
