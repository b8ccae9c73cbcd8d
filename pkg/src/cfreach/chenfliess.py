"""Iterated integrals and truncated Chen-Fliess series on a uniform time grid."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .words import FormalPowerSeries, Word

__all__ = [
    "SampledInput",
    "iterated_integral",
    "unit_iterated_integral",
    "evaluate_series",
]


@dataclass(frozen=True)
class SampledInput:
    """Input samples on the uniform grid ``t_grid`` (``t_grid[0] == 0``).

    ``values[i - 1]`` holds channel ``u_i``; the drift channel ``u_0 = 1`` is
    implicit and never stored.
    """

    t_grid: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.t_grid, dtype=float)
        v = np.atleast_2d(np.asarray(self.values, dtype=float))
        if t.ndim != 1 or t.size < 2:
            raise ValueError("t_grid needs at least two points")
        if t[0] != 0.0:
            raise ValueError("t_grid must start at 0")
        dt = np.diff(t)
        if np.any(dt <= 0) or not np.allclose(dt, dt[0], rtol=1e-9, atol=0):
            raise ValueError("t_grid must be uniform and increasing")
        if v.shape[1] != t.size:
            raise ValueError(f"each channel needs {t.size} samples, got {v.shape[1]}")
        t.setflags(write=False)
        v.setflags(write=False)
        object.__setattr__(self, "t_grid", t)
        object.__setattr__(self, "values", v)

    @classmethod
    def constant(cls, levels, T: float, steps: int) -> "SampledInput":
        levels = np.atleast_1d(np.asarray(levels, dtype=float))
        t = np.linspace(0.0, T, steps + 1)
        return cls(t, np.repeat(levels[:, None], t.size, axis=1))

    @property
    def m(self) -> int:
        return self.values.shape[0]

    @property
    def dt(self) -> float:
        return float(self.t_grid[1] - self.t_grid[0])

    def channel(self, i: int) -> np.ndarray:
        if i == 0:
            return np.ones_like(self.t_grid)
        if not 1 <= i <= self.m:
            raise ValueError(f"letter x{i} has no input channel (m={self.m})")
        return self.values[i - 1]


def _cumtrapz(f: np.ndarray, dt: float) -> np.ndarray:
    out = np.empty_like(f)
    out[0] = 0.0
    np.cumsum(0.5 * dt * (f[1:] + f[:-1]), out=out[1:])
    return out


def _integrals(words, u: SampledInput) -> dict[Word, np.ndarray]:
    # E_{x_i w} = int u_i E_w, so each word needs its suffix first
    memo: dict[Word, np.ndarray] = {Word(): np.ones_like(u.t_grid)}

    def get(w: Word) -> np.ndarray:
        r = memo.get(w)
        if r is None:
            r = _cumtrapz(u.channel(w[0]) * get(Word(w[1:])), u.dt)
            memo[w] = r
        return r

    for w in sorted(words, key=len):
        get(w)
    return memo


def iterated_integral(w, u: SampledInput) -> np.ndarray:
    """E_w[u] at every grid point, by nested cumulative trapezoid rule."""
    w = w if isinstance(w, Word) else Word(w)
    if any(i > u.m for i in w):
        raise ValueError(f"word {w} uses a letter beyond x{u.m}")
    return _integrals([w], u)[w].copy()


def unit_iterated_integral(w, t):
    """E_w[1](t) = t**|w| / |w|! with every channel held at 1."""
    k = len(w)
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise ValueError("t must be nonnegative")
    out = t**k / math.factorial(k)
    return float(out) if out.ndim == 0 else out


def evaluate_series(c: FormalPowerSeries, u: SampledInput) -> np.ndarray:
    """sum_w (c, w) E_w[u] over the stored (truncated) support."""
    if c.alphabet_size > u.m and any(i > u.m for w in c for i in w):
        raise ValueError(f"series uses letters beyond the input's {u.m} channels")
    memo = _integrals(list(c), u)
    y = np.zeros_like(u.t_grid)
    for w, v in c.items():
        y = y + v * memo[w]
    return y
