"""Closed-form interval envelopes for the reachable set of a Chen-Fliess series.

With every input channel confined to ``[a, b]``, the iterated integral of a
word ``w`` at time ``t`` lies in

    [a, b]**r * t**|w| / |w|!,      r = |w| - (number of x_0 in w),

using the relaxed interval power. Scaling by the coefficient and summing
over the support bounds the output:

    lower(t) = sum_w lower((c,w) [a,b]**r) t**|w| / |w|!
    upper(t) = sum_w upper((c,w) [a,b]**r) t**|w| / |w|!

Both are Chen-Fliess series driven by the all-ones input.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .chenfliess import unit_iterated_integral
from .interval import Interval, interval_pow, scale_interval
from .words import FormalPowerSeries, Word, count_letter

__all__ = [
    "InputBox",
    "ReachEnvelope",
    "word_reach",
    "bound_coefficients",
    "reach_envelope",
    "tail_bound",
]


@dataclass(frozen=True)
class InputBox:
    """The hyper-rectangle ``[a, b]^m``: every channel shares one interval."""

    m: int
    interval: Interval

    def __init__(self, m: int, a, b: float | None = None):
        interval = a if isinstance(a, Interval) else Interval(a, b)
        object.__setattr__(self, "m", int(m))
        object.__setattr__(self, "interval", interval)

    @property
    def a(self) -> float:
        return self.interval.lo

    @property
    def b(self) -> float:
        return self.interval.hi

    @property
    def radius(self) -> float:
        """max(|a|, |b|, 1), the per-letter magnitude bound used by the tail."""
        return max(abs(self.a), abs(self.b), 1.0)


@dataclass
class ReachEnvelope:
    """Per-output lower/upper curves over ``t_grid``.

    ``lower`` and ``upper`` have shape ``(n_outputs, len(t_grid))``. When
    ``tail`` is set, the curves already include it.
    """

    t_grid: np.ndarray
    lower: np.ndarray
    upper: np.ndarray
    order: int
    tail: np.ndarray | None = None

    @property
    def n_outputs(self) -> int:
        return self.lower.shape[0]

    def contains(self, y: np.ndarray, tol: float = 0.0) -> np.ndarray:
        """Boolean mask of grid points where ``y`` (outputs x grid) lies inside."""
        y = np.atleast_2d(y)
        return (self.lower - tol <= y) & (y <= self.upper + tol)

    def widened(self, tail: np.ndarray) -> "ReachEnvelope":
        tail = np.asarray(tail, dtype=float)
        return ReachEnvelope(self.t_grid, self.lower - tail, self.upper + tail, self.order, tail)


def _as_interval(box) -> Interval:
    return box.interval if isinstance(box, InputBox) else box


def word_reach(w, box, t: float) -> Interval:
    """Interval containing E_w[u](t) for all inputs valued in ``box``."""
    if t < 0:
        raise ValueError("t must be nonnegative")
    r = len(w) - count_letter(w, 0)
    return scale_interval(unit_iterated_integral(w, t), interval_pow(_as_interval(box), r))


def bound_coefficients(c: FormalPowerSeries, box) -> tuple[FormalPowerSeries, FormalPowerSeries]:
    """Coefficient series of the lower and upper envelope."""
    interval = _as_interval(box)
    lo, hi = {}, {}
    for w, v in c.items():
        iv = scale_interval(v, interval_pow(interval, len(w) - count_letter(w, 0)))
        lo[w], hi[w] = iv.lo, iv.hi
    return (FormalPowerSeries(c.alphabet_size, c.max_order, lo),
            FormalPowerSeries(c.alphabet_size, c.max_order, hi))


def _unit_response(c: FormalPowerSeries, t: np.ndarray) -> np.ndarray:
    by_length: dict[int, float] = {}
    for w, v in c.items():
        by_length[len(w)] = by_length.get(len(w), 0.0) + v
    y = np.zeros_like(t)
    for k in sorted(by_length):
        y = y + by_length[k] * unit_iterated_integral(Word((1,) * k), t)
    return y


def reach_envelope(series: FormalPowerSeries | Sequence[FormalPowerSeries], box, t_grid,
                   growth: tuple[float, float] | None = None) -> ReachEnvelope:
    """Envelope of the output reachable set for one series or a list of them.

    Without ``growth`` the envelope bounds the series truncated at its
    ``max_order``. Passing ``growth=(K, M)`` (a global growth bound
    ``|(c,w)| <= K M**|w|``) widens it by :func:`tail_bound`.
    """
    if isinstance(series, FormalPowerSeries):
        series = [series]
    t = np.asarray(t_grid, dtype=float)
    if t.ndim != 1 or np.any(t < 0) or np.any(np.diff(t) <= 0):
        raise ValueError("t_grid must be nonnegative and increasing")
    lower, upper = [], []
    for c in series:
        c_lo, c_hi = bound_coefficients(c, box)
        lower.append(_unit_response(c_lo, t))
        upper.append(_unit_response(c_hi, t))
    order = max(c.max_order for c in series)
    env = ReachEnvelope(t, np.array(lower), np.array(upper), order)
    if growth is not None:
        K, M = growth
        m = max(c.alphabet_size for c in series)
        box = box if isinstance(box, InputBox) else InputBox(m, box)
        env = env.widened(np.array([tail_bound(K, M, m, box, order, ti) for ti in t]))
    return env


def tail_bound(K: float, M: float, m: int, box, N: int, t: float) -> float:
    """Bound on the total contribution of all words longer than N.

    There are (m+1)**k words of length k and each contributes at most
    K M**k R**k t**k / k!, R = max(|a|, |b|, 1); the sum over k > N is the
    remainder of an exponential series in x = (m+1) M R t.
    """
    if K <= 0 or M <= 0:
        raise ValueError("K and M must be positive")
    if t < 0:
        raise ValueError("t must be nonnegative")
    if t == 0:
        return 0.0
    R = box.radius if isinstance(box, InputBox) else max(abs(box.lo), abs(box.hi), 1.0)
    x = (m + 1) * M * R * t
    k = N + 1
    term = math.exp(k * math.log(x) - math.lgamma(k + 1))
    total = 0.0
    while True:
        total += term
        k += 1
        term *= x / k
        if k > x and term <= 1e-16 * total:
            break
    return K * total
