"""Mixed-monotone reachability baseline.

The decomposition function is the tight one built from box optimization:
for ``x <= x_hat`` and ``u <= u_hat``

    d_i(x, u, x_hat, u_hat) = min f_i(y, z)  over y in [x, x_hat], y_i = x_i,
                                                   z in [u, u_hat]

(and the matching max for the reversed ordering). The optimum is found by
dense grid search, which only approaches the true min/max from the
feasible side. The resulting boxes are therefore a comparison baseline and
can under-cover slightly when f_i is not multilinear in the free variables.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .interval import Interval
from .polylie import PolySystem, poly_eval, poly_eval_interval

__all__ = [
    "DivergenceError",
    "EmbeddingTrajectory",
    "decomposition",
    "embedding_field",
    "integrate_embedding",
]

DIVERGENCE_LIMIT = 1e12


class DivergenceError(ArithmeticError):
    """Raised when an integrated state leaves the finite range."""

    def __init__(self, t: float, message: str | None = None):
        self.t = float(t)
        super().__init__(message or f"state diverged at t={self.t:g}")


def _dependencies(sys: PolySystem, i: int) -> tuple[set[int], set[int]]:
    """State variables and input channels that f_i actually depends on."""
    states = set(sys.g[0][i].variables())
    inputs = set()
    for j in range(1, sys.m + 1):
        if not sys.g[j][i].is_zero():
            inputs.add(j - 1)
            states |= sys.g[j][i].variables()
    return states, inputs


def _component(sys: PolySystem, i: int, y, z):
    out = poly_eval(sys.g[0][i], y)
    for j in range(1, sys.m + 1):
        p = sys.g[j][i]
        if not p.is_zero():
            out = out + poly_eval(p, y) * z[j - 1]
    return out


def _grid_extremum(sys, i, pinned, y_lo, y_hi, z_lo, z_hi, grid_pts, maximize):
    states, inputs = _dependencies(sys, i)
    axes_y = []
    for k in range(sys.n):
        if k == i or k not in states or y_lo[k] == y_hi[k]:
            axes_y.append(np.array([pinned if k == i else y_lo[k]]))
        else:
            axes_y.append(np.linspace(y_lo[k], y_hi[k], grid_pts))
    axes_z = []
    for j in range(sys.m):
        if j not in inputs or z_lo[j] == z_hi[j]:
            axes_z.append(np.array([z_lo[j]]))
        else:
            axes_z.append(np.linspace(z_lo[j], z_hi[j], grid_pts))
    mesh = np.meshgrid(*axes_y, *axes_z, indexing="ij")
    flat = [a.reshape(-1) for a in mesh]
    y = np.stack(flat[:sys.n])
    z = flat[sys.n:]
    vals = np.atleast_1d(_component(sys, i, y, z))
    return float(vals.max() if maximize else vals.min())


def decomposition(sys: PolySystem, i: int, x, u, x_hat, u_hat, grid_pts: int = 33) -> float:
    """Grid approximation of the tight decomposition function component d_i."""
    x, u, x_hat, u_hat = (np.asarray(v, dtype=float).reshape(-1) for v in (x, u, x_hat, u_hat))
    if np.all(x <= x_hat) and np.all(u <= u_hat):
        return _grid_extremum(sys, i, x[i], x, x_hat, u, u_hat, grid_pts, maximize=False)
    if np.all(x_hat <= x) and np.all(u_hat <= u):
        return _grid_extremum(sys, i, x[i], x_hat, x, u_hat, u, grid_pts, maximize=True)
    raise ValueError("decomposition needs (x <= x_hat, u <= u_hat) or (x_hat <= x, u_hat <= u)")


def embedding_field(sys: PolySystem, x, x_hat, u_low, u_high, grid_pts: int = 33):
    """Right-hand side [d(x, u_low, x_hat, u_high); d(x_hat, u_high, x, u_low)]."""
    # RK4 stages can cross by a rounding error; optimize over the hull instead
    lo, hi = np.minimum(x, x_hat), np.maximum(x, x_hat)
    dx = np.array([_grid_extremum(sys, i, x[i], lo, hi, u_low, u_high, grid_pts, False)
                   for i in range(sys.n)])
    dxh = np.array([_grid_extremum(sys, i, x_hat[i], lo, hi, u_low, u_high, grid_pts, True)
                    for i in range(sys.n)])
    return dx, dxh


@dataclass
class EmbeddingTrajectory:
    """Corner trajectories of the embedding system; arrays are ``(len(t), n)``."""

    t: np.ndarray
    x: np.ndarray
    x_hat: np.ndarray

    def output_box(self, sys: PolySystem) -> tuple[np.ndarray, np.ndarray]:
        """Per-output (lo, hi) curves, shape ``(n_outputs, len(t))``.

        Outputs are bounded with the natural interval extension of h_j over
        the state box, which is exact for coordinate projections.
        """
        lo = np.empty((sys.n_outputs, self.t.size))
        hi = np.empty_like(lo)
        for k in range(self.t.size):
            box = [Interval(a, b) for a, b in zip(self.x[k], self.x_hat[k])]
            for j, hj in enumerate(sys.h):
                iv = poly_eval_interval(hj, box)
                lo[j, k], hi[j, k] = iv.lo, iv.hi
        return lo, hi


def integrate_embedding(sys: PolySystem, x0, x0_hat, u_low, u_high, t_grid,
                        grid_pts: int = 33) -> EmbeddingTrajectory:
    """RK4 integration of the embedding system with inputs frozen at the box corners."""
    x = np.asarray(x0, dtype=float).reshape(-1).copy()
    xh = np.asarray(x0_hat, dtype=float).reshape(-1).copy()
    ul = np.asarray(u_low, dtype=float).reshape(-1)
    uh = np.asarray(u_high, dtype=float).reshape(-1)
    t = np.asarray(t_grid, dtype=float)
    if x.shape != (sys.n,) or xh.shape != (sys.n,):
        raise ValueError(f"initial corners must have length {sys.n}")
    if ul.shape != (sys.m,) or uh.shape != (sys.m,):
        raise ValueError(f"input corners must have length {sys.m}")
    if np.any(x > xh) or np.any(ul > uh):
        raise ValueError("need x0 <= x0_hat and u_low <= u_high")

    def rhs(s):
        a, b = embedding_field(sys, s[:sys.n], s[sys.n:], ul, uh, grid_pts)
        return np.concatenate([a, b])

    s = np.concatenate([x, xh])
    out = np.empty((t.size, 2 * sys.n))
    out[0] = s
    for k in range(t.size - 1):
        h = t[k + 1] - t[k]
        k1 = rhs(s)
        k2 = rhs(s + 0.5 * h * k1)
        k3 = rhs(s + 0.5 * h * k2)
        k4 = rhs(s + h * k3)
        s = s + h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)
        if not np.all(np.isfinite(s)) or np.max(np.abs(s)) > DIVERGENCE_LIMIT:
            raise DivergenceError(t[k + 1], f"embedding system diverged at t={t[k + 1]:g}")
        out[k + 1] = s
    return EmbeddingTrajectory(t, out[:, :sys.n], out[:, sys.n:])
