"""Sparse multivariate polynomials, Lie derivatives and Chen-Fliess coefficients.

A control-affine system

    z' = g_0(z) + sum_i g_i(z) u_i,    y_j = h_j(z),    z(0) = z0

with polynomial data has Chen-Fliess coefficients given by iterated Lie
derivatives of ``h_j`` evaluated at ``z0``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, NamedTuple, Sequence

import numpy as np

from .interval import Interval, interval_mul, interval_pow, scale_interval
from .words import EMPTY, FormalPowerSeries, Word

__all__ = [
    "Polynomial",
    "PolySystem",
    "poly_add",
    "poly_mul",
    "poly_partial",
    "poly_eval",
    "lie_derivative",
    "generate_coefficients",
    "GrowthEstimate",
    "estimate_growth",
    "growth_prefactor",
]


class Polynomial:
    """Polynomial in ``n_vars`` variables stored as ``{exponent tuple: coeff}``.

    Terms with an exactly-zero coefficient are never stored, so two equal
    polynomials always compare equal regardless of how they were built.
    """

    __slots__ = ("n_vars", "terms", "_compiled")

    def __init__(self, n_vars: int, terms: Mapping[Sequence[int], float] | None = None):
        self.n_vars = int(n_vars)
        acc: dict[tuple[int, ...], float] = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != self.n_vars:
                raise ValueError(f"exponent vector {exps} has length != n_vars={self.n_vars}")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            acc[exps] = acc.get(exps, 0.0) + float(c)
        self.terms = {e: c for e, c in sorted(acc.items()) if c != 0.0}
        self._compiled = None

    @classmethod
    def constant(cls, n_vars: int, c: float) -> "Polynomial":
        return cls(n_vars, {(0,) * n_vars: c})

    @classmethod
    def variable(cls, n_vars: int, k: int, coeff: float = 1.0) -> "Polynomial":
        if not 0 <= k < n_vars:
            raise ValueError(f"variable index {k} out of range for n_vars={n_vars}")
        exps = [0] * n_vars
        exps[k] = 1
        return cls(n_vars, {tuple(exps): coeff})

    @classmethod
    def zero(cls, n_vars: int) -> "Polynomial":
        return cls(n_vars)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def variables(self) -> set[int]:
        """Indices of variables that actually appear."""
        return {k for e in self.terms for k, p in enumerate(e) if p}

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.n_vars == other.n_vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.n_vars, tuple(self.terms.items())))

    def __add__(self, other):
        if isinstance(other, (int, float)):
            other = Polynomial.constant(self.n_vars, other)
        return poly_add(self, other)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.n_vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return Polynomial(self.n_vars, {e: other * c for e, c in self.terms.items()})
        return poly_mul(self, other)

    __rmul__ = __mul__

    def __call__(self, z):
        return poly_eval(self, z)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms.items():
            mono = "*".join(f"z{k + 1}" + (f"^{p}" if p > 1 else "")
                            for k, p in enumerate(e) if p)
            parts.append(f"{c:g}" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)

    def _arrays(self):
        if self._compiled is None:
            if self.terms:
                exps = np.array(list(self.terms), dtype=np.int64)
                coeffs = np.array(list(self.terms.values()))
            else:
                exps = np.zeros((0, self.n_vars), dtype=np.int64)
                coeffs = np.zeros(0)
            self._compiled = (exps, coeffs)
        return self._compiled


def _check_same(p: Polynomial, q: Polynomial):
    if p.n_vars != q.n_vars:
        raise ValueError(f"dimension mismatch: {p.n_vars} vs {q.n_vars} variables")


def poly_add(p: Polynomial, q: Polynomial) -> Polynomial:
    _check_same(p, q)
    acc = dict(p.terms)
    for e, c in q.terms.items():
        acc[e] = acc.get(e, 0.0) + c
    return Polynomial(p.n_vars, acc)


def poly_mul(p: Polynomial, q: Polynomial) -> Polynomial:
    _check_same(p, q)
    acc: dict[tuple[int, ...], float] = {}
    for e1, c1 in p.terms.items():
        for e2, c2 in q.terms.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            acc[e] = acc.get(e, 0.0) + c1 * c2
    return Polynomial(p.n_vars, acc)


def poly_partial(p: Polynomial, k: int) -> Polynomial:
    """Partial derivative with respect to variable ``k`` (0-based)."""
    if not 0 <= k < p.n_vars:
        raise ValueError(f"variable index {k} out of range for n_vars={p.n_vars}")
    acc = {}
    for e, c in p.terms.items():
        if e[k]:
            d = list(e)
            d[k] -= 1
            acc[tuple(d)] = c * e[k]
    return Polynomial(p.n_vars, acc)


def poly_eval(p: Polynomial, z):
    """Evaluate ``p`` at ``z``.

    ``z`` has shape ``(n_vars,)`` or ``(n_vars, ...)``; trailing axes are
    broadcast, which lets one call evaluate a batch of states.
    """
    z = np.asarray(z, dtype=float)
    if z.shape[:1] != (p.n_vars,):
        raise ValueError(f"expected {p.n_vars} coordinates, got shape {z.shape}")
    out = np.zeros(z.shape[1:])
    for e, c in p.terms.items():
        term = c
        for k, power in enumerate(e):
            if power:
                term = term * z[k] ** power
        out = out + term
    return float(out) if out.ndim == 0 else out


def poly_eval_interval(p: Polynomial, box: Sequence[Interval]) -> Interval:
    """Natural interval extension of ``p`` over a box of per-variable intervals."""
    if len(box) != p.n_vars:
        raise ValueError(f"expected {p.n_vars} intervals, got {len(box)}")
    total = Interval(0.0, 0.0)
    for e, c in p.terms.items():
        term = Interval(1.0, 1.0)
        for k, power in enumerate(e):
            if power:
                term = interval_mul(term, interval_pow(box[k], power))
        total = total + scale_interval(c, term)
    return total


def lie_derivative(h: Polynomial, g: Sequence[Polynomial]) -> Polynomial:
    """L_g h = sum_k g_k * dh/dz_k."""
    if len(g) != h.n_vars:
        raise ValueError(f"vector field has {len(g)} components, expected {h.n_vars}")
    out = Polynomial.zero(h.n_vars)
    for k, gk in enumerate(g):
        _check_same(h, gk)
        if gk.is_zero():
            continue
        dh = poly_partial(h, k)
        if not dh.is_zero():
            out = poly_add(out, poly_mul(gk, dh))
    return out


@dataclass
class PolySystem:
    """Control-affine polynomial system.

    ``g[0]`` is the drift vector field, ``g[i]`` multiplies input ``u_i``.
    """

    n: int
    m: int
    g: list[list[Polynomial]]
    h: list[Polynomial]
    z0: np.ndarray = field(default=None)

    def __post_init__(self):
        if len(self.g) != self.m + 1:
            raise ValueError(f"expected m+1={self.m + 1} vector fields, got {len(self.g)}")
        for i, gi in enumerate(self.g):
            if len(gi) != self.n:
                raise ValueError(f"vector field g[{i}] has {len(gi)} components, expected {self.n}")
            for p in gi:
                if p.n_vars != self.n:
                    raise ValueError(f"polynomial in g[{i}] has n_vars={p.n_vars}, expected {self.n}")
        for j, hj in enumerate(self.h):
            if hj.n_vars != self.n:
                raise ValueError(f"output h[{j}] has n_vars={hj.n_vars}, expected {self.n}")
        self.z0 = np.asarray(self.z0, dtype=float).reshape(-1)
        if self.z0.shape != (self.n,):
            raise ValueError(f"z0 has length {self.z0.size}, expected {self.n}")

    @property
    def n_outputs(self) -> int:
        return len(self.h)

    def vector_field(self, z, u):
        """f(z, u) = g_0(z) + sum_i g_i(z) u_i, batched over trailing axes."""
        z = np.asarray(z, dtype=float)
        u = np.asarray(u, dtype=float)
        out = np.stack([poly_eval(p, z) * np.ones(z.shape[1:]) for p in self.g[0]])
        for i in range(1, self.m + 1):
            out = out + np.stack([poly_eval(p, z) * np.ones(z.shape[1:]) for p in self.g[i]]) * u[i - 1]
        return out

    def output(self, z):
        z = np.asarray(z, dtype=float)
        return np.stack([poly_eval(hj, z) * np.ones(z.shape[1:]) for hj in self.h])


def generate_coefficients(sys: PolySystem, output_index: int, N: int) -> FormalPowerSeries:
    """Chen-Fliess coefficients of output ``output_index`` up to word length N.

    Walks the prefix tree of words: the polynomial of ``eta + x_i`` is the
    Lie derivative of the polynomial of ``eta`` along ``g_i``. A zero node
    has only zero descendants and is not expanded.
    """
    if N < 0:
        raise ValueError("N must be nonnegative")
    if not 0 <= output_index < sys.n_outputs:
        raise ValueError(f"output index {output_index} out of range")
    coeffs: dict[Word, float] = {}
    level = [(EMPTY, sys.h[output_index])]
    for depth in range(N + 1):
        nxt = []
        for w, p in level:
            coeffs[w] = poly_eval(p, sys.z0)
            if depth < N:
                for i in range(sys.m + 1):
                    q = lie_derivative(p, sys.g[i])
                    if not q.is_zero():
                        nxt.append((w + (i,), q))
        level = nxt
    return FormalPowerSeries(sys.m, N, coeffs)


class GrowthEstimate(NamedTuple):
    global_M: float
    local_M: float


def growth_prefactor(c: FormalPowerSeries) -> float:
    """Prefactor K used alongside the growth estimates: max(1, |(c, e)|)."""
    return max(1.0, abs(c[EMPTY]))


def estimate_growth(c: FormalPowerSeries) -> GrowthEstimate:
    """Empirical growth constants over the stored support.

    global_M = max |(c,w)|**(1/|w|), local_M = max (|(c,w)|/|w|!)**(1/|w|),
    both over nonempty words. Diagnostic only; a finite truncation cannot
    certify either bound.
    """
    if c.max_order < 2:
        raise ValueError("growth estimation needs max_order >= 2")
    gc = lc = None
    for w, v in c.items():
        k = len(w)
        if k == 0:
            continue
        a = abs(v)
        g = a ** (1.0 / k)
        loc = math.exp((math.log(a) - math.lgamma(k + 1)) / k)
        gc = g if gc is None else max(gc, g)
        lc = loc if lc is None else max(lc, loc)
    if gc is None:
        raise ValueError("insufficient support: series has no nonzero word of positive length")
    return GrowthEstimate(gc, lc)
