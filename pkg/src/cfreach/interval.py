"""Closed real intervals with the relaxed product and power.

Powers are *relaxed*: ``I**n`` is the range of ``y_1 * ... * y_n`` with each
factor drawn independently from ``I``, so ``Interval(-2, 1)**2`` is
``[-2, 4]`` rather than the functional square ``[0, 4]``.

Endpoints are plain IEEE doubles; no outward rounding is performed.
"""
from __future__ import annotations

from dataclasses import dataclass
from numbers import Real

__all__ = ["Interval", "interval_mul", "interval_pow", "scale_interval"]


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    def __post_init__(self):
        lo, hi = float(self.lo), float(self.hi)
        if not lo <= hi:
            raise ValueError(f"invalid interval [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def point(cls, v: float) -> "Interval":
        return cls(v, v)

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def __contains__(self, v) -> bool:
        if isinstance(v, Interval):
            return self.lo <= v.lo and v.hi <= self.hi
        return self.lo <= v <= self.hi

    def issubset(self, other: "Interval") -> bool:
        return other.lo <= self.lo and self.hi <= other.hi

    def __add__(self, other):
        if isinstance(other, Interval):
            return Interval(self.lo + other.lo, self.hi + other.hi)
        if isinstance(other, Real):
            return Interval(self.lo + other, self.hi + other)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self) -> "Interval":
        return Interval(-self.hi, -self.lo)

    def __mul__(self, other):
        if isinstance(other, Interval):
            return interval_mul(self, other)
        if isinstance(other, Real):
            return scale_interval(other, self)
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Interval":
        return interval_pow(self, n)

    def __iter__(self):
        yield self.lo
        yield self.hi

    def __repr__(self) -> str:
        return f"[{self.lo!r}, {self.hi!r}]"


def interval_mul(i1: Interval, i2: Interval) -> Interval:
    p = (i1.lo * i2.lo, i1.lo * i2.hi, i1.hi * i2.lo, i1.hi * i2.hi)
    return Interval(min(p), max(p))


def interval_pow(interval: Interval, n: int) -> Interval:
    """n-fold relaxed product of ``interval`` with itself.

    The extremes of a product of n independent factors sit at vertices
    a**k * b**(n-k); only k in {0, 1, n-1, n} can win, which gives the
    closed forms below for every sign configuration. ``I**0 == [1, 1]``.
    """
    n = int(n)
    if n < 0:
        raise ValueError("power must be nonnegative")
    if n == 0:
        return Interval(1.0, 1.0)
    a, b = interval.lo, interval.hi
    if n % 2:
        lo = min(a**n, a * b**(n - 1))
        hi = max(b**n, a**(n - 1) * b)
    else:
        lo = min(a**n, a * b**(n - 1), a**(n - 1) * b, b**n)
        hi = max(a**n, b**n)
    return Interval(lo, hi)


def scale_interval(lam: float, interval: Interval) -> Interval:
    """The image ``{lam * y : y in interval}``."""
    if lam >= 0:
        return Interval(lam * interval.lo, lam * interval.hi)
    return Interval(lam * interval.hi, lam * interval.lo)
