"""JSON system descriptions and the two built-in example systems.

A system file looks like::

    {
      "n": 1, "m": 1,
      "g": [[[]], [[{"coeff": 1.0, "exps": [1]}]]],
      "h": [[{"coeff": 1.0, "exps": [1]}]],
      "z0": [1.0],
      "input_box": {"a": 1.0, "b": 2.8},
      "growth": {"K": 1.0, "M": 1.0}
    }

``g`` lists the m+1 vector fields (drift first); each vector field is a
list of n polynomials and each polynomial a list of terms.
"""
from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from pathlib import Path

from .interval import Interval
from .polylie import Polynomial, PolySystem
from .reachia import InputBox

__all__ = ["SpecError", "SystemSpec", "parse_spec", "load_spec", "dump_spec", "FIXTURES", "fixture"]


class SpecError(ValueError):
    """Malformed system description; ``key`` names the offending entry."""

    def __init__(self, key: str, message: str):
        self.key = key
        self.message = message
        super().__init__(f"{key}: {message}")


@dataclass
class SystemSpec:
    system: PolySystem
    box: InputBox
    growth: tuple[float, float] | None = None

    def __eq__(self, other):
        if not isinstance(other, SystemSpec):
            return NotImplemented
        a, b = self.system, other.system
        return (a.n == b.n and a.m == b.m and a.g == b.g and a.h == b.h
                and list(a.z0) == list(b.z0) and self.box == other.box
                and self.growth == other.growth)


def _number(value, key: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SpecError(key, f"expected a number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise SpecError(key, "must be finite")
    return value


def _natural(value, key: str, minimum: int = 0) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < minimum:
        raise SpecError(key, f"expected an integer >= {minimum}, got {value!r}")
    return value


def _list(value, key: str, length: int | None = None) -> list:
    if not isinstance(value, list):
        raise SpecError(key, f"expected a list, got {type(value).__name__}")
    if length is not None and len(value) != length:
        raise SpecError(key, f"expected {length} entries, got {len(value)}")
    return value


def _polynomial(value, key: str, n: int) -> Polynomial:
    terms = {}
    for t, term in enumerate(_list(value, key)):
        tkey = f"{key}[{t}]"
        if not isinstance(term, dict):
            raise SpecError(tkey, "expected an object with 'coeff' and 'exps'")
        for name in ("coeff", "exps"):
            if name not in term:
                raise SpecError(f"{tkey}.{name}", "missing")
        coeff = _number(term["coeff"], f"{tkey}.coeff")
        exps = tuple(_natural(e, f"{tkey}.exps[{k}]")
                     for k, e in enumerate(_list(term["exps"], f"{tkey}.exps", n)))
        terms[exps] = terms.get(exps, 0.0) + coeff
    return Polynomial(n, terms)


def parse_spec(doc: dict) -> SystemSpec:
    """Validate a decoded JSON document and build the system."""
    if not isinstance(doc, dict):
        raise SpecError("<root>", "expected a JSON object")
    for key in ("n", "m", "g", "h", "z0", "input_box"):
        if key not in doc:
            raise SpecError(key, "missing")
    n = _natural(doc["n"], "n", 1)
    m = _natural(doc["m"], "m", 0)
    g = []
    for i, field in enumerate(_list(doc["g"], "g", m + 1)):
        comps = _list(field, f"g[{i}]", n)
        g.append([_polynomial(p, f"g[{i}][{k}]", n) for k, p in enumerate(comps)])
    h = [_polynomial(p, f"h[{j}]", n) for j, p in enumerate(_list(doc["h"], "h"))]
    if not h:
        raise SpecError("h", "at least one output is required")
    z0 = [_number(v, f"z0[{k}]") for k, v in enumerate(_list(doc["z0"], "z0", n))]

    ib = doc["input_box"]
    if not isinstance(ib, dict) or "a" not in ib or "b" not in ib:
        raise SpecError("input_box", "expected an object with 'a' and 'b'")
    a, b = _number(ib["a"], "input_box.a"), _number(ib["b"], "input_box.b")
    if a > b:
        raise SpecError("input_box", f"a={a} exceeds b={b}")

    growth = None
    if doc.get("growth") is not None:
        gr = doc["growth"]
        if not isinstance(gr, dict) or "K" not in gr or "M" not in gr:
            raise SpecError("growth", "expected an object with 'K' and 'M'")
        K, M = _number(gr["K"], "growth.K"), _number(gr["M"], "growth.M")
        if K <= 0 or M <= 0:
            raise SpecError("growth", "K and M must be positive")
        growth = (K, M)

    return SystemSpec(PolySystem(n, m, g, h, z0), InputBox(m, Interval(a, b)), growth)


def load_spec(path) -> SystemSpec:
    text = Path(path).read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"line {exc.lineno}", f"invalid JSON ({exc.msg}, column {exc.colno})") from None
    try:
        return parse_spec(doc)
    except SpecError as exc:
        line = _key_line(text, exc.key)
        if line is None:
            raise
        raise SpecError(exc.key, f"{exc.message} (line {line})") from None


def _key_line(text: str, key: str) -> int | None:
    # best effort: the line where the top-level key is declared
    top = re.split(r"[\[.]", key, maxsplit=1)[0]
    for lineno, line in enumerate(text.splitlines(), 1):
        if f'"{top}"' in line:
            return lineno
    return None


def _poly_doc(p: Polynomial) -> list:
    return [{"coeff": c, "exps": list(e)} for e, c in p.terms.items()]


def spec_to_doc(spec: SystemSpec) -> dict:
    s = spec.system
    doc = {
        "n": s.n,
        "m": s.m,
        "g": [[_poly_doc(p) for p in field] for field in s.g],
        "h": [_poly_doc(p) for p in s.h],
        "z0": [float(v) for v in s.z0],
        "input_box": {"a": spec.box.a, "b": spec.box.b},
    }
    if spec.growth is not None:
        doc["growth"] = {"K": spec.growth[0], "M": spec.growth[1]}
    return doc


def dump_spec(spec: SystemSpec, path=None) -> str:
    text = json.dumps(spec_to_doc(spec), indent=2)
    if path is not None:
        Path(path).write_text(text + "\n")
    return text


def _ferfera() -> SystemSpec:
    # z' = z u, y = z, z(0) = 1, u in [1, 2.8]
    z = Polynomial.variable(1, 0)
    sys = PolySystem(1, 1, [[Polynomial.zero(1)], [z]], [z], [1.0])
    return SystemSpec(sys, InputBox(1, 1.0, 2.8), (1.0, 1.0))


def _lotka_volterra() -> SystemSpec:
    # z1' = -z1 z2 + z1 u1, z2' = z1 z2 - z2 u2, y = z1, z(0) = (1/6, 1/6), u in [-1, 1]^2
    z1, z2 = Polynomial.variable(2, 0), Polynomial.variable(2, 1)
    zero = Polynomial.zero(2)
    g = [[-(z1 * z2), z1 * z2], [z1, zero], [zero, -z2]]
    sys = PolySystem(2, 2, g, [z1], [1.0 / 6.0, 1.0 / 6.0])
    return SystemSpec(sys, InputBox(2, -1.0, 1.0), (1.0, 3.0))


FIXTURES = {"ferfera": _ferfera, "lotka-volterra": _lotka_volterra}


def fixture(name: str) -> SystemSpec:
    try:
        return FIXTURES[name]()
    except KeyError:
        raise SpecError("fixture", f"unknown fixture {name!r}; choose from {sorted(FIXTURES)}") from None
