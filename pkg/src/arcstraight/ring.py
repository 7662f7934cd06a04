"""Exact polynomial arithmetic in the two differential rings.

The x-ring is Z[x^(k)_ij] (level-k copies of the entries of a generic
p x q matrix) and the ab-ring is Z[a^(k)_il, b^(k)_jl] (level-k copies
of p row vectors and q column vectors of length h).  Both carry the
derivation d(x^(k)) = (k+1) x^(k+1); the normalized power dbar^l = d^l/l!
keeps integer coefficients and satisfies dbar^l(fg) = sum_i dbar^i f
dbar^(l-i) g.

Polynomials are immutable values: a dict from canonical monomials to
nonzero integers.  A monomial is a tuple of (Variable, exponent) pairs
sorted by variable; a Variable sorts by (kind, level, indices) so that
a < b < x, then lower level first.
"""

from __future__ import annotations

import json
from math import factorial
from typing import Iterable, Iterator, NamedTuple

from .errors import InvariantViolation, UsageError


class Variable(NamedTuple):
    """One indeterminate.  kind 'x': entry (i,j); 'a': row i, copy j;
    'b': column i, copy j.  k is the derivative level."""

    kind: str
    k: int
    i: int
    j: int

    def __str__(self) -> str:
        return f"{self.kind}{self.k}[{self.i},{self.j}]"


def x_var(i: int, j: int, k: int = 0) -> Variable:
    return Variable("x", k, i, j)


def a_var(i: int, l: int, k: int = 0) -> Variable:
    return Variable("a", k, i, l)


def b_var(j: int, l: int, k: int = 0) -> Variable:
    return Variable("b", k, j, l)


def _ring_of(kind: str) -> str:
    return "x" if kind == "x" else "ab"


# A monomial is a sorted tuple of (Variable, positive exponent) pairs.
Monomial = tuple

ONE_MONO: Monomial = ()


def mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    """Merge two canonical monomials, adding exponents."""
    if not m1:
        return m2
    if not m2:
        return m1
    out = []
    i = j = 0
    n1, n2 = len(m1), len(m2)
    while i < n1 and j < n2:
        v1, e1 = m1[i]
        v2, e2 = m2[j]
        if v1 == v2:
            out.append((v1, e1 + e2))
            i += 1
            j += 1
        elif v1 < v2:
            out.append(m1[i])
            i += 1
        else:
            out.append(m2[j])
            j += 1
    out.extend(m1[i:])
    out.extend(m2[j:])
    return tuple(out)


def mono_from_vars(vs: Iterable[Variable]) -> Monomial:
    counts: dict[Variable, int] = {}
    for v in vs:
        counts[v] = counts.get(v, 0) + 1
    return tuple(sorted(counts.items()))


def mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def mono_weight(m: Monomial) -> int:
    return sum(v.k * e for v, e in m)


def _mono_str(m: Monomial) -> str:
    if not m:
        return "1"
    return "*".join(str(v) + (f"^{e}" if e > 1 else "") for v, e in m)


class Polynomial:
    """Immutable integer-coefficient polynomial in one of the two rings."""

    __slots__ = ("terms", "ring")

    def __init__(self, terms: dict | None = None, ring: str | None = None):
        self.terms = terms or {}
        if ring is None:
            for mono in self.terms:
                if mono:
                    ring = _ring_of(mono[0][0].kind)
                    break
        self.ring = ring

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero() -> "Polynomial":
        return Polynomial({})

    @staticmethod
    def const(c: int) -> "Polynomial":
        return Polynomial({ONE_MONO: c} if c else {})

    @staticmethod
    def one() -> "Polynomial":
        return Polynomial.const(1)

    @staticmethod
    def var(v: Variable) -> "Polynomial":
        return Polynomial({((v, 1),): 1}, _ring_of(v.kind))

    @staticmethod
    def from_terms(terms: dict) -> "Polynomial":
        """Normalize an untrusted monomial->coefficient map."""
        clean = {}
        rings = set()
        for mono, c in terms.items():
            if c == 0:
                continue
            clean[mono] = c
            for v, e in mono:
                if e <= 0:
                    raise UsageError(f"non-positive exponent in {mono}")
                rings.add(_ring_of(v.kind))
        if len(rings) > 1:
            raise UsageError("monomials mix x-variables with a/b-variables")
        return Polynomial(clean, rings.pop() if rings else None)

    # -- ring checks ---------------------------------------------------

    def _join_ring(self, other: "Polynomial") -> str | None:
        if self.ring is None:
            return other.ring
        if other.ring is None or other.ring == self.ring:
            return self.ring
        raise UsageError("cannot combine x-ring and ab-ring polynomials")

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other: "Polynomial") -> "Polynomial":
        ring = self._join_ring(other)
        terms = dict(self.terms)
        for mono, c in other.terms.items():
            s = terms.get(mono, 0) + c
            if s:
                terms[mono] = s
            else:
                del terms[mono]
        return Polynomial(terms, ring)

    def __neg__(self) -> "Polynomial":
        return Polynomial({m: -c for m, c in self.terms.items()}, self.ring)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, int):
            return self.scale(other)
        ring = self._join_ring(other)
        # Iterate the smaller operand on the outside.
        f, g = self.terms, other.terms
        if len(f) > len(g):
            f, g = g, f
        terms: dict = {}
        get = terms.get
        for m1, c1 in f.items():
            for m2, c2 in g.items():
                m = mono_mul(m1, m2)
                s = get(m, 0) + c1 * c2
                if s:
                    terms[m] = s
                elif m in terms:
                    del terms[m]
        return Polynomial(terms, ring)

    __rmul__ = __mul__

    def scale(self, c: int) -> "Polynomial":
        if c == 0:
            return Polynomial.zero()
        return Polynomial({m: c * k for m, k in self.terms.items()}, self.ring)

    def __eq__(self, other) -> bool:
        return isinstance(other, Polynomial) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __iter__(self) -> Iterator:
        return iter(self.terms.items())

    def __len__(self) -> int:
        return len(self.terms)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for m in sorted(self.terms):
            c = self.terms[m]
            bits.append(f"{'+' if c >= 0 else '-'} {abs(c)}*{_mono_str(m)}")
        return " ".join(bits).lstrip("+ ")

    def coefficient(self, mono: Monomial) -> int:
        return self.terms.get(mono, 0)


def poly_from_vars(vs: Iterable[Variable], coeff: int = 1) -> Polynomial:
    return Polynomial.from_terms({mono_from_vars(vs): coeff})


# -- derivations -------------------------------------------------------


def _derive_terms(f: Polynomial, keep) -> Polynomial:
    """Unnormalized derivation d, deriving only variables accepted by keep."""
    out: dict = {}
    get = out.get
    for mono, c in f.terms.items():
        for idx, (v, e) in enumerate(mono):
            if not keep(v):
                continue
            dv = Variable(v.kind, v.k + 1, v.i, v.j)
            rest = mono[:idx] + (() if e == 1 else ((v, e - 1),)) + mono[idx + 1:]
            m = mono_mul(rest, ((dv, 1),))
            s = get(m, 0) + c * e * (v.k + 1)
            if s:
                out[m] = s
            elif m in out:
                del out[m]
    return Polynomial(out, f.ring)


def derive(f: Polynomial) -> Polynomial:
    """The derivation with d x^(k) = (k+1) x^(k+1) on every generator."""
    return _derive_terms(f, lambda v: True)


def _exact_div(f: Polynomial, n: int) -> Polynomial:
    terms = {}
    for mono, c in f.terms.items():
        q, r = divmod(c, n)
        if r:
            raise InvariantViolation(
                f"coefficient {c} of {_mono_str(mono)} not divisible by {n}")
        terms[mono] = q
    return Polynomial(terms, f.ring)


def dbar(f: Polynomial, l: int) -> Polynomial:
    """Normalized l-th derivative d^l/l!; exact over the integers."""
    if l < 0:
        raise UsageError("derivative order must be nonnegative")
    g = f
    for _ in range(l):
        g = derive(g)
    return _exact_div(g, factorial(l))


def dbar_directional(f: Polynomial, l: int, indices, side: str) -> Polynomial:
    """Normalized l-th derivative hitting only rows (or columns) in `indices`.

    side='row' derives x-variables whose row index lies in the set,
    side='column' those whose column index does.
    """
    if f.ring == "ab":
        raise UsageError("directional derivations act on the x-ring")
    if side not in ("row", "column"):
        raise UsageError(f"side must be 'row' or 'column', got {side!r}")
    if l < 0:
        raise UsageError("derivative order must be nonnegative")
    idx = frozenset(indices)
    if side == "row":
        keep = lambda v: v.i in idx
    else:
        keep = lambda v: v.j in idx
    g = f
    for _ in range(l):
        g = _derive_terms(g, keep)
    return _exact_div(g, factorial(l))


def bidegree_split(f: Polynomial) -> dict:
    """Partition the terms of f by (degree, weight)."""
    parts: dict = {}
    for mono, c in f.terms.items():
        key = (mono_degree(mono), mono_weight(mono))
        parts.setdefault(key, {})[mono] = c
    return {key: Polynomial(terms, f.ring) for key, terms in parts.items()}


def bidegree(f: Polynomial) -> tuple[int, int]:
    """The (degree, weight) of a bihomogeneous polynomial."""
    keys = {(mono_degree(m), mono_weight(m)) for m in f.terms}
    if len(keys) != 1:
        raise UsageError("polynomial is not bihomogeneous")
    return keys.pop()


# -- JSON wire format --------------------------------------------------


def poly_to_obj(f: Polynomial) -> list:
    out = []
    for mono in sorted(f.terms):
        out.append({
            "coeff": str(f.terms[mono]),
            "vars": [{"kind": v.kind, "i": v.i, "j": v.j, "k": v.k, "exp": e}
                     for v, e in mono],
        })
    return out


def poly_from_obj(obj: list) -> Polynomial:
    terms = {}
    for rec in obj:
        mono = tuple(sorted(
            (Variable(d["kind"], d["k"], d["i"], d["j"]), d["exp"])
            for d in rec["vars"]))
        terms[mono] = terms.get(mono, 0) + int(rec["coeff"])
    return Polynomial.from_terms(terms)


def poly_to_json(f: Polynomial) -> str:
    return json.dumps(poly_to_obj(f), sort_keys=True)


def poly_from_json(text: str) -> Polynomial:
    return poly_from_obj(json.loads(text))
