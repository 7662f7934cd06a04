"""Rewriting products of minor symbols in the standard basis.

The production path works in the ab-ring: map the product through the
pairing substitution, read off the leading tableau of the residual,
invert the tableau to the unique standard product with that leading
monomial, subtract, and repeat.  Unitriangularity (the leading
coefficient of a standard image is +-1) keeps every step in the
integers, and leading monomials strictly decrease inside a fixed
finite component, so the loop terminates.

The oracle path never looks at tableaux: it expands everything in the
x-ring and solves the exact linear system "product = combination of
standard products modulo the ideal slice" with sparse rational
elimination.  Both paths must agree coefficient for coefficient.

All slice data is multigraded by the row and column multidegrees, and
every computation here is restricted block by block; the ideal is
multigraded, so the restriction is exact.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from .errors import InvariantViolation, UsageError
from .linalg import SpanSolver
from .minors import MinorSymbol, expand_minor, expand_product, minor_to_obj
from .morphism import qh
from .ring import Monomial, Polynomial, mono_mul, x_var
from .tableaux import (canonical_tagging, chain_from_tableau, collapse,
                       enumerate_standard, leading_monomial, minor_sort_key,
                       product_sort_key, tableau_from_monomial, _word_key)


class StandardCombination:
    """Integer combination of standard products of minor symbols."""

    def __init__(self, terms: dict):
        self.terms = {k: v for k, v in terms.items() if v}

    def items(self) -> list:
        return sorted(self.terms.items(), key=lambda kv: product_sort_key(kv[0]))

    def __eq__(self, other) -> bool:
        return isinstance(other, StandardCombination) and self.terms == other.terms

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*[{' '.join(map(str, s))}]"
                          for s, c in self.items())

    def to_obj(self) -> list:
        return [{"coeff": str(c), "product": [minor_to_obj(j) for j in s]}
                for s, c in self.items()]


def _validate_product(js: Sequence[MinorSymbol], p: int, q: int, h: int) -> None:
    for j in js:
        if j.size > h:
            raise UsageError(f"symbol {j} larger than h={h}")
        if j.rows[-1] > p or j.cols[-1] > q:
            raise UsageError(f"symbol {j} outside the {p}x{q} ambient")


@lru_cache(maxsize=None)
def _qh_symbol(j: MinorSymbol, h: int) -> Polynomial:
    return qh(expand_minor(j), h)


@lru_cache(maxsize=4096)
def _qh_product_sorted(js: tuple, h: int) -> Polynomial:
    if not js:
        return Polynomial.one()
    if len(js) == 1:
        return _qh_symbol(js[0], h)
    return _qh_product_sorted(js[:-1], h) * _qh_symbol(js[-1], h)


def qh_product(js: Sequence[MinorSymbol], h: int) -> Polynomial:
    """Image of a product of symbols under the pairing substitution."""
    return _qh_product_sorted(tuple(sorted(js, key=minor_sort_key)), h)


def straighten(js: Sequence[MinorSymbol], p: int, q: int, h: int) -> StandardCombination:
    """Express the product of js in the standard basis by leading-tableau
    elimination.  All coefficients are integers."""
    _validate_product(js, p, q, h)
    residual = qh_product(js, h)
    result: dict = {}
    last_word = None
    words: dict = {}  # word keys of every monomial seen in the loop
    while not residual.is_zero():
        for mono in residual.terms:
            if mono not in words:
                words[mono] = _word_key(mono, h)
        lead = max(residual.terms, key=words.__getitem__)
        c = residual.terms[lead]
        word = words[lead]
        if last_word is not None and word >= last_word:
            raise InvariantViolation("leading monomial failed to decrease")
        last_word = word
        chain = chain_from_tableau(tableau_from_monomial(lead, h))
        s = tuple(collapse(e) for e in chain)
        if canonical_tagging(s) != chain:
            raise InvariantViolation(
                "leading tableau is not the image of a standard product")
        qs = qh_product(s, h)
        s_lead, s_coeff = leading_monomial(qs, h)
        if s_lead != lead or s_coeff not in (1, -1):
            raise InvariantViolation(
                "standard image has unexpected leading term")
        coeff = c * s_coeff
        result[s] = result.get(s, 0) + coeff
        residual = residual - qs.scale(coeff)
    return StandardCombination(result)


# -- slice enumeration ---------------------------------------------------


def _x_vars(p: int, q: int, w: int) -> list:
    return [x_var(i, j, k) for k in range(w + 1)
            for i in range(1, p + 1) for j in range(1, q + 1)]


def _mono_multisets(variables, count, weight):
    out: list = []

    def rec(start, count, weight, acc):
        if count == 0:
            if weight == 0:
                out.append(tuple(acc))
            return
        for idx in range(start, len(variables)):
            v = variables[idx]
            if v.k > weight:
                continue
            e = 1
            while e <= count and v.k * e <= weight:
                acc.append((v, e))
                rec(idx + 1, count - e, weight - v.k * e, acc)
                acc.pop()
                e += 1

    rec(0, count, weight, [])
    return out


@lru_cache(maxsize=None)
def x_monomials(p: int, q: int, d: int, w: int) -> tuple:
    """All x-ring monomials of bidegree (d, w) with indices within p, q."""
    return tuple(_mono_multisets(_x_vars(p, q, w), d, w))


def x_block_key(mono: Monomial, p: int, q: int):
    """Row/column multidegree: the exact multigrading of the ideal."""
    rows = [0] * p
    cols = [0] * q
    for v, e in mono:
        rows[v.i - 1] += e
        cols[v.j - 1] += e
    return tuple(rows), tuple(cols)


@lru_cache(maxsize=32)
def _x_monomials_by_block(p: int, q: int, d: int, w: int) -> dict:
    buckets: dict = {}
    for mono in x_monomials(p, q, d, w):
        buckets.setdefault(x_block_key(mono, p, q), []).append(mono)
    return buckets


def _poly_block_key(f: Polynomial, p: int, q: int):
    keys = {x_block_key(m, p, q) for m in f.terms}
    if len(keys) != 1:
        raise InvariantViolation("expected a multihomogeneous polynomial")
    return keys.pop()


def _generators(p: int, q: int, h: int, max_wt: int) -> list:
    """Size-(h+1) symbols of weight <= max_wt inside the p x q ambient."""
    from itertools import combinations
    gens = []
    size = h + 1
    if size > min(p, q):
        return gens
    for rows in combinations(range(1, p + 1), size):
        for cols in combinations(range(1, q + 1), size):
            for wt in range(max_wt + 1):
                gens.append(MinorSymbol(wt, rows, cols))
    return gens


def _ideal_rows_for_block(p, q, h, d, w, block):
    """Spanning vectors of the bidegree-(d, w) ideal slice lying in the
    given multidegree block: generator expansions times monomials."""
    rows = []
    brow, bcol = block
    for g in _generators(p, q, h, w):
        gd = d - g.size
        gw = w - g.wt
        if gd < 0 or gw < 0:
            continue
        gpoly = expand_minor(g)
        grow, gcol = _poly_block_key(gpoly, p, q)
        mrow = tuple(b - a for a, b in zip(grow, brow))
        mcol = tuple(b - a for a, b in zip(gcol, bcol))
        if any(v < 0 for v in mrow) or any(v < 0 for v in mcol):
            continue
        if gd == 0:
            if gw == 0 and not any(mrow) and not any(mcol):
                rows.append(dict(gpoly.terms))
            continue
        buckets = _x_monomials_by_block(p, q, gd, gw)
        for mono in buckets.get((mrow, mcol), ()):
            rows.append({mono_mul(m, mono): c for m, c in gpoly.terms.items()})
    return rows


@lru_cache(maxsize=None)
def graded_dim(p: int, q: int, h: int, d: int, w: int) -> int:
    """Dimension of the bidegree-(d, w) slice of the quotient by the
    ideal of size-(h+1) symbols: monomial count minus ideal-slice rank."""
    monos = x_monomials(p, q, d, w)
    n = len(monos)
    if not _generators(p, q, h, w) or d <= h:
        return n
    blocks = _x_monomials_by_block(p, q, d, w)
    total_rank = 0
    for block in blocks:
        solver = SpanSolver()
        for row in _ideal_rows_for_block(p, q, h, d, w, block):
            solver.add(row)
        total_rank += solver.rank
    return n - total_rank


# -- the oracle ----------------------------------------------------------


class _OracleContext:
    """Per-bidegree data for the linear-system oracle, built lazily
    block by block.

    Each block holds a pure-integer echelon of the ideal slice; reducing
    a vector against it is a linear projection whose kernel is exactly
    the ideal span.  The standard products of the block are reduced to
    their projections, which must stay linearly independent; solving for
    a product happens in that small projected system.
    """

    def __init__(self, p, q, h, d, w):
        self.p, self.q, self.h, self.d, self.w = p, q, h, d, w
        self.standards = enumerate_standard(p, q, h, d, w)
        self.by_block: dict = {}
        for s in self.standards:
            self.by_block.setdefault(self._product_block(s), []).append(s)
        self.solvers: dict = {}

    def _product_block(self, s):
        rows = [0] * self.p
        cols = [0] * self.q
        for j in s:
            for r in j.rows:
                rows[r - 1] += 1
            for c in j.cols:
                cols[c - 1] += 1
        return tuple(rows), tuple(cols)

    def solver_for(self, block) -> tuple[SpanSolver, SpanSolver]:
        got = self.solvers.get(block)
        if got is not None:
            return got
        ideal = SpanSolver()
        for row in _ideal_rows_for_block(self.p, self.q, self.h, self.d,
                                         self.w, block):
            ideal.add(row)
        std = SpanSolver(record=True)
        for s in self.by_block.get(block, []):
            r, den = ideal.residual(dict(expand_product(s).terms))
            if not r or not std.add(
                    {k: Fraction(v, den) for k, v in r.items()}, s):
                raise InvariantViolation(
                    f"standard product {s} is dependent modulo the ideal "
                    f"slice in block {block}")
        self.solvers[block] = (ideal, std)
        return ideal, std


@lru_cache(maxsize=8)
def _oracle_context(p, q, h, d, w) -> _OracleContext:
    return _OracleContext(p, q, h, d, w)


def straighten_oracle(js: Sequence[MinorSymbol], p: int, q: int, h: int) -> StandardCombination:
    """Independent straightening: solve the exact linear system
    "product - sum c_S S lies in the ideal slice" and return the unique
    integer coefficients."""
    _validate_product(js, p, q, h)
    if not js:
        return StandardCombination({(): 1})
    d = sum(j.size for j in js)
    w = sum(j.wt for j in js)
    f = expand_product(js)
    if f.is_zero():
        raise InvariantViolation("minor expansion of a product vanished")
    ctx = _oracle_context(p, q, h, d, w)
    ideal, std = ctx.solver_for(_poly_block_key(f, p, q))
    r, den = ideal.residual(dict(f.terms))
    if not r:
        return StandardCombination({})
    coords = std.solve({k: Fraction(v, den) for k, v in r.items()})
    if coords is None:
        raise InvariantViolation(
            "product is outside standard + ideal span; spanning fails")
    result: dict = {}
    for s, val in coords.items():
        if isinstance(val, Fraction):
            if val.denominator != 1:
                raise InvariantViolation(
                    f"non-integer standard coefficient {val}")
            val = int(val)
        if val:
            result[s] = val
    return StandardCombination(result)
