"""The pairing substitution into the ab-ring and the jet Lie action.

qh sends x^(k)_ij to the k-th normalized derivative of the pairing
sum_l a^(0)_il b^(0)_jl, i.e. to sum_l sum_{s+t=k} a^(s)_il b^(t)_jl.
It is a ring homomorphism commuting with dbar; a size-(h+1) minor and
all of its derivatives map to zero.

lie_derive realizes the infinitesimal action of the jet group of
GL_h in coordinates: the matrix unit e_rs at level m acts as the
derivation sending a^(k)_il to [l=s] a^(k-m)_ir and b^(k)_jl to
-[l=r] b^(k-m)_js.  The pairing generators are killed by every such
derivation, which is the sign convention fixing the action.
"""

from __future__ import annotations

from functools import lru_cache
from typing import NamedTuple

from .errors import UsageError
from .linalg import SpanSolver
from .ring import (Monomial, Polynomial, Variable, a_var, b_var, mono_mul,
                   poly_from_vars)


class JetLieElement(NamedTuple):
    """Matrix unit e_rs acting at jet level m on size-h jets."""

    r: int
    s: int
    m: int


@lru_cache(maxsize=None)
def x_generator(i: int, j: int, k: int, h: int) -> Polynomial:
    """The invariant pairing generator: image of x^(k)_ij under qh."""
    terms = {}
    for l in range(1, h + 1):
        for s in range(k + 1):
            mono = mono_mul(((a_var(i, l, s), 1),), ((b_var(j, l, k - s), 1),))
            terms[mono] = terms.get(mono, 0) + 1
    return Polynomial(terms, "ab")


def qh(f: Polynomial, h: int) -> Polynomial:
    """Apply the pairing substitution x^(k)_ij -> sum a^(s)_il b^(t)_jl."""
    if f.ring == "ab":
        raise UsageError("qh applies to x-ring polynomials")
    if h < 0:
        raise UsageError("h must be nonnegative")
    out = Polynomial.zero()
    for mono, c in f.terms.items():
        img = Polynomial.const(c)
        for v, e in mono:
            gen = x_generator(v.i, v.j, v.k, h)
            for _ in range(e):
                img = img * gen
                if img.is_zero():
                    break
        out = out + img
    return out


def lie_derive(f: Polynomial, g: JetLieElement) -> Polynomial:
    """Apply the derivation of the jet Lie element g by the Leibniz rule."""
    if f.ring == "x":
        raise UsageError("lie_derive acts on ab-ring polynomials")
    r, s, m = g
    out: dict = {}
    get = out.get
    for mono, c in f.terms.items():
        for idx, (v, e) in enumerate(mono):
            if v.k < m:
                continue
            if v.kind == "a" and v.j == s:
                dv, sign = a_var(v.i, r, v.k - m), 1
            elif v.kind == "b" and v.j == r:
                dv, sign = b_var(v.i, s, v.k - m), -1
            else:
                continue
            rest = mono[:idx] + (() if e == 1 else ((v, e - 1),)) + mono[idx + 1:]
            mnew = mono_mul(rest, ((dv, 1),))
            t = get(mnew, 0) + sign * c * e
            if t:
                out[mnew] = t
            elif mnew in out:
                del out[mnew]
    return Polynomial(out, "ab")


def _var_multisets(variables, count, weight):
    """Multisets of `count` variables from the ordered list with the
    given total level, yielded as monomial tuples."""
    out = []

    def rec(start, count, weight, acc):
        if count == 0:
            if weight == 0:
                out.append(tuple(acc))
            return
        for idx in range(start, len(variables)):
            v = variables[idx]
            if v.k > weight:
                continue
            # choose multiplicity e of v
            e = 1
            while e <= count and v.k * e <= weight:
                acc.append((v, e))
                rec(idx + 1, count - e, weight - v.k * e, acc)
                acc.pop()
                e += 1

    rec(0, count, weight, [])
    return out


def ab_monomials(p: int, q: int, h: int, da: int, db: int, w: int) -> list[Monomial]:
    """All ab-monomials with da a-factors, db b-factors, total weight w."""
    avars = [a_var(i, l, k)
             for k in range(w + 1) for i in range(1, p + 1)
             for l in range(1, h + 1)]
    bvars = [b_var(j, l, k)
             for k in range(w + 1) for j in range(1, q + 1)
             for l in range(1, h + 1)]
    monos = []
    for wa in range(w + 1):
        for ma in _var_multisets(avars, da, wa):
            for mb in _var_multisets(bvars, db, w - wa):
                monos.append(mono_mul(ma, mb))
    return monos


def _ab_block_key(mono: Monomial, p: int, q: int):
    """Row/column multidegree preserved by every jet Lie derivation."""
    arow = [0] * p
    bcol = [0] * q
    for v, e in mono:
        if v.kind == "a":
            arow[v.i - 1] += e
        else:
            bcol[v.i - 1] += e
    return tuple(arow), tuple(bcol)


def invariant_kernel_dim(p: int, q: int, h: int, d: int, w: int) -> int:
    """Dimension of the joint kernel of all jet Lie derivations on the
    balanced (d a-factors, d b-factors, weight w) component."""
    monos = ab_monomials(p, q, h, d, d, w)
    blocks: dict = {}
    for mono in monos:
        blocks.setdefault(_ab_block_key(mono, p, q), []).append(mono)

    elements = [JetLieElement(r, s, m)
                for r in range(1, h + 1) for s in range(1, h + 1)
                for m in range(w + 1)]
    total = 0
    for block in blocks.values():
        block.sort()
        index = {mono: i for i, mono in enumerate(block)}
        solver = SpanSolver()
        # Rows of the stacked derivation matrix, one per source monomial:
        # the column space view. We transpose: unknowns are coefficients
        # of monomials, each derivation gives rows indexed by targets.
        rows: dict = {}
        for col, mono in enumerate(block):
            f = Polynomial({mono: 1}, "ab")
            for e_idx, g in enumerate(elements):
                img = lie_derive(f, g)
                for tmono, c in img.terms.items():
                    rows.setdefault((e_idx, tmono), {})[col] = c
        for key in sorted(rows, key=lambda t: (t[0], t[1])):
            solver.add(rows[key])
        total += len(block) - solver.rank
    return total
