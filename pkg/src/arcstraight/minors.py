"""Minor symbols, their expansions, and the determinantal relation sums.

A MinorSymbol records the n-th normalized derivative of an h x h minor
by its weight n and the ascending row and column index lists.  Its
polynomial expansion distributes the weight over the h factors of every
signed permutation product.

The ideal generated by all size-n symbols (minors of size n together
with all their normalized derivatives) is derivation-closed; membership
is decided exactly by the pairing substitution at h = n-1, whose kernel
is precisely that ideal.

f_sum builds the two-sided determinant sums over complementary index
pairs that generate the relation families, and relation_coeffs extends
a prescribed coefficient window to a full integer coefficient vector by
inverting the unimodular binomial matrix that links the sums to
derivatives of ideal members.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations
from math import comb
from typing import NamedTuple, Optional, Sequence

from . import morphism
from .errors import InvariantViolation, UsageError
from .linalg import SparseMatrix, solve
from .ring import Polynomial, dbar, mono_from_vars, x_var


class MinorSymbol(NamedTuple):
    """Weight-n normalized derivative of the minor on rows x cols."""

    wt: int
    rows: tuple
    cols: tuple

    @property
    def size(self) -> int:
        return len(self.rows)

    def __str__(self) -> str:
        rows = ",".join(map(str, self.rows))
        cols = ",".join(map(str, self.cols))
        return f"{self.wt}:({rows}|{cols})"


class SignedMinor(NamedTuple):
    sign: int
    symbol: Optional[MinorSymbol]


def make_minor(wt: int, rows: Sequence[int], cols: Sequence[int]) -> MinorSymbol:
    rows, cols = tuple(rows), tuple(cols)
    if len(rows) != len(cols):
        raise UsageError("row and column lists must have equal length")
    if not rows:
        raise UsageError("minor symbols have size at least 1")
    if wt < 0:
        raise UsageError("weight must be nonnegative")
    for seq in (rows, cols):
        if any(seq[i] >= seq[i + 1] for i in range(len(seq) - 1)) or seq[0] < 1:
            raise UsageError(f"indices must be strictly ascending and >= 1: {seq}")
    return MinorSymbol(wt, rows, cols)


def _perm_sign(seq: Sequence[int]) -> int:
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def normalize_sequence(rows: Sequence[int], cols: Sequence[int], n: int) -> SignedMinor:
    """Sort both index lists, tracking the permutation sign; zero on repeats."""
    rows, cols = tuple(rows), tuple(cols)
    if len(rows) != len(cols):
        raise UsageError("row and column lists must have equal length")
    if len(set(rows)) < len(rows) or len(set(cols)) < len(cols):
        return SignedMinor(0, None)
    sign = _perm_sign(rows) * _perm_sign(cols)
    return SignedMinor(sign, make_minor(n, sorted(rows), sorted(cols)))


@lru_cache(maxsize=None)
def _signed_perms(h: int) -> tuple:
    return tuple((p, _perm_sign(p)) for p in permutations(range(h)))


def _compositions(n: int, parts: int):
    """Weak compositions of n into `parts` nonnegative integers."""
    if parts == 0:
        if n == 0:
            yield ()
        return
    if parts == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in _compositions(n - first, parts - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def expand_minor(j: MinorSymbol) -> Polynomial:
    """Polynomial expansion: weight distributed over all signed products."""
    h = j.size
    terms: dict = {}
    for levels in _compositions(j.wt, h):
        for perm, sign in _signed_perms(h):
            mono = mono_from_vars(
                x_var(j.rows[i], j.cols[perm[i]], levels[i]) for i in range(h))
            s = terms.get(mono, 0) + sign
            if s:
                terms[mono] = s
            elif mono in terms:
                del terms[mono]
    return Polynomial(terms, "x")


def minor_det(rows: Sequence[int], cols: Sequence[int]) -> Polynomial:
    """Level-zero determinant on the given index sets; empty gives 1."""
    rows, cols = sorted(rows), sorted(cols)
    if len(rows) != len(cols):
        raise UsageError("row and column sets must have equal size")
    if not rows:
        return Polynomial.one()
    return expand_minor(make_minor(0, rows, cols))


def expand_product(js: Sequence[MinorSymbol]) -> Polynomial:
    f = Polynomial.one()
    for j in js:
        f = f * expand_minor(j)
    return f


def in_ideal(f: Polynomial, n: int) -> bool:
    """Membership in the ideal of all size-n symbols, via the kernel of
    the pairing substitution at h = n-1."""
    if n < 1:
        raise UsageError("ideal index must be at least 1")
    return morphism.qh(f, n - 1).is_zero()


def epsilon(i_set, j_set) -> int:
    return -1 if (sum(i_set) + sum(j_set)) % 2 else 1


@lru_cache(maxsize=None)
def _dbar_det(rows: tuple, cols: tuple, l: int) -> Polynomial:
    return dbar(minor_det(rows, cols), l)


def f_sum(l0_set, l1_set, k0_set, k1_set, n: int, k: int, l: int, s: int) -> Polynomial:
    """Signed sum over complementary size-n index pairs of
    dbar^l(det on N,J) * dbar^(k-l)(det on complements) inside the
    s x s square, with N forced between l0_set and the complement of
    l1_set, and J likewise for the column constraints."""
    l0_set, l1_set = frozenset(l0_set), frozenset(l1_set)
    k0_set, k1_set = frozenset(k0_set), frozenset(k1_set)
    big = set(range(1, s + 1))
    for part in (l0_set, l1_set, k0_set, k1_set):
        if not part <= big:
            raise UsageError("constraint sets must lie inside the square")
    if l0_set & l1_set or k0_set & k1_set:
        raise UsageError("constraint sets must be disjoint")
    if len(l0_set) + len(l1_set) > s - n or len(k0_set) + len(k1_set) > s - n:
        raise UsageError("constraint sets too large for the square size")
    if not 0 <= l <= k:
        raise UsageError("need 0 <= l <= k")
    if len(l0_set) > n or len(k0_set) > n:
        return Polynomial.zero()  # no admissible index set: empty sum

    rows_free = sorted(big - l0_set - l1_set)
    cols_free = sorted(big - k0_set - k1_set)
    out = Polynomial.zero()
    for nsub in combinations(rows_free, n - len(l0_set)):
        n_set = l0_set | set(nsub)
        n_rows = tuple(sorted(n_set))
        n_comp = tuple(sorted(big - n_set))
        for jsub in combinations(cols_free, n - len(k0_set)):
            j_set = k0_set | set(jsub)
            j_cols = tuple(sorted(j_set))
            j_comp = tuple(sorted(big - j_set))
            term = _dbar_det(n_rows, j_cols, l) * _dbar_det(n_comp, j_comp, k - l)
            out = out + term.scale(epsilon(n_set, j_set))
    return out


def relation_coeffs(m: int, k0: int, prescribed: Sequence[int]) -> list[int]:
    """Extend prescribed coefficients a_{k0}..a_{k0+l0} to a full integer
    vector a_0..a_m lying in the lattice spanned by the binomial rows
    (C(m-k, l))_k, so the weighted sum of the f_sum family is an ideal
    member.  The window matrix C(m-k0-i, j) is unimodular, so the
    extension exists, is integral, and is unique."""
    l0 = len(prescribed) - 1
    if l0 < 0:
        raise UsageError("prescribed window must be nonempty")
    if not 0 <= k0 <= m - l0:
        raise UsageError("need 0 <= k0 <= m - l0")
    size = l0 + 1
    entries = {}
    for i in range(size):
        for j in range(size):
            c = comb(m - k0 - i, j) if m - k0 - i >= 0 else 0
            if c:
                entries[(i, j)] = c
    res = solve(SparseMatrix(size, size, entries), list(prescribed))
    if res is None:
        raise InvariantViolation("binomial window matrix is singular")
    lam, unique = res
    if not unique:
        raise InvariantViolation("binomial window matrix is singular")
    lam_int = []
    for v in lam:
        if isinstance(v, Fraction) and v.denominator != 1:
            raise InvariantViolation("binomial window matrix is not unimodular")
        lam_int.append(int(v))
    return [sum(comb(m - k, l) * lam_int[l] for l in range(size))
            for k in range(m + 1)]


def rename_indices(f: Polynomial, row_map: dict, col_map: dict) -> Polynomial:
    """Substitute x^(k)_ij -> x^(k)_(row_map[i], col_map[j]).

    The maps need not be injective; colliding variables merge and terms
    may cancel.
    """
    terms: dict = {}
    for mono, c in f.terms.items():
        counts: dict = {}
        for v, e in mono:
            nv = x_var(row_map[v.i], col_map[v.j], v.k)
            counts[nv] = counts.get(nv, 0) + e
        new = tuple(sorted(counts.items()))
        s = terms.get(new, 0) + c
        if s:
            terms[new] = s
        elif new in terms:
            del terms[new]
    return Polynomial(terms, "x")


def fundamental_relation(upper_rows, upper_cols, lower_rows, lower_cols,
                         i1: int, j1: int, i2: int, j2: int,
                         m: int, k0: int, window: Sequence[int]) -> Polynomial:
    """The shuffle relation between a size-h and a size-h' symbol.

    The first i1 rows and j1 columns of the upper symbol are shuffled
    with the first i2 rows and j2 columns of the lower one, the two
    derivative orders split m as (m-k, k), and the coefficients a_k are
    prescribed on the window k0..k0+l0 and completed by relation_coeffs.
    The result lies in the ideal of size-(h+1) symbols.
    """
    upper_rows, upper_cols = tuple(upper_rows), tuple(upper_cols)
    lower_rows, lower_cols = tuple(lower_rows), tuple(lower_cols)
    h, hp = len(upper_rows), len(lower_rows)
    if len(upper_cols) != h or len(lower_cols) != hp:
        raise UsageError("row and column lists must pair up in length")
    if h < hp:
        raise UsageError("upper symbol must have the larger size")
    if not (0 <= i1 <= h and 0 <= j1 <= h and 0 <= i2 <= hp and 0 <= j2 <= hp):
        raise UsageError("shuffle depths out of range")
    l0 = i1 + i2 + j1 + j2 - 2 * h - 1
    if l0 < 0:
        raise UsageError("shuffle depths too shallow: no prescribed window")
    if i1 + i2 < h or j1 + j2 < h:
        # The square-case reduction needs each side's constraint sets to
        # fit, i.e. at least h entries shuffled per side.
        raise UsageError("shuffle depths must total at least h on each side")
    if len(window) != l0 + 1:
        raise UsageError(f"window must have length {l0 + 1}")
    if not 0 <= k0 <= m - l0:
        raise UsageError("need 0 <= k0 <= m - l0")

    s = h + hp
    l0_set = frozenset(range(i1 + 1, h + 1))
    l1_set = frozenset(range(h + i2 + 1, s + 1))
    k0_set = frozenset(range(j1 + 1, h + 1))
    k1_set = frozenset(range(h + j2 + 1, s + 1))

    # a_k of the shuffle display is the coefficient of f_sum at m-k.
    k0p = m - k0 - l0
    prescribed = [window[l0 - j] for j in range(l0 + 1)]
    coeffs = relation_coeffs(m, k0p, prescribed)

    total = Polynomial.zero()
    for kk in range(m + 1):
        if coeffs[kk] == 0:
            continue
        total = total + f_sum(l0_set, l1_set, k0_set, k1_set,
                              h, m, kk, s).scale(coeffs[kk])

    row_map = {i: upper_rows[i - 1] for i in range(1, h + 1)}
    row_map.update({h + i: lower_rows[i - 1] for i in range(1, hp + 1)})
    col_map = {j: upper_cols[j - 1] for j in range(1, h + 1)}
    col_map.update({h + j: lower_cols[j - 1] for j in range(1, hp + 1)})
    return rename_indices(total, row_map, col_map)


# -- wire format --------------------------------------------------------

_MINOR_RE = re.compile(r"^\s*(\d+)\s*:\s*\(([0-9,\s]*)\|([0-9,\s]*)\)\s*$")


def parse_minor(text: str) -> MinorSymbol:
    """Parse 'wt:(r1,r2|c1,c2)' with ascending index lists."""
    match = _MINOR_RE.match(text)
    if not match:
        raise UsageError(f"cannot parse minor symbol {text!r}")
    wt = int(match.group(1))
    rows = [int(t) for t in match.group(2).split(",") if t.strip()]
    cols = [int(t) for t in match.group(3).split(",") if t.strip()]
    return make_minor(wt, rows, cols)


def parse_product(text: str) -> tuple[MinorSymbol, ...]:
    chunks = re.findall(r"\d+\s*:\s*\([^)]*\)", text)
    if not chunks or "".join(chunks).replace(" ", "") != text.replace(" ", ""):
        leftover = re.sub(r"\d+\s*:\s*\([^)]*\)|,|\s", "", text)
        if leftover or not chunks:
            raise UsageError(f"cannot parse product {text!r}")
    return tuple(parse_minor(c) for c in chunks)


def minor_to_obj(j: MinorSymbol) -> dict:
    return {"wt": j.wt, "rows": list(j.rows), "cols": list(j.cols)}


def minor_from_obj(obj: dict) -> MinorSymbol:
    return make_minor(obj["wt"], obj["rows"], obj["cols"])
