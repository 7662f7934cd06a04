"""Tagged minors, their orderings, standard products, and double tableaux.

A TaggedMinor arranges the rows and columns of a minor symbol in an
arbitrary order and distributes its weight as nonnegative tags over the
individual entries.  Pairs compare tag-first: (u,k) <= (u',k') iff
k < k' or k = k' and u <= u'.  The partial order on tagged minors is
positionwise pair domination up to the smaller size; the total order
compares size (larger first), then total tag, then the word of pairs.

A product of minor symbols is standard when the greedy chain exists:
each symbol admits a tagged arrangement dominating its predecessor's,
chosen maximal in the total order.  The chain is unique and the greedy
choice realizes it.

offsets measures how far a candidate symbol's rows and columns fail to
dominate a tagged minor entrywise; comparability ("some arrangement of
J' dominates E") is equivalent to wt(J') - wt(E truncated) >= L + R,
which is the fast path used everywhere.

Double tableaux encode ab-monomials column by column (copy index =
column, pads sink to the bottom); the associated row-major word, read
with pads maximal, orders monomials, and the leading monomial of the
image of a standard product is the tableau of its chain.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations
from math import comb
from typing import NamedTuple, Optional, Sequence

from .errors import InvariantViolation, UsageError
from .minors import MinorSymbol, _compositions, make_minor
from .ring import Monomial, Polynomial, Variable, a_var, b_var, mono_from_vars


class TaggedMinor(NamedTuple):
    """left[i] = (row, tag) at position i+1; right[j] = (col, tag)."""

    left: tuple
    right: tuple

    @property
    def size(self) -> int:
        return len(self.left)

    @property
    def wt(self) -> int:
        return sum(k for _, k in self.left) + sum(k for _, k in self.right)

    def __str__(self) -> str:
        ls = ",".join(f"({u},{k})" for u, k in reversed(self.left))
        rs = ",".join(f"({v},{k})" for v, k in self.right)
        return f"(({ls}|{rs}))"


def make_tagged(left, right) -> TaggedMinor:
    left, right = tuple(map(tuple, left)), tuple(map(tuple, right))
    if len(left) != len(right) or not left:
        raise UsageError("sides must be nonempty and of equal length")
    if len({u for u, _ in left}) < len(left) or len({v for v, _ in right}) < len(right):
        raise UsageError("row and column indices must be distinct")
    if any(k < 0 or u < 1 for u, k in left + right):
        raise UsageError("indices must be >= 1 and tags >= 0")
    return TaggedMinor(left, right)


def collapse(e: TaggedMinor) -> MinorSymbol:
    """Forget arrangement and tags: sorted index lists, summed weight."""
    return make_minor(e.wt, sorted(u for u, _ in e.left),
                      sorted(v for v, _ in e.right))


@lru_cache(maxsize=None)
def enum_tagged(j: MinorSymbol) -> tuple:
    """All tagged arrangements of j: every row order, column order, and
    tag distribution summing to wt(j).  Count h! h! C(wt+2h-1, 2h-1)."""
    h = j.size
    out = []
    for rows in permutations(j.rows):
        for cols in permutations(j.cols):
            for tags in _compositions(j.wt, 2 * h):
                out.append(TaggedMinor(
                    tuple(zip(rows, tags[:h])), tuple(zip(cols, tags[h:]))))
    return tuple(out)


# -- orderings -----------------------------------------------------------


def minor_sort_key(j: MinorSymbol):
    return (-j.size, j.wt, j.rows[::-1] + j.cols[::-1])


def tagged_sort_key(e: TaggedMinor):
    word = tuple((k, u) for u, k in reversed(e.left))
    word += tuple((k, v) for v, k in reversed(e.right))
    return (-e.size, e.wt, word)


def product_sort_key(js: Sequence[MinorSymbol]):
    return tuple(minor_sort_key(j) for j in js)


def compare(x, y) -> int:
    """Total-order comparison; -1, 0, or 1.  Accepts two minor symbols,
    two tagged minors, or two products (sequences of minor symbols)."""
    if isinstance(x, MinorSymbol) and isinstance(y, MinorSymbol):
        kx, ky = minor_sort_key(x), minor_sort_key(y)
    elif isinstance(x, TaggedMinor) and isinstance(y, TaggedMinor):
        kx, ky = tagged_sort_key(x), tagged_sort_key(y)
    elif (isinstance(x, (tuple, list)) and isinstance(y, (tuple, list))
          and all(isinstance(t, MinorSymbol) for t in x)
          and all(isinstance(t, MinorSymbol) for t in y)):
        kx, ky = product_sort_key(x), product_sort_key(y)
    else:
        raise UsageError(f"cannot compare {type(x).__name__} with {type(y).__name__}")
    return (kx > ky) - (kx < ky)


def _pair_leq(p, q) -> bool:
    return (p[1], p[0]) <= (q[1], q[0])


def leq_tagged(e: TaggedMinor, ep: TaggedMinor) -> bool:
    """Positionwise pair domination up to the size of ep."""
    hp = ep.size
    if hp > e.size:
        return False
    return (all(_pair_leq(e.left[i], ep.left[i]) for i in range(hp))
            and all(_pair_leq(e.right[i], ep.right[i]) for i in range(hp)))


def truncate(e: TaggedMinor, s: int) -> TaggedMinor:
    if not 1 <= s <= e.size:
        raise UsageError(f"cannot truncate size {e.size} to {s}")
    return TaggedMinor(e.left[:s], e.right[:s])


def _side_offset(evals: Sequence[int], jvals: Sequence[int]) -> int:
    """Least shift i0 such that jvals[i-1] >= sorted(evals)[i-i0-1] for
    all i0 < i <= len(jvals)."""
    hp = len(jvals)
    ev = sorted(evals)
    for i0 in range(hp + 1):
        if all(jvals[i - 1] >= ev[i - i0 - 1] for i in range(i0 + 1, hp + 1)):
            return i0
    raise InvariantViolation("offset search fell through")


def offsets(e: TaggedMinor, jp: MinorSymbol) -> tuple[int, int]:
    """(L, R): row- and column-side domination shifts of jp against e."""
    hp = jp.size
    if hp > e.size:
        raise UsageError("symbol is larger than the tagged minor")
    left = _side_offset([u for u, _ in e.left[:hp]], jp.rows)
    right = _side_offset([v for v, _ in e.right[:hp]], jp.cols)
    return left, right


def is_greater(e: TaggedMinor, jp: MinorSymbol) -> bool:
    """Whether some tagged arrangement of jp dominates e: equivalent to
    wt(jp) - wt(e truncated to sz(jp)) >= L + R."""
    hp = jp.size
    if hp > e.size:
        return False
    l_off, r_off = offsets(e, jp)
    return jp.wt - truncate(e, hp).wt >= l_off + r_off


@lru_cache(maxsize=None)
def _enum_desc(j: MinorSymbol) -> tuple:
    return tuple(sorted(enum_tagged(j), key=tagged_sort_key, reverse=True))


@lru_cache(maxsize=None)
def largest_tagged(e: Optional[TaggedMinor], jp: MinorSymbol) -> Optional[TaggedMinor]:
    """The largest tagged arrangement of jp dominating e (all of them
    when e is None); None when no arrangement dominates.

    Computed by scanning the arrangements in descending order, with the
    offset criterion as an emptiness fast path.
    """
    if e is None:
        h, n = jp.size, jp.wt
        left = tuple((jp.rows[i], 0) for i in range(h - 1)) + ((jp.rows[h - 1], n),)
        return TaggedMinor(left, tuple((v, 0) for v in jp.cols))
    if jp.size > e.size or not is_greater(e, jp):
        return None
    for cand in _enum_desc(jp):
        if leq_tagged(e, cand):
            return cand
    raise InvariantViolation("offset criterion disagrees with enumeration")


def largest_tagged_direct(e: Optional[TaggedMinor], jp: MinorSymbol) -> Optional[TaggedMinor]:
    """Independent construction of largest_tagged: build the arrangement
    position by position, taking the largest (tag, index) pair whose
    completion stays feasible.  Feasibility is a min-cost matching of
    remaining indices against remaining constraints."""
    h = jp.size
    if e is not None and h > e.size:
        return None
    lcons = [None] * h if e is None else list(e.left[:h])
    rcons = [None] * h if e is None else list(e.right[:h])

    def min_cost(cons, avail):
        # Greedy threshold matching: ascending constraints, each takes the
        # smallest available index that dominates it tag-free.
        base = sum(k for _, k in cons)
        free = sorted(avail)
        unmatched = 0
        for u, _ in sorted(cons):
            for idx, val in enumerate(free):
                if val >= u:
                    del free[idx]
                    break
            else:
                unmatched += 1
                del free[0]
        return base, unmatched

    def feasible(lcons_rest, lrest, rcons_rest, rrest, budget):
        if not lrest and not rrest:
            return budget == 0
        need = 0
        for cons, avail in ((lcons_rest, lrest), (rcons_rest, rrest)):
            if cons and cons[0] is not None:
                base, unmatched = min_cost(cons, avail)
                need += base + unmatched
        return need <= budget

    if e is not None and not feasible(lcons, list(jp.rows), rcons, list(jp.cols),
                                      jp.wt):
        return None

    budget = jp.wt
    left_out: list = [None] * h
    rows_left = list(jp.rows)
    cols_left = list(jp.cols)
    for pos in range(h - 1, -1, -1):  # word order: position h first
        cons = lcons[pos]
        found = False
        for tag in range(budget, -1, -1):
            for u in sorted(rows_left, reverse=True):
                if cons is not None and not _pair_leq(cons, (u, tag)):
                    continue
                rest_rows = [r for r in rows_left if r != u]
                if feasible(lcons[:pos], rest_rows, rcons, cols_left,
                            budget - tag):
                    left_out[pos] = (u, tag)
                    rows_left = rest_rows
                    budget -= tag
                    found = True
                    break
            if found:
                break
        if not found:
            return None
    right_out: list = [None] * h
    for pos in range(h - 1, -1, -1):
        cons = rcons[pos]
        found = False
        for tag in range(budget, -1, -1):
            for v in sorted(cols_left, reverse=True):
                if cons is not None and not _pair_leq(cons, (v, tag)):
                    continue
                rest_cols = [c for c in cols_left if c != v]
                if feasible([], [], rcons[:pos], rest_cols, budget - tag):
                    right_out[pos] = (v, tag)
                    cols_left = rest_cols
                    budget -= tag
                    found = True
                    break
            if found:
                break
        if not found:
            return None
    return TaggedMinor(tuple(left_out), tuple(right_out))


def canonical_tagging(js: Sequence[MinorSymbol]) -> Optional[tuple]:
    """The unique greedy chain making the product standard, or None."""
    chain = []
    prev = None
    for j in js:
        nxt = largest_tagged(prev, j)
        if nxt is None:
            return None
        chain.append(nxt)
        prev = nxt
    return tuple(chain)


def is_standard(js: Sequence[MinorSymbol]) -> bool:
    return canonical_tagging(js) is not None


def symbol_pool(p: int, q: int, h: int, max_size: int, max_wt: int) -> list:
    """All symbols with size <= min(h, p, q, max_size), weight <= max_wt,
    indices within p and q, sorted ascending."""
    pool = []
    for size in range(1, min(h, p, q, max_size) + 1):
        for rows in combinations(range(1, p + 1), size):
            for cols in combinations(range(1, q + 1), size):
                for wt in range(max_wt + 1):
                    pool.append(MinorSymbol(wt, rows, cols))
    pool.sort(key=minor_sort_key)
    return pool


def enumerate_standard(p: int, q: int, h: int, d: int, w: int) -> list:
    """All standard products from the size <= h pool with total degree d
    (sum of sizes) and total weight w, in product order."""
    if d < 0 or w < 0:
        return []
    if d == 0:
        return [()] if w == 0 else []
    pool = symbol_pool(p, q, h, d, w)
    results: list = []
    acc: list = []

    def rec(start: int, prev, rem_d: int, rem_w: int):
        if rem_d == 0:
            if rem_w == 0:
                results.append(tuple(acc))
            return
        for idx in range(start, len(pool)):
            j = pool[idx]
            if j.size > rem_d or j.wt > rem_w:
                continue
            nxt = largest_tagged(prev, j)
            if nxt is None:
                continue
            acc.append(j)
            rec(idx, nxt, rem_d - j.size, rem_w - j.wt)
            acc.pop()

    rec(0, None, d, w)
    return results


# -- double tableaux -----------------------------------------------------


def _cell_key(v: Optional[Variable]):
    """Tableau variable order: pads largest, a above b, then level,
    then first index, then second."""
    if v is None:
        return (2, 0, 0, 0)
    return (1 if v.kind == "a" else 0, v.k, v.i, v.j)


class Tableau(NamedTuple):
    """rows[s] = (left_cells, right_cells); cell index c is column c+1,
    holding a variable with copy index c+1, or None for a pad."""

    rows: tuple
    width: int

    def monomial(self) -> Monomial:
        vs = []
        for left, right in self.rows:
            vs.extend(v for v in left if v is not None)
            vs.extend(v for v in right if v is not None)
        return mono_from_vars(vs)

    def __str__(self) -> str:
        def cell(v):
            return "*" if v is None else str(v)
        out = []
        for left, right in self.rows:
            out.append(",".join(cell(v) for v in reversed(left)) + " | "
                       + ",".join(cell(v) for v in right))
        return "\n".join(out)


def tableau_of(chain: Sequence[TaggedMinor], h: int, validate: bool = True) -> Tableau:
    """The double tableau of a canonical chain: row a holds the a-side
    variables of chain[a] in columns 1..sz, pads beyond."""
    if validate:
        js = [collapse(e) for e in chain]
        if canonical_tagging(js) != tuple(chain):
            raise UsageError("chain is not a canonical tagging")
    rows = []
    for e in chain:
        ha = e.size
        if ha > h:
            raise UsageError("chain entry wider than the ambient width")
        left = tuple(a_var(u, c + 1, k) for c, (u, k) in enumerate(e.left))
        right = tuple(b_var(v, c + 1, k) for c, (v, k) in enumerate(e.right))
        pad = (None,) * (h - ha)
        rows.append((left + pad, right + pad))
    return Tableau(tuple(rows), h)


def tableau_from_monomial(mono: Monomial, h: int) -> Tableau:
    """The unique column-monotone tableau representing an ab-monomial:
    entries sorted down each column, pads at the bottom."""
    cols_a: list = [[] for _ in range(h)]
    cols_b: list = [[] for _ in range(h)]
    for v, e in mono:
        if v.kind not in ("a", "b"):
            raise UsageError("tableaux encode ab-ring monomials")
        if not 1 <= v.j <= h:
            raise UsageError(f"copy index {v.j} outside width {h}")
        (cols_a if v.kind == "a" else cols_b)[v.j - 1].extend([v] * e)
    for col in cols_a:
        col.sort(key=_cell_key)
    for col in cols_b:
        col.sort(key=_cell_key)
    depth = max((len(c) for c in cols_a + cols_b), default=0)
    rows = []
    for s in range(depth):
        left = tuple(cols_a[c][s] if s < len(cols_a[c]) else None
                     for c in range(h))
        right = tuple(cols_b[c][s] if s < len(cols_b[c]) else None
                      for c in range(h))
        rows.append((left, right))
    return Tableau(tuple(rows), h)


def chain_from_tableau(tab: Tableau) -> tuple:
    """Invert tableau_of: read one tagged minor off each row.  Raises
    InvariantViolation when a row is not a contiguous equal-length pair
    of variable blocks starting at column 1."""
    chain = []
    for left, right in tab.rows:
        lvars = [v for v in left if v is not None]
        rvars = [v for v in right if v is not None]
        if (len(lvars) != len(rvars) or not lvars
                or any(left[c] is None for c in range(len(lvars)))
                or any(right[c] is None for c in range(len(rvars)))
                or any(left[c].j != c + 1 for c in range(len(lvars)))
                or any(right[c].j != c + 1 for c in range(len(rvars)))):
            raise InvariantViolation("tableau row is not a symbol image")
        chain.append(TaggedMinor(tuple((v.i, v.k) for v in lvars),
                                 tuple((v.i, v.k) for v in rvars)))
    return tuple(chain)


@lru_cache(maxsize=1 << 18)
def _word_key(mono: Monomial, h: int) -> tuple:
    tab = tableau_from_monomial(mono, h)
    word = []
    for left, right in tab.rows:
        word.extend(_cell_key(v) for v in reversed(left))
        word.extend(_cell_key(v) for v in reversed(right))
    return tuple(word)


def leading_monomial(f: Polynomial, h: int) -> tuple[Monomial, int]:
    """The maximal monomial of f in the tableau word order, with its
    coefficient."""
    if f.is_zero():
        raise UsageError("zero polynomial has no leading monomial")
    best = max(f.terms, key=lambda m: _word_key(m, h))
    return best, f.terms[best]


def count_tagged(j: MinorSymbol) -> int:
    """Closed-form size of the tagged arrangement set."""
    h = j.size
    from math import factorial
    return factorial(h) ** 2 * comb(j.wt + 2 * h - 1, 2 * h - 1)


# -- wire format ---------------------------------------------------------


def tagged_to_obj(e: TaggedMinor) -> dict:
    return {"left": [[u, k] for u, k in reversed(e.left)],
            "right": [[v, k] for v, k in e.right]}


def tagged_from_obj(obj: dict) -> TaggedMinor:
    left = [(u, k) for u, k in obj["left"]][::-1]
    right = [(v, k) for v, k in obj["right"]]
    return make_tagged(left, right)
