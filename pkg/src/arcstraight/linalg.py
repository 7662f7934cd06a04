"""Exact sparse linear algebra over the rationals.

Everything is elimination on sparse rows (dict column->value).  Rows are
rescaled to coprime integers after every operation, so the arithmetic
stays in Z and there is no floating point anywhere.  Pivoting is
deterministic: rows are consumed in index order and each reduced row
pivots on its smallest remaining column.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Hashable, Iterable, Sequence

from .errors import UsageError


def _normalize_int_row(row: dict) -> dict:
    """Scale a sparse row of rationals/ints to coprime integers."""
    if not row:
        return row
    den = 1
    for v in row.values():
        if isinstance(v, Fraction):
            den = den * v.denominator // gcd(den, v.denominator)
    g = 0
    out = {}
    for k, v in row.items():
        n = int(v * den)
        if n:
            out[k] = n
            g = gcd(g, n)
    if g > 1:
        out = {k: v // g for k, v in out.items()}
    return out


class SpanSolver:
    """Incremental echelon form of a set of sparse vectors.

    Vectors are dicts over arbitrary comparable keys.  add() reduces the
    vector against the current echelon and, if independent, installs it
    as a new pivot.  With record=True each echelon row remembers its
    expression in the inserted vectors, so solve() can return exact
    coordinates of a target vector in the inserted span.
    """

    def __init__(self, record: bool = False):
        self.pivots: dict = {}          # lead key -> integer row
        self.combos: dict = {}          # lead key -> {tag: Fraction}
        self.record = record
        self.tags: list = []

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def _reduce(self, row: dict, combo: dict | None):
        row = dict(row)
        while row:
            lead = min(row)
            piv = self.pivots.get(lead)
            if piv is None:
                return row, lead, combo
            a, b = piv[lead], row[lead]
            # row := a*row - b*piv, integer cross-elimination
            new = {}
            for k, v in row.items():
                new[k] = a * v
            for k, v in piv.items():
                s = new.get(k, 0) - b * v
                if s:
                    new[k] = s
                elif k in new:
                    del new[k]
            if combo is not None:
                pc = self.combos[lead]
                nc = {t: a * c for t, c in combo.items()}
                for t, c in pc.items():
                    s = nc.get(t, 0) - b * c
                    if s:
                        nc[t] = s
                    elif t in nc:
                        del nc[t]
                combo = nc
            row = new
            if row:
                g = 0
                for v in row.values():
                    g = gcd(g, v)
                if g > 1:
                    row = {k: v // g for k, v in row.items()}
                    if combo is not None:
                        combo = {t: Fraction(c, g) for t, c in combo.items()}
        return row, None, combo

    def add(self, vec: dict, tag: Hashable = None) -> bool:
        """Insert a vector; returns True if it enlarged the span."""
        row = _normalize_int_row(vec)
        combo = None
        if self.record:
            scale = Fraction(1)
            for k, v in vec.items():
                if v:
                    scale = Fraction(row[k], 1) / Fraction(v)
                    break
            combo = {tag: scale}
            self.tags.append(tag)
        row, lead, combo = self._reduce(row, combo)
        if not row:
            return False
        self.pivots[lead] = row
        if self.record:
            self.combos[lead] = combo
        return True

    def contains(self, vec: dict) -> bool:
        row, _, _ = self._reduce(_normalize_int_row(vec), None)
        return not row

    def residual(self, vec: dict) -> tuple[dict, int]:
        """Reduce vec against the echelon without inserting it.

        Returns (r, d) with r integer and coprime jointly with d, such
        that r/d is vec minus its projection onto the span; the map
        vec -> r/d is linear and its kernel is exactly the span.
        """
        row = dict(vec)
        denom = 1
        for k, v in row.items():
            if isinstance(v, Fraction):
                denom = denom * v.denominator // gcd(denom, v.denominator)
        if denom != 1:
            row = {k: int(v * denom) for k, v in row.items() if v}
        else:
            row = {k: v for k, v in row.items() if v}
        pivots = self.pivots
        while row:
            hits = [k for k in row if k in pivots]
            if not hits:
                break
            lead = min(hits)
            piv = pivots[lead]
            a, b = piv[lead], row[lead]
            new = {k: a * v for k, v in row.items()}
            for k, v in piv.items():
                s = new.get(k, 0) - b * v
                if s:
                    new[k] = s
                elif k in new:
                    del new[k]
            row = new
            denom *= a
            if row:
                g = denom
                for v in row.values():
                    g = gcd(g, v)
                    if g == 1:
                        break
                if g > 1:
                    row = {k: v // g for k, v in row.items()}
                    denom //= g
        if not row:
            return {}, 1
        if denom < 0:
            denom = -denom
            row = {k: -v for k, v in row.items()}
        return row, denom

    def solve(self, vec: dict) -> dict | None:
        """Exact coordinates of vec in the inserted span, or None.

        Returns {tag: Fraction} for the combination produced by the
        echelon bookkeeping (requires record=True).
        """
        if not self.record:
            raise UsageError("SpanSolver was built without record=True")
        residual = {k: Fraction(v) for k, v in vec.items() if v}
        coeffs: dict = {}
        while residual:
            lead = min(residual)
            piv = self.pivots.get(lead)
            if piv is None:
                return None
            c = residual[lead] / piv[lead]
            for k, v in piv.items():
                s = residual.get(k, 0) - c * v
                if s:
                    residual[k] = s
                elif k in residual:
                    del residual[k]
            for t, v in self.combos[lead].items():
                s = coeffs.get(t, 0) + c * v
                if s:
                    coeffs[t] = s
                elif t in coeffs:
                    del coeffs[t]
        return coeffs


class SparseMatrix:
    """Immutable sparse matrix over Q; entries is {(row, col): value}."""

    def __init__(self, rows: int, cols: int, entries: dict):
        self.rows = rows
        self.cols = cols
        clean = {}
        for (r, c), v in entries.items():
            if not (0 <= r < rows and 0 <= c < cols):
                raise UsageError(f"entry ({r},{c}) outside {rows}x{cols}")
            v = Fraction(v)
            if v:
                clean[(r, c)] = v
        self.entries = clean

    @staticmethod
    def from_rows(rows: Sequence[Iterable]) -> "SparseMatrix":
        entries = {}
        cols = 0
        for r, row in enumerate(rows):
            row = list(row)
            cols = max(cols, len(row))
            for c, v in enumerate(row):
                if v:
                    entries[(r, c)] = Fraction(v)
        return SparseMatrix(len(rows), cols, entries)

    def row_dicts(self) -> list[dict]:
        rows: list[dict] = [dict() for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            rows[r][c] = v
        return rows

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(self.cols, self.rows,
                            {(c, r): v for (r, c), v in self.entries.items()})

    def mul_vec(self, x: Sequence) -> list[Fraction]:
        if len(x) != self.cols:
            raise UsageError("vector length does not match column count")
        out = [Fraction(0)] * self.rows
        for (r, c), v in self.entries.items():
            out[r] += v * Fraction(x[c])
        return out


def rank(m: SparseMatrix) -> int:
    """Exact rank over the rationals."""
    solver = SpanSolver()
    for row in m.row_dicts():
        solver.add(row)
    return solver.rank


def solve(m: SparseMatrix, b: Sequence):
    """One exact solution of m*x = b, or None when inconsistent.

    Returns (x, unique) where unique is True iff m has full column
    rank, in which case x is the only solution.  Free variables are
    set to zero.
    """
    if len(b) != m.rows:
        raise UsageError("right-hand side length does not match row count")
    aug = object()  # sorts are never applied to the marker column
    rows = []
    for r, row in enumerate(m.row_dicts()):
        v = Fraction(b[r])
        if v:
            row[aug] = v
        rows.append(row)

    # Forward elimination on integer-normalized rows; the marker column
    # is excluded from pivot selection.
    pivots: dict = {}
    for row in rows:
        row = _normalize_int_row(row)
        while row:
            data_cols = [k for k in row if k is not aug]
            if not data_cols:
                return None  # 0 = nonzero: inconsistent
            lead = min(data_cols)
            piv = pivots.get(lead)
            if piv is None:
                pivots[lead] = row
                break
            a, c = piv[lead], row[lead]
            new = {k: a * v for k, v in row.items()}
            for k, v in piv.items():
                s = new.get(k, 0) - c * v
                if s:
                    new[k] = s
                elif k in new:
                    del new[k]
            g = 0
            for v in new.values():
                g = gcd(g, v)
            if g > 1:
                new = {k: v // g for k, v in new.items()}
            row = new

    x = [Fraction(0)] * m.cols
    for col in sorted(pivots, reverse=True):
        row = pivots[col]
        s = Fraction(row.get(aug, 0))
        for k, v in row.items():
            if k is aug or k == col:
                continue
            s -= v * x[k]
        x[col] = s / row[col]
    unique = len(pivots) == m.cols
    return x, unique
