"""Exact linear algebra over the toolkit's scalar fields.

Vectors are sparse dicts {column_key: scalar}; column keys are arbitrary
hashables.  The echelon classes keep rows fully inter-reduced
(Gauss-Jordan), so reducing a vector is a single pass and coordinates of
dependent vectors read off directly.  Everything is exact: Fractions,
cyclotomic elements, or finite-field residues, depending on the field
adapter passed in.

A word-packed rank routine over F_2 (rows as Python ints) is provided for
dense characteristic-2 work.
"""

from __future__ import annotations


class Echelon:
    """Incremental row space with exact rank tracking."""

    def __init__(self, field):
        self.field = field
        self.rows: list[tuple[object, dict]] = []  # (pivot_col, row) with row[pivot] = 1

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, vec: dict) -> dict:
        """Fully reduce a copy of vec against the stored rows."""
        f = self.field
        vec = {k: v for k, v in vec.items() if not f.is_zero(v)}
        for pivot, row in self.rows:
            c = vec.get(pivot)
            if c is None or f.is_zero(c):
                continue
            del vec[pivot]
            for col, rv in row.items():
                if col == pivot:
                    continue
                cur = vec.get(col, f.zero)
                new = f.sub(cur, f.mul(c, rv))
                if f.is_zero(new):
                    vec.pop(col, None)
                else:
                    vec[col] = new
        return vec

    def add(self, vec: dict) -> bool:
        """Insert vec's residual into the row space; True if rank grew."""
        f = self.field
        residual = self.reduce(vec)
        if not residual:
            return False
        pivot = min(residual)
        inv = f.inv(residual[pivot])
        row = {col: f.mul(inv, v) for col, v in residual.items()}
        # back-eliminate the new pivot from existing rows
        for old_pivot, old_row in self.rows:
            c = old_row.get(pivot)
            if c is None or f.is_zero(c):
                continue
            del old_row[pivot]
            for col, rv in row.items():
                if col == pivot:
                    continue
                cur = old_row.get(col, f.zero)
                new = f.sub(cur, f.mul(c, rv))
                if f.is_zero(new):
                    old_row.pop(col, None)
                else:
                    old_row[col] = new
        self.rows.append((pivot, row))
        return True


class SolvingEchelon:
    """Echelon that can express later vectors in terms of tagged basis rows."""

    def __init__(self, field):
        self.field = field
        self.rows: list[tuple[object, dict, dict]] = []  # (pivot, row, combo)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def _reduce(self, vec: dict, combo: dict):
        f = self.field
        vec = {k: v for k, v in vec.items() if not f.is_zero(v)}
        for pivot, row, row_combo in self.rows:
            c = vec.get(pivot)
            if c is None or f.is_zero(c):
                continue
            del vec[pivot]
            for col, rv in row.items():
                if col == pivot:
                    continue
                cur = vec.get(col, f.zero)
                new = f.sub(cur, f.mul(c, rv))
                if f.is_zero(new):
                    vec.pop(col, None)
                else:
                    vec[col] = new
            for tag, rv in row_combo.items():
                cur = combo.get(tag, f.zero)
                new = f.add(cur, f.mul(c, rv))
                if f.is_zero(new):
                    combo.pop(tag, None)
                else:
                    combo[tag] = new
        return vec, combo

    def add_basis(self, vec: dict, tag) -> bool:
        """Add a tagged vector; True if it was independent (and stored)."""
        f = self.field
        residual, combo = self._reduce(vec, {})
        if not residual:
            return False
        pivot = min(residual)
        inv = f.inv(residual[pivot])
        row = {col: f.mul(inv, v) for col, v in residual.items()}
        # residual = vec - sum(combo); stored row = inv*(vec - sum combo)
        new_combo = {tag: inv}
        for t, v in combo.items():
            val = f.neg(f.mul(inv, v))
            if not f.is_zero(val):
                new_combo[t] = val
        for old_pivot, old_row, old_combo in self.rows:
            c = old_row.get(pivot)
            if c is None or f.is_zero(c):
                continue
            del old_row[pivot]
            for col, rv in row.items():
                if col == pivot:
                    continue
                cur = old_row.get(col, f.zero)
                new = f.sub(cur, f.mul(c, rv))
                if f.is_zero(new):
                    old_row.pop(col, None)
                else:
                    old_row[col] = new
            for t, rv in new_combo.items():
                cur = old_combo.get(t, f.zero)
                new = f.sub(cur, f.mul(c, rv))
                if f.is_zero(new):
                    old_combo.pop(t, None)
                else:
                    old_combo[t] = new
        self.rows.append((pivot, row, new_combo))
        return True

    def express(self, vec: dict) -> dict | None:
        """Coordinates {tag: coeff} with vec = sum coeff * basis[tag], or None."""
        residual, combo = self._reduce(vec, {})
        if residual:
            return None
        return combo


def rank_of_rows(field, rows) -> int:
    ech = Echelon(field)
    for row in rows:
        ech.add(row)
    return ech.rank


def det_dense(field, matrix: list[list]) -> object:
    """Exact determinant of a small square matrix (list of rows)."""
    f = field
    n = len(matrix)
    a = [list(row) for row in matrix]
    det = f.one
    for col in range(n):
        pivot_row = None
        for i in range(col, n):
            if not f.is_zero(a[i][col]):
                pivot_row = i
                break
        if pivot_row is None:
            return f.zero
        if pivot_row != col:
            a[col], a[pivot_row] = a[pivot_row], a[col]
            det = f.neg(det)
        pv = a[col][col]
        det = f.mul(det, pv)
        inv = f.inv(pv)
        for i in range(col + 1, n):
            c = a[i][col]
            if f.is_zero(c):
                continue
            factor = f.mul(c, inv)
            for j in range(col, n):
                a[i][j] = f.sub(a[i][j], f.mul(factor, a[col][j]))
    return det


def rank_gf2(rows: list[int]) -> int:
    """Rank over F_2 of rows packed as Python ints (bit i = column i)."""
    pivots: list[int] = []  # rows with distinct leading bits
    rank = 0
    for row in rows:
        for p in pivots:
            low = p & -p
            if row & low:
                row ^= p
        if row:
            pivots.append(row)
            rank += 1
            pivots.sort(key=lambda r: r & -r)
    return rank
