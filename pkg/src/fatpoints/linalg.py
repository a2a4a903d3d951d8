"""Exact rank and kernel computation over Q and Q(w).

Two deliberately independent elimination routines are kept side by side:

* :func:`rank` - fraction-free (Bareiss) elimination after clearing row
  denominators, so all intermediate values are (Eisenstein) integers and
  every division is exact;
* :func:`oracle_rank` - plain Gaussian elimination over the field with
  largest-pivot selection (absolute value over Q, field norm over Q(w)).

Every matrix the test suite produces is pushed through both; agreement is
an invariant of the whole package.  Kernel bases come from reduced row
echelon form and are normalized so each vector's first nonzero entry is 1.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from .exact import (
    EISENSTEIN,
    FIELDS,
    RATIONAL,
    Eisenstein,
    FieldMismatchError,
    as_scalar,
    format_scalar,
    is_zero,
    one as field_one,
    zero as field_zero,
)


class ExactMatrix:
    """Dense matrix of exact scalars with a uniform field tag."""

    __slots__ = ("rows", "cols", "entries", "field")

    def __init__(self, rows, cols, entries, field):
        if field not in FIELDS:
            raise ValueError(f"unknown field tag {field!r}")
        if len(entries) != rows:
            raise ValueError("row count mismatch")
        self.rows = rows
        self.cols = cols
        self.entries = [
            [as_scalar(x, field) for x in row] for row in entries
        ]
        for row in self.entries:
            if len(row) != cols:
                raise ValueError("column count mismatch")
        self.field = field

    @classmethod
    def from_rows(cls, entries, field):
        rows = len(entries)
        cols = len(entries[0]) if rows else 0
        return cls(rows, cols, entries, field)

    @classmethod
    def identity(cls, n, field=RATIONAL):
        return cls(
            n,
            n,
            [
                [field_one(field) if i == j else field_zero(field) for j in range(n)]
                for i in range(n)
            ],
            field,
        )

    @classmethod
    def zero(cls, rows, cols, field=RATIONAL):
        z = field_zero(field)
        return cls(rows, cols, [[z] * cols for _ in range(rows)], field)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i):
        return list(self.entries[i])

    def mul_vector(self, v):
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        v = [as_scalar(x, self.field) for x in v]
        out = []
        for row in self.entries:
            s = field_zero(self.field)
            for a, b in zip(row, v):
                if not (is_zero(a) or is_zero(b)):
                    s = s + a * b
            out.append(s)
        return out

    def stack(self, other):
        if not isinstance(other, ExactMatrix):
            raise TypeError("can only stack ExactMatrix")
        if other.field != self.field:
            raise FieldMismatchError("field mismatch in stack")
        if other.cols != self.cols:
            raise ValueError("column mismatch in stack")
        return ExactMatrix(
            self.rows + other.rows,
            self.cols,
            [list(r) for r in self.entries] + [list(r) for r in other.entries],
            self.field,
        )

    def transpose(self):
        return ExactMatrix(
            self.cols,
            self.rows,
            [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)],
            self.field,
        )

    def dump(self):
        """Text grid for debugging."""
        lines = []
        for row in self.entries:
            lines.append("\t".join(format_scalar(x) for x in row))
        return "\n".join(lines)

    def __repr__(self):
        return f"ExactMatrix({self.rows}x{self.cols}, {self.field})"


def _cleared_integer_rows(m):
    """Rows scaled so every entry has integral components (rank-preserving)."""
    out = []
    for row in m.entries:
        if m.field == RATIONAL:
            denoms = [x.denominator for x in row]
            mult = lcm(*denoms) if denoms else 1
            out.append([x * mult for x in row])
        else:
            denoms = [x.a.denominator for x in row] + [x.b.denominator for x in row]
            mult = lcm(*denoms) if denoms else 1
            out.append([Eisenstein(x.a * mult, x.b * mult) for x in row])
    return out


def rank(m):
    """Exact rank by fraction-free Bareiss elimination.

    Rows are first scaled to integer (or Eisenstein-integer) entries; the
    Bareiss update (pivot*a - b*c) / previous_pivot then divides exactly,
    which keeps coefficient growth polynomial.
    """
    a = _cleared_integer_rows(m)
    nrows, ncols = m.rows, m.cols
    r = 0
    prev = Fraction(1) if m.field == RATIONAL else Eisenstein(1, 0)
    for c in range(ncols):
        if r == nrows:
            break
        pivot_row = None
        for i in range(r, nrows):
            if not is_zero(a[i][c]):
                pivot_row = i
                break
        if pivot_row is None:
            continue
        if pivot_row != r:
            a[r], a[pivot_row] = a[pivot_row], a[r]
        pivot = a[r][c]
        for i in range(r + 1, nrows):
            # the update runs even when the lead is zero: keeping every entry
            # a minor of the input is what makes the division exact
            bic = a[i][c]
            for j in range(c + 1, ncols):
                a[i][j] = (pivot * a[i][j] - bic * a[r][j]) / prev
            a[i][c] = field_zero(m.field)
        prev = pivot
        r += 1
    return r


def oracle_rank(m):
    """Rank by plain Gaussian elimination over the field, largest pivot first.

    Kept algorithmically independent of :func:`rank` as a cross-check.
    """
    a = [list(row) for row in m.entries]
    nrows, ncols = m.rows, m.cols
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        best, best_size = None, None
        for i in range(r, nrows):
            x = a[i][c]
            if is_zero(x):
                continue
            size = abs(x) if m.field == RATIONAL else x.norm()
            if best is None or size > best_size:
                best, best_size = i, size
        if best is None:
            continue
        if best != r:
            a[r], a[best] = a[best], a[r]
        inv_pivot = 1 / a[r][c] if m.field == RATIONAL else a[r][c].inverse()
        for i in range(r + 1, nrows):
            if is_zero(a[i][c]):
                continue
            factor = a[i][c] * inv_pivot
            for j in range(c, ncols):
                a[i][j] = a[i][j] - factor * a[r][j]
        r += 1
    return r


class KernelBasis:
    """Basis of the right kernel; vectors normalized to leading entry 1."""

    __slots__ = ("vectors", "cols", "field")

    def __init__(self, vectors, cols, field):
        self.vectors = vectors
        self.cols = cols
        self.field = field

    def __len__(self):
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)

    def __getitem__(self, i):
        return self.vectors[i]

    def as_matrix(self):
        return ExactMatrix.from_rows([list(v) for v in self.vectors], self.field)


def _rref(m):
    """Reduced row echelon form over the field; returns (rows, pivot columns)."""
    a = [list(row) for row in m.entries]
    nrows, ncols = m.rows, m.cols
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pivot_row = None
        for i in range(r, nrows):
            if not is_zero(a[i][c]):
                pivot_row = i
                break
        if pivot_row is None:
            continue
        if pivot_row != r:
            a[r], a[pivot_row] = a[pivot_row], a[r]
        inv = 1 / a[r][c] if m.field == RATIONAL else a[r][c].inverse()
        a[r] = [x * inv for x in a[r]]
        for i in range(nrows):
            if i != r and not is_zero(a[i][c]):
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a, pivots


def kernel_basis(m):
    """Exact basis of {v : m v = 0}; size is cols - rank."""
    a, pivots = _rref(m)
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    zero_e = field_zero(m.field)
    vectors = []
    for fc in free:
        v = [zero_e] * m.cols
        v[fc] = field_one(m.field)
        for r, pc in enumerate(pivots):
            coeff = a[r][fc]
            if not is_zero(coeff):
                v[pc] = -coeff
        # normalize: first nonzero entry becomes 1
        lead = next(x for x in v if not is_zero(x))
        if lead != field_one(m.field):
            inv = 1 / lead if m.field == RATIONAL else lead.inverse()
            v = [x * inv for x in v]
        vectors.append(tuple(v))
    return KernelBasis(vectors, m.cols, m.field)
