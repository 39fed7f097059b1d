"""Exact linear algebra over the rationals.

Everything here is exact: entries are :class:`fractions.Fraction` (always
reduced, positive denominator) and elimination runs on integer rows with
content removal, so no rounding ever happens.
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

Vector = tuple[Fraction, ...]


class DimensionError(ValueError):
    """Operands have incompatible shapes."""


def rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"not an exact rational: {value!r}")


def format_rational(q) -> str:
    q = rational(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class QMatrix:
    """Dense rational matrix stored row-major; immutable."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable):
        entries = tuple(rational(x) for x in entries)
        if len(entries) != rows * cols:
            raise DimensionError(f"{rows}x{cols} matrix needs {rows * cols} entries, got {len(entries)}")
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> QMatrix:
        rows = [list(r) for r in rows]
        if cols is None:
            if not rows:
                raise DimensionError("column count is ambiguous for an empty row list")
            cols = len(rows[0])
        if any(len(r) != cols for r in rows):
            raise DimensionError("ragged rows")
        return cls(len(rows), cols, [x for r in rows for x in r])

    @classmethod
    def identity(cls, n: int) -> QMatrix:
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    @classmethod
    def zero(cls, rows: int, cols: int) -> QMatrix:
        return cls(rows, cols, [0] * (rows * cols))

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> QMatrix:
        return QMatrix(self.cols, self.rows,
                       [self[i, j] for j in range(self.cols) for i in range(self.rows)])

    def __matmul__(self, other):
        if isinstance(other, QMatrix):
            if self.cols != other.rows:
                raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
            out = []
            for i in range(self.rows):
                r = self.row(i)
                for j in range(other.cols):
                    out.append(sum((r[t] * other[t, j] for t in range(self.cols)), Fraction(0)))
            return QMatrix(self.rows, other.cols, out)
        v = tuple(rational(x) for x in other)
        if len(v) != self.cols:
            raise DimensionError(f"vector of length {len(v)} against {self.cols} columns")
        return tuple(sum((a * b for a, b in zip(self.row(i), v)), Fraction(0))
                     for i in range(self.rows))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __eq__(self, other):
        return isinstance(other, QMatrix) and self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"QMatrix({self.to_json()})"

    def to_json(self) -> str:
        return json.dumps([[format_rational(x) for x in self.row(i)] for i in range(self.rows)])

    @classmethod
    def from_json(cls, text: str) -> QMatrix:
        rows = json.loads(text)
        return cls.from_rows([[rational(x) for x in r] for r in rows],
                             cols=len(rows[0]) if rows else 0)


# -- integer core -----------------------------------------------------------

def _integer_row(row: Sequence) -> list[int]:
    row = [rational(x) for x in row]
    den = lcm(*(x.denominator for x in row)) if row else 1
    return [int(x * den) for x in row]


def _primitive(row: list[int]) -> list[int]:
    g = 0
    for x in row:
        if x:
            g = gcd(g, x)
            if g == 1:
                return row
    if g > 1:
        return [x // g for x in row]
    return row


def _echelon(rows: list[list[int]], ncols: int, stop_col: int | None = None):
    """Fraction-free Gauss-Jordan elimination on integer rows, in place.

    Pivots are chosen only in columns ``< stop_col``. Returns the list of
    pivot columns; rows ``[0, len(pivots))`` are the pivot rows.
    """
    if stop_col is None:
        stop_col = ncols
    pivots = []
    r = 0
    nrows = len(rows)
    for col in range(stop_col):
        if r == nrows:
            break
        best = -1
        best_abs = 0
        for i in range(r, nrows):
            a = abs(rows[i][col])
            if a > best_abs:
                best, best_abs = i, a
        if best < 0:
            continue
        rows[r], rows[best] = rows[best], rows[r]
        prow = rows[r]
        p = prow[col]
        for i in range(nrows):
            if i == r:
                continue
            f = rows[i][col]
            if f:
                g = gcd(p, f)
                pp, ff = p // g, f // g
                rows[i] = _primitive([pp * x - ff * y for x, y in zip(rows[i], prow)])
        pivots.append(col)
        r += 1
    return pivots


def rank_of_rows(rows: Sequence[Sequence], ncols: int) -> int:
    work = [_integer_row(r) for r in rows]
    return len(_echelon(work, ncols))


def rref_rows(rows: Sequence[Sequence], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form of a row list; returns (nonzero rows, pivot columns)."""
    work = [_integer_row(r) for r in rows]
    pivots = _echelon(work, ncols)
    out = []
    for r, c in enumerate(pivots):
        p = work[r][c]
        out.append([Fraction(x, p) for x in work[r]])
    return out, pivots


def kernel_of_rows(rows: Sequence[Sequence], ncols: int) -> list[Vector]:
    reduced, pivots = rref_rows(rows, ncols) if rows else ([], [])
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for r, c in enumerate(pivots):
            v[c] = -reduced[r][free]
        basis.append(tuple(v))
    return basis


# -- public operations ----------------------------------------------------------

def rref(m: QMatrix) -> tuple[QMatrix, int]:
    reduced, pivots = rref_rows(m.to_rows(), m.cols)
    zeros = [[0] * m.cols for _ in range(m.rows - len(pivots))]
    return QMatrix.from_rows(reduced + zeros, cols=m.cols), len(pivots)


def rank(m: QMatrix) -> int:
    return rank_of_rows(m.to_rows(), m.cols)


def kernel_basis(m: QMatrix) -> list[Vector]:
    """Canonical basis of the right null space.

    One vector per free column, in ascending order: 1 at the free column and
    minus the RREF coefficient at each pivot column.
    """
    return kernel_of_rows(m.to_rows(), m.cols)


def solve(m: QMatrix, b: Sequence) -> Vector | None:
    """Some x with ``m @ x == b``, or None when the system is inconsistent."""
    if len(b) != m.rows:
        raise DimensionError(f"right-hand side has length {len(b)}, matrix has {m.rows} rows")
    return solve_rows(m.to_rows(), b, m.cols)


def solve_rows(rows: Sequence[Sequence], b: Sequence, ncols: int) -> Vector | None:
    aug = [list(r) + [rational(x)] for r, x in zip(rows, b)]
    work = [_integer_row(r) for r in aug]
    pivots = _echelon(work, ncols + 1, stop_col=ncols)
    for r in range(len(pivots), len(work)):
        if work[r][ncols]:
            return None
    x = [Fraction(0)] * ncols
    for r, c in enumerate(pivots):
        x[c] = Fraction(work[r][ncols], work[r][c])
    return tuple(x)


class EchelonBasis:
    """Incrementally grown row-echelon basis for span and independence tests."""

    def __init__(self, ncols: int):
        self.ncols = ncols
        self._rows: list[tuple[int, list[Fraction]]] = []

    def __len__(self):
        return len(self._rows)

    def reduce(self, v: Sequence) -> list[Fraction]:
        w = [rational(x) for x in v]
        if len(w) != self.ncols:
            raise DimensionError(f"vector of length {len(w)} in a {self.ncols}-dimensional space")
        for c, row in self._rows:
            f = w[c]
            if f:
                w = [x - f * y for x, y in zip(w, row)]
        return w

    def contains(self, v: Sequence) -> bool:
        return not any(self.reduce(v))

    def add(self, v: Sequence) -> bool:
        """Add ``v``; returns False when it was already in the span."""
        w = self.reduce(v)
        c = next((i for i, x in enumerate(w) if x), None)
        if c is None:
            return False
        p = w[c]
        w = [x / p for x in w]
        self._rows = [(c2, [x - r[c] * y for x, y in zip(r, w)] if r[c] else r)
                      for c2, r in self._rows]
        self._rows.append((c, w))
        return True


def independent_subset(vectors: Sequence[Sequence], base: Sequence[Sequence] = (),
                       ncols: int | None = None) -> list[int]:
    """Indices of a greedy maximal subset of ``vectors`` independent modulo ``span(base)``."""
    if ncols is None:
        sample = list(vectors) + list(base)
        if not sample:
            return []
        ncols = len(sample[0])
    basis = EchelonBasis(ncols)
    for v in base:
        basis.add(v)
    return [i for i, v in enumerate(vectors) if basis.add(v)]


def mat_vec(m: Sequence[Sequence], v: Sequence) -> list:
    return [sum(a * b for a, b in zip(row, v)) for row in m]


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def determinant(m: Sequence[Sequence]) -> Fraction:
    """Exact determinant by elimination over the rationals."""
    n = len(m)
    if any(len(r) != n for r in m):
        raise DimensionError("determinant of a non-square matrix")
    a = [[rational(x) for x in r] for r in m]
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det *= a[c][c]
        for i in range(c + 1, n):
            f = a[i][c] / a[c][c]
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return det
