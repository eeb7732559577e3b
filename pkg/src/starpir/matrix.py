"""Dense exact linear algebra over a Field: rref, rank, kernel, solve.

Matrices are immutable; entries are integer encodings of field elements
(see gf.Field).  Row reduction uses plain Gauss-Jordan elimination with
first-nonzero pivoting; over GF(2) rows are packed into Python ints and
eliminated with xor, which is what makes length-341 codes and the
2^22-codeword enumerations practical in pure Python.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .gf import Field


def _rref_gf2(rows: Sequence[int], ncols: int) -> tuple[list[int], list[int]]:
    """Gauss-Jordan on bit-packed GF(2) rows; returns (rows, pivot cols)."""
    pivots: dict[int, int] = {}
    for r in rows:
        for c, pr in pivots.items():
            if (r >> c) & 1:
                r ^= pr
        if r:
            c = (r & -r).bit_length() - 1
            for c2 in list(pivots):
                if (pivots[c2] >> c) & 1:
                    pivots[c2] ^= r
            pivots[c] = r
    cols = sorted(pivots)
    return [pivots[c] for c in cols], cols


def _pack(row: Sequence[int]) -> int:
    v = 0
    for j, x in enumerate(row):
        if x:
            v |= 1 << j
    return v


def _unpack(bits: int, ncols: int) -> tuple[int, ...]:
    return tuple((bits >> j) & 1 for j in range(ncols))


class Matrix:
    """An immutable matrix over a Field, entries stored as encodings."""

    __slots__ = ("field", "nrows", "ncols", "rows", "_rref_cache")

    def __init__(self, field: Field, rows: Iterable[Sequence[int]], ncols: int | None = None):
        rws = tuple(tuple(r) for r in rows)
        if rws:
            ncols = len(rws[0])
            if any(len(r) != ncols for r in rws):
                raise ValueError("ragged rows")
        elif ncols is None:
            raise ValueError("empty matrix needs an explicit column count")
        order = field.order
        for r in rws:
            for x in r:
                if not 0 <= x < order:
                    raise ValueError(f"entry {x} is not a valid encoding in {field}")
        self.field = field
        self.nrows = len(rws)
        self.ncols = ncols
        self.rows = rws
        self._rref_cache: tuple[Matrix, tuple[int, ...]] | None = None

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        return cls(field, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int) -> "Matrix":
        return cls(field, [[0] * ncols for _ in range(nrows)], ncols=ncols)

    # -- reduction ------------------------------------------------------

    def rref(self) -> tuple["Matrix", tuple[int, ...]]:
        """Reduced row echelon form and its pivot columns (zero rows dropped)."""
        if self._rref_cache is not None:
            return self._rref_cache
        F = self.field
        if F.p == 2 and F.e == 1:
            packed, cols = _rref_gf2([_pack(r) for r in self.rows], self.ncols)
            red = Matrix(F, [_unpack(b, self.ncols) for b in packed], ncols=self.ncols)
            self._rref_cache = (red, tuple(cols))
            return self._rref_cache
        rows = [list(r) for r in self.rows]
        pivots: list[int] = []
        r = 0
        for c in range(self.ncols):
            pr = next((i for i in range(r, len(rows)) if rows[i][c]), None)
            if pr is None:
                continue
            rows[r], rows[pr] = rows[pr], rows[r]
            inv = F.inv(rows[r][c])
            if inv != 1:
                rows[r] = [F.mul(inv, x) for x in rows[r]]
            for i in range(len(rows)):
                if i != r and rows[i][c]:
                    f = rows[i][c]
                    rows[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(rows[i], rows[r])]
            pivots.append(c)
            r += 1
            if r == len(rows):
                break
        red = Matrix(F, rows[:r], ncols=self.ncols)
        self._rref_cache = (red, tuple(pivots))
        return self._rref_cache

    def rank(self) -> int:
        return self.rref()[0].nrows

    def kernel(self) -> "Matrix":
        """Canonical basis of the right null space: rows v with M v^T = 0."""
        red, pivots = self.rref()
        pivset = set(pivots)
        F = self.field
        basis = []
        for f in range(self.ncols):
            if f in pivset:
                continue
            v = [0] * self.ncols
            v[f] = 1
            for i, p in enumerate(pivots):
                v[p] = F.neg(red.rows[i][f])
            basis.append(v)
        return Matrix(F, basis, ncols=self.ncols).rref()[0]

    def solve(self, rhs: Sequence[int]) -> list[int] | None:
        """Any x with M x = rhs, or None if the system is inconsistent."""
        if len(rhs) != self.nrows:
            raise ValueError("rhs length must equal the number of rows")
        F = self.field
        aug = Matrix(F, [list(r) + [b] for r, b in zip(self.rows, rhs)],
                     ncols=self.ncols + 1)
        red, pivots = aug.rref()
        if self.ncols in pivots:
            return None
        x = [0] * self.ncols
        for i, p in enumerate(pivots):
            x[p] = red.rows[i][self.ncols]
        return x

    # -- assorted helpers ------------------------------------------------

    def transpose(self) -> "Matrix":
        return Matrix(self.field,
                      [[self.rows[i][j] for i in range(self.nrows)]
                       for j in range(self.ncols)],
                      ncols=self.nrows)

    def select_columns(self, cols: Sequence[int]) -> "Matrix":
        return Matrix(self.field, [[r[c] for c in cols] for r in self.rows],
                      ncols=len(cols))

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.rows)

    def mat_vec(self, v: Sequence[int]) -> list[int]:
        if len(v) != self.ncols:
            raise ValueError("dimension mismatch")
        F = self.field
        out = []
        for r in self.rows:
            acc = 0
            for x, y in zip(r, v):
                if x and y:
                    acc = F.add(acc, F.mul(x, y))
            out.append(acc)
        return out

    def times(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError("dimension mismatch")
        F = self.field
        cols = [other.column(j) for j in range(other.ncols)]
        return Matrix(F, [[_dot(F, r, c) for c in cols] for r in self.rows],
                      ncols=other.ncols)

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.ncols or self.field != other.field:
            raise ValueError("dimension mismatch")
        return Matrix(self.field, self.rows + other.rows, ncols=self.ncols)

    def row_span_contains(self, v: Sequence[int]) -> bool:
        """Whether v lies in the row space."""
        red, pivots = self.rref()
        F = self.field
        w = list(v)
        for i, p in enumerate(pivots):
            if w[p]:
                f = w[p]
                w = [F.sub(x, F.mul(f, y)) for x, y in zip(w, red.rows[i])]
        return not any(w)

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.field == other.field
                and self.ncols == other.ncols and self.rows == other.rows)

    def __hash__(self):
        return hash((self.field.p, self.field.e, self.ncols, self.rows))

    def __repr__(self):
        return f"Matrix({self.field}, {self.nrows}x{self.ncols})"

    def pretty(self) -> str:
        return "\n".join(" ".join(str(x) for x in r) for r in self.rows)


def _dot(F: Field, a: Sequence[int], b: Sequence[int]) -> int:
    acc = 0
    for x, y in zip(a, b):
        if x and y:
            acc = F.add(acc, F.mul(x, y))
    return acc
