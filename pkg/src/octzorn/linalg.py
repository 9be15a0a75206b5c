"""Dense exact matrices over a ring context.

Elimination-based routines (rank, nullspace, inverse) need a field
context (Q or F_p).  Determinants work over any commutative ring: fields
use elimination, other rings a division-free cofactor expansion memoised
on column subsets, which is fine for the small sizes used here.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Sequence

from .errors import CtxMismatch, NotInvertible, Unsupported
from .rings import Ring, RingElt


class Matrix:
    __slots__ = ("ring", "rows")

    def __init__(self, ring: Ring, rows: Iterable[Iterable]):
        self.ring = ring
        self.rows = tuple(tuple(ring(x) for x in row) for row in rows)
        if self.rows and len({len(r) for r in self.rows}) != 1:
            raise ValueError("ragged matrix")

    @classmethod
    def identity(cls, ring: Ring, n: int) -> "Matrix":
        return cls(ring, [[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, ring: Ring, m: int, n: int) -> "Matrix":
        return cls(ring, [[0] * n for _ in range(m)])

    @classmethod
    def from_columns(cls, ring: Ring, cols: Sequence[Sequence]) -> "Matrix":
        return cls(ring, list(zip(*cols)))

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> tuple[RingElt, ...]:
        return tuple(r[j] for r in self.rows)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.ring == other.ring and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        body = "; ".join(", ".join(str(x) for x in r) for r in self.rows)
        return f"Matrix({self.ring}, [{body}])"

    def _check(self, other: "Matrix"):
        if other.ring != self.ring:
            raise CtxMismatch(f"{self.ring} vs {other.ring}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        return Matrix(self.ring, [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        return Matrix(self.ring, [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self) -> "Matrix":
        return Matrix(self.ring, [[-a for a in r] for r in self.rows])

    def scale(self, c) -> "Matrix":
        c = self.ring(c)
        return Matrix(self.ring, [[c * a for a in r] for r in self.rows])

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = [other.column(j) for j in range(other.ncols)]
        zero = self.ring.zero()
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                s = zero
                for a, b in zip(r, c):
                    if a and b:
                        s = s + a * b
                row.append(s)
            out.append(row)
        return Matrix(self.ring, out)

    def apply(self, vec: Sequence) -> tuple[RingElt, ...]:
        vec = [self.ring(x) for x in vec]
        if len(vec) != self.ncols:
            raise ValueError("vector length does not match the column count")
        zero = self.ring.zero()
        out = []
        for r in self.rows:
            s = zero
            for a, b in zip(r, vec):
                if a and b:
                    s = s + a * b
            out.append(s)
        return tuple(out)

    @property
    def T(self) -> "Matrix":
        return Matrix(self.ring, list(zip(*self.rows)) if self.rows else [])

    def trace(self) -> RingElt:
        s = self.ring.zero()
        for i in range(min(self.shape)):
            s = s + self.rows[i][i]
        return s

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    # -- determinants -----------------------------------------------------------

    def det(self) -> RingElt:
        if not self.is_square():
            raise ValueError("determinant of a non-square matrix")
        if self.ring.is_field:
            return _det_field(self)
        return _det_expand(self)

    def minor(self, i: int, j: int) -> "Matrix":
        return Matrix(
            self.ring,
            [[x for c, x in enumerate(r) if c != j] for k, r in enumerate(self.rows) if k != i],
        )

    def adjugate(self) -> "Matrix":
        n = self.nrows
        if n == 1:
            return Matrix.identity(self.ring, 1)
        cof = [[(-1) ** (i + j) * self.minor(i, j).det() for j in range(n)] for i in range(n)]
        return Matrix(self.ring, cof).T

    def inverse(self) -> "Matrix":
        if not self.is_square():
            raise ValueError("inverse of a non-square matrix")
        d = self.det()
        if not d.is_unit():
            raise NotInvertible(f"determinant {d} is not a unit")
        return self.adjugate().scale(d.inverse())

    # -- elimination ------------------------------------------------------------

    def _require_field(self):
        if not self.ring.is_field:
            raise Unsupported(f"elimination needs a field, not {self.ring}")

    def rref(self) -> tuple[list[list], list[int]]:
        """Reduced row echelon form on raw values, plus the pivot columns."""
        self._require_field()
        return _rref([[x.val for x in r] for r in self.rows], self.ncols, self.ring)

    def rank(self) -> int:
        return len(self.rref()[1])

    def nullspace(self) -> list[tuple[RingElt, ...]]:
        """An exact basis of ``{v : M v = 0}``; its size is ``ncols - rank``."""
        rows, pivots = self.rref()
        ring = self.ring
        n = self.ncols
        free = [j for j in range(n) if j not in set(pivots)]
        basis = []
        for f in free:
            v = [ring._coerce(0)] * n
            v[f] = ring._coerce(1)
            for i, pc in enumerate(pivots):
                v[pc] = ring._neg(rows[i][f])
            basis.append(tuple(RingElt(ring, x) for x in v))
        return basis


def _rref(rows: list[list], ncols: int, ring: Ring):
    add, mul, neg, inv = ring._add, ring._mul, ring._neg, ring._inv
    rows = [list(r) for r in rows if any(x != 0 for x in r)]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        piv_inv = inv(rows[r][c])
        prow = [mul(x, piv_inv) if x != 0 else x for x in rows[r]]
        rows[r] = prow
        nz = [j for j in range(c, ncols) if prow[j] != 0]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = neg(rows[i][c])
                row = rows[i]
                for j in nz:
                    row[j] = add(row[j], mul(f, prow[j]))
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def _det_field(m: Matrix) -> RingElt:
    ring = m.ring
    add, mul, neg, inv = ring._add, ring._mul, ring._neg, ring._inv
    a = [[x.val for x in r] for r in m.rows]
    n = len(a)
    det = ring._coerce(1)
    for c in range(n):
        pr = next((i for i in range(c, n) if a[i][c] != 0), None)
        if pr is None:
            return ring.zero()
        if pr != c:
            a[c], a[pr] = a[pr], a[c]
            det = neg(det)
        det = mul(det, a[c][c])
        piv_inv = inv(a[c][c])
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = neg(mul(a[i][c], piv_inv))
                for j in range(c, n):
                    a[i][j] = add(a[i][j], mul(f, a[c][j]))
    return RingElt(ring, det)


def _det_expand(m: Matrix) -> RingElt:
    """Laplace expansion along rows, memoised on the set of remaining columns."""
    rows = m.rows
    n = len(rows)
    ring = m.ring
    if n == 0:
        return ring.one()

    @lru_cache(maxsize=None)
    def sub(i: int, cols: int) -> RingElt:
        if i == n:
            return ring.one()
        total = ring.zero()
        sign = 1
        for j in range(n):
            if cols >> j & 1:
                a = rows[i][j]
                if a:
                    d = sub(i + 1, cols & ~(1 << j))
                    if d:
                        total = total + a * d if sign > 0 else total - a * d
                sign = -sign
        return total

    return sub(0, (1 << n) - 1)


def dot(u: Sequence[RingElt], v: Sequence[RingElt]) -> RingElt:
    if len(u) != len(v):
        raise ValueError("length mismatch")
    s = u[0] * v[0]
    for a, b in zip(u[1:], v[1:]):
        s = s + a * b
    return s
