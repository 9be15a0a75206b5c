"""Zorn vector-matrix algebras of oriented rank-3 projective modules.

A unimodular row ``v`` of length 4 with witness ``w`` (``v . w = 1``)
presents the rank-3 projective module ``P = ker(v^T) = im(e)`` with
``e = Id - w v^T``.  Its dual is realised inside ``(R^4)*`` as the
covectors killing ``w`` (``= im(e^T)``), so evaluation is the ambient dot
product.  Orientation: ``phi(p1^p2^p3) = det[p1 p2 p3 w]`` and the dual
``phi*(a1^a2^a3) = det(rows a1, a2, a3, v)``.

The free module ``R^3`` is the case ``v = w = (0, 0, 0, 1)``; vectors keep
four ambient coordinates with the last one zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import CtxMismatch, NotFreeCase, NotInModule, RowNotUnimodular
from .linalg import Matrix, dot
from .rings import Integers, PolynomialRing, Ring, RingElt, random_element
from .split import SplitOct, oct_mul, oct_norm

Vec = tuple[RingElt, ...]


@dataclass(frozen=True)
class UnimodularRow:
    v: Vec
    w: Vec

    def __post_init__(self):
        if len(self.v) != len(self.w) or not self.v:
            raise RowNotUnimodular("row and witness must be nonempty and of equal length")
        ring = self.v[0].ring
        v = tuple(ring(x) for x in self.v)
        w = tuple(ring(x) for x in self.w)
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "w", w)
        if dot(v, w) != 1:
            raise RowNotUnimodular(f"v . w = {dot(v, w)}, expected 1")

    @classmethod
    def of(cls, ring: Ring, v: Sequence, w: Sequence) -> "UnimodularRow":
        return cls(tuple(ring(x) for x in v), tuple(ring(x) for x in w))

    @property
    def ring(self) -> Ring:
        return self.v[0].ring

    def __len__(self):
        return len(self.v)


def _det3(x: Vec, y: Vec, z: Vec) -> RingElt:
    """Determinant of the 3x3 matrix with columns x, y, z."""
    return (
        x[0] * (y[1] * z[2] - y[2] * z[1])
        - y[0] * (x[1] * z[2] - x[2] * z[1])
        + z[0] * (x[1] * y[2] - x[2] * y[1])
    )


def wedge3(a: Vec, b: Vec, c: Vec) -> Vec:
    """The covector ``r -> det[a b r c]`` in ambient coordinates (length 4)."""
    out = []
    for k in range(4):
        keep = [i for i in range(4) if i != k]
        m = _det3([a[i] for i in keep], [b[i] for i in keep], [c[i] for i in keep])
        out.append(m if k % 2 == 0 else -m)
    return tuple(out)


@dataclass(frozen=True)
class OrientedRank3Module:
    row: UnimodularRow
    e: Matrix = field(repr=False)
    free: bool = False

    @property
    def ring(self) -> Ring:
        return self.row.ring

    @property
    def v(self) -> Vec:
        return self.row.v

    @property
    def w(self) -> Vec:
        return self.row.w

    @classmethod
    def standard(cls, ring: Ring) -> "OrientedRank3Module":
        """``R^3`` with its standard orientation."""
        return module_from_row(UnimodularRow.of(ring, (0, 0, 0, 1), (0, 0, 0, 1)))

    def contains_vector(self, p: Vec) -> bool:
        return len(p) == 4 and dot(self.v, p) == 0

    def contains_covector(self, a: Vec) -> bool:
        return len(a) == 4 and dot(a, self.w) == 0

    def project(self, x: Sequence) -> Vec:
        return self.e.apply(x)

    def project_dual(self, a: Sequence) -> Vec:
        return self.e.T.apply(a)

    def orientation(self, p1: Vec, p2: Vec, p3: Vec) -> RingElt:
        return Matrix.from_columns(self.ring, [p1, p2, p3, self.w]).det()

    def dual_orientation(self, a1: Vec, a2: Vec, a3: Vec) -> RingElt:
        return Matrix(self.ring, [a1, a2, a3, self.v]).det()

    def vector_generators(self) -> list[Vec]:
        if self.free:
            return [self.e.column(j) for j in range(3)]
        return [self.e.column(j) for j in range(4)]

    def covector_generators(self) -> list[Vec]:
        et = self.e.T
        if self.free:
            return [et.column(j) for j in range(3)]
        return [et.column(j) for j in range(4)]

    def is_idempotent(self) -> bool:
        return self.e @ self.e == self.e


def module_from_row(row: UnimodularRow) -> OrientedRank3Module:
    """The oriented rank-3 module ``ker(v^T)`` inside ``R^4``."""
    if len(row) != 4:
        raise RowNotUnimodular(f"rows of length 4 are required, got {len(row)}")
    ring = row.ring
    e = Matrix(
        ring,
        [[int(i == j) - row.w[i] * row.v[j] for j in range(4)] for i in range(4)],
    )
    unit = tuple(ring(int(i == 3)) for i in range(4))
    return OrientedRank3Module(row, e, free=(row.v == unit and row.w == unit))


def cross(P: OrientedRank3Module, p: Vec, q: Vec) -> Vec:
    """``p x q`` in ``P*``: the covector ``r -> det[p q r w]``."""
    if not (P.contains_vector(p) and P.contains_vector(q)):
        raise NotInModule("cross product arguments must lie in P")
    return wedge3(p, q, P.w)


def cross_dual(P: OrientedRank3Module, a: Vec, b: Vec) -> Vec:
    """``a x b`` in ``P``: the vector ``g -> det(rows a, b, g, v)``."""
    if not (P.contains_covector(a) and P.contains_covector(b)):
        raise NotInModule("dual cross product arguments must lie in P*")
    return wedge3(a, b, P.v)


@dataclass(frozen=True)
class ZornElt:
    a1: RingElt
    xplus: Vec
    xminus: Vec
    a2: RingElt

    @property
    def ring(self) -> Ring:
        return self.a1.ring

    def __add__(self, o: "ZornElt") -> "ZornElt":
        return ZornElt(
            self.a1 + o.a1,
            tuple(x + y for x, y in zip(self.xplus, o.xplus)),
            tuple(x + y for x, y in zip(self.xminus, o.xminus)),
            self.a2 + o.a2,
        )

    def __neg__(self) -> "ZornElt":
        return ZornElt(-self.a1, tuple(-x for x in self.xplus), tuple(-x for x in self.xminus), -self.a2)

    def __sub__(self, o: "ZornElt") -> "ZornElt":
        return self + (-o)

    def scale(self, c) -> "ZornElt":
        c = self.ring(c)
        return ZornElt(c * self.a1, tuple(c * x for x in self.xplus), tuple(c * x for x in self.xminus), c * self.a2)

    def coords(self) -> Vec:
        return (self.a1,) + self.xplus + self.xminus + (self.a2,)

    def __repr__(self):
        xp = ", ".join(map(str, self.xplus))
        xm = ", ".join(map(str, self.xminus))
        return f"ZornElt({self.a1}; [{xp}]; [{xm}]; {self.a2})"


def _vadd(*vs: Vec) -> Vec:
    return tuple(sum(parts[1:], parts[0]) for parts in zip(*vs))


def _vscale(c: RingElt, v: Vec) -> Vec:
    return tuple(c * x for x in v)


@dataclass(frozen=True)
class ZornAlgebra:
    module: OrientedRank3Module

    @classmethod
    def free(cls, ring: Ring) -> "ZornAlgebra":
        return cls(OrientedRank3Module.standard(ring))

    @classmethod
    def from_row(cls, row: UnimodularRow) -> "ZornAlgebra":
        return cls(module_from_row(row))

    @property
    def ring(self) -> Ring:
        return self.module.ring

    @property
    def is_free(self) -> bool:
        return self.module.free

    def _vec(self, x: Sequence) -> Vec:
        x = [self.ring(c) for c in x]
        if self.is_free and len(x) == 3:
            x.append(self.ring.zero())
        if len(x) != 4:
            raise NotInModule("vectors need 4 ambient coordinates (3 in the free case)")
        return tuple(x)

    def element(self, a1, xplus: Sequence, xminus: Sequence, a2) -> ZornElt:
        u = ZornElt(self.ring(a1), self._vec(xplus), self._vec(xminus), self.ring(a2))
        self.check(u)
        return u

    def one(self) -> ZornElt:
        return self.element(1, [0] * 4, [0] * 4, 1)

    def zero(self) -> ZornElt:
        return self.element(0, [0] * 4, [0] * 4, 0)

    def contains(self, u: ZornElt) -> bool:
        return (
            u.ring == self.ring
            and self.module.contains_vector(u.xplus)
            and self.module.contains_covector(u.xminus)
        )

    def check(self, u: ZornElt) -> None:
        if u.ring != self.ring:
            raise CtxMismatch(f"{u.ring} vs {self.ring}")
        if not self.contains(u):
            raise NotInModule(f"{u} violates the projection constraints")

    def mul(self, u: ZornElt, v: ZornElt) -> ZornElt:
        return zorn_mul(self, u, v)

    def norm(self, u: ZornElt) -> RingElt:
        return zorn_norm(self, u)

    def trace(self, u: ZornElt) -> RingElt:
        return zorn_trace(self, u)

    def conj(self, u: ZornElt) -> ZornElt:
        return self.one().scale(zorn_trace(self, u)) - u

    def bilinear(self, u: ZornElt, v: ZornElt) -> RingElt:
        return zorn_norm(self, u + v) - zorn_norm(self, u) - zorn_norm(self, v)

    def basis(self) -> list[tuple[str, ZornElt]]:
        """Labelled basis ``a1, p1..p3, q1..q3, a2`` of ``Zorn(R^3)``."""
        if not self.is_free:
            raise NotFreeCase("only the free Zorn algebra has a standard basis")
        z = [0, 0, 0]
        out = [("a1", self.element(1, z, z, 0))]
        for i in range(3):
            out.append((f"p{i + 1}", self.element(0, [int(i == j) for j in range(3)], z, 0)))
        for i in range(3):
            out.append((f"q{i + 1}", self.element(0, z, [int(i == j) for j in range(3)], 0)))
        out.append(("a2", self.element(0, z, z, 1)))
        return out

    def random_element(self, rng, **kw) -> ZornElt:
        r = self.ring
        xp = self.module.project([random_element(r, rng, **kw) for _ in range(4)])
        xm = self.module.project_dual([random_element(r, rng, **kw) for _ in range(4)])
        return ZornElt(random_element(r, rng, **kw), xp, xm, random_element(r, rng, **kw))


def zorn_mul(A: ZornAlgebra, u: ZornElt, v: ZornElt) -> ZornElt:
    A.check(u)
    A.check(v)
    P = A.module
    a1, xp, xm, a2 = u.a1, u.xplus, u.xminus, u.a2
    b1, yp, ym, b2 = v.a1, v.xplus, v.xminus, v.a2
    return ZornElt(
        a1 * b1 - dot(xp, ym),
        _vadd(_vscale(a1, yp), _vscale(b2, xp), wedge3(xm, ym, P.v)),
        _vadd(_vscale(b1, xm), _vscale(a2, ym), wedge3(xp, yp, P.w)),
        a2 * b2 - dot(xm, yp),
    )


def zorn_norm(A: ZornAlgebra, u: ZornElt) -> RingElt:
    return u.a1 * u.a2 + dot(u.xminus, u.xplus)


def zorn_trace(A: ZornAlgebra, u: ZornElt) -> RingElt:
    return u.a1 + u.a2


def generic_zorn_pair(base: Ring | None = None) -> tuple[ZornAlgebra, ZornElt, ZornElt]:
    """Two elements of ``Zorn(R^3)`` with 16 independent indeterminate coordinates."""
    names = ["a1", "a2", "b1", "b2"]
    names += [f"x{i}" for i in range(1, 4)] + [f"xi{i}" for i in range(1, 4)]
    names += [f"y{i}" for i in range(1, 4)] + [f"eta{i}" for i in range(1, 4)]
    ring = PolynomialRing(base or Integers(), tuple(names))
    g = dict(zip(names, ring.gens()))
    A = ZornAlgebra.free(ring)
    u = A.element(g["a1"], [g[f"x{i}"] for i in (1, 2, 3)], [g[f"xi{i}"] for i in (1, 2, 3)], g["a2"])
    v = A.element(g["b1"], [g[f"y{i}"] for i in (1, 2, 3)], [g[f"eta{i}"] for i in (1, 2, 3)], g["b2"])
    return A, u, v


# -- the free case is the split octonion algebra ----------------------------------


def zorn_to_split(u: ZornElt) -> SplitOct:
    """The algebra isomorphism ``Zorn(R^3) -> split octonions``.

    Derived from the Peirce decomposition for the idempotent ``(E11, 0)``:
    ``p1, p2, p3 -> (E12, 0), (0, E21), (0, E22)`` and
    ``q1, q2, q3 -> -(E21, 0), (0, E12), -(0, E11)``; the diagonal goes to
    the diagonal of the first matrix.
    """
    x1, x2, x3 = u.xplus[:3]
    y1, y2, y3 = u.xminus[:3]
    ring = u.ring
    return SplitOct.of(ring, [[u.a1, x1], [-y1, u.a2]], [[-y3, y2], [x2, x3]])


@dataclass
class IsoReport:
    table: list[tuple[str, SplitOct]]
    checked_pairs: int
    failures: list[tuple[str, str]]
    unit_preserved: bool
    norm_preserved: bool
    bijective: bool

    @property
    def ok(self) -> bool:
        return not self.failures and self.unit_preserved and self.norm_preserved and self.bijective


def zorn_to_split_iso(A: ZornAlgebra) -> IsoReport:
    """Check the correspondence table on all 64 basis products, the unit and the norm."""
    if not A.is_free:
        raise NotFreeCase("the split correspondence is defined for Zorn(R^3) only")
    basis = A.basis()
    table = [(label, zorn_to_split(b)) for label, b in basis]
    failures = []
    for (li, bi), (_, si) in zip(basis, table):
        for (lj, bj), (_, sj) in zip(basis, table):
            if zorn_to_split(zorn_mul(A, bi, bj)) != oct_mul(si, sj):
                failures.append((li, lj))
    unit_ok = zorn_to_split(A.one()) == SplitOct.one(A.ring)
    _, u, _ = generic_zorn_pair()
    gA = ZornAlgebra.free(u.ring)
    norm_ok = oct_norm(zorn_to_split(u)) == zorn_norm(gA, u)
    m = Matrix(A.ring, [s.coords() for _, s in table])
    return IsoReport(
        table=table,
        checked_pairs=len(basis) ** 2,
        failures=failures,
        unit_preserved=unit_ok,
        norm_preserved=norm_ok,
        bijective=m.det().is_unit(),
    )


# -- hyperbolicity -----------------------------------------------------------------


@dataclass
class LagrangianReport:
    generators: list[ZornElt]
    norms_vanish: bool
    pairings_vanish: bool
    rank: RingElt

    @property
    def ok(self) -> bool:
        return self.norms_vanish and self.pairings_vanish and self.rank == 4


def lagrangian(A: ZornAlgebra) -> LagrangianReport:
    """The isotropic summand ``{(0, x+, 0, a2)}`` of the norm form.

    Its generators are the columns of ``e`` (spanning ``P``) and ``(0,0,0,1)``.
    Since the norm is quadratic, ``N`` vanishes on every combination exactly
    when it vanishes on each generator and every pairwise polarisation does.
    The rank is ``trace(e) + 1``; the complement ``{(a1, 0, x-, 0)}`` makes it
    a direct summand.
    """
    z4 = [0] * 4
    gens = [A.element(0, p, z4, 0) for p in A.module.vector_generators()]
    gens.append(A.element(0, z4, z4, 1))
    norms = all(zorn_norm(A, g).is_zero() for g in gens)
    pairs = all(
        A.bilinear(g, h).is_zero() for i, g in enumerate(gens) for h in gens[i + 1 :]
    )
    return LagrangianReport(gens, norms, pairs, A.module.e.trace() + 1)
