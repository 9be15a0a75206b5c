"""The split octonion algebra: pairs of 2x2 matrices over a ring.

Product ``(x, y)(z, w) = (xz + w y*, x* w + z y)``, norm
``det x - det y`` and unit ``(Id, 0)``, where ``x*`` is the adjugate of
``x``.  The fixed coordinate order of an octonion is
``m1.a, m1.b, m1.c, m1.d, m2.a, m2.b, m2.c, m2.d``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import CtxMismatch, NonUnitNorm
from .rings import Ring, RingElt, random_element


@dataclass(frozen=True)
class Mat2:
    """The matrix ``[[a, b], [c, d]]``."""

    a: RingElt
    b: RingElt
    c: RingElt
    d: RingElt

    def __post_init__(self):
        r = self.a.ring
        if any(x.ring != r for x in (self.b, self.c, self.d)):
            raise CtxMismatch("Mat2 entries must share one ring")

    @classmethod
    def of(cls, ring: Ring, rows: Sequence[Sequence]) -> "Mat2":
        (a, b), (c, d) = rows
        return cls(ring(a), ring(b), ring(c), ring(d))

    @classmethod
    def identity(cls, ring: Ring) -> "Mat2":
        return cls.of(ring, [[1, 0], [0, 1]])

    @classmethod
    def zero(cls, ring: Ring) -> "Mat2":
        return cls.of(ring, [[0, 0], [0, 0]])

    @property
    def ring(self) -> Ring:
        return self.a.ring

    def entries(self) -> tuple[RingElt, ...]:
        return (self.a, self.b, self.c, self.d)

    def rows(self) -> list[list[RingElt]]:
        return [[self.a, self.b], [self.c, self.d]]

    def __repr__(self):
        return f"[[{self.a}, {self.b}], [{self.c}, {self.d}]]"

    def __add__(self, o: "Mat2") -> "Mat2":
        return Mat2(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)

    def __sub__(self, o: "Mat2") -> "Mat2":
        return Mat2(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)

    def __neg__(self) -> "Mat2":
        return Mat2(-self.a, -self.b, -self.c, -self.d)

    def __mul__(self, o):
        if isinstance(o, Mat2):
            return Mat2(
                self.a * o.a + self.b * o.c,
                self.a * o.b + self.b * o.d,
                self.c * o.a + self.d * o.c,
                self.c * o.b + self.d * o.d,
            )
        return Mat2(self.a * o, self.b * o, self.c * o, self.d * o)

    __rmul__ = __mul__

    def det(self) -> RingElt:
        return self.a * self.d - self.b * self.c

    def trace(self) -> RingElt:
        return self.a + self.d

    def star(self) -> "Mat2":
        return mat2_star(self)


def mat2_star(m: Mat2) -> Mat2:
    """Adjugate ``[[d, -b], [-c, a]]``: ``m * star(m) = det(m) * Id``."""
    return Mat2(m.d, -m.b, -m.c, m.a)


@dataclass(frozen=True)
class SplitOct:
    m1: Mat2
    m2: Mat2

    def __post_init__(self):
        if self.m1.ring != self.m2.ring:
            raise CtxMismatch("both halves of a split octonion must share one ring")

    @property
    def ring(self) -> Ring:
        return self.m1.ring

    @classmethod
    def one(cls, ring: Ring) -> "SplitOct":
        return cls(Mat2.identity(ring), Mat2.zero(ring))

    @classmethod
    def zero(cls, ring: Ring) -> "SplitOct":
        return cls(Mat2.zero(ring), Mat2.zero(ring))

    @classmethod
    def of(cls, ring: Ring, m1, m2) -> "SplitOct":
        return cls(Mat2.of(ring, m1), Mat2.of(ring, m2))

    @classmethod
    def from_coords(cls, ring: Ring, coords: Sequence) -> "SplitOct":
        c = [ring(x) for x in coords]
        if len(c) != 8:
            raise ValueError("a split octonion has 8 coordinates")
        return cls(Mat2(*c[:4]), Mat2(*c[4:]))

    @classmethod
    def basis(cls, ring: Ring) -> list["SplitOct"]:
        return [cls.from_coords(ring, [int(i == j) for j in range(8)]) for i in range(8)]

    def coords(self) -> tuple[RingElt, ...]:
        return self.m1.entries() + self.m2.entries()

    def __repr__(self):
        return f"SplitOct({self.m1!r}, {self.m2!r})"

    def __add__(self, o: "SplitOct") -> "SplitOct":
        return SplitOct(self.m1 + o.m1, self.m2 + o.m2)

    def __sub__(self, o: "SplitOct") -> "SplitOct":
        return SplitOct(self.m1 - o.m1, self.m2 - o.m2)

    def __neg__(self) -> "SplitOct":
        return SplitOct(-self.m1, -self.m2)

    def scale(self, c) -> "SplitOct":
        c = self.ring(c)
        return SplitOct(self.m1 * c, self.m2 * c)

    def __mul__(self, o):
        if isinstance(o, SplitOct):
            return oct_mul(self, o)
        return self.scale(o)

    def __rmul__(self, c):
        return self.scale(c)

    def norm(self) -> RingElt:
        return oct_norm(self)

    def conj(self) -> "SplitOct":
        return oct_conj(self)

    def trace(self) -> RingElt:
        return oct_trace(self)

    def inverse(self) -> "SplitOct":
        return oct_inverse(self)


def oct_mul(u: SplitOct, v: SplitOct) -> SplitOct:
    if u.ring != v.ring:
        raise CtxMismatch(f"{u.ring} vs {v.ring}")
    x, y = u.m1, u.m2
    z, w = v.m1, v.m2
    return SplitOct(x * z + w * y.star(), x.star() * w + z * y)


def oct_norm(u: SplitOct) -> RingElt:
    return u.m1.det() - u.m2.det()


def oct_conj(u: SplitOct) -> SplitOct:
    return SplitOct(u.m1.star(), -u.m2)


def oct_trace(u: SplitOct) -> RingElt:
    return u.m1.trace()


def oct_bilinear(u: SplitOct, v: SplitOct) -> RingElt:
    """Polarisation ``N(u+v) - N(u) - N(v)``; ``oct_bilinear(u, 1) == oct_trace(u)``."""
    return oct_norm(u + v) - oct_norm(u) - oct_norm(v)


def oct_inverse(u: SplitOct) -> SplitOct:
    n = oct_norm(u)
    if not n.is_unit():
        raise NonUnitNorm(f"norm {n} is not a unit in {u.ring}")
    return oct_conj(u).scale(n.inverse())


def random_split_oct(ring: Ring, rng, **kw) -> SplitOct:
    return SplitOct.from_coords(ring, [random_element(ring, rng, **kw) for _ in range(8)])


def random_unit_norm(ring: Ring, rng, max_tries: int = 100000) -> SplitOct:
    """Rejection sampling of a norm-one octonion (the quadric ``Q_7`` locus)."""
    for _ in range(max_tries):
        u = random_split_oct(ring, rng)
        if oct_norm(u) == 1:
            return u
    raise RuntimeError("no unit-norm sample found")


def generic_split_octs(count: int = 2, base: Ring | None = None) -> list[SplitOct]:
    """``count`` octonions whose 8*count coordinates are independent indeterminates."""
    from .rings import Integers, PolynomialRing

    names = tuple(f"{chr(ord('u') + k)}{i}" for k in range(count) for i in range(8))
    ring = PolynomialRing(base or Integers(), names)
    g = ring.gens()
    return [SplitOct.from_coords(ring, g[8 * k : 8 * k + 8]) for k in range(count)]
