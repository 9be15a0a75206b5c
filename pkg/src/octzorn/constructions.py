"""Suslin matrices, power-row witnesses on Q7 and the Mohan Kumar cover."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .census import CountReport
from .errors import DegreeNotThree, LengthMismatch, NotUnit, Unsupported
from .linalg import Matrix, dot
from .rings import (
    DEFAULT_BUDGET,
    Integers,
    PolynomialRing,
    PrimeField,
    QuotientRing,
    Ring,
    RingElt,
    is_prime,
    parse_poly,
    quadric_ring,
)
from .zorn import UnimodularRow

# -- Suslin matrices ----------------------------------------------------------------


@dataclass(frozen=True)
class SuslinMatrix:
    v: tuple[RingElt, ...]
    w: tuple[RingElt, ...]
    matrix: Matrix

    @property
    def size(self) -> int:
        return self.matrix.nrows

    def expected_det(self) -> RingElt:
        r = len(self.v)
        return dot(self.v, self.w) ** (2 ** (r - 2)) if r >= 2 else self.v[0]


def _suslin_rows(v: Sequence[RingElt], w: Sequence[RingElt]) -> list[list[RingElt]]:
    if len(v) == 1:
        return [[v[0]]]
    ring = v[0].ring
    a0, b0 = v[0], w[0]
    top = _suslin_rows(v[1:], w[1:])
    low = _suslin_rows(w[1:], v[1:])
    m = len(top)
    zero = ring.zero()
    rows = []
    for i in range(m):
        rows.append([a0 if j == i else zero for j in range(m)] + top[i])
    for i in range(m):
        rows.append([-low[j][i] for j in range(m)] + [b0 if j == i else zero for j in range(m)])
    return rows


def suslin_matrix(v: Sequence[RingElt], w: Sequence[RingElt]) -> SuslinMatrix:
    """``S(v, w)`` of size ``2^(r-1)`` with ``det S = (v . w)^(2^(r-2))``."""
    if len(v) != len(w) or not v:
        raise LengthMismatch(f"rows of lengths {len(v)} and {len(w)}")
    ring = v[0].ring
    v = tuple(ring(x) for x in v)
    w = tuple(ring(x) for x in w)
    return SuslinMatrix(v, w, Matrix(ring, _suslin_rows(v, w)))


def generic_suslin(r: int, base: Ring | None = None) -> SuslinMatrix:
    names = tuple(f"a{i}" for i in range(r)) + tuple(f"b{i}" for i in range(r))
    ring = PolynomialRing(base or Integers(), names)
    g = ring.gens()
    return suslin_matrix(g[:r], g[r:])


# -- unimodular power rows on Q7 ----------------------------------------------------------


def power_row_witness(n: int, A: QuotientRing | None = None) -> UnimodularRow:
    """``(x1^n, x2, x3, x4)`` with witness ``(y1^n, s y2, s y3, s y4)``.

    Here ``s = sum_{j<n} (x1 y1)^j``, so ``v . w = (x1 y1)^n + s (1 - x1 y1) = 1``.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    A = A or quadric_ring(7)
    x1, y1, x2, y2, x3, y3, x4, y4 = A.gens()
    s = sum(((x1 * y1) ** j for j in range(1, n)), A.one())
    return UnimodularRow((x1**n, x2, x3, x4), (y1**n, s * y2, s * y3, s * y4))


# -- Mohan Kumar polynomials ----------------------------------------------------------------

MK_VARS = ("x0", "x1", "x2", "x3", "x4")


def t_sequence(levels: int = 4) -> list[int]:
    return [(3**i - 1) // 2 for i in range(1, levels + 1)]


def _cubic_coeffs(f: RingElt) -> list[int]:
    """Coefficients ``c0..c3`` of a univariate cubic over F_q."""
    ring = f.ring
    if not isinstance(ring, PolynomialRing) or ring.nvars != 1 or not isinstance(ring.base, PrimeField):
        raise Unsupported("f must be a univariate polynomial over a prime field")
    if f.total_degree() != 3:
        raise DegreeNotThree(f"deg f = {f.total_degree()}")
    coeffs = [0] * 4
    for (e,), c in f.terms().items():
        coeffs[e] = c
    return coeffs


@dataclass
class MKSystem:
    f: RingElt
    a: RingElt
    t: list[int]
    F: list[RingElt]
    G: RingElt
    g_exponent: int
    coeffs: list[int] = field(repr=False)

    @property
    def q(self) -> int:
        return self.a.ring.p

    @property
    def degrees(self) -> list[int]:
        return [F.total_degree() for F in self.F]

    @property
    def homogeneous(self) -> list[bool]:
        return [F.is_homogeneous() for F in self.F]

    @property
    def flagged_exponent(self) -> bool:
        """True when ``G`` uses an exponent other than the recursion's ``3^3``."""
        return self.g_exponent != 27

    def evaluate(self, point: Sequence[int]) -> tuple[list[int], int]:
        """``F_1..F_L`` and ``G`` at an integer point, by the recursion on raw ints."""
        p = self.q
        c = self.coeffs
        a = self.a.val

        def F1(X, Y):
            return (c[0] * Y**3 + c[1] * X * Y * Y + c[2] * X * X * Y + c[3] * X**3) % p

        vals = [F1(point[0], point[1])]
        for i in range(1, len(self.F)):
            y = pow(a, self.t[i - 1], p) * pow(point[i + 1], 3**i, p) % p
            vals.append(F1(vals[-1], y))
        g = (vals[2] - pow(a, self.t[2], p) * pow(point[4], self.g_exponent, p)) % p
        return vals, g


def mk_polys(f, a=1, levels: int = 4, g_exponent: int = 27, q: int | None = None) -> MKSystem:
    """Build ``F_1 .. F_levels`` and ``G = F_3 - a^(t_3) x4^g_exponent``.

    ``f`` is a univariate cubic over F_q (a polynomial or its text together
    with ``q``); ``F_1(x0, x1) = x1^3 f(x0 / x1)`` and
    ``F_{i+1} = F_1(F_i, a^(t_i) x_{i+1}^(3^i))``.
    """
    if levels != 4:
        raise ValueError("the cover uses exactly four levels")
    if isinstance(f, str):
        if q is None:
            raise ValueError("q is required when f is given as text")
        f = parse_poly(f, PolynomialRing(PrimeField(q), ("x",)))
    c = _cubic_coeffs(f)
    if c[0] == 0:
        raise ValueError("f(0) must be nonzero")
    k = f.ring.base
    a = k(a)
    if not a.is_unit():
        raise NotUnit(f"a = {a} is not a unit in {k}")
    R = PolynomialRing(k, MK_VARS)
    x = R.gens()
    t = t_sequence(levels)

    def F1(X, Y):
        return c[0] * Y**3 + c[1] * X * Y**2 + c[2] * X**2 * Y + c[3] * X**3

    F = [F1(x[0], x[1])]
    for i in range(1, levels):
        F.append(F1(F[-1], R(a ** t[i - 1]) * x[i + 1] ** (3**i)))
    G = F[2] - R(a ** t[2]) * x[4] ** g_exponent
    return MKSystem(f, a, t, F, G, g_exponent, c)


def mk_cover_check(sys: MKSystem, q: int | None = None, *, budget: int = DEFAULT_BUDGET, samples: int = 64) -> CountReport:
    """Count points of F_q^5 with ``F_3 = G = 0`` but ``F_4 != 0`` (predicted: none).

    The enumeration uses the recursion on integers; the expanded polynomials
    are compared with it on ``samples`` evenly spaced points.
    """
    p = sys.q
    if q is not None and q != p:
        raise ValueError(f"q={q} does not match the field F{p}")
    from .errors import BudgetExceeded

    total = p**5
    if total > budget:
        raise BudgetExceeded(f"{p}^5 = {total} points exceeds the budget {budget}")
    f3_zero = g_zero = both = f4_zero = violations = 0
    stride = max(1, total // samples)
    mismatches = 0
    for idx in range(total):
        pt, n = [], idx
        for _ in range(5):
            n, d = divmod(n, p)
            pt.append(d)
        pt.reverse()
        vals, g = sys.evaluate(pt)
        if idx % stride == 0:
            expanded = [F.evaluate(pt) for F in sys.F] + [sys.G.evaluate(pt)]
            if [e % p for e in expanded] != vals + [g]:
                mismatches += 1
        z3, zg, z4 = vals[2] == 0, g == 0, vals[3] == 0
        f3_zero += z3
        g_zero += zg
        f4_zero += z4
        if z3 and zg:
            both += 1
            violations += not z4
    details = {
        "points": total,
        "F3_zero": f3_zero,
        "G_zero": g_zero,
        "F3_and_G_zero": both,
        "F4_zero": f4_zero,
        "g_exponent": sys.g_exponent,
        "expansion_mismatches": mismatches,
    }
    return CountReport("mk_cover", p, violations + mismatches, 0, details)


# -- irreducibility over F_q ----------------------------------------------------------------


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _polymod(a: list[int], g: list[int], p: int) -> list[int]:
    a = _trim([x % p for x in a])
    dg = len(g) - 1
    inv = pow(g[-1], -1, p)
    while len(a) - 1 >= dg:
        c = a[-1] * inv % p
        shift = len(a) - 1 - dg
        for i, gi in enumerate(g):
            a[shift + i] = (a[shift + i] - c * gi) % p
        _trim(a)
    return a


def _mulmod(a: list[int], b: list[int], g: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _polymod(out, g, p)


def _powmod(a: list[int], e: int, g: list[int], p: int) -> list[int]:
    result = [1]
    base = _polymod(a, g, p)
    while e:
        if e & 1:
            result = _mulmod(result, base, g, p)
        base = _mulmod(base, base, g, p)
        e >>= 1
    return result


def _gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim([x % p for x in a]), _trim([x % p for x in b])
    while b:
        a, b = b, _polymod(a, b, p)
    return a


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def irreducible_coeffs(g: Sequence[int], p: int) -> bool:
    """Irreducibility of ``sum g[i] x^i`` over F_p (coefficients low to high)."""
    g = _trim([x % p for x in g])
    d = len(g) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    # frob[k] = x^(p^k) mod g, computed by repeated p-th powers
    frob = [[0, 1]]
    for _ in range(d):
        frob.append(_powmod(frob[-1], p, g, p))
    x = _polymod([0, 1], g, p)
    if _trim(list(frob[d])) != x:
        return False
    for ell in _prime_factors(d):
        h = list(frob[d // ell]) + [0] * 2
        h[1] = (h[1] - 1) % p
        if len(_gcd(g, h, p)) != 1:
            return False
    return True


def irreducible_check(g: RingElt) -> bool:
    """Deterministic irreducibility of a univariate polynomial over F_q."""
    ring = g.ring
    if not isinstance(ring, PolynomialRing) or ring.nvars != 1 or not isinstance(ring.base, PrimeField):
        raise Unsupported("irreducible_check needs a univariate polynomial over a prime field")
    d = g.total_degree()
    if d > 128:
        raise Unsupported(f"degree {d} exceeds 128")
    coeffs = [0] * (d + 1)
    for (e,), c in g.terms().items():
        coeffs[e] = c
    return irreducible_coeffs(coeffs, ring.base.p)


def compose_power(f: RingElt, k: int) -> RingElt:
    """``f(x^k)``."""
    ring = f.ring
    return sum((ring.monomial((e * k,), c) for (e,), c in f.terms().items()), ring.zero())


def find_mk_cubic(primes: Sequence[int] = (2, 3, 5, 7, 11, 13), power: int = 27) -> tuple[int, RingElt] | None:
    """First ``(q, f)``: monic cubic with ``f(0) != 0`` and ``f(x^power)`` irreducible.

    Cubics are tried in lexicographic order of ``(c2, c1, c0)``.
    """
    for q in primes:
        if not is_prime(q):
            continue
        R = PolynomialRing(PrimeField(q), ("x",))
        for c2 in range(q):
            for c1 in range(q):
                for c0 in range(1, q):
                    coeffs = [c0, c1, c2, 1]
                    if not irreducible_coeffs(coeffs, q):
                        continue
                    big = [0] * (3 * power + 1)
                    for i, c in enumerate(coeffs):
                        big[i * power] = c
                    if irreducible_coeffs(big, q):
                        f = sum((R.monomial((i,), c) for i, c in enumerate(coeffs)), R.zero())
                        return q, f
    return None
