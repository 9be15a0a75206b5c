"""Structure attached to the split octonions.

Covers the SL3 action on Zorn(R^3) and its fixed subalgebra C, the
Hermitian form on the perpendicular of C, derivation algebras computed as
exact nullspaces, the rank-7 trace-zero form, left multiplication by
unit-norm octonions, and the quadratic form on the second exterior power of
R^4.

Fixed orderings: octonions use the coordinate order of ``split``;
``Lambda^2 R^4`` uses ``e12, e13, e14, e23, e24, e34``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import DetNotOne, NonUnitNorm, NotFreeCase, Unsupported, UnsupportedCharacteristic
from .linalg import Matrix
from .rings import Integers, Rationals, Ring, RingElt
from .split import SplitOct, oct_bilinear, oct_mul, oct_norm
from .zorn import ZornAlgebra, ZornElt, zorn_to_split


def _characteristic(ring: Ring) -> int:
    return getattr(ring, "characteristic", 0)


def _require_char(ring: Ring, excluded: tuple[int, ...]) -> None:
    p = _characteristic(ring)
    if p in excluded:
        raise UnsupportedCharacteristic(f"characteristic {p} is not supported here")


def _require_field(ring: Ring) -> None:
    if not ring.is_field:
        raise Unsupported(f"a field is required, got {ring}")


# -- the long-root SL3 ----------------------------------------------------------------


@dataclass(frozen=True)
class SL3Elt:
    matrix: Matrix

    def __post_init__(self):
        m = self.matrix
        if m.shape != (3, 3):
            raise ValueError("SL3 elements are 3x3")
        if m.det() != 1:
            raise DetNotOne(f"det = {m.det()}")

    @classmethod
    def of(cls, ring: Ring, rows) -> "SL3Elt":
        return cls(Matrix(ring, rows))

    @property
    def ring(self) -> Ring:
        return self.matrix.ring

    def __matmul__(self, other: "SL3Elt") -> "SL3Elt":
        return SL3Elt(self.matrix @ other.matrix)

    def inverse_transpose(self) -> Matrix:
        # det = 1, so the inverse is the adjugate
        return self.matrix.adjugate().T


def _as_sl3(g) -> SL3Elt:
    return g if isinstance(g, SL3Elt) else SL3Elt(g)


def phi_action(g, u: ZornElt) -> ZornElt:
    """``(a1, x+, x-, a2) -> (a1, g x+, g^-T x-, a2)`` on ``Zorn(R^3)``."""
    g = _as_sl3(g)
    if len(u.xplus) == 4 and (u.xplus[3] or u.xminus[3]):
        raise NotFreeCase("phi_action needs a free-case Zorn element")
    zero = u.ring.zero()
    xp = g.matrix.apply(u.xplus[:3]) + (zero,) * (len(u.xplus) - 3)
    xm = g.inverse_transpose().apply(u.xminus[:3]) + (zero,) * (len(u.xminus) - 3)
    return ZornElt(u.a1, xp, xm, u.a2)


def random_sl3(ring: Ring, rng, bound: int = 4) -> SL3Elt:
    """Random product of elementary matrices, hence determinant 1 over any ring."""
    m = Matrix.identity(ring, 3)
    for _ in range(6):
        i, j = rng.sample(range(3), 2)
        rows = [[int(a == b) for b in range(3)] for a in range(3)]
        rows[i][j] = rng.randint(-bound, bound)
        m = m @ Matrix(ring, rows)
    return SL3Elt(m)


def random_sl(ring: Ring, n: int, rng, bound: int = 4, steps: int = 12) -> Matrix:
    m = Matrix.identity(ring, n)
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        rows = [[int(a == b) for b in range(n)] for a in range(n)]
        rows[i][j] = rng.randint(-bound, bound)
        m = m @ Matrix(ring, rows)
    return m


# -- C and its perpendicular ----------------------------------------------------------


@dataclass(frozen=True)
class CElt:
    """``(a1, a2)`` in ``C = R + R``, the diagonal of the Zorn matrices."""

    a1: RingElt
    a2: RingElt

    @classmethod
    def of(cls, ring: Ring, a1, a2) -> "CElt":
        return cls(ring(a1), ring(a2))

    def __add__(self, o: "CElt") -> "CElt":
        return CElt(self.a1 + o.a1, self.a2 + o.a2)

    def __mul__(self, o: "CElt") -> "CElt":
        return CElt(self.a1 * o.a1, self.a2 * o.a2)

    def conj(self) -> "CElt":
        return CElt(self.a2, self.a1)

    def as_zorn(self, A: ZornAlgebra) -> ZornElt:
        return A.element(self.a1, [0, 0, 0], [0, 0, 0], self.a2)

    def __repr__(self):
        return f"CElt({self.a1}, {self.a2})"


@dataclass
class CPerp:
    """Basis of ``C^perp`` with its identification ``C^perp = C^3``.

    The coordinate ``z_i = (x+_i, x-_i)``; ``action[c][k]`` lists the
    coordinates of ``c . basis[k]`` for the idempotents ``c`` of ``C``.
    """

    algebra: ZornAlgebra
    labels: list[str]
    basis: list[ZornElt]
    action: dict[str, list[tuple[RingElt, ...]]]

    def to_c3(self, u: ZornElt) -> tuple[CElt, CElt, CElt]:
        return tuple(CElt(u.xplus[i], u.xminus[i]) for i in range(3))

    def from_c3(self, z) -> ZornElt:
        return self.algebra.element(0, [c.a1 for c in z], [c.a2 for c in z], 0)


def _coords_in_perp(u: ZornElt) -> tuple[RingElt, ...]:
    return tuple(u.xplus[:3]) + tuple(u.xminus[:3])


def c_perp_basis(ring: Ring) -> CPerp:
    """Compute ``{x : Tr(x conj(z)) = 0 for z in C}`` as a kernel and match it to C^3.

    Over Z the kernel is taken over Q and the standard basis checked to be
    integral and spanning.
    """
    _require_char(ring, (2,))
    if isinstance(ring, Integers):
        kring = Rationals()
    else:
        _require_field(ring)
        kring = ring
    K = ZornAlgebra.free(kring)
    zb = K.basis()
    cs = [K.element(1, [0] * 3, [0] * 3, 0), K.element(0, [0] * 3, [0] * 3, 1)]
    system = Matrix(kring, [[K.trace(K.mul(b, K.conj(c))) for _, b in zb] for c in cs])
    kernel = system.nullspace()
    std = [lab for lab, _ in zb if lab[0] in "pq"]
    std_vecs = [[int(lab == s) for lab, _ in zb] for s in std]
    # the standard basis spans the same space iff stacking does not raise the rank
    if len(kernel) != 6 or Matrix(kring, list(kernel) + std_vecs).rank() != 6:
        raise ArithmeticError("perpendicular of C does not match the standard basis")
    A = ZornAlgebra.free(ring)
    basis = [b for lab, b in A.basis() if lab in std]
    idem = {"e1": CElt.of(ring, 1, 0).as_zorn(A), "e2": CElt.of(ring, 0, 1).as_zorn(A)}
    action = {name: [_coords_in_perp(A.mul(c, b)) for b in basis] for name, c in idem.items()}
    return CPerp(A, std, basis, action)


def hermitian(z, w) -> CElt:
    """``sum z_i conj(w_i)`` with componentwise product on ``C``."""
    if len(z) != len(w):
        raise ValueError("length mismatch")
    terms = [zi * wi.conj() for zi, wi in zip(z, w)]
    out = terms[0]
    for t in terms[1:]:
        out = out + t
    return out


# -- derivations --------------------------------------------------------------------


@dataclass
class DerivationReport:
    ring: Ring
    constraint: str
    dimension: int
    basis: list[Matrix]


def _structure_constants(ring: Ring) -> list[list[tuple]]:
    b = SplitOct.basis(ring)
    return [[tuple(x.val for x in oct_mul(bi, bj).coords()) for bj in b] for bi in b]


def _derivation_system(ring: Ring, constraint: str) -> list[list]:
    c = _structure_constants(ring)
    add, neg = ring._add, ring._neg
    zero = ring._coerce(0)
    rows = []
    for i in range(8):
        for j in range(8):
            for l in range(8):
                row = [zero] * 64
                # unknown D[l][k] sits at l * 8 + k; D(b_k) = sum_l D[l][k] b_l
                for k in range(8):
                    if c[i][j][k] != 0:
                        row[l * 8 + k] = add(row[l * 8 + k], c[i][j][k])
                for m in range(8):
                    if c[m][j][l] != 0:
                        row[m * 8 + i] = add(row[m * 8 + i], neg(c[m][j][l]))
                    if c[i][m][l] != 0:
                        row[m * 8 + j] = add(row[m * 8 + j], neg(c[i][m][l]))
                rows.append(row)
    if constraint == "fix_C":
        # C is spanned by (E11, 0) and (E22, 0): coordinates 0 and 3
        for k in (0, 3):
            for l in range(8):
                row = [zero] * 64
                row[l * 8 + k] = ring._coerce(1)
                rows.append(row)
    return [[RingElt(ring, x) for x in r] for r in rows]


def derivation_basis(ring: Ring, constraint: str = "none") -> DerivationReport:
    """Exact nullspace of the Leibniz system on the 8-element octonion basis."""
    if constraint not in ("none", "fix_C"):
        raise ValueError(f"unknown constraint {constraint!r}")
    _require_field(ring)
    _require_char(ring, (2, 3))
    system = Matrix(ring, _derivation_system(ring, constraint))
    null = system.nullspace()
    basis = [Matrix(ring, [v[8 * l : 8 * l + 8] for l in range(8)]) for v in null]
    return DerivationReport(ring, constraint, len(basis), basis)


def is_derivation(D: Matrix) -> bool:
    ring = D.ring
    b = SplitOct.basis(ring)

    def apply(u: SplitOct) -> SplitOct:
        return SplitOct.from_coords(ring, D.apply(u.coords()))

    return all(
        apply(oct_mul(x, y)) == oct_mul(apply(x), y) + oct_mul(x, apply(y)) for x in b for y in b
    )


def _span_rank(ms: list[Matrix]) -> int:
    if not ms:
        return 0
    ring = ms[0].ring
    return Matrix(ring, [[x for r in m.rows for x in r] for m in ms]).rank()


def commutators_closed(report: DerivationReport) -> bool:
    """Every bracket of basis elements lies in the span (rank does not grow)."""
    base = report.basis
    r = _span_rank(base)
    for i, d1 in enumerate(base):
        for d2 in base[i + 1 :]:
            if _span_rank(base + [d1 @ d2 - d2 @ d1]) != r:
                return False
    return True


def _zorn_to_split_matrix(ring: Ring) -> Matrix:
    A = ZornAlgebra.free(ring)
    return Matrix.from_columns(ring, [zorn_to_split(b).coords() for _, b in A.basis()])


def phi_linearization(X: Matrix) -> Matrix:
    """Derivative of ``Phi`` at the identity along ``X`` in sl3, in octonion coordinates.

    On Zorn coordinates it is ``(a1, x+, x-, a2) -> (0, X x+, -X^T x-, 0)``.
    """
    ring = X.ring
    rows = [[0] * 8 for _ in range(8)]
    for i in range(3):
        for j in range(3):
            rows[1 + i][1 + j] = X[i, j]
            rows[4 + i][4 + j] = -X[j, i]
    dz = Matrix(ring, rows)
    psi = _zorn_to_split_matrix(ring)
    return psi @ dz @ psi.inverse()


def sl3_basis(ring: Ring) -> list[Matrix]:
    out = []
    for i in range(3):
        for j in range(3):
            if i != j:
                out.append(Matrix(ring, [[int((a, b) == (i, j)) for b in range(3)] for a in range(3)]))
    for i in range(2):
        out.append(Matrix(ring, [[int(a == b == i) - int(a == b == i + 1) for b in range(3)] for a in range(3)]))
    return out


def phi_linearization_contained(report: DerivationReport) -> bool:
    """The image of ``dPhi`` on sl3 sits inside the reported derivation space."""
    r = _span_rank(report.basis)
    lin = [phi_linearization(X) for X in sl3_basis(report.ring)]
    return _span_rank(report.basis + lin) == r


# -- quadratic forms ----------------------------------------------------------------


@dataclass
class QuadraticSpace:
    ring: Ring
    labels: list[str]
    gram: Matrix
    isotropic: list[int]
    dual: list[int]

    @property
    def rank(self) -> int:
        return self.gram.nrows

    @property
    def determinant(self) -> RingElt:
        return self.gram.det()

    def value(self, vec) -> RingElt:
        """``q(v) = b(v, v) / 2`` computed as sum of diagonal halves plus cross terms."""
        v = [self.ring(x) for x in vec]
        g = self.gram
        total = self.ring.zero()
        for i in range(self.rank):
            for j in range(i + 1, self.rank):
                total = total + g[i, j] * v[i] * v[j]
        half = self.ring(2).inverse()
        for i in range(self.rank):
            total = total + g[i, i] * half * v[i] * v[i]
        return total

    def block_is_zero(self, idx: list[int]) -> bool:
        return all(self.gram[i, j].is_zero() for i in idx for j in idx)

    def hyperbolic_pairing(self) -> Matrix:
        return Matrix(self.ring, [[self.gram[i, j] for j in self.dual] for i in self.isotropic])


def trace_zero_form(ring: Ring) -> QuadraticSpace:
    """Polarised norm on ``{Tr = 0}`` in the Zorn basis ``p1..p3, q1..q3, h``."""
    _require_field(ring)
    _require_char(ring, (2,))
    A = ZornAlgebra.free(ring)
    basis = [b for lab, b in A.basis() if lab[0] in "pq"]
    basis.append(A.element(1, [0] * 3, [0] * 3, -1))
    labels = ["p1", "p2", "p3", "q1", "q2", "q3", "h"]
    gram = Matrix(ring, [[A.bilinear(x, y) for y in basis] for x in basis])
    return QuadraticSpace(ring, labels, gram, isotropic=[0, 1, 2], dual=[3, 4, 5])


def norm_gram(ring: Ring) -> Matrix:
    """Gram matrix of the polarised norm in octonion coordinates."""
    b = SplitOct.basis(ring)
    return Matrix(ring, [[oct_bilinear(x, y) for y in b] for x in b])


def mult_matrix(x: SplitOct) -> Matrix:
    """Matrix of ``y -> x y`` for any ``x``; ``L^T G L = N(x) G``."""
    ring = x.ring
    return Matrix.from_columns(ring, [oct_mul(x, b).coords() for b in SplitOct.basis(ring)])


def left_mult_matrix(x: SplitOct) -> Matrix:
    """Matrix of ``y -> x y`` for a unit-norm ``x``: an element of SO(N)."""
    if oct_norm(x) != 1:
        raise NonUnitNorm(f"N(x) = {oct_norm(x)}, expected 1")
    return mult_matrix(x)


def preserves_gram(L: Matrix, G: Matrix) -> bool:
    return L.T @ G @ L == G


# -- second exterior power of R^4 -------------------------------------------------------

LAMBDA2_BASIS = tuple(combinations(range(4), 2))


def _lambda2(g: Matrix) -> Matrix:
    def minor(rows, cols):
        (k, l), (i, j) = rows, cols
        return g[k, i] * g[l, j] - g[k, j] * g[l, i]

    return Matrix(g.ring, [[minor(r, c) for c in LAMBDA2_BASIS] for r in LAMBDA2_BASIS])


def lambda2_action(g: Matrix) -> Matrix:
    """``Lambda^2 g`` in the basis ``e12, e13, e14, e23, e24, e34``."""
    if g.shape != (4, 4):
        raise ValueError("expected a 4x4 matrix")
    _require_char(g.ring, (2,))
    if g.det() != 1:
        raise DetNotOne(f"det = {g.det()}")
    return _lambda2(g)


def half_spin_form(w) -> RingElt:
    """``q(w) = w12 w34 - w13 w24 + w14 w23``, i.e. ``w ^ w = 2 q(w) e1234``."""
    w12, w13, w14, w23, w24, w34 = w
    return w12 * w34 - w13 * w24 + w14 * w23


def half_spin_gram(ring: Ring) -> Matrix:
    rows = [[0] * 6 for _ in range(6)]
    for i, j, s in ((0, 5, 1), (1, 4, -1), (2, 3, 1)):
        rows[i][j] = rows[j][i] = s
    return Matrix(ring, rows)


def lambda2_split_basis(ring: Ring) -> Matrix:
    """Columns ``e14, e24, e34, e23, -e13, e12``: the 3 + 3 splitting for ``diag(h, 1)``."""
    cols = [(2, 1), (4, 1), (5, 1), (3, 1), (1, -1), (0, 1)]
    return Matrix.from_columns(ring, [[s * int(k == idx) for k in range(6)] for idx, s in cols])


def lambda2_block_form(h: Matrix) -> Matrix:
    """``Lambda^2 diag(h, 1)`` in the split basis; equals ``diag(h, cof(h))``.

    Works for any 3x3 ``h`` (no determinant condition), so it can be checked
    on a generic matrix of indeterminates.
    """
    ring = h.ring
    g = Matrix(ring, [list(h.rows[i]) + [0] for i in range(3)] + [[0, 0, 0, 1]])
    T = lambda2_split_basis(ring)
    # T is a signed permutation, so T^-1 = T^T
    return T.T @ _lambda2(g) @ T


def cofactor(h: Matrix) -> Matrix:
    return h.adjugate().T


def block_diag(a: Matrix, b: Matrix) -> Matrix:
    n, m = a.nrows, b.nrows
    rows = [list(a.rows[i]) + [0] * m for i in range(n)]
    rows += [[0] * n + list(b.rows[i]) for i in range(m)]
    return Matrix(a.ring, rows)


__all__ = [
    "CElt",
    "CPerp",
    "DerivationReport",
    "LAMBDA2_BASIS",
    "QuadraticSpace",
    "SL3Elt",
    "block_diag",
    "c_perp_basis",
    "cofactor",
    "commutators_closed",
    "derivation_basis",
    "half_spin_form",
    "half_spin_gram",
    "hermitian",
    "is_derivation",
    "lambda2_action",
    "lambda2_block_form",
    "lambda2_split_basis",
    "left_mult_matrix",
    "mult_matrix",
    "norm_gram",
    "phi_action",
    "phi_linearization",
    "phi_linearization_contained",
    "preserves_gram",
    "random_sl",
    "random_sl3",
    "sl3_basis",
    "trace_zero_form",
]
