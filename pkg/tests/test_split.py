import random

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from octzorn.errors import CtxMismatch, NonUnitNorm
from octzorn.rings import Integers, PolynomialRing, PrimeField, Rationals
from octzorn.split import (
    Mat2,
    SplitOct,
    generic_split_octs,
    mat2_star,
    oct_bilinear,
    oct_conj,
    oct_inverse,
    oct_mul,
    oct_norm,
    oct_trace,
    random_split_oct,
)

Z, Q, F5 = Integers(), Rationals(), PrimeField(5)


def O(m1, m2, ring=Z):
    return SplitOct.of(ring, m1, m2)


ONE = SplitOct.one(Z)
J = O([[0, 0], [0, 0]], [[1, 0], [0, 1]])


def test_star_examples():
    assert mat2_star(Mat2.identity(Z)) == Mat2.identity(Z)
    assert mat2_star(Mat2.of(Z, [[0, 1], [-1, 0]])) == Mat2.of(Z, [[0, -1], [1, 0]])
    m = Mat2.of(Z, [[1, 2], [3, 4]])
    assert mat2_star(m) == Mat2.of(Z, [[4, -2], [-3, 1]])
    assert m * mat2_star(m) == Mat2.identity(Z) * Z(-2)


def test_product_examples():
    assert oct_mul(J, J) == ONE
    x = O([[1, 1], [0, 1]], [[0, 0], [0, 0]])
    z = O([[1, 0], [1, 1]], [[0, 0], [0, 0]])
    assert oct_mul(x, z) == O([[2, 1], [1, 1]], [[0, 0], [0, 0]])


def test_norm_examples():
    assert oct_norm(ONE) == 1
    assert oct_norm(J) == -1
    assert oct_norm(O([[1, 2], [3, 4]], [[0, 1], [1, 0]])) == -1


def test_conjugation_examples():
    assert oct_conj(ONE) == ONE
    assert oct_conj(J) == O([[0, 0], [0, 0]], [[-1, 0], [0, -1]])
    assert oct_conj(O([[1, 2], [3, 4]], [[0, 0], [0, 0]])) == O([[4, -2], [-3, 1]], [[0, 0], [0, 0]])


def test_trace_and_bilinear_examples():
    assert oct_trace(ONE) == 2 and oct_bilinear(ONE, ONE) == 2
    assert oct_trace(O([[0, 0], [0, 0]], [[5, 1], [2, 7]])) == 0
    assert oct_bilinear(ONE, J) == 0


def test_inverse_examples():
    assert oct_inverse(ONE) == ONE
    # N(J) = -1 and J * J = 1, so J is its own inverse
    assert oct_inverse(J) == J
    u = O([[1, 1], [0, 1]], [[0, 0], [0, 0]])
    assert oct_inverse(u) == O([[1, -1], [0, 1]], [[0, 0], [0, 0]])
    with pytest.raises(NonUnitNorm):
        oct_inverse(O([[2, 0], [0, 1]], [[0, 0], [0, 0]]))


def test_mixed_rings_rejected():
    with pytest.raises(CtxMismatch):
        oct_mul(ONE, SplitOct.one(F5))


def test_composition_identity_symbolic():
    u, v = generic_split_octs(2)
    assert (oct_norm(oct_mul(u, v)) - oct_norm(u) * oct_norm(v)).is_zero()


def test_composition_identity_against_sympy_expansion():
    # independent oracle: expand the same formulas with sympy matrices
    s = sympy.symbols("u0:8 v0:8")
    X, Y = sympy.Matrix(2, 2, s[0:4]), sympy.Matrix(2, 2, s[4:8])
    Zm, W = sympy.Matrix(2, 2, s[8:12]), sympy.Matrix(2, 2, s[12:16])
    adj = lambda m: m.adjugate()
    P1, P2 = X * Zm + W * adj(Y), adj(X) * W + Zm * Y
    N = lambda a, b: a.det() - b.det()
    assert sympy.expand(N(P1, P2) - N(X, Y) * N(Zm, W)) == 0
    u, v = generic_split_octs(2)
    ours = oct_mul(u, v)
    sym_coords = list(P1) + list(P2)
    names = [str(g) for g in u.ring.gens()]
    table = dict(zip(names, s))
    for mine, theirs in zip(ours.coords(), sym_coords):
        expr = sympy.Add(*[c * sympy.Mul(*[table[n] ** k for n, k in zip(names, e)]) for e, c in mine.terms().items()])
        assert sympy.expand(expr - theirs) == 0


def test_conjugate_is_polarised_trace_symbolically():
    (u,) = generic_split_octs(1)
    one = SplitOct.one(u.ring)
    assert oct_conj(u) == one.scale(oct_bilinear(u, one)) - u
    assert oct_mul(u, oct_conj(u)) == one.scale(oct_norm(u))
    assert oct_mul(oct_conj(u), u) == one.scale(oct_norm(u))
    assert oct_bilinear(u, one) == oct_trace(u)


@pytest.mark.parametrize("ring", [F5, Q], ids=str)
def test_alternative_laws(ring):
    rng = random.Random(11)
    for _ in range(500):
        x, y = random_split_oct(ring, rng), random_split_oct(ring, rng)
        xx = oct_mul(x, x)
        assert oct_mul(x, oct_mul(x, y)) == oct_mul(xx, y)
        assert oct_mul(oct_mul(y, x), x) == oct_mul(y, xx)


@pytest.mark.parametrize("ring", [F5, Q], ids=str)
def test_moufang_style_inverse_identities(ring):
    rng = random.Random(12)
    for _ in range(100):
        x, y = random_split_oct(ring, rng), random_split_oct(ring, rng)
        xv = oct_conj(x)
        assert oct_mul(x, oct_mul(xv, y)) == y.scale(oct_norm(x))
        assert oct_mul(oct_mul(y, x), xv) == y.scale(oct_norm(x))
        u, v = x, y
        assert oct_conj(oct_mul(u, v)) == oct_mul(oct_conj(v), oct_conj(u))


coords = st.lists(st.integers(-6, 6), min_size=8, max_size=8).map(lambda c: SplitOct.from_coords(Z, c))


@given(coords, coords)
def test_trace_identity_and_unit(u, v):
    one = SplitOct.one(Z)
    assert one.scale(oct_trace(u)) == u + oct_conj(u)
    assert oct_mul(one, u) == u == oct_mul(u, one)
    assert oct_norm(oct_mul(u, v)) == oct_norm(u) * oct_norm(v)


@given(coords)
def test_inverse_contract_when_norm_is_unit(u):
    if oct_norm(u).is_unit():
        inv = oct_inverse(u)
        assert oct_mul(u, inv) == SplitOct.one(Z) == oct_mul(inv, u)
    else:
        with pytest.raises(NonUnitNorm):
            oct_inverse(u)


def test_inverse_in_polynomial_ring_requires_unit_constant():
    R = PolynomialRing(Q, ("t",))
    t = R.gen("t")
    u = SplitOct(Mat2(t, R(0), R(0), R(1)), Mat2.zero(R))
    with pytest.raises(NonUnitNorm):
        oct_inverse(u)
    w = SplitOct(Mat2(R(2), t, R(0), R(1)), Mat2.zero(R))
    assert oct_mul(w, oct_inverse(w)) == SplitOct.one(R)
