import pytest
import sympy

from octzorn.constructions import (
    compose_power,
    find_mk_cubic,
    generic_suslin,
    irreducible_check,
    irreducible_coeffs,
    mk_cover_check,
    mk_polys,
    power_row_witness,
    suslin_matrix,
    t_sequence,
)
from octzorn.errors import DegreeNotThree, LengthMismatch, NotUnit
from octzorn.linalg import Matrix, dot
from octzorn.rings import Integers, PolynomialRing, PrimeField, normal_form, parse_poly, quadric_ring
from octzorn.zorn import ZornAlgebra, module_from_row

Z = Integers()


def test_suslin_r2():
    s = generic_suslin(2)
    a0, a1, b0, b1 = s.matrix.ring.gens()
    assert s.matrix == Matrix(s.matrix.ring, [[a0, a1], [-b1, b0]])
    assert s.matrix.det() == a0 * b0 + a1 * b1


@pytest.mark.parametrize("r", [2, 3, 4])
def test_suslin_det_identity(r):
    s = generic_suslin(r)
    assert s.size == 2 ** (r - 1)
    assert s.matrix.det() == dot(s.v, s.w) ** (2 ** (r - 2))


def test_suslin_det_r3_against_sympy():
    s = generic_suslin(3)
    syms = sympy.symbols("a0:3 b0:3")
    table = dict(zip([str(g) for g in s.matrix.ring.gens()], syms))

    def conv(x):
        return sympy.Add(*[c * sympy.Mul(*[table[n] ** k for n, k in zip(table, e)]) for e, c in x.terms().items()])

    M = sympy.Matrix([[conv(x) for x in row] for row in s.matrix.rows])
    vw = sum(syms[i] * syms[3 + i] for i in range(3))
    assert sympy.expand(M.det() - vw**2) == 0


def test_suslin_unimodular_specialisation():
    s = suslin_matrix([Z(1), Z(0), Z(0)], [Z(1), Z(0), Z(0)])
    assert s.matrix.det() == 1


def test_suslin_length_mismatch():
    with pytest.raises(LengthMismatch):
        suslin_matrix([Z(1), Z(2)], [Z(1)])


def test_power_row_witness_n1_is_quadric_relation():
    A = quadric_ring(7)
    row = power_row_witness(1, A)
    assert row.w == (A.gen("y1"), A.gen("y2"), A.gen("y3"), A.gen("y4"))


@pytest.mark.parametrize("n", range(1, 7))
def test_power_row_witnesses(n):
    A = quadric_ring(7)
    row = power_row_witness(n, A)
    assert row.v[0] == A.gen("x1") ** n
    residual = (dot(row.v, row.w) - 1).lift()
    assert normal_form(residual, A.modulus).is_zero()


@pytest.mark.parametrize("n", [2, 3])
def test_power_rows_feed_zorn(n):
    import random

    A = ZornAlgebra(module_from_row(power_row_witness(n)))
    assert A.module.is_idempotent()
    rng = random.Random(n)
    for _ in range(3):
        u, v = A.random_element(rng), A.random_element(rng)
        assert A.norm(A.mul(u, v)) == A.norm(u) * A.norm(v)


def test_t_sequence():
    assert t_sequence() == [1, 4, 13, 40]


def test_mk_polys_over_f2():
    sys_ = mk_polys("x^3+x+1", 1, q=2)
    R = sys_.F[0].ring
    assert sys_.F[0] == parse_poly("x0^3 + x0*x1^2 + x1^3", R)
    assert sys_.degrees == [3, 9, 27, 81]
    assert all(sys_.homogeneous)
    assert not sys_.flagged_exponent


def test_mk_g_minus_f3_is_a_monomial():
    sys_ = mk_polys("x^3+2", 3, q=7)
    diff = sys_.F[2] - sys_.G
    (exp,) = diff.terms()
    assert exp == (0, 0, 0, 0, 27)
    sys11 = mk_polys("x^3+2", 3, q=7, g_exponent=11)
    assert sys11.flagged_exponent
    assert list((sys11.F[2] - sys11.G).terms()) == [(0, 0, 0, 0, 11)]


def test_mk_errors():
    with pytest.raises(DegreeNotThree):
        mk_polys("x^2+1", 1, q=3)
    with pytest.raises(NotUnit):
        mk_polys("x^3+x+1", 0, q=2)
    with pytest.raises(ValueError):
        mk_polys("x^3+x", 1, q=2)


@pytest.mark.parametrize("f,q", [("x^3+x+1", 2), ("x^3+2", 3), ("x^3+2", 7)])
def test_mk_cover_has_no_violations(f, q):
    rep = mk_cover_check(mk_polys(f, 1, q=q))
    assert rep.match and rep.observed == 0
    assert rep.details["expansion_mismatches"] == 0
    assert rep.details["points"] == q**5


def test_mk_recursion_agrees_with_expansion_everywhere_small():
    sys_ = mk_polys("x^3+x+1", 1, q=2)
    import itertools

    for pt in itertools.product(range(2), repeat=5):
        vals, g = sys_.evaluate(pt)
        assert vals == [F.evaluate(pt) for F in sys_.F]
        assert g == sys_.G.evaluate(pt)


def test_irreducible_examples():
    R = PolynomialRing(PrimeField(3), ("x",))
    assert irreducible_check(parse_poly("x^2 + 1", R))
    assert not irreducible_check(parse_poly("x^2 - 1", R))


@pytest.mark.parametrize("p", [2, 3, 5])
def test_irreducible_against_sympy(p):
    import itertools

    x = sympy.symbols("x")
    for coeffs in itertools.product(range(p), repeat=4):
        c = list(coeffs) + [1]
        expected = sympy.Poly(sum(ci * x**i for i, ci in enumerate(c)), x, modulus=p).is_irreducible
        assert irreducible_coeffs(c, p) == expected


def test_found_cubic():
    q, f = find_mk_cubic()
    assert (q, str(f)) == (7, "x^3 + 2")
    big = compose_power(f, 27)
    assert big.total_degree() == 81
    assert irreducible_check(big)
    x = sympy.symbols("x")
    assert sympy.Poly(x**81 + 2, x, modulus=7).is_irreducible


def test_small_primes_have_no_candidate():
    # 3 does not divide q^3 - 1 for q = 2, 5, and f(x^27) = f(x)^27 over F3
    assert find_mk_cubic(primes=(2, 3, 5)) is None
