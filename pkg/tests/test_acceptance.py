"""One test per acceptance criterion; the terminal summary prints PASS/FAIL per criterion."""

import random
import time

import pytest

from octzorn.census import count_locus, count_quadric_points, verify_quotient_identities
from octzorn.constructions import (
    compose_power,
    find_mk_cubic,
    generic_suslin,
    irreducible_check,
    mk_cover_check,
    mk_polys,
    power_row_witness,
)
from octzorn.g2 import (
    CElt,
    c_perp_basis,
    derivation_basis,
    hermitian,
    left_mult_matrix,
    norm_gram,
    phi_action,
    preserves_gram,
    random_sl3,
)
from octzorn.linalg import dot
from octzorn.rings import Integers, PrimeField, Rationals, quadric_ring
from octzorn.split import generic_split_octs, oct_mul, oct_norm, random_unit_norm
from octzorn.suite import run_suite
from octzorn.zorn import UnimodularRow, ZornAlgebra, generic_zorn_pair, lagrangian, zorn_to_split_iso


@pytest.fixture
def criterion(record_property):
    def mark(n, title):
        record_property("criterion", n)
        record_property("title", title)

    return mark


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start


def test_c01_split_composition(criterion):
    criterion(1, "split composition identity, 16 indeterminates, < 10 s")
    with Timer() as t:
        u, v = generic_split_octs(2)
        diff = oct_norm(oct_mul(u, v)) - oct_norm(u) * oct_norm(v)
    assert diff.is_zero()
    assert t.elapsed < 10


def test_c02_zorn_composition(criterion):
    criterion(2, "free Zorn composition identity and u(Tr(u) - u) = N(u), < 10 s")
    with Timer() as t:
        A, u, v = generic_zorn_pair()
        diff = A.norm(A.mul(u, v)) - A.norm(u) * A.norm(v)
        conj_side = A.mul(u, A.one().scale(A.trace(u)) - u)
    assert diff.is_zero()
    assert conj_side == A.one().scale(A.norm(u))
    assert t.elapsed < 10


def test_c03_zorn_split_iso(criterion):
    criterion(3, "Zorn(R^3) matches the split octonions on all 64 basis pairs")
    rep = zorn_to_split_iso(ZornAlgebra.free(Integers()))
    assert rep.checked_pairs == 64 and rep.failures == []
    assert rep.unit_preserved and rep.norm_preserved and rep.bijective


def test_c04_derivations(criterion):
    criterion(4, "derivation dimensions 14 and 8 over Q, F5, F7, < 30 s")
    with Timer() as t:
        dims = {(str(r), c): derivation_basis(r, c).dimension for r in (Rationals(), PrimeField(5), PrimeField(7)) for c in ("none", "fix_C")}
    assert all(d == (14 if c == "none" else 8) for (_, c), d in dims.items()), dims
    assert t.elapsed < 30


def test_c05_phi(criterion):
    criterion(5, "100 random SL3 elements over Q and F5 act as automorphisms fixing C and h")
    rng = random.Random("0:acceptance.phi")
    failures = 0
    for ring in (Rationals(), PrimeField(5)):
        A = ZornAlgebra.free(ring)
        cp = c_perp_basis(ring)
        for _ in range(100):
            g, h = random_sl3(ring, rng), random_sl3(ring, rng)
            u, v = A.random_element(rng), A.random_element(rng)
            gu, gv = phi_action(g, u), phi_action(g, v)
            c = CElt(u.a1, u.a2).as_zorn(A)
            failures += phi_action(g, A.mul(u, v)) != A.mul(gu, gv)
            failures += phi_action(g, phi_action(h, u)) != phi_action(g @ h, u)
            failures += phi_action(g, c) != c
            failures += hermitian(cp.to_c3(gu), cp.to_c3(gv)) != hermitian(cp.to_c3(u), cp.to_c3(v))
    assert failures == 0


def test_c06_point_counts(criterion):
    criterion(6, "quadric counts vs group orders (q = 2, 3) and octonion loci, < 60 s")
    with Timer() as t:
        reports = [r for q in (2, 3) for r in verify_quotient_identities(q)]
        norm1 = {q: (count_locus("norm1", q), count_quadric_points(7, q)) for q in (2, 3)}
        trace0 = (count_locus("trace0_norm1", 3), count_quadric_points(6, 3))
    mismatches = [r.to_dict() for r in reports if not r.match]
    mismatches += [("norm1", q, a, b) for q, (a, b) in norm1.items() if a != b]
    if trace0[0] != trace0[1]:
        mismatches.append(("trace0_norm1", 3, *trace0))
    assert t.elapsed < 60
    assert mismatches == []


def test_c07_nonfree_q7(criterion):
    criterion(7, "Zorn algebra over Q7: 50 random pairs compose, Lagrangian isotropic, < 60 s")
    with Timer() as t:
        R = quadric_ring(7)
        x1, y1, x2, y2, x3, y3, x4, y4 = R.gens()
        A = ZornAlgebra.from_row(UnimodularRow((x1, x2, x3, x4), (y1, y2, y3, y4)))
        rng = random.Random("0:acceptance.q7")
        bad = 0
        for _ in range(50):
            u, v = A.random_element(rng), A.random_element(rng)
            bad += A.norm(A.mul(u, v)) != A.norm(u) * A.norm(v)
        lag = lagrangian(A)
    assert bad == 0
    assert lag.norms_vanish and lag.pairings_vanish and lag.ok
    assert t.elapsed < 60


def test_c08_suslin(criterion):
    criterion(8, "Suslin determinant identity for row lengths 2, 3, 4")
    for r in (2, 3, 4):
        s = generic_suslin(r)
        assert s.matrix.det() == dot(s.v, s.w) ** (2 ** (r - 2))


def test_c09_power_rows(criterion):
    criterion(9, "power-row witnesses n = 1..6 give v.w = 1 on Q7")
    for n in range(1, 7):
        row = power_row_witness(n)
        assert row.v[0] == row.ring.gen("x1") ** n
        assert (dot(row.v, row.w) - 1).is_zero()


def test_c10_mk_system(criterion):
    criterion(10, "Mohan Kumar system over a found (q, f), < 60 s")
    with Timer() as t:
        q, f = find_mk_cubic()
        sys_ = mk_polys(f, 3, q=q)
        irreducible = irreducible_check(compose_power(f, 27))
        cover = mk_cover_check(sys_)
    assert sys_.t == [1, 4, 13, 40]
    assert sys_.degrees == [3, 9, 27, 81]
    assert all(sys_.homogeneous)
    assert sys_.coeffs[0] % q != 0
    assert irreducible
    assert cover.observed == 0 and cover.match
    assert t.elapsed < 60


def test_c11_left_mult(criterion):
    criterion(11, "100 unit-norm left multiplications over F5 are G-orthogonal with det 1")
    F5 = PrimeField(5)
    G = norm_gram(F5)
    rng = random.Random("0:acceptance.leftmult")
    failures = 0
    for _ in range(100):
        L = left_mult_matrix(random_unit_norm(F5, rng))
        failures += not preserves_gram(L, G) or L.det() != 1
    assert failures == 0


def test_c12_determinism(criterion):
    criterion(12, "two full suite runs with seed 0 give byte-identical JSON")
    first = run_suite(seed=0).to_json()
    second = run_suite(seed=0).to_json()
    assert first == second
