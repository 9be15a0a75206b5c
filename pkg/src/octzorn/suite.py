"""Registry of executable checks and the verification-matrix runner.

Each check gets its own ``random.Random`` seeded with ``f"{seed}:{label}"``,
so a check's transcript depends only on the seed and its label, never on
which other checks ran.
"""

from __future__ import annotations

import fnmatch
import random
import time
from dataclasses import dataclass, field
from typing import Callable

from .census import count_locus, count_quadric_points, verify_quotient_identities
from .constructions import (
    compose_power,
    find_mk_cubic,
    generic_suslin,
    irreducible_check,
    mk_cover_check,
    mk_polys,
    power_row_witness,
)
from .g2 import (
    CElt,
    c_perp_basis,
    commutators_closed,
    derivation_basis,
    hermitian,
    left_mult_matrix,
    norm_gram,
    phi_action,
    phi_linearization_contained,
    preserves_gram,
    random_sl3,
)
from .linalg import dot
from .rings import DEFAULT_BUDGET, Integers, PrimeField, Rationals, quadric_ring
from .serialize import dumps
from .split import generic_split_octs, oct_mul, oct_norm, random_unit_norm
from .zorn import (
    UnimodularRow,
    ZornAlgebra,
    generic_zorn_pair,
    lagrangian,
    zorn_to_split,
    zorn_to_split_iso,
)


@dataclass(frozen=True)
class Check:
    label: str
    criterion: int
    claim: str
    run: Callable[[random.Random, int], tuple[bool, dict]]


@dataclass
class Entry:
    label: str
    criterion: int
    claim: str
    status: str
    reason: str = ""
    details: dict = field(default_factory=dict)
    runtime: float = 0.0

    def to_dict(self, with_runtime: bool = False) -> dict:
        out = {
            "label": self.label,
            "criterion": self.criterion,
            "claim": self.claim,
            "status": self.status,
        }
        if self.reason:
            out["reason"] = self.reason
        out["details"] = self.details
        if with_runtime:
            out["runtime"] = round(self.runtime, 3)
        return out


@dataclass
class VerificationMatrix:
    seed: int
    entries: list[Entry]

    @property
    def failed(self) -> list[Entry]:
        return [e for e in self.entries if e.status == "fail"]

    @property
    def exit_code(self) -> int:
        return 1 if self.failed else 0

    def to_json(self, with_runtime: bool = False) -> str:
        return dumps({"seed": self.seed, "entries": [e.to_dict(with_runtime) for e in self.entries]})

    def to_table(self) -> str:
        header = ("label", "crit", "status", "time", "claim")
        rows = [
            (e.label, str(e.criterion), e.status, f"{e.runtime:.2f}s", e.claim)
            for e in self.entries
        ]
        widths = [max(len(r[i]) for r in [header, *rows]) for i in range(4)]
        lines = []
        for r in [header, *rows]:
            lines.append("  ".join(c.ljust(w) for c, w in zip(r, widths)) + "  " + r[4])
        npass = sum(e.status == "pass" for e in self.entries)
        lines.append(f"{npass}/{len(self.entries)} passed, {len(self.failed)} failed")
        return "\n".join(lines)


# -- the checks -------------------------------------------------------------------------


def _split_composition(rng, budget):
    u, v = generic_split_octs(2)
    diff = oct_norm(oct_mul(u, v)) - oct_norm(u) * oct_norm(v)
    return diff.is_zero(), {"residual_terms": len(diff.terms()), "variables": 16}


def _zorn_composition(rng, budget):
    A, u, v = generic_zorn_pair()
    diff = A.norm(A.mul(u, v)) - A.norm(u) * A.norm(v)
    conj_ok = A.mul(u, A.conj(u)) == A.one().scale(A.norm(u))
    return diff.is_zero() and conj_ok, {"residual_terms": len(diff.terms()), "conjugate_identity": conj_ok}


def _zorn_split_iso(rng, budget):
    rep = zorn_to_split_iso(ZornAlgebra.free(Integers()))
    F5 = ZornAlgebra.free(PrimeField(5))
    norm_bad = 0
    for _ in range(100):
        u = F5.random_element(rng)
        norm_bad += oct_norm(zorn_to_split(u)) != F5.norm(u)
    details = {
        "pairs": rep.checked_pairs,
        "pair_failures": len(rep.failures),
        "unit": rep.unit_preserved,
        "norm_symbolic": rep.norm_preserved,
        "bijective": rep.bijective,
        "norm_failures_F5": norm_bad,
    }
    return rep.ok and norm_bad == 0, details


def _derivations(rng, budget):
    dims = {}
    for ring in (Rationals(), PrimeField(5), PrimeField(7)):
        for c in ("none", "fix_C"):
            dims[f"{ring}/{c}"] = derivation_basis(ring, c).dimension
    full = derivation_basis(Rationals())
    fixc = derivation_basis(Rationals(), "fix_C")
    closed = commutators_closed(full) and commutators_closed(fixc)
    contained = phi_linearization_contained(fixc)
    ok = all(d == (14 if k.endswith("none") else 8) for k, d in dims.items()) and closed and contained
    return ok, {"dimensions": dims, "bracket_closed": closed, "sl3_tangent_inside": contained}


def _phi_action(rng, budget):
    fails = {"automorphism": 0, "homomorphism": 0, "fixes_C": 0, "norm_trace": 0, "hermitian": 0}
    for ring in (Rationals(), PrimeField(5)):
        A = ZornAlgebra.free(ring)
        cp = c_perp_basis(ring)
        for _ in range(100):
            g, h = random_sl3(ring, rng), random_sl3(ring, rng)
            u, v = A.random_element(rng), A.random_element(rng)
            gu, gv = phi_action(g, u), phi_action(g, v)
            fails["automorphism"] += phi_action(g, A.mul(u, v)) != A.mul(gu, gv)
            fails["homomorphism"] += phi_action(g, phi_action(h, u)) != phi_action(g @ h, u)
            c = CElt(u.a1, u.a2).as_zorn(A)
            fails["fixes_C"] += phi_action(g, c) != c
            fails["norm_trace"] += (A.norm(gu), A.trace(gu)) != (A.norm(u), A.trace(u))
            z, w = cp.to_c3(u), cp.to_c3(v)
            fails["hermitian"] += hermitian(cp.to_c3(gu), cp.to_c3(gv)) != hermitian(z, w)
    return not any(fails.values()), {"samples_per_field": 100, "failures": fails}


def _quotient_identities(rng, budget):
    reports = [r for q in (2, 3) for r in verify_quotient_identities(q, budget=budget)]
    return all(r.match for r in reports), {"reports": [r.to_dict() for r in reports]}


def _norm1_locus(rng, budget):
    rows = {}
    for q in (2, 3):
        rows[str(q)] = [count_locus("norm1", q, budget=budget), count_quadric_points(7, q, budget=budget)]
    return all(a == b for a, b in rows.values()), {"norm1_vs_Q7": rows}


def _trace0_norm1_locus(rng, budget):
    observed = count_locus("trace0_norm1", 3, budget=budget)
    predicted = count_quadric_points(6, 3, budget=budget)
    return observed == predicted, {"q": 3, "observed": observed, "predicted": predicted}


def _trace1_norm0_locus(rng, budget):
    rows = {}
    for q in (2, 3):
        rows[str(q)] = [count_locus("trace1_norm0", q, budget=budget), count_quadric_points(6, q, budget=budget)]
    return all(a == b for a, b in rows.values()), {"trace1_norm0_vs_Q6": rows}


def _nonfree_q7(rng, budget):
    R = quadric_ring(7)
    x1, y1, x2, y2, x3, y3, x4, y4 = R.gens()
    A = ZornAlgebra.from_row(UnimodularRow((x1, x2, x3, x4), (y1, y2, y3, y4)))
    bad = 0
    for _ in range(50):
        u, v = A.random_element(rng), A.random_element(rng)
        bad += A.norm(A.mul(u, v)) != A.norm(u) * A.norm(v)
    lag = lagrangian(A)
    return bad == 0 and lag.ok, {
        "pairs": 50,
        "failures": bad,
        "lagrangian_generators": len(lag.generators),
        "lagrangian_isotropic": lag.norms_vanish and lag.pairings_vanish,
        "lagrangian_rank": str(lag.rank),
    }


def _suslin(rng, budget):
    out = {}
    for r in (2, 3, 4):
        s = generic_suslin(r)
        out[str(r)] = s.matrix.det() == s.expected_det()
    return all(out.values()), {"det_identity_by_row_length": out}


def _power_rows(rng, budget):
    out = {}
    for n in range(1, 7):
        row = power_row_witness(n)
        out[str(n)] = (dot(row.v, row.w) - 1).is_zero()
    return all(out.values()), {"reduces_to_one": out}


MK_A = 3


def _mk_system(rng, budget):
    found = find_mk_cubic()
    if found is None:
        return False, {"found": None}
    q, f = found
    sys = mk_polys(f, MK_A, q=q)
    irreducible = irreducible_check(compose_power(f, 27))
    cover = mk_cover_check(sys, budget=budget)
    ok = (
        sys.t == [1, 4, 13, 40]
        and sys.degrees == [3, 9, 27, 81]
        and all(sys.homogeneous)
        and sys.coeffs[0] != 0
        and irreducible
        and cover.match
    )
    return ok, {
        "q": q,
        "f": str(f),
        "a": MK_A,
        "t": sys.t,
        "degrees": sys.degrees,
        "homogeneous": sys.homogeneous,
        "f_x27_irreducible": irreducible,
        "cover": cover.to_dict(),
    }


def _left_mult(rng, budget):
    F5 = PrimeField(5)
    G = norm_gram(F5)
    orth = det = 0
    for _ in range(100):
        L = left_mult_matrix(random_unit_norm(F5, rng))
        orth += not preserves_gram(L, G)
        det += L.det() != 1
    return orth == det == 0, {"samples": 100, "orthogonality_failures": orth, "det_failures": det}


CHECKS: list[Check] = [
    Check("split.composition", 1, "split octonion norm is multiplicative (16 indeterminates)", _split_composition),
    Check("zorn.composition", 2, "free Zorn norm is multiplicative and u * conj(u) = N(u)", _zorn_composition),
    Check("zorn.split_iso", 3, "Zorn(R^3) is isomorphic to the split octonions", _zorn_split_iso),
    Check("g2.derivations", 4, "derivation algebra has dimension 14, and 8 fixing C", _derivations),
    Check("g2.phi_action", 5, "SL3 acts by automorphisms fixing C and the Hermitian form", _phi_action),
    Check("census.quotient_identities", 6, "quadric point counts equal quotients of group orders", _quotient_identities),
    Check("census.norm1_locus", 6, "norm-one octonions are the quadric Q7", _norm1_locus),
    Check("census.trace0_norm1_locus", 6, "trace-zero norm-one octonions over F3 number |Q6(F3)|", _trace0_norm1_locus),
    Check("census.trace1_norm0_locus", 6, "trace-one norm-zero octonions are the quadric Q6", _trace1_norm0_locus),
    Check("zorn.nonfree_q7", 7, "Zorn algebra over Q7 is a composition algebra with hyperbolic norm", _nonfree_q7),
    Check("constructions.suslin", 8, "Suslin matrix determinant is a power of v.w", _suslin),
    Check("constructions.power_rows", 9, "(x1^n, x2, x3, x4) is unimodular on Q7 for n = 1..6", _power_rows),
    Check("constructions.mk_system", 10, "Mohan Kumar polynomials over a found (q, f)", _mk_system),
    Check("g2.left_mult", 11, "left multiplication by a unit-norm octonion is special orthogonal", _left_mult),
]

DETERMINISM = Check("suite.determinism", 12, "two runs with one seed give identical JSON", lambda rng, budget: (True, {}))


def _select(pattern: str | None) -> list[Check]:
    checks = CHECKS + [DETERMINISM]
    if pattern:
        checks = [c for c in checks if fnmatch.fnmatchcase(c.label, pattern)]
    return checks


def run_check(check: Check, seed: int = 0, budget: int = DEFAULT_BUDGET) -> Entry:
    rng = random.Random(f"{seed}:{check.label}")
    start = time.perf_counter()
    try:
        ok, details = check.run(rng, budget)
        status, reason = ("pass" if ok else "fail"), ""
    except Exception as exc:  # a broken check is a failed check, never an aborted suite
        status, reason, details = "fail", f"{type(exc).__name__}: {exc}", {}
    return Entry(check.label, check.criterion, check.claim, status, reason, details, time.perf_counter() - start)


def _run_plain(checks: list[Check], seed: int, budget: int) -> list[Entry]:
    return [run_check(c, seed, budget) for c in checks]


def run_suite(pattern: str | None = None, seed: int = 0, budget: int = DEFAULT_BUDGET) -> VerificationMatrix:
    """Run every check whose label matches ``pattern`` (a glob), sorted by label.

    If the determinism check is selected, all other checks run a second time
    with the same seed and the two JSON reports are compared byte for byte.
    """
    selected = sorted(_select(pattern), key=lambda c: c.label)
    plain = [c for c in selected if c is not DETERMINISM]
    entries = _run_plain(plain, seed, budget)
    if DETERMINISM in selected:
        start = time.perf_counter()
        # alone, it compares two fresh runs of every other check
        base = plain or CHECKS
        first_entries = entries if plain else _run_plain(base, seed, budget)
        first = VerificationMatrix(seed, first_entries).to_json()
        second = VerificationMatrix(seed, _run_plain(base, seed, budget)).to_json()
        same = first == second
        entries.append(
            Entry(
                DETERMINISM.label,
                DETERMINISM.criterion,
                DETERMINISM.claim,
                "pass" if same else "fail",
                "",
                {"bytes": len(first), "identical": same},
                time.perf_counter() - start,
            )
        )
        entries.sort(key=lambda e: e.label)
    return VerificationMatrix(seed, entries)
