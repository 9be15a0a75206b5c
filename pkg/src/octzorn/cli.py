"""Command-line front end: ``octzorn <command> ...``.

Machine output (``--json``) is compact JSON on one line; human output is
plain aligned text.  Exit status: 0 on success, 1 when a requested check
fails, 2 on invalid input.
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys

from .census import count_locus, count_quadric_points, group_order, verify_quotient_identities
from .constructions import (
    compose_power,
    find_mk_cubic,
    irreducible_check,
    mk_cover_check,
    mk_polys,
    power_row_witness,
    suslin_matrix,
)
from .errors import OctzornError, ParseError
from .g2 import (
    SL3Elt,
    c_perp_basis,
    derivation_basis,
    hermitian,
    left_mult_matrix,
    norm_gram,
    phi_action,
    preserves_gram,
)
from .linalg import Matrix, dot
from .rings import DEFAULT_BUDGET, Integers, PolynomialRing, PrimeField, Rationals, Ring, parse_poly
from .serialize import (
    dumps,
    parse_ring_descriptor,
    serialize_ring,
    split_from_json,
    split_to_json,
    zorn_to_json,
)
from .split import oct_conj, oct_inverse, oct_mul, oct_norm, oct_trace
from .suite import run_suite
from .zorn import UnimodularRow, ZornAlgebra, lagrangian, module_from_row, zorn_to_split_iso

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


class CheckFailed(Exception):
    """A check requested on the command line did not hold."""


def _field(args) -> Ring:
    if args.field == "Q":
        return Rationals()
    return PrimeField(args.p)


def _q_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise ParseError(f"--q expects a comma-separated list of integers, got {text!r}") from None


def _split_list(text: str) -> list[str]:
    return [x.strip() for x in text.split(",")]


def _ring_for(texts: list[str], descriptor: str | None) -> Ring:
    """The given ring, or Z[variables appearing in the texts] (Z if none)."""
    if descriptor:
        return parse_ring_descriptor(descriptor)
    names = sorted({m for t in texts for m in _NAME.findall(t)})
    return PolynomialRing(Integers(), tuple(names)) if names else Integers()


def _emit(args, payload, text: str) -> None:
    print(dumps(payload) if args.json else text)


# -- oct -----------------------------------------------------------------------------------


def cmd_oct(args) -> int:
    x = split_from_json(args.x)
    if args.op == "mul":
        if args.y is None:
            raise ParseError("mul needs --y")
        y = split_from_json(args.y)
        r = oct_mul(x, y)
        _emit(args, split_to_json(r), repr(r))
    elif args.op == "conj":
        r = oct_conj(x)
        _emit(args, split_to_json(r), repr(r))
    elif args.op == "inv":
        r = oct_inverse(x)
        _emit(args, split_to_json(r), repr(r))
    else:
        v = oct_norm(x) if args.op == "norm" else oct_trace(x)
        _emit(args, {args.op: str(v)}, str(v))
    return 0


# -- zorn ----------------------------------------------------------------------------------


def cmd_zorn(args) -> int:
    if args.action == "iso":
        rep = zorn_to_split_iso(ZornAlgebra.free(Integers()))
        payload = {
            "table": {lab: split_to_json(s) for lab, s in rep.table},
            "pairs": rep.checked_pairs,
            "failures": [list(f) for f in rep.failures],
            "unit": rep.unit_preserved,
            "norm": rep.norm_preserved,
            "bijective": rep.bijective,
            "ok": rep.ok,
        }
        lines = [f"{lab:>3} -> {s!r}" for lab, s in rep.table]
        lines.append(f"{rep.checked_pairs} pairs, {len(rep.failures)} failures; unit {rep.unit_preserved}, norm {rep.norm_preserved}")
        _emit(args, payload, "\n".join(lines))
        if not rep.ok:
            raise CheckFailed("correspondence table check failed")
        return 0
    v_text, w_text = _split_list(args.row), _split_list(args.witness)
    ring = _ring_for(v_text + w_text, args.ring)
    row = UnimodularRow(tuple(parse_poly(t, ring) for t in v_text), tuple(parse_poly(t, ring) for t in w_text))
    P = module_from_row(row)
    A = ZornAlgebra(P)
    rng = random.Random(f"{args.seed}:zorn")
    bad = 0
    for _ in range(args.pairs):
        u, v = A.random_element(rng), A.random_element(rng)
        bad += A.norm(A.mul(u, v)) != A.norm(u) * A.norm(v)
    lag = lagrangian(A)
    payload = {
        "ring": ring.descriptor(),
        "free": P.free,
        "e": [[str(x) for x in r] for r in P.e.rows],
        "idempotent": P.is_idempotent(),
        "trace_e": str(P.e.trace()),
        "pairs": args.pairs,
        "composition_failures": bad,
        "lagrangian": [zorn_to_json(g, with_ring=False) for g in lag.generators],
        "lagrangian_ok": lag.ok,
    }
    lines = [f"e = {P.e!r}", f"e^2 = e: {P.is_idempotent()}, trace(e) = {P.e.trace()}"]
    lines.append(f"composition identity: {args.pairs - bad}/{args.pairs} random pairs")
    lines.append(f"Lagrangian: {len(lag.generators)} generators, isotropic and rank {lag.rank}: {lag.ok}")
    _emit(args, payload, "\n".join(lines))
    if bad or not lag.ok or not P.is_idempotent():
        raise CheckFailed("Zorn algebra checks failed")
    return 0


# -- g2 ------------------------------------------------------------------------------------


def cmd_g2(args) -> int:
    if args.action == "derivations":
        ring = _field(args)
        rep = derivation_basis(ring, "fix_C" if args.fix_c else "none")
        payload = {"ring": ring.descriptor(), "constraint": rep.constraint, "dimension": rep.dimension}
        if args.basis:
            payload["basis"] = [[[str(x) for x in r] for r in D.rows] for D in rep.basis]
        _emit(args, payload, f"{ring} {rep.constraint}: dimension {rep.dimension}")
        return 0
    if args.action == "phi":
        ring = _field(args)
        entries = _split_list(args.g)
        if len(entries) != 9:
            raise ParseError("--g expects 9 comma-separated entries")
        vals = [parse_poly(t, ring) for t in entries]
        g = SL3Elt(Matrix(ring, [vals[0:3], vals[3:6], vals[6:9]]))
        A = ZornAlgebra.free(ring)
        payload = {"g": [[str(x) for x in r] for r in g.matrix.rows]}
        lines = [f"g = {g.matrix!r}"]
        if args.check:
            rng = random.Random(f"{args.seed}:phi")
            cp = c_perp_basis(ring)
            fails = 0
            for _ in range(args.samples):
                u, v = A.random_element(rng), A.random_element(rng)
                gu, gv = phi_action(g, u), phi_action(g, v)
                fails += phi_action(g, A.mul(u, v)) != A.mul(gu, gv)
                fails += hermitian(cp.to_c3(gu), cp.to_c3(gv)) != hermitian(cp.to_c3(u), cp.to_c3(v))
            payload.update(samples=args.samples, failures=fails)
            lines.append(f"automorphism and Hermitian checks: {fails} failures in {args.samples} samples")
            _emit(args, payload, "\n".join(lines))
            if fails:
                raise CheckFailed("phi checks failed")
            return 0
        images = [zorn_to_json(phi_action(g, b), with_ring=False) for _, b in A.basis()]
        payload["basis_images"] = images
        lines += [f"{lab:>3} -> {phi_action(g, b)!r}" for lab, b in A.basis()]
        _emit(args, payload, "\n".join(lines))
        return 0
    x = split_from_json(args.x)
    L = left_mult_matrix(x)
    G = norm_gram(x.ring)
    orth, det = preserves_gram(L, G), L.det()
    payload = {"L": [[str(v) for v in r] for r in L.rows], "orthogonal": orth, "det": str(det)}
    _emit(args, payload, f"L = {L!r}\northogonal: {orth}, det = {det}")
    if not orth or det != 1:
        raise CheckFailed("left multiplication is not special orthogonal")
    return 0


# -- census --------------------------------------------------------------------------------


def cmd_census(args) -> int:
    reports = []
    for q in _q_list(args.q):
        reports += verify_quotient_identities(q, budget=args.budget)
        if args.loci:
            from .census import CountReport

            reports.append(CountReport("norm1 = Q7", q, count_locus("norm1", q, budget=args.budget), count_quadric_points(7, q, budget=args.budget)))
            if q != 2:
                reports.append(CountReport("trace0_norm1 = Q6", q, count_locus("trace0_norm1", q, budget=args.budget), count_quadric_points(6, q, budget=args.budget)))
            reports.append(CountReport("trace1_norm0 = Q6", q, count_locus("trace1_norm0", q, budget=args.budget), count_quadric_points(6, q, budget=args.budget)))
    if args.json or args.report == "json":
        print(dumps([r.to_dict() for r in reports]))
    else:
        w = max(len(r.label) for r in reports) if reports else 5
        print(f"{'label'.ljust(w)}  q  {'observed':>10}  {'predicted':>10}  match")
        for r in reports:
            print(f"{r.label.ljust(w)}  {r.q}  {r.observed:>10}  {r.predicted:>10}  {'yes' if r.match else 'NO'}")
    if not all(r.match for r in reports):
        raise CheckFailed("some counts do not match")
    return 0


def cmd_group_order(args) -> int:
    out = {str(q): group_order(args.name, q) for q in _q_list(args.q)}
    _emit(args, {"group": args.name, "orders": out}, "\n".join(f"|{args.name}(F{q})| = {n}" for q, n in out.items()))
    return 0


# -- constructions -------------------------------------------------------------------------


def cmd_mk(args) -> int:
    if args.action == "search":
        found = find_mk_cubic()
        if found is None:
            raise CheckFailed("no cubic found")
        q, f = found
        _emit(args, {"q": q, "f": str(f)}, f"q = {q}, f = {f}")
        return 0
    if args.f is None or args.q_single is None:
        raise ParseError("mk build needs --f and --q")
    sys_ = mk_polys(args.f, args.a, q=args.q_single, g_exponent=args.g_exponent)
    irreducible = irreducible_check(compose_power(sys_.f, 27))
    payload = {
        "q": sys_.q,
        "f": str(sys_.f),
        "a": str(sys_.a),
        "t": sys_.t,
        "degrees": sys_.degrees,
        "homogeneous": sys_.homogeneous,
        "g_exponent": sys_.g_exponent,
        "g_exponent_flagged": sys_.flagged_exponent,
        "f_x27_irreducible": irreducible,
        "F1": str(sys_.F[0]),
    }
    lines = [
        f"F1 = {sys_.F[0]}",
        f"t = {sys_.t}, degrees = {sys_.degrees}, homogeneous = {sys_.homogeneous}",
        f"G exponent {sys_.g_exponent}{' (flagged: not 27)' if sys_.flagged_exponent else ''}",
        f"f(x^27) irreducible: {irreducible}",
    ]
    failed = False
    if args.check_cover:
        rep = mk_cover_check(sys_, budget=args.budget)
        payload["cover"] = rep.to_dict()
        lines.append(f"cover violations: {rep.observed} ({rep.details})")
        failed = not rep.match
    _emit(args, payload, "\n".join(lines))
    if failed:
        raise CheckFailed("cover check found violations")
    return 0


def cmd_suslin(args) -> int:
    v_text, w_text = _split_list(args.v), _split_list(args.w)
    ring = _ring_for(v_text + w_text, args.ring)
    s = suslin_matrix([parse_poly(t, ring) for t in v_text], [parse_poly(t, ring) for t in w_text])
    det = s.matrix.det()
    ok = det == s.expected_det()
    payload = {
        "ring": ring.descriptor(),
        "size": s.size,
        "matrix": [[str(x) for x in r] for r in s.matrix.rows],
        "det": str(det),
        "det_identity": ok,
    }
    rows = "\n".join("  [" + ", ".join(str(x) for x in r) + "]" for r in s.matrix.rows)
    _emit(args, payload, f"S (size {s.size}):\n{rows}\ndet = {det}\ndet = (v.w)^(2^(r-2)): {ok}")
    if not ok:
        raise CheckFailed("determinant identity failed")
    return 0


def cmd_row_witness(args) -> int:
    row = power_row_witness(args.n)
    residual = dot(row.v, row.w) - 1
    payload = {
        "ring": row.ring.descriptor(),
        "v": [str(x) for x in row.v],
        "w": [str(x) for x in row.w],
        "residual": str(residual),
    }
    text = f"v = ({', '.join(map(str, row.v))})\nw = ({', '.join(map(str, row.w))})\nv.w - 1 = {residual}"
    _emit(args, payload, text)
    return 0


# -- suite ---------------------------------------------------------------------------------


def cmd_suite(args) -> int:
    m = run_suite(args.filter, seed=args.seed, budget=args.budget)
    print(m.to_json(with_runtime=args.runtime) if args.json else m.to_table())
    return m.exit_code


def cmd_ring(args) -> int:
    ring = parse_ring_descriptor(args.descriptor)
    print(serialize_ring(ring) if args.json else str(ring))
    return 0


# -- parser --------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for randomized checks (default 0)")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="maximum points to enumerate")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--field", choices=("Q", "Fp"), default="Q")
    common.add_argument("--p", type=int, default=5, help="prime for --field Fp (default 5)")

    parser = argparse.ArgumentParser(prog="octzorn", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("oct", parents=[common], help="split octonion arithmetic")
    p.add_argument("op", choices=("mul", "norm", "conj", "trace", "inv"))
    p.add_argument("--x", required=True, help="octonion JSON")
    p.add_argument("--y", help="second octonion JSON (mul)")
    p.set_defaults(func=cmd_oct)

    p = sub.add_parser("zorn", parents=[common], help="Zorn algebras of unimodular rows")
    p.add_argument("action", choices=("check", "iso"))
    p.add_argument("--row", default="0,0,0,1", help="comma-separated polynomial texts")
    p.add_argument("--witness", default="0,0,0,1", help="comma-separated polynomial texts")
    p.add_argument("--ring", help="ring descriptor JSON")
    p.add_argument("--pairs", type=int, default=10)
    p.set_defaults(func=cmd_zorn)

    p = sub.add_parser("g2", parents=[common], help="SL3 action, derivations, left multiplication")
    p.add_argument("action", choices=("derivations", "phi", "leftmult"))
    p.add_argument("--fix-c", action="store_true", help="only derivations vanishing on C")
    p.add_argument("--basis", action="store_true", help="include the derivation basis")
    p.add_argument("--g", help="9 comma-separated entries of g, row by row")
    p.add_argument("--check", action="store_true", help="randomized automorphism checks")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--x", help="octonion JSON with N(x) = 1")
    p.set_defaults(func=cmd_g2)

    p = sub.add_parser("census", parents=[common], help="point counts against group orders")
    p.add_argument("--q", default="2,3", help="comma-separated primes")
    p.add_argument("--report", choices=("json", "table"), default="table")
    p.add_argument("--loci", action="store_true", help="also count octonion loci")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("group-order", parents=[common], help="orders of split groups over F_q")
    p.add_argument("name")
    p.add_argument("--q", default="2,3")
    p.set_defaults(func=cmd_group_order)

    p = sub.add_parser("mk", parents=[common], help="Mohan Kumar polynomials")
    p.add_argument("action", choices=("build", "search"))
    p.add_argument("--f", help="cubic in x, e.g. 'x^3+x+1'")
    p.add_argument("--q", dest="q_single", type=int)
    p.add_argument("--a", type=int, default=1)
    p.add_argument("--g-exponent", type=int, choices=(27, 11), default=27)
    p.add_argument("--check-cover", action="store_true")
    p.set_defaults(func=cmd_mk)

    p = sub.add_parser("suslin", parents=[common], help="Suslin matrix of two rows")
    p.add_argument("--v", required=True)
    p.add_argument("--w", required=True)
    p.add_argument("--ring", help="ring descriptor JSON")
    p.set_defaults(func=cmd_suslin)

    p = sub.add_parser("row-witness", parents=[common], help="unimodular power rows on Q7")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_row_witness)

    p = sub.add_parser("ring", parents=[common], help="parse and normalise a ring descriptor")
    p.add_argument("descriptor")
    p.set_defaults(func=cmd_ring)

    p = sub.add_parser("suite", parents=[common], help="run the verification matrix")
    p.add_argument("--filter", help="glob over check labels, e.g. 'census*'")
    p.add_argument("--runtime", action="store_true", help="include runtimes in JSON (not byte-stable)")
    p.set_defaults(func=cmd_suite)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CheckFailed as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return 1
    except (OctzornError, json.JSONDecodeError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
