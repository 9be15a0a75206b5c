"""JSON forms of rings, split octonions and Zorn elements.

Output is compact (``separators=(",", ":")``) with keys in a fixed order,
so serialising the same value always yields the same bytes.
"""

from __future__ import annotations

import json

from .errors import ParseError
from .rings import Integers, PolynomialRing, PrimeField, QuotientRing, Rationals, Ring, parse_poly
from .split import SplitOct
from .zorn import ZornAlgebra, ZornElt


def dumps(obj) -> str:
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=False)


def ring_from_descriptor(d) -> Ring:
    if not isinstance(d, dict) or "kind" not in d:
        raise ParseError("a ring descriptor is an object with a 'kind' key")
    kind = d["kind"]
    if kind == "Z":
        return Integers()
    if kind == "Q":
        return Rationals()
    if kind == "Fp":
        p = d.get("p")
        if not isinstance(p, int) or isinstance(p, bool):
            raise ParseError(f"'p' must be an integer, got {p!r}")
        return PrimeField(p)
    if kind == "poly":
        vars_ = d.get("vars")
        if not isinstance(vars_, list) or not all(isinstance(v, str) for v in vars_):
            raise ParseError("'vars' must be a list of names")
        return PolynomialRing(ring_from_descriptor(d.get("base")), tuple(vars_))
    if kind == "quot":
        base = ring_from_descriptor(d.get("base"))
        modulus = d.get("modulus")
        if not isinstance(modulus, str):
            raise ParseError("'modulus' must be polynomial text")
        return QuotientRing(base, modulus)
    raise ParseError(f"unknown ring kind {kind!r}")


def _loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.pos) from None


def parse_ring_descriptor(text: str) -> Ring:
    """Ring from descriptor JSON; ``serialize_ring`` gives the normalised text back."""
    return ring_from_descriptor(_loads(text))


def serialize_ring(ring: Ring) -> str:
    return dumps(ring.descriptor())


def split_to_json(u: SplitOct) -> dict:
    return {
        "m1": [[str(x) for x in row] for row in u.m1.rows()],
        "m2": [[str(x) for x in row] for row in u.m2.rows()],
        "ring": u.ring.descriptor(),
    }


def _entry(ring: Ring, x):
    if isinstance(x, str):
        return parse_poly(x, ring)
    if isinstance(x, int) and not isinstance(x, bool):
        return ring(x)
    raise ParseError(f"entries must be polynomial text or integers, got {x!r}")


def split_from_json(obj, ring: Ring | None = None) -> SplitOct:
    if isinstance(obj, str):
        obj = _loads(obj)
    if not isinstance(obj, dict):
        raise ParseError("a split octonion is a JSON object")
    if "ring" in obj:
        ring = ring_from_descriptor(obj["ring"])
    if ring is None:
        raise ParseError("no ring given")
    try:
        m1, m2 = obj["m1"], obj["m2"]
        rows = [[_entry(ring, x) for x in r] for r in m1] + [[_entry(ring, x) for x in r] for r in m2]
        if [len(r) for r in rows] != [2, 2, 2, 2]:
            raise ValueError
    except (KeyError, TypeError, ValueError):
        raise ParseError("'m1' and 'm2' must be 2x2 arrays") from None
    return SplitOct.of(ring, rows[:2], rows[2:])


def zorn_to_json(u: ZornElt, with_ring: bool = True) -> dict:
    out = {
        "a1": str(u.a1),
        "xplus": [str(x) for x in u.xplus],
        "xminus": [str(x) for x in u.xminus],
        "a2": str(u.a2),
    }
    if with_ring:
        out["ring"] = u.ring.descriptor()
    return out


def zorn_from_json(obj, A: ZornAlgebra) -> ZornElt:
    if isinstance(obj, str):
        obj = _loads(obj)
    ring = A.ring
    if isinstance(obj, dict) and "ring" in obj and ring_from_descriptor(obj["ring"]) != ring:
        raise ParseError("element ring does not match the algebra")
    try:
        return A.element(
            _entry(ring, obj["a1"]),
            [_entry(ring, x) for x in obj["xplus"]],
            [_entry(ring, x) for x in obj["xminus"]],
            _entry(ring, obj["a2"]),
        )
    except (KeyError, TypeError):
        raise ParseError("a Zorn element needs 'a1', 'xplus', 'xminus' and 'a2'") from None
