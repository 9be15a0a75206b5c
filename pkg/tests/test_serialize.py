import random

import pytest
from hypothesis import given, strategies as st

from octzorn.errors import InvalidPrime, ParseError
from octzorn.rings import Integers, PolynomialRing, PrimeField, QuotientRing, Rationals
from octzorn.serialize import (
    parse_ring_descriptor,
    serialize_ring,
    split_from_json,
    split_to_json,
    zorn_from_json,
    zorn_to_json,
)
from octzorn.split import SplitOct, random_split_oct
from octzorn.zorn import ZornAlgebra

QUOT = '{"kind":"quot","base":{"kind":"poly","base":{"kind":"Fp","p":5},"vars":["x","y"]},"modulus":"x*y + 4"}'


@pytest.mark.parametrize(
    "text",
    [
        '{"kind":"Z"}',
        '{"kind":"Q"}',
        '{"kind":"Fp","p":7}',
        '{"kind":"poly","base":{"kind":"Q"},"vars":["a","b"]}',
        QUOT,
    ],
)
def test_descriptor_round_trip_is_byte_identical(text):
    assert serialize_ring(parse_ring_descriptor(text)) == text


def test_descriptor_normalises_modulus():
    raw = '{"kind":"quot","base":{"kind":"poly","base":{"kind":"Fp","p":5},"vars":["x","y"]},"modulus":"x*y-1"}'
    assert serialize_ring(parse_ring_descriptor(raw)) == QUOT


def test_descriptor_errors():
    with pytest.raises(InvalidPrime):
        parse_ring_descriptor('{"kind":"Fp","p":4}')
    with pytest.raises(ParseError) as info:
        parse_ring_descriptor('{"kind":')
    assert info.value.pos == 8
    for bad in ('{"kind":"R"}', "[1]", '{"kind":"Fp","p":"5"}', '{"kind":"poly","vars":"x","base":{"kind":"Z"}}'):
        with pytest.raises(ParseError):
            parse_ring_descriptor(bad)


def test_rings_compare_by_descriptor():
    assert parse_ring_descriptor(QUOT) == QuotientRing(PolynomialRing(PrimeField(5), ("x", "y")), "x*y - 1")


def test_split_json_example():
    x = SplitOct.of(Integers(), [[1, 2], [3, 4]], [[0, 1], [1, 0]])
    assert split_to_json(x) == {"m1": [["1", "2"], ["3", "4"]], "m2": [["0", "1"], ["1", "0"]], "ring": {"kind": "Z"}}


def test_split_json_accepts_integers_and_external_ring():
    x = split_from_json('{"m1":[[1,2],[3,4]],"m2":[[0,0],[0,0]]}', ring=Rationals())
    assert x.ring == Rationals() and x.m1.rows()[1][1] == 4
    with pytest.raises(ParseError):
        split_from_json('{"m1":[[1,2],[3,4]],"m2":[[0,0],[0,0]]}')
    with pytest.raises(ParseError):
        split_from_json('{"m1":[[1,2]],"m2":[[0,0],[0,0]],"ring":{"kind":"Z"}}')


@given(st.integers(min_value=0, max_value=2**32))
def test_split_round_trip(seed):
    rng = random.Random(seed)
    for ring in (Integers(), Rationals(), PrimeField(11)):
        x = random_split_oct(ring, rng)
        assert split_from_json(split_to_json(x)) == x


def test_zorn_round_trip_and_ring_check():
    A = ZornAlgebra.free(Rationals())
    rng = random.Random(0)
    for _ in range(20):
        u = A.random_element(rng)
        assert zorn_from_json(zorn_to_json(u), A) == u
        assert zorn_from_json(zorn_to_json(u, with_ring=False), A) == u
    with pytest.raises(ParseError):
        zorn_from_json(zorn_to_json(A.one()), ZornAlgebra.free(Integers()))
    with pytest.raises(ParseError):
        zorn_from_json('{"a1":"1"}', A)
