"""Octonion algebras over commutative rings, computed exactly.

Split octonions as pairs of 2x2 matrices, Zorn vector matrices over
rank-3 projective modules cut out by unimodular rows, the long-root SL3
action and derivation algebras, point counts over prime fields, and a few
classical explicit constructions.
"""

from .errors import OctzornError
from .rings import (
    Integers,
    PolynomialRing,
    PrimeField,
    QuotientRing,
    Rationals,
    RingElt,
    count_affine_points,
    enumerate_affine_points,
    normal_form,
    parse_poly,
    quadric_ring,
)
from .split import SplitOct, oct_conj, oct_inverse, oct_mul, oct_norm, oct_trace
from .zorn import (
    OrientedRank3Module,
    UnimodularRow,
    ZornAlgebra,
    ZornElt,
    cross,
    cross_dual,
    lagrangian,
    module_from_row,
    zorn_mul,
    zorn_norm,
    zorn_to_split_iso,
    zorn_trace,
)

__version__ = "0.1.0"

__all__ = [
    "Integers",
    "OctzornError",
    "OrientedRank3Module",
    "PolynomialRing",
    "PrimeField",
    "QuotientRing",
    "Rationals",
    "RingElt",
    "SplitOct",
    "UnimodularRow",
    "ZornAlgebra",
    "ZornElt",
    "count_affine_points",
    "cross",
    "cross_dual",
    "enumerate_affine_points",
    "lagrangian",
    "module_from_row",
    "normal_form",
    "oct_conj",
    "oct_inverse",
    "oct_mul",
    "oct_norm",
    "oct_trace",
    "parse_poly",
    "quadric_ring",
    "zorn_mul",
    "zorn_norm",
    "zorn_to_split_iso",
    "zorn_trace",
]
