"""Point counts over prime fields and split-group orders.

Every count here is a brute-force enumeration; the predicted sides come
from closed-form group orders, so each report compares two independent
computations.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import UnknownGroup, UnsupportedCharacteristic
from .rings import DEFAULT_BUDGET, PrimeField, count_affine_points, quadric_polynomial
from .split import generic_split_octs, oct_norm, oct_trace


@dataclass
class CountReport:
    label: str
    q: int
    observed: int
    predicted: int
    details: dict = field(default_factory=dict)

    @property
    def match(self) -> bool:
        return self.observed == self.predicted

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "q": self.q,
            "observed": self.observed,
            "predicted": self.predicted,
            "match": self.match,
            "details": self.details,
        }


def count_quadric_points(n: int, q: int, *, budget: int = DEFAULT_BUDGET, partitions: int = 1, workers: int = 1) -> int:
    ring, poly = quadric_polynomial(n, PrimeField(q))
    return count_affine_points([poly], q, budget=budget, partitions=partitions, workers=workers)


LOCI = ("norm1", "trace0_norm1", "trace1_norm0")


def count_locus(kind: str, q: int, *, budget: int = DEFAULT_BUDGET, partitions: int = 1, workers: int = 1) -> int:
    """Count split octonions over F_q by enumerating all 8 coordinates.

    ``norm1`` is ``N = 1``, ``trace0_norm1`` is ``Tr = 0, N = 1`` (odd q only),
    ``trace1_norm0`` is ``Tr = 1, N = 0``.
    """
    if kind not in LOCI:
        raise ValueError(f"unknown locus {kind!r}; expected one of {LOCI}")
    if kind == "trace0_norm1" and q == 2:
        raise UnsupportedCharacteristic("the trace-zero norm-one locus is defined for odd q")
    (u,) = generic_split_octs(1, PrimeField(q))
    n, t = oct_norm(u), oct_trace(u)
    polys = {
        "norm1": [n - 1],
        "trace0_norm1": [t, n - 1],
        "trace1_norm0": [t - 1, n],
    }[kind]
    return count_affine_points(polys, q, budget=budget, partitions=partitions, workers=workers)


def _sl(n: int, q: int) -> int:
    out = q ** (n * (n - 1) // 2)
    for i in range(2, n + 1):
        out *= q**i - 1
    return out


GROUPS = {
    "SL2": lambda q: _sl(2, q),
    "SL3": lambda q: _sl(3, q),
    "SL4": lambda q: _sl(4, q),
    "G2": lambda q: q**6 * (q**6 - 1) * (q**2 - 1),
    "Spin7": lambda q: q**9 * (q**2 - 1) * (q**4 - 1) * (q**6 - 1),
    "Spin8": lambda q: q**12 * (q**2 - 1) * (q**4 - 1) ** 2 * (q**6 - 1),
}


def group_order(name: str, q: int) -> int:
    """Order of the split group over F_q."""
    try:
        return GROUPS[name](q)
    except KeyError:
        raise UnknownGroup(f"{name!r}; known groups: {', '.join(GROUPS)}") from None


def _quotient(a: str, b: str, q: int) -> int:
    num, den = group_order(a, q), group_order(b, q)
    if num % den:
        raise ArithmeticError(f"|{a}| is not divisible by |{b}| at q={q}")
    return num // den


def verify_quotient_identities(q: int, *, budget: int = DEFAULT_BUDGET) -> list[CountReport]:
    """Compare quadric point counts with quotients of group orders."""
    q5 = count_quadric_points(5, q, budget=budget)
    q6 = count_quadric_points(6, q, budget=budget)
    q7 = count_quadric_points(7, q, budget=budget)
    return [
        CountReport("Q5 = SL3/SL2", q, q5, _quotient("SL3", "SL2", q)),
        CountReport("Q6 = G2/SL3", q, q6, _quotient("G2", "SL3", q)),
        CountReport("Q7 = Spin7/G2", q, q7, _quotient("Spin7", "G2", q)),
        CountReport("Q7 = SL4/SL3", q, q7, _quotient("SL4", "SL3", q)),
        CountReport("Q7^2 = Spin8/G2", q, q7 * q7, _quotient("Spin8", "G2", q), {"Q7": q7}),
    ]
