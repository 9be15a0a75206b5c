"""Exact commutative rings used throughout the package.

The tower is deliberately small: the integers, the rationals, prime fields,
sparse multivariate polynomial rings over one of those, and quotients of a
polynomial ring by a single polynomial.  Every element has one canonical
representation, so equality is plain representational equality.

Polynomials are dictionaries ``{exponent tuple: coefficient}`` with no zero
coefficients.  Monomials are compared in degree-reverse-lexicographic order
with the first declared variable the largest.
"""

from __future__ import annotations

import heapq
import itertools
import operator
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .errors import (
    BudgetExceeded,
    CtxMismatch,
    InvalidModulus,
    InvalidPrime,
    NotInvertible,
    ParseError,
    Unsupported,
)

DEFAULT_BUDGET = 10**7

_VAR_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for p in small:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic for n < 3.3e24
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def grevlex_key(exp: tuple[int, ...]) -> tuple:
    """Sort key: larger key means larger monomial."""
    return (sum(exp),) + tuple(-e for e in reversed(exp))


def _heap_key(exp: tuple[int, ...]) -> tuple:
    # smallest heap key = largest monomial
    return (-sum(exp),) + exp[::-1]


class Ring:
    """Behaviour shared by every ring context.

    Subclasses implement the raw operations (``_add``, ``_mul``, ...) on
    canonical representations; user code works with :class:`RingElt`.
    """

    is_field = False
    characteristic = 0

    def __call__(self, value=0) -> "RingElt":
        if isinstance(value, RingElt):
            return RingElt(self, self._absorb(value))
        if isinstance(value, str):
            return parse_poly(value, self)
        return RingElt(self, self._coerce(value))

    def zero(self) -> "RingElt":
        return self(0)

    def one(self) -> "RingElt":
        return self(1)

    def gens(self) -> tuple["RingElt", ...]:
        return ()

    def _absorb(self, x: "RingElt"):
        if x.ring is self or x.ring == self:
            return x.val
        if isinstance(x.ring, Integers):
            return self._coerce(x.val)
        raise CtxMismatch(f"cannot move an element of {x.ring} into {self}")

    def _hash(self, a) -> int:
        return hash(a)

    def _eq(self, a, b) -> bool:
        return a == b

    def _is_zero(self, a) -> bool:
        return a == 0

    def polynomial_ring(self) -> "PolynomialRing":
        raise Unsupported(f"{self} is not a polynomial or quotient ring")


@dataclass(frozen=True)
class Integers(Ring):
    def __str__(self):
        return "Z"

    def _coerce(self, v):
        if isinstance(v, bool):
            return int(v)
        if isinstance(v, int):
            return v
        if isinstance(v, Fraction) and v.denominator == 1:
            return v.numerator
        raise TypeError(f"cannot coerce {v!r} into Z")

    def _reduce(self, c):
        return c

    def _add(self, a, b):
        return a + b

    def _neg(self, a):
        return -a

    def _mul(self, a, b):
        return a * b

    def _is_unit(self, a):
        return a in (1, -1)

    def _inv(self, a):
        if a in (1, -1):
            return a
        raise NotInvertible(f"{a} is not a unit in Z")

    def _format(self, a):
        return str(a)

    def descriptor(self) -> dict:
        return {"kind": "Z"}


@dataclass(frozen=True)
class Rationals(Ring):
    is_field = True

    def __str__(self):
        return "Q"

    def _coerce(self, v):
        if isinstance(v, (int, Fraction)):
            return Fraction(v)
        raise TypeError(f"cannot coerce {v!r} into Q")

    def _reduce(self, c):
        return c if isinstance(c, Fraction) else Fraction(c)

    def _add(self, a, b):
        return a + b

    def _neg(self, a):
        return -a

    def _mul(self, a, b):
        return a * b

    def _is_unit(self, a):
        return a != 0

    def _inv(self, a):
        if a == 0:
            raise NotInvertible("0 is not invertible in Q")
        return 1 / a

    def _format(self, a):
        return str(a)

    def descriptor(self) -> dict:
        return {"kind": "Q"}


@dataclass(frozen=True)
class PrimeField(Ring):
    p: int
    is_field = True

    def __post_init__(self):
        if not isinstance(self.p, int) or not is_prime(self.p):
            raise InvalidPrime(f"{self.p!r} is not prime")

    @property
    def characteristic(self):
        return self.p

    def __str__(self):
        return f"F{self.p}"

    def _coerce(self, v):
        if isinstance(v, (bool, int)):
            return int(v) % self.p
        if isinstance(v, Fraction):
            if v.denominator % self.p == 0:
                raise NotInvertible(f"denominator of {v} vanishes mod {self.p}")
            return v.numerator * pow(v.denominator, -1, self.p) % self.p
        raise TypeError(f"cannot coerce {v!r} into F{self.p}")

    def _reduce(self, c):
        return c % self.p

    def _add(self, a, b):
        return (a + b) % self.p

    def _neg(self, a):
        return -a % self.p

    def _mul(self, a, b):
        return a * b % self.p

    def _is_unit(self, a):
        return a != 0

    def _inv(self, a):
        if a == 0:
            raise NotInvertible(f"0 is not invertible in F{self.p}")
        return pow(a, -1, self.p)

    def _format(self, a):
        return str(a)

    def descriptor(self) -> dict:
        return {"kind": "Fp", "p": self.p}


COEFFICIENT_RINGS = (Integers, Rationals, PrimeField)


@dataclass(frozen=True)
class PolynomialRing(Ring):
    base: Ring
    vars: tuple[str, ...]

    def __post_init__(self):
        if not isinstance(self.base, COEFFICIENT_RINGS):
            raise Unsupported("polynomial rings are only built over Z, Q or F_p")
        object.__setattr__(self, "vars", tuple(self.vars))
        if not self.vars:
            raise Unsupported("a polynomial ring needs at least one variable")
        if len(set(self.vars)) != len(self.vars):
            raise Unsupported(f"repeated variable names in {self.vars}")
        for v in self.vars:
            if not _VAR_RE.match(v):
                raise Unsupported(f"invalid variable name {v!r}")

    @property
    def characteristic(self):
        return self.base.characteristic

    @property
    def nvars(self) -> int:
        return len(self.vars)

    def __str__(self):
        return f"{self.base}[{','.join(self.vars)}]"

    def polynomial_ring(self) -> "PolynomialRing":
        return self

    def gen(self, name: str) -> "RingElt":
        try:
            i = self.vars.index(name)
        except ValueError:
            raise CtxMismatch(f"{name!r} is not a variable of {self}") from None
        exp = tuple(int(j == i) for j in range(self.nvars))
        return RingElt(self, {exp: self.base._coerce(1)})

    def gens(self) -> tuple["RingElt", ...]:
        return tuple(self.gen(v) for v in self.vars)

    def monomial(self, exp: Sequence[int], coeff=1) -> "RingElt":
        exp = tuple(exp)
        if len(exp) != self.nvars:
            raise ValueError("exponent length does not match the variable count")
        c = self.base._coerce(coeff)
        return RingElt(self, {exp: c} if c != 0 else {})

    def _zero_exp(self):
        return (0,) * self.nvars

    def _absorb(self, x: "RingElt"):
        if x.ring is self or x.ring == self:
            return x.val
        if x.ring == self.base or isinstance(x.ring, Integers):
            return self._coerce(x.val)
        raise CtxMismatch(f"cannot move an element of {x.ring} into {self}")

    def _coerce(self, v):
        c = self.base._coerce(v)
        return {self._zero_exp(): c} if c != 0 else {}

    def _is_zero(self, a):
        return not a

    def _hash(self, a):
        return hash(frozenset(a.items()))

    def _add(self, a, b):
        if len(a) < len(b):
            a, b = b, a
        res = dict(a)
        red = self.base._reduce
        for e, c in b.items():
            s = res.get(e)
            if s is None:
                res[e] = c
            else:
                s = red(s + c)
                if s == 0:
                    del res[e]
                else:
                    res[e] = s
        return res

    def _neg(self, a):
        red = self.base._reduce
        return {e: red(-c) for e, c in a.items()}

    def _scale(self, a, c):
        red = self.base._reduce
        out = {}
        for e, x in a.items():
            y = red(x * c)
            if y != 0:
                out[e] = y
        return out

    def _mul(self, a, b):
        if not a or not b:
            return {}
        if len(a) < len(b):
            a, b = b, a
        acc: dict = {}
        add = operator.add
        for eb, cb in b.items():
            for ea, ca in a.items():
                e = tuple(map(add, ea, eb))
                acc[e] = acc.get(e, 0) + ca * cb
        red = self.base._reduce
        out = {}
        for e, c in acc.items():
            c = red(c)
            if c != 0:
                out[e] = c
        return out

    def _is_unit(self, a):
        return len(a) == 1 and self._zero_exp() in a and self.base._is_unit(a[self._zero_exp()])

    def _inv(self, a):
        if not self._is_unit(a):
            raise NotInvertible("only nonzero unit constants are invertible in a polynomial ring")
        return {self._zero_exp(): self.base._inv(a[self._zero_exp()])}

    def _format(self, a):
        return format_poly(a, self.vars, self.base)

    def descriptor(self) -> dict:
        return {"kind": "poly", "base": self.base.descriptor(), "vars": list(self.vars)}

    # -- division by a single polynomial -------------------------------------------

    def leading_term(self, a) -> tuple[tuple[int, ...], object]:
        if not a:
            raise ValueError("the zero polynomial has no leading term")
        e = max(a, key=grevlex_key)
        return e, a[e]

    def _divmod(self, f, g):
        """Multivariate division of ``f`` by the single polynomial ``g``.

        Returns ``(quotient, remainder)`` with ``f = quotient*g + remainder``
        and no remainder monomial divisible by the leading monomial of ``g``.
        """
        if not g:
            raise InvalidModulus("division by the zero polynomial")
        lm, lc = self.leading_term(g)
        try:
            lc_inv = self.base._inv(lc)
        except NotInvertible:
            raise InvalidModulus(
                f"leading coefficient {lc} of the divisor is not a unit in {self.base}"
            ) from None
        red = self.base._reduce
        tail = [(e, c) for e, c in g.items() if e != lm]
        p = dict(f)
        heap = [(_heap_key(e), e) for e in p]
        heapq.heapify(heap)
        quo: dict = {}
        rem: dict = {}
        sub = operator.sub
        add = operator.add
        while heap:
            _, e = heapq.heappop(heap)
            c = p.pop(e, None)
            if c is None:
                continue
            if all(x >= y for x, y in zip(e, lm)):
                d = tuple(map(sub, e, lm))
                t = red(c * lc_inv)
                q = red(quo.get(d, 0) + t)
                if q == 0:
                    quo.pop(d, None)
                else:
                    quo[d] = q
                for eg, cg in tail:
                    m = tuple(map(add, eg, d))
                    old = p.get(m)
                    new = red((old or 0) - t * cg)
                    if new == 0:
                        if old is not None:
                            del p[m]
                    else:
                        if old is None:
                            heapq.heappush(heap, (_heap_key(m), m))
                        p[m] = new
            else:
                rem[e] = c
        return quo, rem


@dataclass(frozen=True)
class QuotientRing(Ring):
    base: PolynomialRing
    modulus: "RingElt"
    _lm: tuple = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if not isinstance(self.base, PolynomialRing):
            raise Unsupported("quotients are only formed over polynomial rings")
        mod = self.modulus
        if isinstance(mod, str):
            mod = parse_poly(mod, self.base)
            object.__setattr__(self, "modulus", mod)
        if not isinstance(mod, RingElt) or mod.ring != self.base:
            raise CtxMismatch("the modulus must be an element of the base polynomial ring")
        if not mod.val:
            raise InvalidModulus("the modulus must be nonzero")
        if self.base._is_unit(mod.val):
            raise InvalidModulus("the modulus must not be a unit")
        lm, lc = self.base.leading_term(mod.val)
        if not self.base.base._is_unit(lc):
            raise InvalidModulus(f"leading coefficient {lc} of the modulus must be a unit")
        if not any(lm):
            raise InvalidModulus("a constant modulus gives the zero ring")
        object.__setattr__(self, "_lm", lm)

    @property
    def characteristic(self):
        return self.base.characteristic

    @property
    def vars(self):
        return self.base.vars

    def __str__(self):
        return f"{self.base}/({self.modulus})"

    def polynomial_ring(self) -> PolynomialRing:
        return self.base

    def gen(self, name: str) -> "RingElt":
        return RingElt(self, self._reduce_poly(self.base.gen(name).val))

    def gens(self):
        return tuple(self.gen(v) for v in self.vars)

    def _reduce_poly(self, a):
        if not any(all(x >= y for x, y in zip(e, self._lm)) for e in a):
            return a
        return self.base._divmod(a, self.modulus.val)[1]

    def _absorb(self, x: "RingElt"):
        if x.ring is self or x.ring == self:
            return x.val
        return self._reduce_poly(self.base._absorb(x))

    def _coerce(self, v):
        return self._reduce_poly(self.base._coerce(v))

    def _is_zero(self, a):
        return not a

    def _hash(self, a):
        return hash(frozenset(a.items()))

    def _add(self, a, b):
        return self.base._add(a, b)

    def _neg(self, a):
        return self.base._neg(a)

    def _mul(self, a, b):
        return self._reduce_poly(self.base._mul(a, b))

    def _is_unit(self, a):
        # Conservative: only unit constants are recognised as units.
        return self.base._is_unit(a)

    def _inv(self, a):
        if not self._is_unit(a):
            raise NotInvertible("only unit constants are recognised as invertible in a quotient ring")
        return self.base._inv(a)

    def _format(self, a):
        return self.base._format(a)

    def descriptor(self) -> dict:
        return {"kind": "quot", "base": self.base.descriptor(), "modulus": str(self.modulus)}


class RingElt:
    """An element of a ring context, in canonical form."""

    __slots__ = ("ring", "val")

    def __init__(self, ring: Ring, val):
        self.ring = ring
        self.val = val

    def _other(self, other):
        if isinstance(other, RingElt):
            if other.ring is self.ring or other.ring == self.ring:
                return other.val
            try:
                return self.ring._absorb(other)
            except CtxMismatch:
                try:
                    other.ring._absorb(self)
                except CtxMismatch:
                    raise CtxMismatch(f"{self.ring} vs {other.ring}") from None
                return NotImplemented
        if isinstance(other, (int, Fraction)):
            return self.ring._coerce(other)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return RingElt(self.ring, self.ring._add(self.val, o))

    __radd__ = __add__

    def __neg__(self):
        return RingElt(self.ring, self.ring._neg(self.val))

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return RingElt(self.ring, self.ring._add(self.val, self.ring._neg(o)))

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return RingElt(self.ring, self.ring._add(o, self.ring._neg(self.val)))

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return RingElt(self.ring, self.ring._mul(self.val, o))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = self.ring._coerce(1)
        base = self.val
        while n:
            if n & 1:
                result = self.ring._mul(result, base)
            n >>= 1
            if n:
                base = self.ring._mul(base, base)
        return RingElt(self.ring, result)

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return RingElt(self.ring, self.ring._mul(self.val, self.ring._inv(o)))

    def __eq__(self, other):
        if isinstance(other, RingElt):
            if other.ring is not self.ring and other.ring != self.ring:
                return False
            return self.ring._eq(self.val, other.val)
        if isinstance(other, (int, Fraction)):
            try:
                return self.ring._eq(self.val, self.ring._coerce(other))
            except (TypeError, NotInvertible):
                return False
        return NotImplemented

    def __hash__(self):
        return self.ring._hash(self.val)

    def __bool__(self):
        return not self.ring._is_zero(self.val)

    def is_zero(self) -> bool:
        return self.ring._is_zero(self.val)

    def is_unit(self) -> bool:
        return self.ring._is_unit(self.val)

    def inverse(self) -> "RingElt":
        return RingElt(self.ring, self.ring._inv(self.val))

    def __str__(self):
        return self.ring._format(self.val)

    def __repr__(self):
        return f"RingElt({str(self)!r})"

    # -- polynomial views ----------------------------------------------------------

    def terms(self) -> dict:
        self.ring.polynomial_ring()
        return dict(self.val)

    def lift(self) -> "RingElt":
        """The polynomial representative (identity on polynomial rings)."""
        return RingElt(self.ring.polynomial_ring(), self.val)

    def total_degree(self) -> int:
        self.ring.polynomial_ring()
        if not self.val:
            return -1
        return max(sum(e) for e in self.val)

    def is_homogeneous(self) -> bool:
        self.ring.polynomial_ring()
        return len({sum(e) for e in self.val}) <= 1

    def leading_monomial(self) -> tuple[int, ...]:
        return self.ring.polynomial_ring().leading_term(self.val)[0]

    def constant_coefficient(self):
        pr = self.ring.polynomial_ring()
        return self.val.get(pr._zero_exp(), 0)

    def evaluate(self, point: Sequence):
        """Evaluate a polynomial at raw coefficient-ring values; returns a raw value."""
        pr = self.ring.polynomial_ring()
        red = pr.base._reduce
        total = 0
        for e, c in self.val.items():
            t = c
            for x, k in zip(point, e):
                if k:
                    t = t * x**k
            total += t
        return red(total)


# -- text format -------------------------------------------------------------------


def format_poly(a: dict, names: Sequence[str], base: Ring) -> str:
    if not a:
        return "0"
    pieces = []
    for e in sorted(a, key=grevlex_key, reverse=True):
        c = a[e]
        mono = "*".join(
            (n if k == 1 else f"{n}^{k}") for n, k in zip(names, e) if k
        )
        neg = c < 0
        mag = -c if neg else c
        if mono:
            if mag == 1:
                body = mono
            else:
                body = f"{base._format(mag)}*{mono}"
        else:
            body = base._format(mag)
        pieces.append((neg, body))
    out = ("-" if pieces[0][0] else "") + pieces[0][1]
    for neg, body in pieces[1:]:
        out += (" - " if neg else " + ") + body
    return out


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


def _tokenize(text: str):
    pos = 0
    toks = []
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            break
        if m.group(1) is not None:
            toks.append(("num", int(m.group(1)), m.start(1)))
        elif m.group(2) is not None:
            toks.append(("var", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", m.start(3))
            toks.append((ch, ch, m.start(3)))
        pos = m.end()
    toks.append(("end", None, len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, ring: Ring):
        self.toks = _tokenize(text)
        self.i = 0
        self.ring = ring

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[1]!r}", tok[2])
        self.i += 1
        return tok

    def parse(self):
        if self.peek()[0] == "end":
            raise ParseError("empty polynomial text", 0)
        value = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected {tok[1]!r}", tok[2])
        return value

    def expr(self):
        value = self.term()
        while self.peek()[0] in "+-" and self.peek()[0] != "end":
            op = self.take()[0]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.peek()[0] in ("*", "/"):
            op, _, pos = self.take()
            rhs = self.unary()
            if op == "*":
                value = value * rhs
            else:
                try:
                    value = value / rhs
                except NotInvertible:
                    raise ParseError("division by a non-invertible element", pos) from None
        return value

    def unary(self):
        if self.peek()[0] == "-":
            self.take()
            return -self.unary()
        if self.peek()[0] == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        value = self.atom()
        if self.peek()[0] == "^":
            self.take()
            tok = self.take("num")
            value = value ** tok[1]
        return value

    def atom(self):
        kind, val, pos = self.peek()
        if kind == "num":
            self.take()
            return self.ring(val)
        if kind == "var":
            self.take()
            if not hasattr(self.ring, "gen"):
                raise ParseError(f"variable {val!r} in a ring without variables", pos)
            try:
                return self.ring.gen(val)
            except CtxMismatch:
                raise ParseError(f"unknown variable {val!r}", pos) from None
        if kind == "(":
            self.take()
            value = self.expr()
            self.take(")")
            return value
        raise ParseError(f"unexpected {val!r}", pos)


def parse_poly(text: str, ring: Ring) -> RingElt:
    """Parse ``"x1*y1 + x2*y2 - 1"``-style text into ``ring``."""
    if isinstance(ring, QuotientRing):
        return RingElt(ring, ring._reduce_poly(_Parser(text, ring.base).parse().val))
    return _Parser(text, ring).parse()


# -- normal forms ------------------------------------------------------------------


def _check_poly_pair(f: RingElt, g: RingElt) -> PolynomialRing:
    if not isinstance(f.ring, PolynomialRing):
        raise Unsupported("normal forms are computed in polynomial rings")
    if f.ring != g.ring:
        raise CtxMismatch(f"{f.ring} vs {g.ring}")
    return f.ring


def divide(f: RingElt, g: RingElt) -> tuple[RingElt, RingElt]:
    """``(q, r)`` with ``f = q*g + r`` and ``r`` reduced modulo the leading monomial of ``g``."""
    ring = _check_poly_pair(f, g)
    q, r = ring._divmod(f.val, g.val)
    return RingElt(ring, q), RingElt(ring, r)


def normal_form(f: RingElt, modulus: RingElt) -> RingElt:
    """Unique normal form of ``f`` modulo the principal ideal ``(modulus)``.

    One generator is a Groebner basis of the ideal it generates, so the
    remainder of multivariate division is canonical and vanishes exactly on
    the ideal.
    """
    ring = _check_poly_pair(f, modulus)
    if not modulus.val:
        raise InvalidModulus("the modulus must be nonzero")
    return RingElt(ring, ring._divmod(f.val, modulus.val)[1])


# -- quadrics ----------------------------------------------------------------------


def quadric_polynomial(n: int, base: Ring | None = None) -> tuple[PolynomialRing, RingElt]:
    """The defining polynomial of the affine quadric of dimension ``n``.

    Odd ``n = 2m-1``: ``sum x_i*y_i - 1``; even ``n = 2m``:
    ``sum x_i*y_i - z - z^2``.  Variables are ordered x1, y1, x2, y2, ..., z.
    """
    if not isinstance(n, int) or n <= 0:
        raise Unsupported(f"quadric dimension must be a positive integer, got {n!r}")
    base = Rationals() if base is None else base
    m = (n + 1) // 2 if n % 2 else n // 2
    names = [v for i in range(1, m + 1) for v in (f"x{i}", f"y{i}")]
    if n % 2 == 0:
        names.append("z")
    ring = PolynomialRing(base, tuple(names))
    g = ring.gens()
    poly = ring.zero()
    for i in range(m):
        poly = poly + g[2 * i] * g[2 * i + 1]
    if n % 2:
        poly = poly - 1
    else:
        z = g[-1]
        poly = poly - z - z * z
    return ring, poly


def quadric_ring(n: int, base: Ring | None = None) -> QuotientRing:
    """Coordinate ring of the split affine quadric ``Q_n`` over ``base``."""
    base = Rationals() if base is None else base
    if not base.is_field:
        raise Unsupported("quadric rings are built over a field")
    ring, poly = quadric_polynomial(n, base)
    return QuotientRing(ring, poly)


# -- finite field enumeration ------------------------------------------------------


def _compile(poly: RingElt):
    return [
        (c, tuple((i, k) for i, k in enumerate(e) if k)) for e, c in poly.val.items()
    ]


def _odometer(start: int, stop: int, p: int, k: int) -> Iterator[tuple[int, ...]]:
    digits = []
    n = start
    for _ in range(k):
        n, d = divmod(n, p)
        digits.append(d)
    digits.reverse()
    for _ in range(start, stop):
        yield tuple(digits)
        j = k - 1
        while j >= 0:
            digits[j] += 1
            if digits[j] < p:
                break
            digits[j] = 0
            j -= 1


def _scan(compiled, p: int, k: int, start: int, stop: int, collect: bool):
    found = [] if collect else 0
    for pt in _odometer(start, stop, p, k):
        for terms in compiled:
            s = 0
            for c, mono in terms:
                t = c
                for i, e in mono:
                    t *= pt[i] ** e
                s += t
            if s % p:
                break
        else:
            if collect:
                found.append(pt)
            else:
                found += 1
    return found


def _prepare(polys: Sequence[RingElt], ring: PolynomialRing | None, q: int | None, budget: int):
    polys = list(polys)
    if ring is None:
        if not polys:
            raise ValueError("an empty system needs an explicit ring")
        ring = polys[0].ring
    if not isinstance(ring, PolynomialRing) or not isinstance(ring.base, PrimeField):
        raise Unsupported("point enumeration needs a polynomial ring over a prime field")
    for f in polys:
        if f.ring != ring:
            raise CtxMismatch(f"{f.ring} vs {ring}")
    p = ring.base.p
    if q is not None and q != p:
        raise ValueError(f"q={q} does not match the field F{p}")
    k = ring.nvars
    total = p**k
    if total > budget:
        raise BudgetExceeded(f"{p}^{k} = {total} points exceeds the budget {budget}")
    return [_compile(f) for f in polys], p, k, total


def _partition(total: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, total))
    step, extra = divmod(total, parts)
    bounds = []
    lo = 0
    for i in range(parts):
        hi = lo + step + (1 if i < extra else 0)
        bounds.append((lo, hi))
        lo = hi
    return bounds


def _run_partitions(compiled, p, k, total, partitions, workers, collect):
    bounds = _partition(total, partitions)
    if workers > 1 and len(bounds) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=workers) as ex:
            futs = [ex.submit(_scan, compiled, p, k, lo, hi, collect) for lo, hi in bounds]
            return [f.result() for f in futs]
    return [_scan(compiled, p, k, lo, hi, collect) for lo, hi in bounds]


def enumerate_affine_points(
    polys: Iterable[RingElt],
    q: int | None = None,
    *,
    ring: PolynomialRing | None = None,
    budget: int = DEFAULT_BUDGET,
    partitions: int = 1,
    workers: int = 1,
) -> list[tuple[int, ...]]:
    """All points of F_p^k where every polynomial vanishes, in lexicographic order.

    The index range is split into ``partitions`` contiguous chunks which are
    merged in order, so the result does not depend on the partitioning.
    """
    compiled, p, k, total = _prepare(list(polys), ring, q, budget)
    chunks = _run_partitions(compiled, p, k, total, partitions, workers, True)
    return list(itertools.chain.from_iterable(chunks))


def count_affine_points(
    polys: Iterable[RingElt],
    q: int | None = None,
    *,
    ring: PolynomialRing | None = None,
    budget: int = DEFAULT_BUDGET,
    partitions: int = 1,
    workers: int = 1,
) -> int:
    compiled, p, k, total = _prepare(list(polys), ring, q, budget)
    return sum(_run_partitions(compiled, p, k, total, partitions, workers, False))


# -- random sampling ---------------------------------------------------------------


def random_element(ring: Ring, rng, *, bound: int = 3, degree: int = 1, nterms: int = 3) -> RingElt:
    """A small random element; ``rng`` is a :class:`random.Random`."""
    if isinstance(ring, Integers):
        return RingElt(ring, rng.randint(-bound, bound))
    if isinstance(ring, Rationals):
        return RingElt(ring, Fraction(rng.randint(-bound, bound), rng.randint(1, bound)))
    if isinstance(ring, PrimeField):
        return RingElt(ring, rng.randrange(ring.p))
    if isinstance(ring, PolynomialRing):
        acc = {}
        for _ in range(nterms):
            d = rng.randint(0, degree)
            exp = [0] * ring.nvars
            for _ in range(d):
                exp[rng.randrange(ring.nvars)] += 1
            c = random_element(ring.base, rng, bound=bound).val
            acc = ring._add(acc, {tuple(exp): c} if c != 0 else {})
        return RingElt(ring, acc)
    if isinstance(ring, QuotientRing):
        f = random_element(ring.base, rng, bound=bound, degree=degree, nterms=nterms)
        return RingElt(ring, ring._reduce_poly(f.val))
    raise Unsupported(f"no sampler for {ring}")
