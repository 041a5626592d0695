"""Exact rationals and the quadratic ring Q[sqrt(D)].

Rationals are ``gmpy2.mpq`` values: always reduced, denominator positive,
zero stored as 0/1.  ``QuadExt`` is an immutable element ``c0 + c1*sqrt(D)``
that carries its own discriminant so that elements of different rings cannot
be mixed silently.
"""
from __future__ import annotations

import re
from collections import namedtuple
from fractions import Fraction
from numbers import Rational as _RationalABC

import gmpy2
from gmpy2 import mpq

from .errors import DiscMismatch, NotInvertible, SurdResidue

Rational = type(mpq())
_MPZ = type(gmpy2.mpz())

_RATIONAL_RE = re.compile(r"[+-]?\d+(?:/\d+)?")


def as_rational(value) -> mpq:
    """Coerce ints, Fractions, mpq or rational text to an exact rational."""
    if isinstance(value, Rational):
        return value
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, bool):
        raise TypeError("bool is not a rational value")
    if isinstance(value, (int, _MPZ, Fraction, _RationalABC)):
        return mpq(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def parse_rational(text: str) -> mpq:
    """Parse ``n`` or ``n/d`` with an optional sign.

    Decimal points and exponents are rejected; a ``ValueError`` names the
    first offending character position.
    """
    s = text.strip()
    offset = len(text) - len(text.lstrip())
    m = _RATIONAL_RE.match(s)
    if not s:
        raise ValueError(f"empty rational {text!r}")
    if m is None or m.end() != len(s):
        pos = offset + (m.end() if m else 0)
        raise ValueError(f"invalid rational {text!r} at position {pos}")
    num, _, den = s.partition("/")
    if den and int(den) == 0:
        raise ValueError(f"zero denominator in {text!r} at position {offset + len(num) + 1}")
    return mpq(int(num), int(den) if den else 1)


def format_rational(x) -> str:
    x = as_rational(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def rational_sqrt(x) -> mpq | None:
    """Exact square root of a nonnegative rational, or None if irrational."""
    x = as_rational(x)
    if x < 0:
        return None
    n, d = gmpy2.mpz(x.numerator), gmpy2.mpz(x.denominator)
    if gmpy2.is_square(n) and gmpy2.is_square(d):
        return mpq(gmpy2.isqrt(n), gmpy2.isqrt(d))
    return None


_QuadFields = namedtuple("_QuadFields", "c0 c1 disc")
_tuple_new = tuple.__new__


class QuadExt(_QuadFields):
    """Element ``c0 + c1*sqrt(disc)`` of Q[sqrt(disc)]."""

    __slots__ = ()

    def __new__(cls, c0=0, c1=0, disc=5):
        disc = as_rational(disc)
        if disc == 0:
            raise ValueError("discriminant must be nonzero")
        return _tuple_new(cls, (as_rational(c0), as_rational(c1), disc))

    @classmethod
    def _raw(cls, c0, c1, disc):
        return _tuple_new(cls, (c0, c1, disc))

    @classmethod
    def rational(cls, value, disc) -> QuadExt:
        return cls._raw(as_rational(value), mpq(0), as_rational(disc))

    @classmethod
    def sqrt(cls, disc) -> QuadExt:
        """The element sqrt(disc) itself."""
        return cls._raw(mpq(0), mpq(1), as_rational(disc))

    def __bool__(self):
        return self.c0 != 0 or self.c1 != 0

    def _coerce(self, other) -> QuadExt:
        if isinstance(other, QuadExt):
            if other.disc != self.disc:
                raise DiscMismatch(f"sqrt({other.disc}) mixed with sqrt({self.disc})")
            return other
        return _tuple_new(QuadExt, (as_rational(other), mpq(0), self.disc))

    # ring operations

    def __add__(self, other):
        if isinstance(other, QuadExt):
            if other.disc != self.disc:
                raise DiscMismatch(f"sqrt({other.disc}) mixed with sqrt({self.disc})")
            return _tuple_new(QuadExt, (self.c0 + other.c0, self.c1 + other.c1, self.disc))
        return _tuple_new(QuadExt, (self.c0 + as_rational(other), self.c1, self.disc))

    __radd__ = __add__

    def __neg__(self):
        return _tuple_new(QuadExt, (-self.c0, -self.c1, self.disc))

    def __sub__(self, other):
        other = self._coerce(other)
        return _tuple_new(QuadExt, (self.c0 - other.c0, self.c1 - other.c1, self.disc))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, QuadExt):
            if other.disc != self.disc:
                raise DiscMismatch(f"sqrt({other.disc}) mixed with sqrt({self.disc})")
            a0, a1, b0, b1 = self.c0, self.c1, other.c0, other.c1
            return _tuple_new(QuadExt, (a0 * b0 + a1 * b1 * self.disc, a0 * b1 + a1 * b0, self.disc))
        k = as_rational(other)
        return _tuple_new(QuadExt, (self.c0 * k, self.c1 * k, self.disc))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, QuadExt):
            return self * self._coerce(other).inv()
        k = as_rational(other)
        if k == 0:
            raise NotInvertible("division by zero")
        return _tuple_new(QuadExt, (self.c0 / k, self.c1 / k, self.disc))

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inv()

    def __pow__(self, e: int):
        e = int(e)
        if e < 0:
            return self.inv() ** (-e)
        result = _tuple_new(QuadExt, (mpq(1), mpq(0), self.disc))
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def conj(self) -> QuadExt:
        return _tuple_new(QuadExt, (self.c0, -self.c1, self.disc))

    def norm(self) -> mpq:
        return self.c0 * self.c0 - self.disc * self.c1 * self.c1

    def inv(self) -> QuadExt:
        n = self.norm()
        if n == 0:
            raise NotInvertible(f"{self} has zero norm")
        return _tuple_new(QuadExt, (self.c0 / n, -self.c1 / n, self.disc))

    def is_unit(self) -> bool:
        return self.norm() != 0

    # predicates and conversion

    @property
    def is_rational(self) -> bool:
        return self.c1 == 0

    def is_zero(self) -> bool:
        return self.c0 == 0 and self.c1 == 0

    def to_rational(self) -> mpq:
        if self.c1 != 0:
            raise SurdResidue(f"{self} is not rational")
        return self.c0

    def __eq__(self, other):
        if isinstance(other, QuadExt):
            return self.c0 == other.c0 and self.c1 == other.c1 and self.disc == other.disc
        try:
            return self.c1 == 0 and self.c0 == as_rational(other)
        except TypeError:
            return NotImplemented

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def _unordered(self, other):
        raise TypeError("QuadExt values are not ordered")

    __lt__ = __le__ = __gt__ = __ge__ = _unordered

    def __hash__(self):
        if self.c1 == 0:
            return hash(self.c0)
        return hash((self.c0, self.c1, self.disc))

    def __repr__(self):
        return f"QuadExt({format_rational(self.c0)!r}, {format_rational(self.c1)!r}, disc={format_rational(self.disc)!r})"

    def __str__(self):
        return f"{format_rational(self.c0)} + {format_rational(self.c1)}*sqrt({format_rational(self.disc)})"

    @classmethod
    def parse(cls, text: str) -> QuadExt:
        m = _QUAD_RE.match(text)
        if m is None:
            raise ValueError(f"invalid quadratic element {text!r}")
        c0, sign, c1, disc = m.groups()
        c1 = parse_rational(c1)
        return cls(parse_rational(c0), -c1 if sign == "-" else c1, parse_rational(disc))


_R = r"[+-]?\d+(?:/\d+)?"
_QUAD_RE = re.compile(rf"^\s*({_R})\s*([+-])\s*({_R})\s*\*\s*sqrt\(\s*({_R})\s*\)\s*$")


def qx_arith(lhs: QuadExt, rhs: QuadExt, op: str) -> QuadExt:
    if lhs.disc != rhs.disc:
        raise DiscMismatch(f"sqrt({lhs.disc}) mixed with sqrt({rhs.disc})")
    if op == "add":
        return lhs + rhs
    if op == "sub":
        return lhs - rhs
    if op == "mul":
        return lhs * rhs
    raise ValueError(f"unknown operation {op!r}")


def qx_inv(x: QuadExt) -> QuadExt:
    return x.inv()


def qx_pow(x: QuadExt, e: int) -> QuadExt:
    return x ** e


def qx_conj_norm(x: QuadExt) -> tuple[QuadExt, mpq]:
    return x.conj(), x.norm()


def qx_to_rational(x: QuadExt) -> mpq:
    return x.to_rational()
