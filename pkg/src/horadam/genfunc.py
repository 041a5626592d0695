"""Generating functions as exact rational functions of ``z``.

``Poly`` holds ascending rational coefficients; ``RationalFn`` is a ratio of
two of them with the denominator's constant term scaled to 1, which makes the
representation canonical once common factors are cancelled.
"""
from __future__ import annotations

import json
import re
from math import comb

from gmpy2 import mpq

from .arith import as_rational, format_rational, parse_rational
from .closed_forms import _lucas
from .core import HoradamParams, SeqKind, binet_coeffs
from .errors import DomainError, SurdResidue


class Poly:
    """Polynomial in ``z`` with exact rational coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [as_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def constant(cls, c) -> Poly:
        return cls([c])

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else mpq(0)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self), len(other))
        return Poly([self[i] + other[i] for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            k = as_rational(other)
            return Poly([c * k for c in self.coeffs])
        if self.is_zero() or other.is_zero():
            return Poly()
        out = [mpq(0)] * (len(self) + len(other) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __divmod__(self, other: Poly):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        lead = other.coeffs[-1]
        quot = [mpq(0)] * max(len(rem) - len(other) + 1, 0)
        for shift in range(len(quot) - 1, -1, -1):
            c = rem[shift + other.degree] / lead
            quot[shift] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[shift + j] -= c * b
        return Poly(quot), Poly(rem[:other.degree] if other.degree > 0 else [])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> Poly:
        if self.is_zero():
            return self
        return self * (1 / self.coeffs[-1])

    def __call__(self, z):
        acc = mpq(0)
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def __repr__(self):
        return f"Poly([{', '.join(format_rational(c) for c in self.coeffs)}])"

    def __str__(self):
        return render_poly(self)


def _as_poly(v) -> Poly:
    return v if isinstance(v, Poly) else Poly([v])


def poly_arith(lhs: Poly, rhs: Poly, op: str) -> Poly:
    if op == "add":
        return lhs + rhs
    if op == "sub":
        return lhs - rhs
    if op == "mul":
        return lhs * rhs
    raise ValueError(f"unknown operation {op!r}")


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor over Q (zero only when both inputs are)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def render_poly(poly: Poly, var: str = "z") -> str:
    """``c0 + c1*z + c2*z^2`` with nonzero terms only and signs folded in."""
    parts = []
    for i, c in enumerate(poly.coeffs):
        if c == 0:
            continue
        body = format_rational(abs(c))
        if i == 1:
            body += f"*{var}"
        elif i > 1:
            body += f"*{var}^{i}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts) if parts else "0"


_TERM_RE = re.compile(r"\s*([+-])?\s*(\d+(?:/\d+)?)(?:\*z(?:\^(\d+))?)?\s*")


def parse_poly(text: str) -> Poly:
    """Inverse of :func:`render_poly`."""
    text = text.strip()
    if text == "0":
        return Poly()
    coeffs = {}
    pos = 0
    while pos < len(text):
        m = _TERM_RE.match(text, pos)
        if m is None or m.end() == pos or (pos and m.group(1) is None):
            raise ValueError(f"invalid polynomial {text!r} at position {pos}")
        sign, body, power = m.groups()
        c = parse_rational(body)
        if sign == "-":
            c = -c
        if power is not None:
            deg = int(power)
        else:
            deg = 1 if "*z" in m.group(0) else 0
        coeffs[deg] = coeffs.get(deg, mpq(0)) + c
        pos = m.end()
    if not coeffs:
        raise ValueError(f"invalid polynomial {text!r}")
    return Poly([coeffs.get(i, mpq(0)) for i in range(max(coeffs) + 1)])


class RationalFn:
    """``num / den`` with ``den(0) == 1``."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly):
        num, den = _as_poly(num), _as_poly(den)
        lead = den[0]
        if lead == 0:
            raise DomainError("denominator must have a nonzero constant term")
        if lead != 1:
            num, den = num * (1 / lead), den * (1 / lead)
        if num.is_zero():
            den = Poly([1])
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFn is immutable")

    def reduced(self) -> RationalFn:
        """Cancel the polynomial gcd of numerator and denominator."""
        g = poly_gcd(self.num, self.den)
        if g.degree <= 0:
            return self
        return RationalFn(self.num // g, self.den // g)

    def __eq__(self, other):
        if isinstance(other, RationalFn):
            return self.num == other.num and self.den == other.den
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def equivalent(self, other: RationalFn) -> bool:
        """Equality as rational functions, regardless of common factors."""
        return self.num * other.den == other.num * self.den

    def __call__(self, z):
        z = as_rational(z)
        return self.num(z) / self.den(z)

    def __repr__(self):
        return f"RationalFn({self.num!r}, {self.den!r})"

    def __str__(self):
        return f"({render_poly(self.num)}) / ({render_poly(self.den)})"

    def to_json(self) -> str:
        return json.dumps({"num": [format_rational(c) for c in self.num.coeffs] or ["0"],
                           "den": [format_rational(c) for c in self.den.coeffs]})

    @classmethod
    def from_json(cls, text: str) -> RationalFn:
        data = json.loads(text)
        return cls(Poly(parse_rational(c) for c in data["num"]),
                   Poly(parse_rational(c) for c in data["den"]))

    @classmethod
    def parse(cls, text: str) -> RationalFn:
        m = re.fullmatch(r"\s*\((.*)\)\s*/\s*\((.*)\)\s*", text)
        if m is None:
            raise ValueError(f"invalid rational function {text!r}")
        return cls(parse_poly(m.group(1)), parse_poly(m.group(2)))


def series_coeffs(rf: RationalFn, m: int) -> list:
    """First ``m`` Taylor coefficients of ``rf`` at ``z = 0``."""
    den = rf.den.coeffs
    out = []
    for j in range(m):
        c = rf.num[j]
        for t in range(1, min(j, len(den) - 1) + 1):
            c -= den[t] * out[j - t]
        out.append(c)
    return out


def _combine(fractions, prefactor) -> RationalFn:
    """Sum ``(num0 + sqrt(D)*num1) / den`` terms over the product of distinct dens."""
    grouped = {}
    for num0, num1, den in fractions:
        acc = grouped.get(den)
        grouped[den] = (num0, num1) if acc is None else (acc[0] + num0, acc[1] + num1)
    dens = list(grouped)
    total0, total1 = Poly(), Poly()
    for idx, den in enumerate(dens):
        cofactor = Poly([1])
        for jdx, other in enumerate(dens):
            if jdx != idx:
                cofactor = cofactor * other
        num0, num1 = grouped[den]
        total0 = total0 + num0 * cofactor
        total1 = total1 + num1 * cofactor
    if not total1.is_zero():
        raise SurdResidue(f"generating function numerator keeps a sqrt part: {total1}")
    full_den = Poly([1])
    for den in dens:
        full_den = full_den * den
    return RationalFn(total0 * (1 / as_rational(prefactor)), full_den)


def gf_linear(params: HoradamParams, kind, r: int, s: int, *, reduce: bool = True) -> RationalFn:
    """``sum_{j>=0} t_{r*j+s} z^j`` as a rational function."""
    kind = SeqKind.coerce(kind)
    luc = _lucas(params)
    q = params.q
    den = Poly([1, -luc.v(r), q ** r])
    if kind is SeqKind.U:
        num = Poly([luc.u(s), q ** s * luc.u(r - s)])
    elif kind is SeqKind.V:
        num = Poly([luc.v(s), -q ** s * luc.v(r - s)])
    else:
        num = Poly([luc.w(s), -q ** r * luc.w(s - r)])
    rf = RationalFn(num, den)
    return rf.reduced() if reduce else rf


def gf_power(params: HoradamParams, kind, n: int, r: int, s: int, *, reduce: bool = True) -> RationalFn:
    """``sum_{j>=0} t_{r*j+s}^n z^j`` as a rational function.

    The ``n + 1`` partial fractions share at most ``ceil((n+1)/2)`` distinct
    quadratic denominators; they are combined over that product and, with
    ``reduce``, cancelled to lowest terms.
    """
    kind = SeqKind.coerce(kind)
    if n < 0:
        raise DomainError(f"power n must be nonnegative, got {n}")
    luc = _lucas(params)
    q = params.q
    dens = [Poly([1, -q ** (r * i) * luc.v(r * (n - 2 * i)), q ** (r * n)]) for i in range(n + 1)]
    fractions = []
    if kind is SeqKind.W:
        c = binet_coeffs(params, SeqKind.W)
        A, B, x, y = c.A, c.B, params.alpha, params.beta
        xy = x * y
        for i in range(n + 1):
            e = s * (n - 2 * i)
            fi = A ** (n - i) * B ** i
            gi = A ** i * B ** (n - i)
            weight = comb(n, i) * xy ** (s * i)
            base = (fi * x ** e + gi * y ** e) * weight
            lo = -(fi * x ** (e + r * i) * y ** (r * (n - i)) + gi * x ** (r * (n - i)) * y ** (e + r * i)) * weight
            fractions.append((Poly([base.c0, lo.c0]), Poly([base.c1, lo.c1]), dens[i]))
        prefactor = 2
    else:
        if kind is SeqKind.U:
            seq = luc.u if n % 2 else luc.v
            low_sign = 1 if n % 2 else -1
            prefactor = 2 * params.disc ** (n // 2)
        else:
            seq = luc.v
            low_sign = -1
            prefactor = 2
        for i in range(n + 1):
            m = n - 2 * i
            coef = comb(n, i) * q ** (s * i)
            if kind is SeqKind.U and i % 2:
                coef = -coef
            num = Poly([coef * seq(s * m), coef * low_sign * q ** (s * m + r * i) * seq((r - s) * m)])
            fractions.append((num, Poly(), dens[i]))
    rf = _combine(fractions, prefactor)
    return rf.reduced() if reduce else rf
