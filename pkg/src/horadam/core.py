"""Horadam sequence families and term evaluation at any integer index."""
from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from functools import cached_property, lru_cache

from gmpy2 import mpq

from .arith import QuadExt, as_rational
from .errors import DegenerateDiscriminant, InvalidParam


class SeqKind(enum.Enum):
    U = "u"
    V = "v"
    W = "w"

    @classmethod
    def coerce(cls, value) -> SeqKind:
        if isinstance(value, cls):
            return value
        return cls(str(value).lower())


@dataclass(frozen=True)
class HoradamParams:
    """``w_0 = a``, ``w_1 = b``, ``w_n = p*w_{n-1} - q*w_{n-2}``.

    Build instances through :func:`make_params`, which validates them.
    """

    a: mpq
    b: mpq
    p: mpq
    q: mpq
    disc: mpq

    @cached_property
    def memo(self) -> dict:
        """Per-family scratch space for derived caches (not part of equality)."""
        return {}

    @cached_property
    def alpha(self) -> QuadExt:
        half = mpq(1, 2)
        return QuadExt._raw(self.p * half, half, self.disc)

    @cached_property
    def beta(self) -> QuadExt:
        half = mpq(1, 2)
        return QuadExt._raw(self.p * half, -half, self.disc)

    def with_kind(self, kind) -> HoradamParams:
        """Same (p, q) with the initial values that ``kind`` prescribes."""
        kind = SeqKind.coerce(kind)
        if kind is SeqKind.U:
            if self.a == 0 and self.b == 1:
                return self
            return replace(self, a=mpq(0), b=mpq(1))
        if kind is SeqKind.V:
            if self.a == 2 and self.b == self.p:
                return self
            return replace(self, a=mpq(2), b=self.p)
        return self


@dataclass(frozen=True)
class BinetCoeffs:
    A: QuadExt
    B: QuadExt


def make_params(a, b, p, q) -> HoradamParams:
    a, b, p, q = (as_rational(v) for v in (a, b, p, q))
    if p == 0:
        raise InvalidParam("p must be nonzero")
    if q == 0:
        raise InvalidParam("q must be nonzero")
    disc = p * p - 4 * q
    if disc == 0:
        raise DegenerateDiscriminant(f"p^2 - 4q = 0 for p={p}, q={q}: repeated root")
    return HoradamParams(a, b, p, q, disc)


def roots(params: HoradamParams) -> tuple[QuadExt, QuadExt]:
    """Return ``(alpha, beta) = ((p + sqrt(D))/2, (p - sqrt(D))/2)``."""
    return params.alpha, params.beta


def binet_coeffs(params: HoradamParams, kind=SeqKind.W) -> BinetCoeffs:
    return _binet_coeffs(params.with_kind(kind))


@lru_cache(maxsize=1024)
def _binet_coeffs(params: HoradamParams) -> BinetCoeffs:
    alpha, beta = params.alpha, params.beta
    root_gap = alpha - beta
    A = (params.b - beta * params.a) / root_gap
    B = (alpha * params.a - params.b) / root_gap
    return BinetCoeffs(A, B)


def term_by_recurrence(params: HoradamParams, kind, n: int) -> mpq:
    """Exact ``w_n`` by stepping the recurrence forwards or backwards."""
    fam = params.with_kind(kind)
    return _recurrence(fam.a, fam.b, fam.p, fam.q, int(n))


@lru_cache(maxsize=1 << 16)
def _recurrence(a, b, p, q, n):
    if n >= 0:
        prev, cur = a, b
        if n == 0:
            return prev
        for _ in range(n - 1):
            prev, cur = cur, p * cur - q * prev
        return cur
    # w_{m-1} = (p*w_m - w_{m+1}) / q
    cur, nxt = a, b
    for _ in range(-n):
        cur, nxt = (p * cur - nxt) / q, cur
    return cur


def term_by_binet(params: HoradamParams, kind, n: int) -> mpq:
    """Exact ``w_n = A*alpha^n + B*beta^n`` evaluated in Q[sqrt(D)]."""
    c = binet_coeffs(params, kind)
    n = int(n)
    return (c.A * params.alpha ** n + c.B * params.beta ** n).to_rational()
