"""Closed-form partial sums and power sums over arithmetic-progression indices.

Two layers live here.  The generic engine works on arbitrary ring values
``f, g, x, y`` (rationals or :class:`~horadam.arith.QuadExt`):

* ``lemma1_*``: sums of ``f*x**(r*j+s) + g*y**(r*j+s)`` weighted by ``z**j``;
* ``lemma2_*``: the same with the bracket raised to a power ``n``.

Each comes in a degenerate-safe flavour (``lemma1_sum``, ``lemma2_power_sum``)
built from per-ratio geometric sums, and a quotient flavour
(``lemma1_closed``, ``lemma2_closed``, ``*_inf``) that mirrors the displayed
rational expressions and raises :class:`DenominatorVanishes` where they are
undefined.

The sequence layer (``sum_linear``, ``sum_power``) specialises the quotients
to Lucas and Horadam sequences, and ``brute_sum`` is the direct-summation
oracle they are checked against.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb

from gmpy2 import mpq

from .arith import QuadExt, Rational, as_rational, rational_sqrt
from .core import HoradamParams, SeqKind, _recurrence, binet_coeffs
from .errors import DenominatorVanishes, DomainError, NotInvertible


@dataclass(frozen=True)
class SumSpec:
    """``sum_{j=0}^{k} t_{r*j+s}^n * z^j`` for the sequence selected by ``kind``."""

    kind: SeqKind
    n: int
    r: int
    s: int
    k: int
    z: mpq

    def __post_init__(self):
        if not isinstance(self.kind, SeqKind):
            object.__setattr__(self, "kind", SeqKind.coerce(self.kind))
        if type(self.z) is not Rational:
            object.__setattr__(self, "z", as_rational(self.z))
        for name in ("n", "r", "s", "k"):
            value = getattr(self, name)
            if type(value) is not int:
                object.__setattr__(self, name, int(value))
        if self.n < 0:
            raise DomainError(f"power n must be nonnegative, got {self.n}")
        _check_k(self.k)


@dataclass(frozen=True)
class LemmaArgs:
    f: object
    g: object
    x: object
    y: object
    r: int
    s: int
    z: object
    k: int = -1
    n: int = 1

    def __post_init__(self):
        _check_k(self.k)
        if self.n < 0:
            raise DomainError(f"power n must be nonnegative, got {self.n}")


def _check_k(k):
    if k < -1:
        raise DomainError(f"upper limit k must be >= -1 (k = -1 is the empty sum), got {k}")


# ---------------------------------------------------------------------------
# ring helpers: the engine accepts plain rationals and QuadExt alike

def _one_like(v):
    if isinstance(v, QuadExt):
        return QuadExt._raw(mpq(1), mpq(0), v.disc)
    return mpq(1)


def _zero_like(v):
    if isinstance(v, QuadExt):
        return QuadExt._raw(mpq(0), mpq(0), v.disc)
    return mpq(0)


def _lift(v):
    return v if isinstance(v, QuadExt) else as_rational(v)


def _is_unit(v) -> bool:
    if isinstance(v, QuadExt):
        return v.norm() != 0
    return v != 0


def _is_zero(v) -> bool:
    if isinstance(v, QuadExt):
        return v.c0 == 0 and v.c1 == 0
    return v == 0


def _scalar_geom(t, k):
    if t == 1:
        return mpq(k + 1)
    return (t ** (k + 1) - 1) / (t - 1)


def geom_ratio_sum(t, k: int):
    """``sum_{j=0}^{k} t**j`` exactly, including the degenerate ratio ``t == 1``.

    When D is a perfect square Q[sqrt(D)] splits as Q x Q and ``t - 1`` can be
    a nonzero zero divisor; the sum is then taken componentwise.
    """
    _check_k(k)
    if k == -1:
        return _zero_like(t)
    if t == 1:
        return _one_like(t) * (k + 1)
    if not isinstance(t, QuadExt):
        return (t ** (k + 1) - 1) / (t - 1)
    if (t - 1).norm() != 0:
        return (t ** (k + 1) - 1) / (t - 1)
    d = rational_sqrt(t.disc)
    plus = _scalar_geom(t.c0 + t.c1 * d, k)
    minus = _scalar_geom(t.c0 - t.c1 * d, k)
    return QuadExt._raw((plus + minus) / 2, (plus - minus) / (2 * d), t.disc)


def geom_partial(x, r: int, s: int, k: int, z):
    """``sum_{j=0}^{k} x**(r*j+s) * z**j``.

    Uses ``(x**(r*k+r+s) * z**(k+1) - x**s) / (x**r * z - 1)``, or
    ``(k+1) * x**s`` when the ratio ``x**r * z`` equals one.
    """
    x, z = _lift(x), _lift(z)
    _check_k(k)
    ratio = x ** r * z
    if k == -1:
        return _zero_like(ratio)
    if ratio == 1:
        return x ** s * (k + 1)
    if _is_unit(ratio - 1):
        return (x ** (r * k + r + s) * z ** (k + 1) - x ** s) / (ratio - 1)
    return x ** s * geom_ratio_sum(ratio, k)


# ---------------------------------------------------------------------------
# linear engine

def lemma1_sum(args: LemmaArgs):
    """``sum_{j=0}^{k} (f*x**(r*j+s) + g*y**(r*j+s)) * z**j``, degenerate-safe."""
    f, g = _lift(args.f), _lift(args.g)
    return (f * geom_partial(args.x, args.r, args.s, args.k, args.z)
            + g * geom_partial(args.y, args.r, args.s, args.k, args.z))


def _lemma1_denominator(x, y, r, z):
    xr, yr = x ** r, y ** r
    den = (x * y) ** r * z * z - (xr + yr) * z + 1
    if not _is_unit(den):
        bad = [name for name, v in (("x^r z = 1", xr * z), ("y^r z = 1", yr * z))
               if not _is_unit(v - 1)]
        raise DenominatorVanishes(
            f"(xy)^r z^2 - (x^r + y^r) z + 1 is not invertible ({', '.join(bad) or 'zero divisor'})",
            factor=bad[0] if bad else None)
    return den


def lemma1_closed(args: LemmaArgs):
    """The four-term quotient for the finite linear sum."""
    f, g, x, y, z = (_lift(v) for v in (args.f, args.g, args.x, args.y, args.z))
    r, s, k = args.r, args.s, args.k
    den = _lemma1_denominator(x, y, r, z)
    xy_r = (x * y) ** r
    num = (xy_r * (f * x ** (r * k + s) + g * y ** (r * k + s)) * z ** (k + 2)
           - (f * x ** (r * k + r + s) + g * y ** (r * k + r + s)) * z ** (k + 1)
           - xy_r * (f * x ** (s - r) + g * y ** (s - r)) * z
           + (f * x ** s + g * y ** s))
    return num / den


def lemma1_inf(args: LemmaArgs):
    """Formal infinite sum: the finite quotient without its ``z**k`` terms."""
    f, g, x, y, z = (_lift(v) for v in (args.f, args.g, args.x, args.y, args.z))
    r, s = args.r, args.s
    den = _lemma1_denominator(x, y, r, z)
    num = (f * x ** s + g * y ** s) - (x * y) ** r * (f * x ** (s - r) + g * y ** (s - r)) * z
    return num / den


# ---------------------------------------------------------------------------
# power engine

def _binomial_pairs(f, g, n):
    # f**(n-i) * g**i == (f*g)**i * f**(n-2i) without inverting f or g
    fp = [_one_like(f)]
    gp = [_one_like(g)]
    for _ in range(n):
        fp.append(fp[-1] * f)
        gp.append(gp[-1] * g)
    return [(fp[n - i] * gp[i], fp[i] * gp[n - i]) for i in range(n + 1)]


def lemma2_power_sum(args: LemmaArgs):
    """``sum_{j=0}^{k} (f*x**(r*j+s) + g*y**(r*j+s))**n * z**j``, degenerate-safe.

    Expands the power binomially, symmetrises over ``i <-> n-i`` and sums each
    term as a geometric progression, so it never divides by a vanishing
    factor.
    """
    f, g, x, y, z = (_lift(v) for v in (args.f, args.g, args.x, args.y, args.z))
    r, s, k, n = args.r, args.s, args.k, args.n
    total = _zero_like(f * x * z)
    for i, (fi, gi) in enumerate(_binomial_pairs(f, g, n)):
        lead = fi * x ** (s * (n - i)) * y ** (s * i)
        trail = gi * x ** (s * i) * y ** (s * (n - i))
        total = total + comb(n, i) * (
            lead * geom_ratio_sum(x ** (r * (n - i)) * y ** (r * i) * z, k)
            + trail * geom_ratio_sum(x ** (r * i) * y ** (r * (n - i)) * z, k))
    return total / 2


def _lemma2_denominator(x, y, r, n, i, z):
    xy = x * y
    den = xy ** (r * n) * z * z - xy ** (r * i) * (x ** (r * (n - 2 * i)) + y ** (r * (n - 2 * i))) * z + 1
    if not _is_unit(den):
        raise DenominatorVanishes(f"denominator of binomial term i={i} vanishes", index=i,
                                  factor=f"i={i}")
    return den


def lemma2_closed(args: LemmaArgs, *, infinite: bool = False):
    """Quotient form of the power sum (``infinite=True`` drops the ``z**k`` terms)."""
    f, g, x, y, z = (_lift(v) for v in (args.f, args.g, args.x, args.y, args.z))
    r, s, k, n = args.r, args.s, args.k, args.n
    xy = x * y
    dens = [_lemma2_denominator(x, y, r, n, i, z) for i in range(n + 1)]
    total = _zero_like(f * x * z)
    for i, (fi, gi) in enumerate(_binomial_pairs(f, g, n)):
        e = s * (n - 2 * i)
        lo = fi * x ** (e + r * i) * y ** (r * (n - i)) + gi * x ** (r * (n - i)) * y ** (e + r * i)
        base = fi * x ** e + gi * y ** e
        num = base - lo * z
        if not infinite:
            e2 = e + r * n * (k + 1) - r * i * k
            hi2 = fi * x ** e2 * y ** (r * (i * k + n)) + gi * x ** (r * (i * k + n)) * y ** e2
            e1 = e + (r * n - r * i) * (k + 1)
            hi1 = fi * x ** e1 * y ** (r * i * (k + 1)) + gi * x ** (r * i * (k + 1)) * y ** e1
            num = num + hi2 * z ** (k + 2) - hi1 * z ** (k + 1)
        total = total + num * (comb(n, i) * xy ** (s * i)) / dens[i]
    return total / 2


def lemma2_inf(args: LemmaArgs):
    return lemma2_closed(args, infinite=True)


# ---------------------------------------------------------------------------
# sequence layer


class _Lucas:
    """Per-family cache of u_m, v_m, w_m from the Binet form."""

    def __init__(self, params: HoradamParams):
        self.params = params
        self.alpha, self.beta = params.alpha, params.beta
        self.coeffs = binet_coeffs(params, SeqKind.W)
        self.root_gap_inv = (self.alpha - self.beta).inv()
        self._u, self._v, self._w = {}, {}, {}
        self._ap, self._bp, self._qp, self._pairs = {}, {}, {}, {}

    def apow(self, e):
        try:
            return self._ap[e]
        except KeyError:
            val = self._ap[e] = self.alpha ** e
            return val

    def bpow(self, e):
        try:
            return self._bp[e]
        except KeyError:
            val = self._bp[e] = self.beta ** e
            return val

    def qpow(self, e):
        try:
            return self._qp[e]
        except KeyError:
            val = self._qp[e] = self.params.q ** e
            return val

    def binomial_pairs(self, n):
        """``(A**(n-i) * B**i, A**i * B**(n-i))`` for i = 0..n."""
        try:
            return self._pairs[n]
        except KeyError:
            val = self._pairs[n] = _binomial_pairs(self.coeffs.A, self.coeffs.B, n)
            return val

    def u(self, m):
        try:
            return self._u[m]
        except KeyError:
            val = self._u[m] = ((self.apow(m) - self.bpow(m)) * self.root_gap_inv).to_rational()
            return val

    def v(self, m):
        try:
            return self._v[m]
        except KeyError:
            val = self._v[m] = (self.apow(m) + self.bpow(m)).to_rational()
            return val

    def w(self, m):
        try:
            return self._w[m]
        except KeyError:
            c = self.coeffs
            val = self._w[m] = (c.A * self.apow(m) + c.B * self.bpow(m)).to_rational()
            return val

    def term(self, kind, m):
        if kind is SeqKind.U:
            return self.u(m)
        if kind is SeqKind.V:
            return self.v(m)
        return self.w(m)


def _lucas(params: HoradamParams) -> _Lucas:
    memo = params.memo
    try:
        return memo["lucas"]
    except KeyError:
        luc = memo["lucas"] = _Lucas(params)
        return luc


def linear_denominator(params: HoradamParams, r: int, z) -> mpq:
    """``q**r * z**2 - v_r * z + 1``."""
    z = as_rational(z)
    return params.q ** r * z * z - _lucas(params).v(r) * z + 1


def sum_linear(params: HoradamParams, spec: SumSpec) -> mpq:
    """Closed form of ``sum_{j=0}^{k} t_{r*j+s} * z**j`` for t in {u, v, w}."""
    if spec.n != 1:
        raise DomainError(f"sum_linear needs n = 1, got n = {spec.n}")
    luc = _lucas(params)
    q = params.q
    r, s, k, z = spec.r, spec.s, spec.k, spec.z
    den = q ** r * z * z - luc.v(r) * z + 1
    if den == 0:
        raise DenominatorVanishes(f"q^r z^2 - v_r z + 1 vanishes at r={r}, z={z}", factor="linear")
    kind = spec.kind
    if kind is SeqKind.U:
        middle = q ** s * luc.u(r - s) * z
    elif kind is SeqKind.V:
        middle = -q ** s * luc.v(r - s) * z
    else:
        middle = -q ** r * luc.w(s - r) * z
    t = luc.term
    num = (q ** r * t(kind, r * k + s) * z ** (k + 2)
           - t(kind, r * k + r + s) * z ** (k + 1)
           + middle + t(kind, s))
    return num / den


def power_denominators(params: HoradamParams, n: int, r: int, z) -> list[mpq]:
    """``q**(r*n) z**2 - q**(r*i) v_{r(n-2i)} z + 1`` for i = 0..n."""
    luc = _lucas(params)
    z = as_rational(z)
    qpow, v = luc.qpow, luc.v
    head = qpow(r * n) * z * z + 1
    return [head - qpow(r * i) * v(r * (n - 2 * i)) * z for i in range(n + 1)]


def _checked_denominators(params, n, r, z):
    dens = power_denominators(params, n, r, z)
    for i, den in enumerate(dens):
        if den == 0:
            raise DenominatorVanishes(f"denominator of binomial term i={i} vanishes "
                                      f"(n={n}, r={r}, z={z})", index=i, factor=f"i={i}")
    return dens


def _lucas_power_sum(params, kind, n, r, s, k, z, *, infinite=False):
    # returns (total, prefactor) with sum = total / prefactor
    luc = _lucas(params)
    qpow = luc.qpow
    dens = _checked_denominators(params, n, r, z)
    if kind is SeqKind.U:
        seq = luc.u if n % 2 else luc.v
        sign_alt = True
        low_sign = 1 if n % 2 else -1
        prefactor = 2 * params.disc ** (n // 2)
    else:
        seq = luc.v
        sign_alt = False
        low_sign = -1
        prefactor = mpq(2)
    zk1 = None if infinite else z ** (k + 1)
    total = mpq(0)
    for i in range(n + 1):
        m = n - 2 * i
        coef = comb(n, i) * qpow(s * i)
        if sign_alt and i % 2:
            coef = -coef
        num = low_sign * qpow(s * m + r * i) * seq((r - s) * m) * z + seq(s * m)
        if not infinite:
            num += (qpow(r * (n + k * i)) * seq((r * k + s) * m) * z
                    - qpow(r * i * (k + 1)) * seq((r * k + r + s) * m)) * zk1
        total += coef * num / dens[i]
    return total, prefactor


def _horadam_power_sum(params, n, r, s, k, z, *, infinite=False) -> QuadExt:
    # Twice the sum, with A, B, alpha, beta kept in Q[sqrt(D)].  alpha*beta = q
    # folds every monomial alpha^e1 * beta^e2 onto one cached power times a
    # rational; hot loop works on (c0, c1) pairs to skip object churn.
    luc = _lucas(params)
    q, disc = params.q, params.disc
    dens = _checked_denominators(params, n, r, z)
    pairs = luc.binomial_pairs(n)
    apow, bpow, qpow = luc.apow, luc.bpow, luc.qpow

    def mono(c, e1, e2):
        # c * alpha^e1 * beta^e2 as a pair
        if e1 >= e2:
            p0, p1, _ = apow(e1 - e2)
            scale = qpow(e2)
        else:
            p0, p1, _ = bpow(e2 - e1)
            scale = qpow(e1)
        c0, c1 = c
        return (c0 * p0 + c1 * p1 * disc) * scale, (c0 * p1 + c1 * p0) * scale

    zk1 = z ** (k + 1)
    zk2 = zk1 * z
    t0 = t1 = mpq(0)
    for i, (fi, gi) in enumerate(pairs):
        fi, gi = (fi.c0, fi.c1), (gi.c0, gi.c1)
        e = s * (n - 2 * i)
        a0, a1 = mono(fi, e, 0)
        b0, b1 = mono(gi, 0, e)
        n0, n1 = a0 + b0, a1 + b1
        a0, a1 = mono(fi, e + r * i, r * (n - i))
        b0, b1 = mono(gi, r * (n - i), e + r * i)
        n0 -= (a0 + b0) * z
        n1 -= (a1 + b1) * z
        if not infinite:
            e2, f2 = e + r * n * (k + 1) - r * i * k, r * (i * k + n)
            a0, a1 = mono(fi, e2, f2)
            b0, b1 = mono(gi, f2, e2)
            n0 += (a0 + b0) * zk2
            n1 += (a1 + b1) * zk2
            e1, f1 = e + (r * n - r * i) * (k + 1), r * i * (k + 1)
            a0, a1 = mono(fi, e1, f1)
            b0, b1 = mono(gi, f1, e1)
            n0 -= (a0 + b0) * zk1
            n1 -= (a1 + b1) * zk1
        w = comb(n, i) * qpow(s * i) / dens[i]
        t0 += n0 * w
        t1 += n1 * w
    return QuadExt._raw(t0, t1, disc)


def sum_power(params: HoradamParams, spec: SumSpec) -> mpq:
    """Closed form of ``sum_{j=0}^{k} t_{r*j+s}**n * z**j`` for t in {u, v, w}.

    u and v use the Lucas-sequence expressions (u divides out its
    ``2*D**floor(n/2)`` prefactor); w works in Q[sqrt(D)] and the surd part
    must cancel.
    """
    kind = spec.kind
    if kind is SeqKind.W:
        twice = _horadam_power_sum(params, spec.n, spec.r, spec.s, spec.k, spec.z)
        return twice.to_rational() / 2
    total, prefactor = _lucas_power_sum(params, kind, spec.n, spec.r, spec.s, spec.k, spec.z)
    return total / prefactor


def brute_sum(params: HoradamParams, spec: SumSpec) -> mpq:
    """Direct accumulation of the sum from recurrence terms; defined for every z."""
    fam = params.with_kind(spec.kind)
    a, b, p, q = fam.a, fam.b, fam.p, fam.q
    n, r, s, z = spec.n, spec.r, spec.s, spec.z
    total = mpq(0)
    zj = mpq(1)
    for j in range(spec.k + 1):
        total += _recurrence(a, b, p, q, r * j + s) ** n * zj
        zj *= z
    return total
