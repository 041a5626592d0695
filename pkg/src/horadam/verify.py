"""Grid verification of the closed forms against direct summation.

Used by ``horadam verify`` and by the acceptance tests.  Every check returns a
:class:`CheckResult` so callers can report counts without re-running.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from itertools import product

from gmpy2 import mpq

from .arith import QuadExt
from .closed_forms import (
    LemmaArgs, SumSpec, brute_sum, lemma1_sum, lemma2_power_sum, sum_linear, sum_power,
)
from .core import SeqKind, make_params, term_by_binet, term_by_recurrence
from .errors import DegenerateDiscriminant, DenominatorVanishes, HoradamError
from .genfunc import gf_linear, gf_power, series_coeffs


@dataclass(frozen=True)
class Grid:
    p_values: tuple
    q_values: tuple
    r_values: tuple
    s_values: tuple
    k_values: tuple
    n_values: tuple
    z_values: tuple


FULL = Grid(
    p_values=(1, 2, 3, -1),
    q_values=(-1, 1, 2, -2),
    r_values=tuple(range(-3, 4)),
    s_values=tuple(range(-4, 5)),
    k_values=tuple(range(-1, 9)),
    n_values=tuple(range(0, 6)),
    z_values=(mpq(1), mpq(-1), mpq(1, 2), mpq(-2, 3)),
)

SMALL = Grid(
    p_values=(1, 3, -1),
    q_values=(-1, 2),
    r_values=(-2, 0, 1, 3),
    s_values=(-3, 0, 2),
    k_values=(-1, 0, 3, 6),
    n_values=(0, 1, 2, 3),
    z_values=(mpq(1), mpq(-1), mpq(1, 2), mpq(-2, 3)),
)

SCALES = {"small": SMALL, "full": FULL}


@dataclass
class CheckResult:
    name: str
    passed: int = 0
    skipped: int = 0
    failures: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, detail):
        if len(self.failures) < 50:
            self.failures.append(detail)
        else:
            self.failures.append(None)

    def summary(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return (f"{status} {self.name}: {self.passed} passed, {len(self.failures)} failed, "
                f"{self.skipped} degenerate [{self.seconds:.1f}s]")


def grid_params(grid: Grid = FULL):
    """Valid ``(p, q)`` families of the grid (repeated-root pairs dropped)."""
    for p, q in product(grid.p_values, grid.q_values):
        try:
            yield make_params(0, 1, p, q)
        except DegenerateDiscriminant:
            continue


def grid_families(grid: Grid = FULL):
    """``(params, kind)`` pairs: (0,1) as u, (2,p) as v, (3,2) and (-1,4) as w."""
    for base in grid_params(grid):
        yield base.with_kind(SeqKind.U), SeqKind.U
        yield base.with_kind(SeqKind.V), SeqKind.V
        for a, b in ((3, 2), (-1, 4)):
            yield make_params(a, b, base.p, base.q), SeqKind.W


def _timed(fn):
    def wrapper(*args, **kwargs):
        start = time.perf_counter()
        result = fn(*args, **kwargs)
        result.seconds = time.perf_counter() - start
        return result
    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


@_timed
def check_oracle_grid(grid: Grid = FULL) -> CheckResult:
    """sum_linear / sum_power against brute_sum on every grid cell."""
    res = CheckResult("oracle grid")
    for params, kind in grid_families(grid):
        for r, s, n, z in product(grid.r_values, grid.s_values, grid.n_values, grid.z_values):
            for k in grid.k_values:
                spec = SumSpec(kind, n, r, s, k, z)
                expected = brute_sum(params, spec)
                ops = (sum_power, sum_linear) if n == 1 else (sum_power,)
                for op in ops:
                    try:
                        got = op(params, spec)
                    except DenominatorVanishes:
                        res.skipped += 1
                        continue
                    except HoradamError as exc:
                        res.fail((op.__name__, params, spec, repr(exc)))
                        continue
                    if got == expected:
                        res.passed += 1
                    else:
                        res.fail((op.__name__, params, spec, got, expected))
    return res


@_timed
def check_terms(grid: Grid = FULL, span: int = 20) -> CheckResult:
    """Binet vs recurrence for |n| <= span, plus the negative-index identity."""
    res = CheckResult("binet/recurrence")
    for params, kind in grid_families(grid):
        for n in range(-span, span + 1):
            rec = term_by_recurrence(params, kind, n)
            if term_by_binet(params, kind, n) == rec:
                res.passed += 1
            else:
                res.fail(("binet", params, kind, n))
        # w_{-n} * q^n == a * v_n - w_n
        for n in range(0, min(span, 15) + 1):
            lhs = term_by_recurrence(params, kind, -n) * params.q ** n
            rhs = params.a * term_by_recurrence(params, SeqKind.V, n) - term_by_recurrence(params, kind, n)
            if lhs == rhs:
                res.passed += 1
            else:
                res.fail(("negative index", params, kind, n))
    return res


def _random_rational(rng, lo=-3, hi=3, dens=(1, 1, 1, 2, 3)):
    return mpq(rng.randint(lo, hi), rng.choice(dens))


def random_lemma_cases(count: int = 200, seed: int = 20240601, degenerate: int = 20):
    """Random LemmaArgs over Q[sqrt(D)]; the first ``degenerate`` force x^r z = 1."""
    rng = random.Random(seed)
    cases = []
    while len(cases) < count:
        disc = rng.choice([mpq(5), mpq(-3), mpq(2), mpq(1), mpq(9, 4), mpq(-7), mpq(13)])

        def elem():
            return QuadExt(_random_rational(rng), _random_rational(rng), disc)

        f, g = elem(), elem()
        x, y = elem(), elem()
        if not (x.is_unit() and y.is_unit()):
            continue
        r = rng.randint(-2, 2)
        s = rng.randint(-2, 2)
        k = rng.randint(-1, 5)
        n = rng.randint(0, 3)
        if len(cases) < degenerate:
            # ratio x^r * z == 1 needs z = x^-r, so z itself lives in Q[sqrt(D)]
            if r == 0:
                r = 1
            k = max(k, 1)
            z = x ** (-r)
        else:
            z = _random_rational(rng)
        cases.append(LemmaArgs(f, g, x, y, r, s, z, k, n))
    return cases


def direct_lemma_sum(args: LemmaArgs, power: int):
    total = 0
    for j in range(args.k + 1):
        e = args.r * j + args.s
        total = (args.f * args.x ** e + args.g * args.y ** e) ** power * args.z ** j + total
    return total


@_timed
def check_lemmas(count: int = 200) -> CheckResult:
    """Degenerate-safe lemma engine vs direct accumulation on random ring values."""
    res = CheckResult("lemma engine")
    for args in random_lemma_cases(count):
        want1 = direct_lemma_sum(args, 1)
        wantn = direct_lemma_sum(args, args.n)
        for name, got, want in (("lemma1", lemma1_sum(args), want1),
                                ("lemma2", lemma2_power_sum(args), wantn)):
            if got == want:
                res.passed += 1
            else:
                res.fail((name, args, got, want))
    return res


@_timed
def check_genfunc(grid: Grid = FULL, terms: int = 12, max_power: int = 4) -> CheckResult:
    """Series expansion of every generating function against recurrence terms."""
    res = CheckResult("generating functions")
    for params, kind in grid_families(grid):
        for n, r, s in product(range(max_power + 1), grid.r_values, grid.s_values):
            try:
                coeffs = series_coeffs(gf_power(params, kind, n, r, s), terms)
            except HoradamError as exc:
                res.fail(("gf_power", params, kind, n, r, s, repr(exc)))
                continue
            want = [term_by_recurrence(params, kind, r * j + s) ** n for j in range(terms)]
            if coeffs == want:
                res.passed += 1
            else:
                res.fail(("gf_power", params, kind, n, r, s))
            if n == 1:
                if gf_linear(params, kind, r, s) == gf_power(params, kind, 1, r, s):
                    res.passed += 1
                else:
                    res.fail(("gf_linear", params, kind, r, s))
    return res


def run_all(scale: str = "small"):
    grid = SCALES[scale]
    lemma_count = 200 if scale == "full" else 60
    return [
        check_terms(grid),
        check_lemmas(lemma_count),
        check_oracle_grid(grid),
        check_genfunc(grid, max_power=4 if scale == "full" else 3),
    ]
