"""Acceptance criteria.  Each test prints one PASS/FAIL line in the summary."""
import os
import subprocess
import sys
import time
from itertools import product
from math import comb

import pytest
from gmpy2 import mpq

from horadam import verify
from horadam.core import SeqKind, make_params, term_by_recurrence
from horadam.errors import DegenerateDiscriminant, SurdResidue
from horadam.genfunc import gf_power, series_coeffs
from horadam.closed_forms import SumSpec, sum_power

GRID = verify.FULL


@pytest.fixture(scope="module")
def oracle():
    return verify.check_oracle_grid(GRID)


def test_oracle_grid(oracle, report):
    ok = oracle.ok and oracle.seconds < 60
    report("oracle grid: closed forms == brute_sum", ok,
           f"{oracle.passed} cells, {len(oracle.failures)} failures, {oracle.skipped} degenerate, "
           f"{oracle.seconds:.1f}s < 60s")
    assert ok, oracle.failures[:5]


def test_binet_recurrence(report):
    res = verify.check_terms(GRID, span=20)
    ok = res.ok and res.seconds < 5
    report("binet == recurrence, negative-index identity", ok,
           f"{res.passed} checks, {len(res.failures)} failures, {res.seconds:.2f}s < 5s")
    assert ok, res.failures[:5]


def test_lemma_engine(report):
    cases = verify.random_lemma_cases(200)
    degenerate = sum(1 for a in cases if a.k >= 0 and a.x ** a.r * a.z == 1)
    res = verify.check_lemmas(200)
    ok = res.ok and len(cases) == 200 and degenerate >= 10
    report("lemma engine vs direct accumulation", ok,
           f"{len(cases)} cases, {degenerate} degenerate, {len(res.failures)} failures")
    assert ok, res.failures[:5]


def test_genfunc_round_trip(report):
    res = verify.check_genfunc(GRID, terms=12, max_power=4)
    fib = series_coeffs(gf_power(make_params(0, 1, 1, -1), "u", 2, 1, 0), 7)
    ok = res.ok and res.seconds < 30 and fib == [0, 1, 1, 4, 9, 25, 64]
    report("generating-function series round-trip", ok,
           f"{res.passed} checks, {len(res.failures)} failures, {res.seconds:.1f}s < 30s")
    assert ok, res.failures[:5]


# Special-case displays at r = 1, s = 0, written out term by term.

def _uv(params):
    def u(m):
        return term_by_recurrence(params, SeqKind.U, m)

    def v(m):
        return term_by_recurrence(params, SeqKind.V, m)
    return u, v


def _finite_u_even(params, n, k, z):
    """2 D^n sum_{j<=k} u_j^{2n} z^j."""
    u, v = _uv(params)
    q, total = params.q, mpq(0)
    for i in range(2 * n + 1):
        m = 2 * n - 2 * i
        den = q ** (2 * n) * z ** 2 - q ** i * v(m) * z + 1
        top = q ** (2 * n + k * i) * v(k * m) * z ** (k + 2) - q ** (i * (k + 1)) * v((k + 1) * m) * z ** (k + 1)
        total += (-1) ** i * comb(2 * n, i) * (top - (q ** i * v(m) * z - 2)) / den
    return total


def _finite_u_odd(params, n, k, z):
    """2 D^(n-1) sum_{j<=k} u_j^{2n-1} z^j."""
    u, v = _uv(params)
    q, total, e = params.q, mpq(0), 2 * n - 1
    for i in range(e + 1):
        m = e - 2 * i
        den = q ** e * z ** 2 - q ** i * v(m) * z + 1
        top = q ** (e + k * i) * u(k * m) * z ** (k + 2) - q ** (i * (k + 1)) * u((k + 1) * m) * z ** (k + 1)
        total += (-1) ** i * comb(e, i) * (top + q ** i * u(m) * z) / den
    return total


def _finite_v(params, n, k, z):
    """2 sum_{j<=k} v_j^n z^j."""
    u, v = _uv(params)
    q, total = params.q, mpq(0)
    for i in range(n + 1):
        m = n - 2 * i
        den = q ** n * z ** 2 - q ** i * v(m) * z + 1
        top = q ** (n + k * i) * v(k * m) * z ** (k + 2) - q ** (i * (k + 1)) * v((k + 1) * m) * z ** (k + 1)
        total += comb(n, i) * (top - (q ** i * v(m) * z - 2)) / den
    return total


def _inf_u_even(params, n, z):
    u, v = _uv(params)
    q = params.q
    return sum((-1) ** i * comb(2 * n, i) * (2 - q ** i * v(2 * n - 2 * i) * z)
               / (q ** (2 * n) * z ** 2 - q ** i * v(2 * n - 2 * i) * z + 1) for i in range(2 * n + 1))


def _inf_u_odd(params, n, z):
    u, v = _uv(params)
    q, e = params.q, 2 * n - 1
    return sum((-1) ** i * comb(e, i) * q ** i * u(e - 2 * i) * z
               / (q ** e * z ** 2 - q ** i * v(e - 2 * i) * z + 1) for i in range(e + 1))


def _inf_v(params, n, z):
    u, v = _uv(params)
    q = params.q
    return sum(comb(n, i) * (2 - q ** i * v(n - 2 * i) * z)
               / (q ** n * z ** 2 - q ** i * v(n - 2 * i) * z + 1) for i in range(n + 1))


def _special_cases(params, power):
    """(kind, scale, finite display, infinite display) for t_j^power."""
    d = params.disc
    if power % 2 == 0:
        n = power // 2
        yield SeqKind.U, 2 * d ** n, (lambda k, z: _finite_u_even(params, n, k, z)), \
            (lambda z: _inf_u_even(params, n, z))
    else:
        n = (power + 1) // 2
        yield SeqKind.U, 2 * d ** (n - 1), (lambda k, z: _finite_u_odd(params, n, k, z)), \
            (lambda z: _inf_u_odd(params, n, z))
    yield SeqKind.V, mpq(2), (lambda k, z: _finite_v(params, power, k, z)), (lambda z: _inf_v(params, power, z))


def test_special_cases(report):
    finite = infinite = failures = skipped = 0
    zs = [mpq(j, 7) for j in range(-15, 16)]
    for p, q in product(GRID.p_values, GRID.q_values):
        try:
            params = make_params(0, 1, p, q)
        except DegenerateDiscriminant:
            continue
        for power in GRID.n_values:
            for kind, scale, fin, inf in _special_cases(params, power):
                fam = params.with_kind(kind)
                for k, z in product(GRID.k_values, GRID.z_values):
                    try:
                        lhs = fin(k, z)
                    except ZeroDivisionError:
                        skipped += 1
                        continue
                    finite += 1
                    failures += lhs != scale * sum_power(fam, SumSpec(kind, power, 1, 0, k, z))
                rf = gf_power(fam, kind, power, 1, 0)
                for z in zs:
                    try:
                        lhs = inf(z)
                    except ZeroDivisionError:
                        skipped += 1
                        continue
                    infinite += 1
                    failures += lhs != scale * rf(z)
    ok = failures == 0 and finite and infinite
    report("special-case displays at r=1, s=0", ok,
           f"{finite} finite + {infinite} generating-function checks, {failures} failures, {skipped} poles")
    assert ok


def test_surd_cancellation(oracle, report):
    start = time.perf_counter()
    residues = [f for f in oracle.failures if f and "SurdResidue" in repr(f)]
    count = 0
    for params, kind in verify.grid_families(GRID):
        for n, r, s in product(range(5), GRID.r_values, GRID.s_values):
            try:
                gf_power(params, kind, n, r, s)
                count += 1
            except SurdResidue as exc:
                residues.append((params, kind, n, r, s, exc))
    terms = verify.check_terms(GRID)
    ok = not residues and terms.ok
    report("no SurdResidue across the grid", ok,
           f"{oracle.passed} sums, {count} generating functions, {terms.passed} terms, "
           f"{len(residues)} residues, {time.perf_counter() - start:.1f}s")
    assert ok, residues[:5]


GOLDEN = [
    ("sum --kind u -p 1 -q -1 -a 0 -b 1 --n 1 --r 1 --s 0 --k 4 --z 1", 0, b"7\n", False),
    ("series --kind u -p 1 -q -1 --n 1 --r 1 --s 0 --m 7", 0, b"0 1 1 2 3 5 8\n", False),
    ("sum --kind u -p 3 -q 2 --n 1 --r 1 --s 0 --k 3 --z 1/2", 0, b"17/8\n", True),
]


@pytest.mark.parametrize("argv,code,stdout,warns", GOLDEN)
def test_cli_golden(argv, code, stdout, warns, report):
    env = dict(os.environ)
    env.pop("HORADAM_NO_FALLBACK", None)
    proc = subprocess.run([sys.executable, "-m", "horadam", *argv.split()], capture_output=True, env=env)
    ok = (proc.returncode == code and proc.stdout == stdout
          and (b"degenerate denominator" in proc.stderr) == warns)
    report(f"cli golden: {argv}", ok, f"exit {proc.returncode}, stdout {proc.stdout!r}")
    assert ok, proc.stderr
