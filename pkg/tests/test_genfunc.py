import json
from itertools import product

import pytest
from gmpy2 import mpq

from horadam.closed_forms import LemmaArgs, lemma2_inf
from horadam.core import SeqKind, binet_coeffs, make_params, roots, term_by_recurrence
from horadam.errors import DomainError
from horadam.genfunc import (
    Poly, RationalFn, gf_linear, gf_power, parse_poly, poly_arith, poly_gcd, render_poly,
    series_coeffs,
)

FIB = make_params(0, 1, 1, -1)
Z = Poly([0, 1])
ONE = Poly([1])
FAMILIES = [make_params(a, b, p, q)
            for p, q in ((1, -1), (3, 2), (-1, 2), (2, -2), (1, -2))
            for a, b in ((0, 1), (3, 2), (-1, 4))]


class TestPoly:
    def test_examples(self):
        assert poly_arith(ONE + Z, ONE - Z, "mul") == Poly([1, 0, -1])
        p = Poly([3, mpq(1, 2), 7])
        assert poly_arith(Poly(), p, "add") == p
        fib_den = Poly([1, -1, -1])
        assert poly_arith(fib_den, ONE, "mul") == fib_den
        assert poly_arith(p, p, "sub").is_zero()

    def test_canonical(self):
        assert Poly([1, 2, 0, 0]) == Poly([1, 2])
        assert Poly([0, 0]).degree == -1

    def test_divmod(self):
        a = Poly([1, 0, -1])
        q, r = divmod(a, ONE - Z)
        assert q == ONE + Z and r.is_zero()
        q, r = divmod(Poly([1, 2, 3]), Poly([1, 1]))
        assert q * Poly([1, 1]) + r == Poly([1, 2, 3])

    def test_gcd(self):
        a = (ONE + Z) * (ONE - 3 * Z + Z * Z)
        b = (ONE + Z) * (ONE + Z) * Z
        assert poly_gcd(a, b) == Poly([1, 1])
        assert poly_gcd(Poly([2, 4]), Poly()) == Poly([mpq(1, 2), 1])

    def test_render_round_trip(self):
        for p in (Poly(), Poly([0, 1, -1]), Poly([mpq(-3, 4), 0, 0, 5]), Poly([1])):
            assert parse_poly(render_poly(p)) == p
        assert render_poly(Poly([1, -1, -1])) == "1 - 1*z - 1*z^2"


class TestRationalFn:
    def test_normalizes_constant_term(self):
        rf = RationalFn(Poly([2, 4]), Poly([2, -2]))
        assert rf.den[0] == 1 and rf.num == Poly([1, 2])

    def test_rejects_zero_constant(self):
        with pytest.raises(DomainError):
            RationalFn(ONE, Z)

    def test_text_and_json_round_trip(self):
        rf = gf_power(FIB, "u", 2, 1, 0)
        assert RationalFn.parse(str(rf)) == rf
        assert RationalFn.from_json(rf.to_json()) == rf
        assert json.loads(rf.to_json()) == {"num": ["0", "1", "-1"], "den": ["1", "-2", "-2", "1"]}


class TestSeries:
    def test_examples(self):
        assert series_coeffs(RationalFn(Z, Poly([1, -1, -1])), 7) == [0, 1, 1, 2, 3, 5, 8]
        assert series_coeffs(RationalFn(ONE, Poly([1, -1])), 4) == [1, 1, 1, 1]
        assert series_coeffs(RationalFn(Poly([2, -1]), Poly([1, -1, -1])), 5) == [2, 1, 3, 4, 7]

    def test_zero_terms(self):
        assert series_coeffs(RationalFn(ONE, Poly([1, -1])), 0) == []


class TestGeneratingFunctions:
    def test_linear_examples(self):
        den = Poly([1, -1, -1])
        assert gf_linear(FIB, "u", 1, 0) == RationalFn(Z, den)
        assert gf_linear(make_params(2, 1, 1, -1), "v", 1, 0) == RationalFn(Poly([2, -1]), den)
        w = gf_linear(make_params(3, 2, 1, -1), "w", 1, 0)
        assert w == RationalFn(Poly([3, -1]), den)
        assert series_coeffs(w, 5) == [3, 2, 5, 7, 12]

    def test_power_examples(self):
        assert gf_power(FIB, "w", 0, 2, 1) == RationalFn(ONE, ONE - Z)
        assert gf_power(FIB, "u", 1, 1, 0) == gf_linear(FIB, "u", 1, 0)
        expected = RationalFn(Z * (ONE - Z), (ONE + Z) * Poly([1, -3, 1]))
        assert gf_power(FIB, "u", 2, 1, 0) == expected
        assert series_coeffs(expected, 7) == [0, 1, 1, 4, 9, 25, 64]

    @pytest.mark.parametrize("params", FAMILIES)
    def test_series_round_trip(self, params):
        for kind, n, r, s in product(SeqKind, range(0, 4), range(-2, 3), range(-2, 3)):
            rf = gf_power(params, kind, n, r, s)
            want = [term_by_recurrence(params, kind, r * j + s) ** n for j in range(10)]
            assert series_coeffs(rf, 10) == want

    @pytest.mark.parametrize("params", FAMILIES)
    def test_linear_equals_power_one(self, params):
        for kind, r, s in product(SeqKind, range(-2, 3), range(-3, 3)):
            lin = gf_linear(params, kind, r, s)
            assert lin == gf_power(params, kind, 1, r, s)
            raw = gf_linear(params, kind, r, s, reduce=False)
            assert raw.den.degree <= 2 and raw.den[0] == 1
            assert raw.equivalent(lin)

    @pytest.mark.parametrize("params", FAMILIES[::2])
    def test_denominator_degree_bound(self, params):
        for kind, n, r in product(SeqKind, range(0, 6), range(-3, 4)):
            raw = gf_power(params, kind, n, r, 1, reduce=False)
            assert raw.den.degree <= 2 * ((n + 2) // 2)
            assert raw.equivalent(gf_power(params, kind, n, r, 1))

    def test_matches_infinite_closed_form(self):
        params = make_params(3, 2, 1, -1)
        c = binet_coeffs(params)
        alpha, beta = roots(params)
        for n, r, s in ((2, 1, 0), (3, 2, -1), (1, -1, 2)):
            rf = gf_power(params, "w", n, r, s)
            for z in (mpq(1, 7), mpq(-2, 9), mpq(3)):
                args = LemmaArgs(c.A, c.B, alpha, beta, r, s, z, n=n)
                assert rf(z) == lemma2_inf(args).to_rational()

    def test_negative_power_rejected(self):
        with pytest.raises(DomainError):
            gf_power(FIB, "u", -1, 1, 0)
