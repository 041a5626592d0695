"""Exact Horadam and Lucas sequence sums, power sums and generating functions."""
from .arith import QuadExt, Rational, format_rational, parse_rational
from .closed_forms import (
    LemmaArgs,
    SumSpec,
    brute_sum,
    geom_partial,
    lemma1_closed,
    lemma1_inf,
    lemma1_sum,
    lemma2_closed,
    lemma2_inf,
    lemma2_power_sum,
    sum_linear,
    sum_power,
)
from .core import BinetCoeffs, HoradamParams, SeqKind, binet_coeffs, make_params, roots, term_by_binet, term_by_recurrence
from .errors import (
    DegenerateDiscriminant,
    DenominatorVanishes,
    DiscMismatch,
    DomainError,
    HoradamError,
    InvalidParam,
    NotInvertible,
    SurdResidue,
)
from .genfunc import Poly, RationalFn, gf_linear, gf_power, series_coeffs

__version__ = "0.1.0"
