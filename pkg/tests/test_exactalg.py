from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

sympy = pytest.importorskip("sympy")

from skeinlab.exactalg import (
    BudgetExceeded,
    LaurentPoly,
    ParseError,
    RationalFunc,
    as_laurent,
    chebyshev,
    default_names,
    is_positive,
    membership_bounded,
    parse_laurent,
    parse_rational,
    substitute,
)

N = 3
NAMES = default_names(N)
SYMS = sympy.symbols(NAMES)


def laurent_polys(nvars=N, max_terms=4, lo=-2, hi=3):
    exps = st.tuples(*[st.integers(lo, hi)] * nvars)
    return st.dictionaries(exps, st.integers(-5, 5), max_size=max_terms).map(lambda d: LaurentPoly(nvars, d))


def nonzero_points(nvars=N):
    nz = st.fractions(min_value=-7, max_value=7, max_denominator=5).filter(lambda x: x != 0)
    return st.lists(nz, min_size=nvars, max_size=nvars)


def to_sympy(p: LaurentPoly):
    return sum((c * sympy.Mul(*[s**e for s, e in zip(SYMS, exps)]) for exps, c in p.terms.items()), sympy.Integer(0))


# -- oracle comparisons --------------------------------------------------


@settings(max_examples=60, deadline=None)
@given(laurent_polys(), laurent_polys())
def test_product_matches_sympy(a, b):
    assert sympy.expand(to_sympy(a * b) - to_sympy(a) * to_sympy(b)) == 0


@settings(max_examples=60, deadline=None)
@given(laurent_polys(), laurent_polys(), nonzero_points())
def test_evaluation_is_a_ring_map(a, b, pt):
    assert (a + b).evaluate(pt) == a.evaluate(pt) + b.evaluate(pt)
    assert (a * b).evaluate(pt) == a.evaluate(pt) * b.evaluate(pt)
    assert (a - b).evaluate(pt) == a.evaluate(pt) - b.evaluate(pt)


@settings(max_examples=60, deadline=None)
@given(laurent_polys(), laurent_polys(), laurent_polys())
def test_ring_laws(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a + b == b + a
    assert a - a == LaurentPoly.zero(N)


@settings(max_examples=80, deadline=None)
@given(laurent_polys())
def test_parse_print_round_trip(p):
    assert parse_laurent(p.to_string(NAMES), NAMES) == p


@settings(max_examples=40, deadline=None)
@given(laurent_polys(max_terms=3), laurent_polys(max_terms=3), nonzero_points())
def test_rational_normal_form(a, b, pt):
    if b.is_zero():
        return
    r = RationalFunc(a, b)
    if b.evaluate(pt) == 0 or r.den.evaluate(pt) == 0:
        return
    assert r.evaluate(pt) == a.evaluate(pt) / b.evaluate(pt)
    # normalized denominator: no monomial factor, positive leading coefficient
    assert all(x == 0 for x in r.den.shift)
    assert r.den.sorted_terms()[0][1] > 0
    assert RationalFunc(a * b, b * b) == r


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 8), st.fractions(min_value=1, max_value=9, max_denominator=4))
def test_chebyshev_trace_identity(k, z):
    t = LaurentPoly.variable(1, 0)
    val = chebyshev(k, t).evaluate([z + 1 / z])
    assert val == z**k + z**-k


def test_chebyshev_low_orders():
    t = LaurentPoly.variable(1, 0)
    assert chebyshev(1, t) == t
    assert chebyshev(2, t) == t * t - 2
    assert chebyshev(3, t) == t * t * t - 3 * t


@settings(max_examples=30, deadline=None)
@given(laurent_polys(max_terms=3), nonzero_points())
def test_substitute_commutes_with_evaluation(p, pt):
    x, y, z = (RationalFunc.variable(N, i) for i in range(N))
    images = [x * y, (y + z) / x, z]
    img_vals = [im.evaluate(pt) for im in images]
    if any(v == 0 for v in img_vals):
        return
    assert substitute(p, images).evaluate(pt) == p.evaluate(img_vals)


# -- worked examples ------------------------------------------------------


def test_markov_exchange_is_laurent():
    a1, a2, a3 = (RationalFunc.variable(N, i) for i in range(N))
    mu = (a2**2 + a3**2) / a1
    lp = as_laurent(mu)
    assert lp is not None and is_positive(lp)
    assert lp.to_string(NAMES) == "A1^-1*A2^2 + A1^-1*A3^2"


def test_as_laurent_cases():
    x, y = RationalFunc.variable(2, 0), RationalFunc.variable(2, 1)
    assert as_laurent((x * x + x * y) / x) == LaurentPoly(2, {(1, 0): 1, (0, 1): 1})
    assert as_laurent((x + 1) / (y + 1)) is None
    assert as_laurent(1 / (x + y)) is None
    assert as_laurent(x**-3) == LaurentPoly.monomial(2, (-3, 0))


def test_negative_power_needs_unit():
    with pytest.raises(Exception):
        (LaurentPoly.variable(2, 0) + 1) ** -1
    assert LaurentPoly.variable(2, 0) ** -2 == LaurentPoly.monomial(2, (-2, 0))


def test_parse_errors_report_column():
    with pytest.raises(ParseError, match="column 4"):
        parse_laurent("A1+?", NAMES)
    with pytest.raises(ParseError):
        parse_laurent("A9", NAMES)
    r = parse_rational("(A1 + A2)/(A3 + 1)", NAMES)
    assert r.to_string(NAMES) == "(A1 + A2)/(A3 + 1)"


def test_is_positive_rejects_signs_and_non_laurent():
    assert is_positive(parse_laurent("A1 + 2*A2^-1", NAMES))
    assert not is_positive(parse_laurent("A1 - A2", NAMES))
    assert not is_positive(parse_rational("(A1)/(A1 + A2)", NAMES))


def test_membership_examples():
    x, y = RationalFunc.variable(2, 0), RationalFunc.variable(2, 1)
    assert membership_bounded(x * x + y, [x, y], 2)
    assert not membership_bounded(1 / x, [x, y], 3)
    res = membership_bounded(x * y, [x + y, x - y], 2, detailed=True)
    assert res.member
    with pytest.raises(BudgetExceeded):
        membership_bounded(x**5 + y, [x, y, x + y, x * y], 5, budget=10)


def test_zero_division():
    with pytest.raises(ZeroDivisionError):
        RationalFunc.variable(1, 0) / RationalFunc.constant(1, 0)
