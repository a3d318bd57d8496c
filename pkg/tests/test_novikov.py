import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gcfloer import novikov
from gcfloer.novikov import (
    INF,
    NotUnitaryError,
    ZeroSeriesError,
    approx_equal,
    format_series,
    invert,
    monomial,
    one,
    parse_series,
    series,
    unitary_part,
    zero,
)

exponents = st.fractions(
    min_value=Fraction(0), max_value=Fraction(9, 2), max_denominator=6
)
coefficients = st.complex_numbers(
    min_magnitude=0.01, max_magnitude=10, allow_nan=False, allow_infinity=False
)


def random_series(rng: random.Random, max_terms=4, spread=4):
    terms = []
    for _ in range(rng.randint(1, max_terms)):
        e = Fraction(rng.randint(0, spread * 6), 6)
        c = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
        terms.append((e, c))
    return series(terms)


def random_tame_series(rng: random.Random):
    """Moduli in [1/2, 2] and coarse exponents: keeps long products and
    inverses away from float cancellation (the eps model's hard limit)."""
    terms = []
    for _ in range(rng.randint(1, 4)):
        e = Fraction(rng.randint(0, 9), 3)
        mag = rng.uniform(0.5, 2.0)
        arg = rng.uniform(0, 2 * math.pi)
        terms.append((e, mag * complex(math.cos(arg), math.sin(arg))))
    return series(terms)


def test_valuation_leading_exponent():
    s = series([(Fraction(1, 2), 2), (Fraction(4, 3), 3)])
    assert s.valuation() == Fraction(1, 2)


def test_valuation_of_zero_is_infinite():
    assert zero().valuation() == INF


def test_valuation_additive_on_monomials():
    s = monomial(1, Fraction(1, 3)) * monomial(1, Fraction(1, 6))
    assert s.valuation() == Fraction(1, 2)


def test_mul_telescopes():
    s = series([(0, 1), (1, 1)]) * series([(0, 1), (1, -1)])
    assert approx_equal(s, series([(0, 1), (2, -1)]))


def test_mul_monomials():
    s = monomial(2, Fraction(1, 2)) * monomial(3, Fraction(4, 3))
    assert s.terms == ((Fraction(11, 6), 6 + 0j),)


def test_add_cancels_constant():
    s = series([(0, 1), (1, 1)]) + (-1)
    assert s.terms == ((Fraction(1), 1 + 0j),)


def test_invert_monomial():
    assert invert(monomial(1, 1), 10).terms == ((Fraction(-1), 1 + 0j),)


def test_invert_geometric():
    r = invert(series([(0, 1), (1, 1)]), 3)
    assert approx_equal(r, series([(0, 1), (1, -1), (2, 1)]))


def test_invert_scaled_monomial():
    r = invert(monomial(2, Fraction(1, 2)), 10)
    assert r.terms == ((Fraction(-1, 2), 0.5 + 0j),)


def test_invert_zero_raises():
    with pytest.raises(ZeroSeriesError):
        invert(zero(), 5)


def test_unitary_part_splits():
    a0, tail = unitary_part(series([(0, 3), (1, 1)]))
    assert a0 == 3 + 0j
    assert tail.terms == ((Fraction(1), 1 + 0j),)


def test_unitary_part_of_one():
    a0, tail = unitary_part(one())
    assert a0 == 1 + 0j and tail.is_zero()


def test_unitary_part_rejects_positive_valuation():
    with pytest.raises(NotUnitaryError):
        unitary_part(monomial(1, 1))


def test_truncation_order_tracks_products():
    a = series([(0, 1), (1, 1)], order=3)
    b = monomial(1, 2)
    assert (a * b).order == Fraction(5)


@given(
    st.lists(st.tuples(exponents, coefficients), min_size=1, max_size=4),
    st.lists(st.tuples(exponents, coefficients), min_size=1, max_size=4),
)
@settings(max_examples=150)
def test_valuation_axioms(terms_a, terms_b):
    a, b = series(terms_a), series(terms_b)
    if a.is_zero() or b.is_zero():
        return
    prod = a * b
    if not prod.is_zero():
        assert prod.valuation() == a.valuation() + b.valuation()
    s = a + b
    if not s.is_zero():
        assert s.valuation() >= min(a.valuation(), b.valuation())
        if a.valuation() != b.valuation():
            assert s.valuation() == min(a.valuation(), b.valuation())


def test_invert_is_two_sided_inverse():
    rng = random.Random(11)
    for _ in range(100):
        s = random_tame_series(rng)
        if s.is_zero():
            continue
        # order three above the valuation: inside the float model's
        # conditioning range (coefficient growth stays far from eps)
        k = s.valuation() + 3
        r = invert(s, k)
        assert r.valuation() == -s.valuation()
        for prod in (s * r, r * s):
            diff = prod - one()
            assert diff.val_bound() >= k + s.valuation() - Fraction(1, 1000)


def test_arithmetic_matches_numeric_substitution():
    rng = random.Random(23)
    t = 0.01
    for _ in range(100):
        a, b = random_series(rng), random_series(rng)
        lhs = (a * b + a).eval_at(t)
        rhs = a.eval_at(t) * b.eval_at(t) + a.eval_at(t)
        assert abs(lhs - rhs) < 1e-6


def test_format_round_trip():
    rng = random.Random(5)
    for _ in range(50):
        s = random_series(rng)
        again = parse_series(format_series(s))
        assert approx_equal(s, again, tol=1e-12)
    assert parse_series("0").is_zero()
    assert parse_series("2*T^(1/2) + 3*T^(4/3)").terms == (
        (Fraction(1, 2), 2 + 0j),
        (Fraction(4, 3), 3 + 0j),
    )
    assert parse_series("T^(-1)").terms == ((Fraction(-1), 1 + 0j),)


def test_eval_at_matches_terms():
    s = series([(Fraction(1, 2), 2), (Fraction(2), -1)])
    assert math.isclose(abs(s.eval_at(0.04)), abs(2 * 0.04**0.5 - 0.04**2))
