import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from grossopt.grossone import (
    GROSSONE,
    ONE,
    ZERO,
    GrossNumber,
    GrossParseError,
    PowerOverflowError,
    DigitOverflowError,
    UnsupportedDivisionError,
    normalize,
    parse,
)
from strategies import gross_numbers, positive_monomials, powers


def g(text):
    return parse(text)


def assert_canonical(x: GrossNumber):
    ps = [p for p, _ in x.terms]
    assert ps == sorted(ps, reverse=True) and len(set(ps)) == len(ps)
    assert all(d != 0.0 for _, d in x.terms)


class TestNormalize:
    def test_merges_like_powers(self):
        assert normalize([(0, 1.0), (0, 2.0)]).terms == ((0, 3.0),)

    def test_cancellation_gives_zero(self):
        assert normalize([(1, 1.0), (1, -1.0)]) == ZERO
        assert normalize([(1, 1.0), (1, -1.0)]).terms == ()

    def test_sorted_decreasing(self):
        x = normalize([(-1, 2.0), (2, 3.0)])
        assert x.terms == ((2, 3.0), (-1, 2.0))
        assert str(x) == "3@2+2@-1"

    def test_rejects_nonfinite_digit(self):
        with pytest.raises(ValueError):
            normalize([(0, math.nan)])


class TestAdd:
    def test_like_terms(self):
        assert g("2@-1") + g("3@-1") == g("5@-1")

    def test_identity(self):
        assert g("1@1") + ZERO == g("1@1")
        assert g("1@1") + 0 == g("1@1")

    def test_cancellation_of_finite_parts(self):
        assert g("1@1+1@0") + g("-1@0+1@-1") == g("1@1+1@-1")

    def test_sub_and_neg(self):
        assert g("1@1") - g("1@1") == ZERO
        assert -g("2@3+-1@0") == g("-2@3+1@0")
        assert 5 - g("2@0") == g("3@0")


class TestMul:
    def test_grossone_times_its_inverse(self):
        assert g("1@-1") * g("1@1") == ONE
        assert GROSSONE * (ONE / GROSSONE) == ONE

    def test_difference_of_squares(self):
        assert g("1@1+1@0") * g("1@1+-1@0") == g("1@2+-1@0")

    def test_zero_absorbs(self):
        assert ZERO * g("1@2") == ZERO
        assert g("1@2") * 0.0 == ZERO

    def test_by_real(self):
        assert g("2@1+4@0") * 0.5 == g("1@1+2@0")
        assert 3 * g("1@-1") == g("3@-1")

    def test_power_overflow(self):
        big = GrossNumber.monomial(1.0, 2**62)
        with pytest.raises(PowerOverflowError):
            big * big


    def test_digit_overflow(self):
        with pytest.raises(DigitOverflowError):
            g("1e308@0") * g("1e308@1")
        with pytest.raises(DigitOverflowError):
            normalize([(0, 1e308), (0, 1e308)])


class TestDivision:
    def test_termwise(self):
        assert g("2@1+4@0").div_by_monomial(g("2@1")) == g("1@0+2@-1")
        assert g("2@1+4@0") / g("2@1") == g("1@0+2@-1")

    def test_inverse_of_infinitesimal(self):
        assert ONE / g("1@-1") == g("1@1")

    def test_multi_term_divisor_rejected(self):
        with pytest.raises(UnsupportedDivisionError):
            g("1@1+1@0") / g("1@1+1@0")

    def test_zero_divisor_rejected(self):
        with pytest.raises(UnsupportedDivisionError):
            g("1@1") / ZERO
        with pytest.raises(UnsupportedDivisionError):
            g("1@1") / 0.0

    def test_by_real(self):
        assert g("3@2+1@0") / 2 == g("1.5@2+0.5@0")


class TestCompare:
    def test_infinite_beats_any_finite(self):
        assert g("1@1").compare(g("1e300@0")) == 1
        assert g("1@1") > 1e300

    def test_positive_infinitesimal(self):
        assert g("1@-1") > ZERO
        assert g("1@-1") < 1e-300

    def test_next_term_decides(self):
        assert g("1@1+-3@0") < g("1@1")
        assert g("1@1+-3@0").compare(g("1@1")) == -1

    def test_equal(self):
        assert g("1@1+2@0").compare(g("2@0+1@1")) == 0

    def test_mixed_equality_and_hash(self):
        assert g("2.5@0") == 2.5 and hash(g("2.5@0")) == hash(2.5)
        assert ZERO == 0 and hash(ZERO) == hash(0)
        assert g("1@1") != 1.0


class TestLiteral:
    @pytest.mark.parametrize(
        "text, terms",
        [
            ("1@1", ((1, 1.0),)),
            ("0", ()),
            ("-12.0312@-1+1@1", ((1, 1.0), (-1, -12.0312))),
            ("1e+300@0", ((0, 1e300),)),
            ("-2.5e-3@4+7@-2", ((4, -0.0025), (-2, 7.0))),
        ],
    )
    def test_parse(self, text, terms):
        assert parse(text).terms == terms

    def test_print_canonical(self):
        assert str(g("-12.0312@-1+1@1")) == "1@1+-12.0312@-1"
        assert str(ZERO) == "0"
        assert str(g("0.1@0")) == "0.1@0"

    @pytest.mark.parametrize("text, pos", [("", 0), ("1@", 0), ("1@1+", 4), ("1@1 2@0", 3), ("abc", 0)])
    def test_malformed(self, text, pos):
        with pytest.raises(GrossParseError) as info:
            parse(text)
        assert info.value.position == pos

    def test_pretty(self):
        assert g("1@1+-12.0312@-1").pretty() == "① - 12.0312·①⁻¹"
        assert g("2@2").pretty() == "2·①²"

    @given(st.lists(st.tuples(powers, st.floats(allow_nan=False, allow_infinity=False)), max_size=4))
    def test_round_trip_bit_exact(self, raw):
        try:
            x = normalize(raw)
        except DigitOverflowError:
            return
        y = parse(str(x))
        assert y.terms == x.terms


class TestClassification:
    def test_kinds(self):
        assert g("3@0").is_purely_finite() and g("3@0").is_finite()
        assert g("3@0+1@-1").is_finite() and not g("3@0+1@-1").is_purely_finite()
        assert g("1@1").is_infinite() and g("1@-2").is_infinitesimal()
        assert ZERO.is_purely_finite()

    def test_to_real(self):
        assert g("-4@0").to_real() == -4.0
        with pytest.raises(ArithmeticError):
            g("1@-1").to_real()

    def test_immutable(self):
        with pytest.raises(AttributeError):
            GROSSONE._terms = ()


# -- ordered ring laws at dyadic inputs ---------------------------------


@given(gross_numbers, gross_numbers)
def test_commutative(a, b):
    assert a + b == b + a
    assert a * b == b * a


@given(gross_numbers, gross_numbers, gross_numbers)
def test_associative_and_distributive(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(gross_numbers, powers, st.integers(-3, 3))
def test_division_matches_multiplication_by_inverse(x, p, e):
    m = GrossNumber.monomial(2.0**e, p)  # power-of-two digit: exact reciprocal
    assert x * (ONE / m) == x / m
    assert (x / m) * m == x


@given(gross_numbers, gross_numbers, gross_numbers)
def test_order_consistent_with_add(a, b, c):
    if a < b:
        assert a + c < b + c
    assert (a < b) + (a == b) + (a > b) == 1


@given(gross_numbers, gross_numbers, positive_monomials)
def test_positive_scaling_preserves_order(a, b, m):
    if a < b:
        assert m * a < m * b


@given(gross_numbers, gross_numbers)
def test_outputs_canonical(a, b):
    for x in (a + b, a - b, a * b, -a, abs(a)):
        assert_canonical(x)


@given(gross_numbers)
def test_compare_matches_sign_of_difference(a):
    d = a - GROSSONE
    lead = d.terms[0][1] if d.terms else 0.0
    assert a.compare(GROSSONE) == (lead > 0) - (lead < 0)


def test_parse_scalar():
    from grossopt.grossone import parse_scalar

    assert parse_scalar("2.5") == parse("2.5@0")
    assert parse_scalar("1@-1") == parse("1@-1")
    with pytest.raises(GrossParseError):
        parse_scalar("nan")
