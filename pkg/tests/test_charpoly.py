import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from binsum.charpoly import (
    ResourceLimitError,
    _rank,
    char_poly,
    coeffs_from_power_sums,
    dual_scaled,
    power_sums_from_coeffs,
    reflect_transform,
    split_factorization,
    verify_duality,
    verify_minimality,
    verify_pk_recurrence,
    verify_weight_law,
)
from binsum.exactpoly import ONE, ZERO, InexactDivisionError, MPoly, S, X, ZPoly, binomial
from binsum.invariant import lucas

# coefficient polynomials of total degree <= 2
small_mpolys = st.dictionaries(
    st.sampled_from([(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]),
    st.integers(-5, 5),
    max_size=4,
).map(MPoly)


def c_m1(m):
    return ZPoly([S] + [0] * (m - 2) + [-X, 1])


def c_mm1(m):
    return ZPoly([(-1) ** m * S ** (m - 1), -(S ** (m - 2)) * X] + [0] * (m - 2) + [1])


def test_power_sums_examples():
    pot = power_sums_from_coeffs([ONE, -X, S], 2)
    assert pot == [X, X**2 - 2 * S]
    assert pot[1] == lucas(2).subs(X, -S)
    assert power_sums_from_coeffs([ONE, -X, ZERO, S], 3)[2] == X**3 - 3 * S
    assert power_sums_from_coeffs([ONE], 5) == [ZERO] * 5


def test_power_sums_require_monic_start():
    with pytest.raises(ValueError):
        power_sums_from_coeffs([2 * ONE, X], 3)


def test_coeffs_from_power_sums_examples():
    assert coeffs_from_power_sums([X, X**2 - 2 * S], 2) == [ONE, -X, S]
    assert coeffs_from_power_sums([ZERO] * 4, 4) == [ONE] + [ZERO] * 4


def test_coeffs_from_power_sums_rejects_nonintegral():
    # power sums of a single root need pot(2) = pot(1)^2 - 2 v(2); x^2 + x is not valid
    with pytest.raises(InexactDivisionError):
        coeffs_from_power_sums([X, X], 2)


@settings(max_examples=100)
@given(st.lists(small_mpolys, min_size=1, max_size=8))
def test_newton_round_trip(tail):
    v = [ONE, *tail]
    d = len(v) - 1
    assert coeffs_from_power_sums(power_sums_from_coeffs(v, d), d) == v


@pytest.mark.parametrize("m", range(2, 9))
def test_char_poly_k1(m):
    assert char_poly(m, 1) == c_m1(m)


@pytest.mark.parametrize("m", range(3, 9))
def test_char_poly_k_m_minus_1(m):
    assert char_poly(m, m - 1) == c_mm1(m)


def test_char_poly_reference_examples():
    assert char_poly(4, 2) == ZPoly([S**3, 0, -(S**2), -S * X**2, -S, 0, 1])
    assert char_poly(3, 2) == ZPoly([-(S**2), -S * X, 0, 1])


@pytest.mark.parametrize("m, k", [(m, k) for m in range(2, 8) for k in range(1, m)])
def test_char_poly_shape(m, k):
    c = char_poly(m, k)
    assert c.degree == binomial(m, k)
    assert c.leading() == ONE
    # constant term is the signed product of all k-fold root products
    e = binomial(m - 1, k - 1)
    sign = (-1) ** (binomial(m, k) + m * e)
    assert c[0] == sign * S**e


def test_char_poly_resource_bound():
    assert char_poly(8, 4).degree == 70
    with pytest.raises(ResourceLimitError):
        char_poly(9, 4)
    with pytest.raises(ResourceLimitError):
        char_poly(6, 3, bound=10)
    with pytest.raises(ValueError):
        char_poly(4, 4)


def test_reflect_transform_example():
    for m in range(2, 8):
        got = reflect_transform(c_m1(m), (-1) ** m * S, S)
        assert got == c_mm1(m) * (-1) ** m


def test_reflect_transform_fixed_up_to_unit():
    # the (-z)^d normalisation returns -(z - 1) here
    assert reflect_transform(ZPoly([-1, 1]), ONE, -ONE) == ZPoly([1, -1])


def test_reflect_transform_inexact():
    with pytest.raises(InexactDivisionError):
        reflect_transform(ZPoly([X, 1]), ONE, S)


@given(st.lists(st.integers(-4, 4), max_size=5), st.sampled_from([1, -1]), st.sampled_from([1, -1]))
def test_reflect_transform_twice_is_unit_multiple(mid, c0, b):
    c = ZPoly([c0, *mid, 1])
    once = reflect_transform(c, b, c[0])
    twice = reflect_transform(once, b, once[0])
    assert twice in (c, -c)


def test_dual_scaled_matches_both_reference_pairs():
    # c(3, 1) -> c(3, 2) exactly
    assert dual_scaled(char_poly(3, 1), -S, 1) == char_poly(3, 2)
    # c(4, 2) is self-dual
    assert dual_scaled(char_poly(4, 2), S, 3) == char_poly(4, 2)


@pytest.mark.parametrize("m, k", [(m, k) for m in range(2, 7) for k in range(1, m)])
def test_duality(m, k):
    rep = verify_duality(m, k)
    assert rep.passed
    # sign carried by the reference normalisation
    assert rep.params["unit"] == (-1) ** ((k + 1) * binomial(m, k))


@pytest.mark.parametrize("m, k", [(m, k) for m in range(2, 7) for k in range(1, m)])
def test_weight_law(m, k):
    assert verify_weight_law(m, k).passed


def test_weight_law_example_coefficient():
    c_star = char_poly(4, 2).reflect()
    assert c_star[3] == -S * X**2


@pytest.mark.parametrize("m, k", [(m, k) for m in range(2, 7) for k in range(1, m)])
def test_pk_recurrence(m, k):
    assert verify_pk_recurrence(m, k, 15).passed


def test_pk_recurrence_catches_wrong_polynomial(monkeypatch):
    from binsum import charpoly

    monkeypatch.setattr(charpoly, "char_poly", lambda m, k: ZPoly([S, X, 1]))
    assert not charpoly.verify_pk_recurrence(2, 1, 5).passed


def test_series_check_for_c42():
    from binsum.exactpoly import ZSeries
    from binsum.invariant import weight_part

    N = 16
    c_star = ZSeries.from_poly(char_poly(4, 2).reflect(), N)
    assert c_star == ZSeries([1, 0, -S, -S * X**2, -(S**2), 0, S**3], N)
    # with the n = 0 term taken as 0, the numerator is the reference one
    series = ZSeries([ZERO] + [weight_part(n, 4, 2) for n in range(1, N)], N)
    assert c_star * series == ZSeries([0, 0, -2 * S, -3 * X**2 * S, -4 * S**2, 0, 6 * S**3], N)
    # with p_2(0, 4) = -6 it shifts by -6 c*(z)
    series = ZSeries([weight_part(n, 4, 2) for n in range(N)], N)
    assert c_star * series == ZSeries([-6, 0, 4 * S, 3 * X**2 * S, 2 * S**2], N)


@pytest.mark.parametrize(
    "m, k", [(m, k) for m in range(2, 7) for k in range(1, m) if binomial(m, k) <= 6]
)
def test_minimality(m, k):
    assert verify_minimality(m, k).passed


def test_rank_detects_singular():
    from fractions import Fraction as Fr

    assert _rank([[Fr(1), Fr(2)], [Fr(2), Fr(4)]]) == 1
    assert _rank([[Fr(0), Fr(1)], [Fr(1), Fr(0)]]) == 2
    # a geometric sequence has a first-order recurrence: its 2x2 Hankel matrix is singular
    seq = [Fr(3) ** n for n in range(3)]
    assert _rank([[seq[i + j] for j in range(2)] for i in range(2)]) == 1


def test_split_examples():
    chain, rep = split_factorization(2)
    assert rep.passed
    assert chain == [ZPoly([-1, 1]), ZPoly([-X, 1])]
    chain, rep = split_factorization(3)
    assert rep.passed
    assert chain[1] == ZPoly([-X, -X, 1])


@pytest.mark.parametrize("m", range(2, 7))
def test_split_chain(m):
    chain, rep = split_factorization(m)
    assert rep.passed
    assert len(chain) == m
    for k in range(1, m):
        spec = char_poly(m, k).subs(X + 1, X)
        assert chain[k - 1] * chain[k] == spec
        assert all(j == 0 for c in chain[k].coeffs for (_, j) in c.terms)
        assert chain[k].degree == binomial(m - 1, k)


def test_newton_round_trip_seeded():
    rng = random.Random(7)
    monos = [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]
    for _ in range(50):
        d = rng.randint(1, 8)
        v = [ONE] + [
            MPoly({e: rng.randint(-4, 4) for e in rng.sample(monos, rng.randint(0, 3))})
            for _ in range(d)
        ]
        assert coeffs_from_power_sums(power_sums_from_coeffs(v, d), d) == v
