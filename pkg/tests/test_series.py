from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quintuple.series import (Monomial, NotAUnit, OrderOutOfRange, QZSeries,
                              TruncationOverflow, add, coeff, equal_up_to,
                              first_difference, invert, min_q_order, monomial,
                              mul, one, subst_z_qshift, truncate)

from strategies import sparse_series, units


def S(terms, qmax=10):
    return QZSeries(terms, qmax)


class TestMonomial:
    def test_identity_element(self):
        assert monomial(1, 0, 0, 10).terms == {(0, 0): 1}

    def test_direct(self):
        f = monomial(-1, 1, 2, 10)
        assert f.terms == {(1, 2): -1}
        assert f.qmax == 10

    def test_above_truncation(self):
        f = monomial(Fraction(3, 2), 11, 0, 10)
        assert f.terms == {} and f.qmax == 10

    def test_zero_coefficient(self):
        assert monomial(0, 1, 1, 10).terms == {}

    def test_monomial_type_rejects_zero(self):
        with pytest.raises(ValueError):
            Monomial(0, 1, 1)


class TestAdd:
    def test_cancellation(self):
        assert add(S({(0, 0): 1, (0, 1): 1}), S({(0, 1): -1})) == one(10)

    def test_truncation_narrowing(self):
        f = add(S({(1, 0): 1}, 5), S({(2, 0): 1}, 3))
        assert f.qmax == 3 and f.terms == {(1, 0): 1, (2, 0): 1}

    def test_negative_exponents(self):
        f = S({(-1, -1): 1})
        assert (f + f).terms == {(-1, -1): 2}


class TestMul:
    def test_z_poch_two(self):
        f = mul(S({(0, 0): 1, (0, 1): -1}), S({(0, 0): 1, (1, 1): -1}))
        assert f.terms == {(0, 0): 1, (0, 1): -1, (1, 1): -1, (1, 2): 1}

    def test_difference_of_squares(self):
        f = mul(S({(0, 0): 1, (0, 1): 1}), S({(0, 0): 1, (0, 1): -1}))
        assert f.terms == {(0, 0): 1, (0, 2): -1}

    @given(sparse_series())
    def test_one_is_neutral(self, f):
        assert mul(f, one(f.qmax)) == f

    def test_negative_order_factor_lowers_precision(self):
        # 1/(1-q) is only known to q^10, so q^-1 * it is only known to q^9
        g = invert(S({(0, 0): 1, (1, 0): -1}))
        f = mul(S({(-1, 1): 1}), g)
        assert f.qmax == 9
        assert all(c == 1 for c in f.terms.values()) and len(f) == 11


class TestInvert:
    def test_geometric(self):
        g = invert(S({(0, 0): 1, (1, 0): -1}))
        assert g.terms == {(i, 0): 1 for i in range(11)}

    def test_monomial_inverse(self):
        g = invert(S({(1, 1): 2}))
        assert g.terms == {(-1, -1): Fraction(1, 2)}

    def test_not_a_unit(self):
        with pytest.raises(NotAUnit):
            invert(S({(0, 0): 1, (0, 1): -1}))
        with pytest.raises(NotAUnit):
            invert(S({}))

    def test_negative_order_unit(self):
        f = S({(-2, 1): -1, (0, 0): 1})
        assert equal_up_to(mul(f, invert(f)), one(10), 10)


class TestSubst:
    def test_single_monomial(self):
        assert subst_z_qshift(S({(0, 1): 1}), -1).terms == {(-1, 1): 1}

    def test_two_terms(self):
        assert subst_z_qshift(S({(0, 0): 1, (2, 1): 1}), -2) == one(10) + S({(0, 1): 1})

    @given(sparse_series())
    def test_identity_case(self, f):
        assert subst_z_qshift(f, 0) == f

    def test_overflow(self):
        with pytest.raises(TruncationOverflow):
            subst_z_qshift(S({(9, 1): 1}), 2)


class TestQueries:
    def test_coeff(self):
        f = S({(0, 0): 1, (0, 1): -1, (1, 1): -1, (1, 2): 1})
        assert coeff(f, 1, 2) == 1
        assert coeff(f, 5, 7) == 0
        assert isinstance(coeff(f, 1, 2), Fraction)

    def test_min_q_order(self):
        assert min_q_order(S({(2, -3): 1, (5, 0): 1})) == 2
        assert min_q_order(S({})) is None

    def test_equal_up_to(self):
        assert equal_up_to(S({(0, 0): 1, (3, 0): 1}), one(10), 2)
        assert not equal_up_to(S({(0, 0): 1, (3, 0): 1}), one(10), 3)

    def test_out_of_range(self):
        with pytest.raises(OrderOutOfRange):
            coeff(one(3), 4, 0)
        with pytest.raises(OrderOutOfRange):
            equal_up_to(one(3), one(5), 4)

    def test_first_difference_location(self):
        assert first_difference(S({(2, 1): 3}), S({(2, 1): 1}), 10) == (2, 1, 3, 1)


# ring laws up to truncation

@settings(max_examples=300)
@given(sparse_series(), sparse_series(), sparse_series())
def test_ring_laws(f, g, h):
    N = f.qmax
    assert equal_up_to(add(f, g), add(g, f), N)
    assert equal_up_to(mul(f, g), mul(g, f), N)
    assert equal_up_to(add(add(f, g), h), add(f, add(g, h)), N)
    assert equal_up_to(mul(mul(f, g), h), mul(f, mul(g, h)), N)
    assert equal_up_to(mul(f, add(g, h)), add(mul(f, g), mul(f, h)), N)


@settings(max_examples=200)
@given(sparse_series(qmin=-3), sparse_series(qmin=-3), sparse_series(qmin=-3))
def test_associativity_with_negative_orders(f, g, h):
    left, right = mul(mul(f, g), h), mul(f, mul(g, h))
    N = min(left.qmax, right.qmax)
    assert equal_up_to(left, right, N)


@settings(max_examples=300)
@given(st.dictionaries(st.tuples(st.integers(-3, 14), st.integers(-2, 2)),
                       st.integers(-3, 3), max_size=10),
       st.dictionaries(st.tuples(st.integers(-3, 14), st.integers(-2, 2)),
                       st.integers(-3, 3), max_size=10),
       st.integers(0, 8), st.integers(0, 8))
def test_product_precision_is_sound(p, r, n1, n2):
    # truncated inputs must agree with the exact product wherever the result claims exactness
    exact = mul(QZSeries(p, 40), QZSeries(r, 40))
    approx = mul(QZSeries(p, n1), QZSeries(r, n2))
    assert approx.qmax <= exact.qmax
    assert equal_up_to(approx, truncate(exact, approx.qmax), approx.qmax)


@settings(max_examples=300)
@given(units())
def test_unit_inverse(f):
    g = invert(f)
    prod = mul(f, g)
    assert equal_up_to(prod, one(prod.qmax), prod.qmax)
    if f.min_q_order() == 0:
        assert prod.qmax == f.qmax


@given(sparse_series(), st.integers(-2, 2))
def test_subst_round_trip(f, m):
    # keep both directions inside the truncation window
    f = QZSeries({k: c for k, c in f.terms.items() if k[0] + 2 * abs(k[1]) <= f.qmax
                  and k[0] - 2 * abs(k[1]) <= f.qmax}, f.qmax)
    assert subst_z_qshift(subst_z_qshift(f, m), -m) == f


@given(sparse_series(), sparse_series(), st.integers(0, 8), st.integers(-3, 3))
def test_coeff_linear(f, g, i, j):
    assert coeff(add(f, g), i, j) == coeff(f, i, j) + coeff(g, i, j)


@given(sparse_series(qmin=-2), sparse_series(qmin=-2))
def test_no_stored_zeros(f, g):
    for h in (add(f, g), mul(f, g), f - f, add(f, -g)):
        assert all(c != 0 for c in h.terms.values())
        assert all(i <= h.qmax for i, _ in h.terms)
