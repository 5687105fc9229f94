from fractions import Fraction

import pytest

from quintuple import identities as ident
from quintuple.identities import (CATALOG, InvalidParams, UnknownIdentity, get,
                                  k_cut, qua_order_bound, qua_sum, qua_term,
                                  stabilization_n0, thm2_lhs, thm2_term, verify)
from quintuple.oracle import brute_theta_coeff
from quintuple.series import equal_up_to, first_difference, mul


def q_slice(f, i):
    return {j: c for (a, j), c in f.terms.items() if a == i}


def sides(name, qmax, **params):
    entry = get(name)
    return entry.build("cleared", qmax, params), entry.build("rhs", qmax, params)


class TestS1:
    @pytest.mark.parametrize("side", ["lhs", "rhs"])
    def test_low_slices(self, side):
        f = get("s1").build(side, 3, {})
        assert q_slice(f, 0) == {0: 1, 1: 1}
        assert q_slice(f, 1) == {1: 1, 3: -1}

    def test_order_30(self):
        assert equal_up_to(*sides("s1", 30), 30)


class TestThm2:
    @pytest.mark.parametrize("side", ["lhs", "rhs"])
    def test_low_slices(self, side):
        f = get("thm2").build(side, 3, {})
        assert q_slice(f, 0) == {0: 1}
        assert q_slice(f, 1) == {1: 1, 2: -1}

    def test_order_30(self):
        assert equal_up_to(*sides("thm2", 30), 30)


class TestTheta:
    def test_ax_coefficients(self):
        f = get("ax").build("lhs", 4, {})
        assert f.coeff(1, 3) == -1
        assert f.coeff(1, -2) == -1
        assert f.coeff(0, 0) == 1 and f.coeff(0, 1) == 1

    def test_qua1_coefficients(self):
        f = get("qua1").build("lhs", 4, {})
        assert f.coeff(0, 0) == 1
        assert f.coeff(1, 2) == -1

    @pytest.mark.parametrize("name", ["ax", "qua1"])
    def test_order_30(self, name):
        assert equal_up_to(*sides(name, 30), 30)

    @pytest.mark.parametrize("name", ["ax", "qua1"])
    def test_coefficients_are_signs_and_match_brute_force(self, name):
        qmax = 16
        f = get(name).build("lhs", qmax, {})
        assert set(f.terms.values()) <= {-1, 1}
        for i in range(-2, qmax + 1):
            row = q_slice(f, i)
            for j in range(-3 * qmax - 6, 3 * qmax + 7):
                assert row.get(j, 0) == brute_theta_coeff(name, i, j, qmax), (i, j)

    def test_at_most_one_term_per_z_power(self):
        # distinct k give disjoint z-exponents, so each z^j appears at one q-order only
        for name in ("ax", "qua1"):
            f = get(name).build("lhs", 20, {})
            js = [j for _, j in f.terms]
            assert len(js) == len(set(js))


class TestQua:
    @pytest.mark.parametrize("n", range(11))
    def test_family(self, n):
        assert equal_up_to(*sides("qua", 20, n=n), 20)

    def test_n_zero_is_thm2(self):
        # (q^{-k}/z^2; q)_k = (-1)^k q^{-k(k+1)/2} z^{-2k} (z^2 q; q)_k turns each summand into thm2's
        for qmax in (0, 7, 20):
            assert qua_sum(0, qmax) == thm2_lhs(qmax)
        bound = qua_order_bound(0)
        for k in range(5):
            assert qua_term(0, k, 20, bound(k)) == thm2_term(k, 20)

    def test_n_zero_cleared_rhs(self):
        # (-zq; q)_inf (zq; q)_inf = (z^2 q^2; q^2)_inf, so the thm2 product times the multiplier is qua's
        qmax = 20
        mult = get("qua").build("multiplier", qmax, {"n": 0})
        assert mul(get("thm2").build("rhs", qmax, {}), mult) == get("qua").build("rhs", qmax, {"n": 0})

    def test_negative_k_terms_contribute(self):
        bound = qua_order_bound(1)
        t = qua_term(1, -1, 10, bound(-1))
        assert len(t) > 0
        assert t.min_q_order() == bound(-1)

    def test_order_bound_is_attained_or_exceeded(self):
        for n in range(5):
            bound = qua_order_bound(n)
            for k in range(-n, 8):
                t = qua_term(n, k, 40, bound(k))
                if len(t):
                    assert t.min_q_order() >= bound(k), (n, k)

    def test_sum_counts_terms(self):
        stats = ident.SumStats()
        qua_sum(3, 10, stats)
        assert stats.terms >= 4


class TestProductEquiv:
    def test_n_zero_constant(self):
        left, right = sides("product_equiv", 4, n=0)
        assert q_slice(left, 0) == q_slice(right, 0) == {0: 1}

    def test_negative_orders(self):
        left, right = sides("product_equiv", 6, n=2)
        assert left == right
        # (1 - z^2 q^-3)(1 - z^2 q^-2)(1 - z^2 q^-1) reaches q^-6 z^6
        assert right.min_q_order() == -6
        assert right.coeff(-6, 6) == -1
        assert right.coeff(-3, 2) == -1
        assert first_difference(left, right, 6) is None


class TestMi1:
    def test_n_zero_is_thm2(self):
        qmax = 12
        target = thm2_lhs(qmax)
        assert ident.mi1_substituted(0, qmax) == target
        assert ident.mi1_reindexed(0, qmax) == target

    @pytest.mark.parametrize("n,qmax", [(1, 10), (4, 12)])
    def test_chain(self, n, qmax):
        assert verify("mi1", {"n": n}, qmax).passed

    def test_negative_orders_present(self):
        f = ident.mi1_substituted(4, 12)
        assert f.min_q_order() < 0
        assert f == ident.mi1_reindexed(4, 12)


class TestStabilization:
    def test_n0_formula(self):
        assert k_cut(10) == 3
        assert stabilization_n0(10) == 14

    def test_pass_at_n0(self):
        r = verify("stabilization", {"z_window": 12}, 10)
        assert r.passed

    def test_small_n_fails_with_location(self):
        r = verify("stabilization", {"n": 1, "z_window": 12}, 10)
        assert r.status == "fail"
        m = r.first_mismatch
        assert m is not None and m.q_exp <= 10 and abs(m.z_exp) <= 12
        assert m.lhs != m.rhs

    def test_order_zero(self):
        assert verify("stabilization", {}, 0).passed

    @pytest.mark.parametrize("n", [11, 14, 18])
    def test_large_n(self, n):
        assert verify("stabilization", {"n": n, "z_window": 12}, 10).passed


class TestVerify:
    def test_s1(self):
        r = verify("s1", {}, 24)
        assert r.passed and r.first_mismatch is None and r.terms_summed > 0

    def test_qua(self):
        assert verify("qua", {"n": 3}, 20).passed

    def test_negative_order(self):
        with pytest.raises(InvalidParams):
            verify("s1", {}, -1)

    def test_unknown(self):
        with pytest.raises(UnknownIdentity):
            verify("nope", {}, 4)

    def test_bad_params(self):
        with pytest.raises(InvalidParams):
            verify("qua", {"n": -1}, 4)
        with pytest.raises(InvalidParams):
            verify("s1", {"n": 1}, 4)
        with pytest.raises(InvalidParams):
            verify("vwp65", {"t": 99}, 4)

    def test_report_dict(self):
        d = verify("thm2", {}, 6).to_dict()
        assert d["status"] == "pass" and d["order"] == 6 and d["first_mismatch"] is None
        assert set(d) >= {"identity", "params", "terms_summed", "elapsed_ms"}

    def test_mismatch_serializes_as_fractions(self):
        d = verify("stabilization", {"n": 1}, 10).to_dict()
        mm = d["first_mismatch"]
        assert all("/" in mm[k] for k in ("lhs", "rhs"))
        Fraction(mm["lhs"]), Fraction(mm["rhs"])

    def test_deterministic(self):
        a = get("ax").build("lhs", 18, {})
        b = get("ax").build("lhs", 18, {})
        assert a == b and list(a.items()) == list(b.items())

    @pytest.mark.parametrize("name", ["vwp65", "rogers", "confluence", "rogers_instance", "cross_s1_thm2"])
    def test_other_entries(self, name):
        assert verify(name, {}, 12).passed


def test_cross_identity_order_24():
    assert verify("cross_s1_thm2", {}, 24).passed


def test_catalog_names():
    assert list(CATALOG) == ["s1", "thm2", "ax", "qua", "qua1", "product_equiv", "vwp65",
                             "rogers", "mi1", "stabilization", "rogers_instance",
                             "confluence", "cross_s1_thm2"]
    for entry in CATALOG.values():
        assert entry.label and entry.statement and entry.validity
