"""Catalog of the quintuple-product identities and the proof-chain checks.

Every identity is stored as ``lhs * multiplier = rhs``: the ``lhs`` builder
returns the series side as written, ``multiplier`` collects the non-unit
denominators of the written right-hand side (absent when there are none),
and ``rhs`` is the resulting numerator.  ``1/(1 - z)`` has no meaning in
the series ring, so this cleared form is what gets compared.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable, Dict, List, Mapping, Optional, Tuple

from .hyper import (BoundViolation, Inadmissible, SumStats, VWP65Params,
                    pochhammer_order_bound, rogers_limit_lhs, rogers_limit_rhs,
                    six_phi_five_lhs, six_phi_five_rhs, sum_bilateral,
                    sum_unilateral, summand)
from .qprod import (Divergent, binomial_product, finite_factors,
                    infinite_factors, inverse_q_factorial, poch_finite)
from .series import (Monomial, NotAUnit, QZSeries, first_difference, invert,
                     mul, truncate)

M = Monomial
Q = M(1, 1, 0)
DEFAULT_ORDER = 24


class UnknownIdentity(KeyError):
    pass


class InvalidParams(ValueError):
    pass


def _inv_qfac(k: int):
    return lambda work: inverse_q_factorial(k, work)


def _prod(specs, qmax: int, finite: Tuple[Tuple[Monomial, int], ...] = ()) -> QZSeries:
    # product of infinite Pochhammers (a; q^step)_inf times finite (a; q)_n
    factors = infinite_factors(specs, qmax, allow_negative=True)
    for a, n in finite:
        factors += finite_factors(a, n)
    return binomial_product(factors, qmax)


def _theta_term(parts):
    # parts: list of (sign, q_exp, z_exp) monomials of one summand
    def term(k, qmax):
        acc = {}
        for c, i, j in parts(k):
            if i <= qmax:
                acc[(i, j)] = acc.get((i, j), 0) + c
        return QZSeries._from_acc(acc, qmax)
    return term


# --- first semi-finite form ------------------------------------------------

def s1_lhs(qmax: int, stats: Optional[SumStats] = None) -> QZSeries:
    """sum_k (1 + z q^k) (z^2; q)_k q^{k^2} z^k / (q; q)_k."""
    def term(k):
        num = [M(-1, k, 1)] + finite_factors(M(1, 0, 2), k)
        return summand(num, M(1, k * k, k), _inv_qfac(k), k * k, qmax)
    return sum_unilateral(term, 0, lambda k: k * k, qmax, stats=stats)


def s1_rhs(qmax: int) -> QZSeries:
    """(-z; q)_inf (z^2 q; q^2)_inf."""
    return _prod([(M(-1, 0, 1), 1), (M(1, 1, 2), 2)], qmax)


# --- second semi-finite form -----------------------------------------------

def thm2_term(k: int, qmax: int) -> QZSeries:
    num = [M(1, 2 * k + 1, 2)] + finite_factors(M(1, 1, 2), k)
    return summand(num, M(1, k * k, k), _inv_qfac(k), k * k, qmax)


def thm2_lhs(qmax: int, stats: Optional[SumStats] = None) -> QZSeries:
    """sum_k (1 - z^2 q^{2k+1}) (z^2 q; q)_k q^{k^2} z^k / (q; q)_k."""
    return sum_unilateral(lambda k: thm2_term(k, qmax), 0, lambda k: k * k, qmax, stats=stats)


def thm2_rhs(qmax: int) -> QZSeries:
    """(-z q; q)_inf (z^2 q; q^2)_inf."""
    return _prod([(M(-1, 1, 1), 1), (M(1, 1, 2), 2)], qmax)


# --- quintuple product, bilateral ------------------------------------------

def _ax_parts(k):
    s = -1 if k % 2 else 1
    return [(s, k * (3 * k - 1) // 2, 3 * k), (s, k * (3 * k + 1) // 2, 3 * k + 1)]


def ax_order_bound(k: int) -> int:
    return min(k * (3 * k - 1) // 2, k * (3 * k + 1) // 2)


def ax_lhs(qmax: int, stats: Optional[SumStats] = None) -> QZSeries:
    """sum_{k in Z} (-1)^k q^{k(3k-1)/2} z^{3k} (1 + z q^k)."""
    term = _theta_term(_ax_parts)
    return sum_bilateral(lambda k: term(k, qmax), ax_order_bound, qmax, stats=stats)


def ax_multiplier(qmax: int) -> QZSeries:
    """(z, q/z; q)_inf."""
    return _prod([(M(1, 0, 1), 1), (M(1, 1, -1), 1)], qmax)


def ax_rhs(qmax: int) -> QZSeries:
    """(q, q/z^2, z^2; q)_inf."""
    return _prod([(Q, 1), (M(1, 1, -2), 1), (M(1, 0, 2), 1)], qmax)


# --- finite-n identity ------------------------------------------------------

def qua_order_bound(n: int):
    def bound(k):
        if k >= 0:
            excess = max(0, k - n)
            return (3 * k * k + k) // 2 - excess * (excess + 1) // 2
        m = -k
        return (3 * m - 2) * (m - 1) // 2
    return bound


def qua_term(n: int, k: int, qmax: int, bound: int) -> QZSeries:
    """(-1)^k (1 - z^2 q^{2k+1}) (q^{n-k}/z^2; q)_k / (q^{n+1}; q)_k z^{3k} q^{(3k^2+k)/2}.

    For k < 0 both Pochhammers use the negative-index extension.
    """
    # the (q^{n-k}/z^2; q)_k factor alone dips to -T(k-n); the product only to ``bound``
    excess = max(0, k - n)
    work = qmax + excess * (excess + 1) // 2 + max(0, -bound)
    pre = M(-1 if k % 2 else 1, (3 * k * k + k) // 2, 3 * k)
    head = binomial_product([M(1, 2 * k + 1, 2)], work, pre)
    num = poch_finite(M(1, n - k, -2), k, work)
    den = poch_finite(M(1, n + 1, 0), k, work)
    out = mul(mul(head, num), invert(den))
    return truncate(out, qmax)


def qua_sum(n: int, qmax: int, stats: Optional[SumStats] = None) -> QZSeries:
    """The k >= -n sum on the left of the finite-n identity."""
    bound = qua_order_bound(n)
    term = lambda k: qua_term(n, k, qmax, bound(k))
    if n == 0:
        return sum_unilateral(term, 0, bound, qmax, stats=stats)
    return sum_bilateral(term, bound, qmax, k_min=-n, stats=stats)


def qua_multiplier(qmax: int, n: int) -> QZSeries:
    """(1/z; q)_n (z q; q)_inf."""
    return _prod([(M(1, 1, 1), 1)], qmax, finite=((M(1, 0, -1), n),))


def qua_rhs(qmax: int, n: int) -> QZSeries:
    """(q; q)_n (1/z^2; q)_n (z^2 q; q)_inf."""
    return _prod([(M(1, 1, 2), 1)], qmax, finite=((Q, n), (M(1, 0, -2), n)))


# --- n -> oo limit of the finite-n identity ---------------------------------

def _qua1_parts(k):
    s = -1 if k % 2 else 1
    e = (3 * k * k + k) // 2
    return [(s, e, 3 * k), (-s, e + 2 * k + 1, 3 * k + 2)]


def qua1_order_bound(k: int) -> int:
    e = (3 * k * k + k) // 2
    return min(e, e + 2 * k + 1)


def qua1_lhs(qmax: int, stats: Optional[SumStats] = None) -> QZSeries:
    """sum_{k in Z} (-1)^k (1 - z^2 q^{2k+1}) z^{3k} q^{(3k^2+k)/2}."""
    term = _theta_term(_qua1_parts)
    return sum_bilateral(lambda k: term(k, qmax), qua1_order_bound, qmax, stats=stats)


def qua1_multiplier(qmax: int) -> QZSeries:
    """(1/z, z q; q)_inf."""
    return _prod([(M(1, 0, -1), 1), (M(1, 1, 1), 1)], qmax)


def qua1_rhs(qmax: int) -> QZSeries:
    """(q, 1/z^2, z^2 q; q)_inf."""
    return _prod([(Q, 1), (M(1, 0, -2), 1), (M(1, 1, 2), 1)], qmax)


def k_cut(qmax: int) -> int:
    """Largest |k| whose bilateral qua1 summand reaches q-order <= qmax."""
    kc = 0
    k = 1
    while qua1_order_bound(k) <= qmax or qua1_order_bound(-k) <= qmax:
        kc = k
        k += 1
    return kc


# --- product rewriting after z -> z q^{-n} ----------------------------------

def product_equiv_lhs(qmax: int, n: int) -> QZSeries:
    """(-z q^{1-n}; q)_inf (z^2 q^{1-2n}; q^2)_inf."""
    return _prod([(M(-1, 1 - n, 1), 1), (M(1, 1 - 2 * n, 2), 2)], qmax)


def product_equiv_multiplier(qmax: int, n: int) -> QZSeries:
    """(z q^{1-n}; q)_inf."""
    return _prod([(M(1, 1 - n, 1), 1)], qmax)


def product_equiv_cleared(qmax: int, n: int) -> QZSeries:
    # one exact expansion; multiplying two negative-order truncations would lose precision
    return _prod([(M(-1, 1 - n, 1), 1), (M(1, 1 - 2 * n, 2), 2), (M(1, 1 - n, 1), 1)], qmax)


def product_equiv_rhs(qmax: int, n: int) -> QZSeries:
    """(z^2 q^{1-2n}; q)_inf."""
    return _prod([(M(1, 1 - 2 * n, 2), 1)], qmax)


# --- 6phi5 summation and its c, d -> oo limit ------------------------------

VWP65_TUPLES: Tuple[VWP65Params, ...] = (
    VWP65Params(s=M(1, 1), b=M(1, 1), c=M(2), d=M(-1)),
    VWP65Params(s=M(1, 1, 1), b=M(1, 1, 1), c=M(1, 1), d=M(1, 0, -1)),
    VWP65Params(s=M(1, 2, 1), b=M(1, 0, 2), c=M(-1, 1), d=M(Fraction(1, 3), 1, 1)),
    VWP65Params(s=M(2, 1), b=M(1, 0, 1), c=M(1, 0, -1), d=M(1, 1)),
    VWP65Params(s=M(1, 1), b=M(1, -1), c=M(1, 0, 1), d=M(1, 1, -1)),
    VWP65Params(s=M(1, 1, 1), b=M(1, -2, 1), c=M(1, 1), d=M(1, 1)),
)

# (a, b) pairs for the c = d -> oo limit; the first is the instance giving thm2
ROGERS_PAIRS: Tuple[Tuple[Monomial, Monomial], ...] = (
    (M(1, 1, 2), M(1, 1, 1)),
    (M(1, 2), M(1, 1)),
    (M(1, 1, 1), M(1, 0, -1)),
)

# (s, b) with a = s^2 for the finite-c,d confluence check
CONFLUENCE_PAIRS: Tuple[Tuple[Monomial, Monomial], ...] = (
    (M(1, 1, 1), M(1, 1, 1)),
    (M(1, 1), M(1, 1)),
    (M(1, 1, 1), M(1, 1, 2)),
)


def _pick(seq, t: int):
    if not 0 <= t < len(seq):
        raise InvalidParams(f"t must be in 0..{len(seq) - 1}")
    return seq[t]


# --- catalog ------------------------------------------------------------------

@dataclass(frozen=True)
class ParamSpec:
    default: Optional[int]
    minimum: int = 0
    maximum: Optional[int] = None
    grid: Tuple[int, ...] = ()


@dataclass(frozen=True)
class Mismatch:
    q_exp: int
    z_exp: int
    lhs: Fraction
    rhs: Fraction


@dataclass
class VerifyReport:
    identity: str
    params: Dict[str, int]
    status: str
    checked_order: int
    first_mismatch: Optional[Mismatch] = None
    terms_summed: int = 0
    elapsed: float = 0.0
    error: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> dict:
        mm = None
        if self.first_mismatch is not None:
            m = self.first_mismatch
            mm = {"q_exp": m.q_exp, "z_exp": m.z_exp,
                  "lhs": _frac_str(m.lhs), "rhs": _frac_str(m.rhs)}
        out = {"identity": self.identity, "params": dict(self.params),
               "order": self.checked_order, "status": self.status,
               "first_mismatch": mm, "terms_summed": self.terms_summed,
               "elapsed_ms": round(self.elapsed * 1000, 3)}
        if self.error is not None:
            out["error"] = self.error
        return out


def _frac_str(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class Identity:
    """``lhs * multiplier = rhs`` as series exact up to the requested order."""

    name: str
    label: str
    statement: str
    lhs: Callable
    rhs: Callable
    multiplier: Optional[Callable] = None
    cleared: Optional[Callable] = None
    params: Mapping[str, ParamSpec] = field(default_factory=dict)
    validity: str = "qmax >= 0"

    def build(self, side: str, qmax: int, params: Mapping[str, int],
              stats: Optional[SumStats] = None) -> QZSeries:
        if side == "lhs":
            return _call(self.lhs, qmax, params, stats)
        if side == "rhs":
            return _call(self.rhs, qmax, params)
        if side == "multiplier":
            return _call(self.multiplier, qmax, params) if self.multiplier else _one(qmax)
        if side == "cleared":
            if self.cleared is not None:
                return _call(self.cleared, qmax, params)
            left = _call(self.lhs, qmax, params, stats)
            if self.multiplier is None:
                return left
            return mul(left, _call(self.multiplier, qmax, params))
        raise ValueError(f"unknown side {side!r}")

    def compare(self, qmax: int, params: Mapping[str, int], stats: SumStats):
        left = self.build("cleared", qmax, params, stats)
        right = self.build("rhs", qmax, params)
        return first_difference(left, right, qmax)


@dataclass(frozen=True)
class Check:
    """A proof-step check that is not a single two-sided identity."""

    name: str
    label: str
    statement: str
    run: Callable
    params: Mapping[str, ParamSpec] = field(default_factory=dict)
    validity: str = "qmax >= 0"

    def compare(self, qmax: int, params: Mapping[str, int], stats: SumStats):
        return self.run(qmax, stats=stats, **params)


def _one(qmax):
    return binomial_product([], qmax)


def _call(fn, qmax, params, stats=None):
    if stats is not None and "stats" in fn.__code__.co_varnames[:fn.__code__.co_argcount]:
        return fn(qmax, stats=stats, **params)
    return fn(qmax, **params)


# --- proof-chain checks --------------------------------------------------------

def mi1_substituted(n: int, qmax: int, stats: Optional[SumStats] = None) -> QZSeries:
    """thm2 left side with z -> z q^{-n}, expanded summand by summand."""
    def bound(k):
        # the factor (1 - z^2 q^{2k-2n+1}) is bounded below by min(0, 1-2n) to keep this convex
        return k * k - k * n + pochhammer_order_bound(1 - 2 * n, k) + min(0, 1 - 2 * n)

    def term(k):
        num = [M(1, 2 * k - 2 * n + 1, 2)] + finite_factors(M(1, 1 - 2 * n, 2), k)
        return summand(num, M(1, k * k - k * n, k), _inv_qfac(k), bound(k), qmax)

    return sum_unilateral(term, 0, bound, qmax, stats=stats)


def mi1_reindexed(n: int, qmax: int, stats: Optional[SumStats] = None) -> QZSeries:
    """The same sum written over k >= -n after k -> k + n."""
    def bound(k):
        return (k * k + k * n + pochhammer_order_bound(1 - 2 * n, k + n)
                + min(0, 1 - 2 * n))

    def term(k):
        num = [M(1, 2 * k + 1, 2)] + finite_factors(M(1, 1 - 2 * n, 2), k + n)
        return summand(num, M(1, k * k + k * n, k + n), _inv_qfac(k + n), bound(k), qmax)

    return sum_unilateral(term, -n, bound, qmax, stats=stats)


def mi1_factored(n: int, qmax: int, stats: Optional[SumStats] = None) -> QZSeries:
    """z^n (z^2 q^{1-2n}; q)_n / (q; q)_n times the finite-n sum."""
    neg = -pochhammer_order_bound(1 - 2 * n, n)
    work = qmax + neg
    head = binomial_product(finite_factors(M(1, 1 - 2 * n, 2), n), work, M(1, 0, n))
    tail = mul(inverse_q_factorial(n, work), qua_sum(n, work, stats=stats))
    return truncate(mul(head, tail), qmax)


def verify_mi1_chain_compare(qmax: int, n: int, stats: Optional[SumStats] = None):
    stats = stats if stats is not None else SumStats()
    a = mi1_substituted(n, qmax, stats)
    b = mi1_reindexed(n, qmax, stats)
    c = mi1_factored(n, qmax, stats)
    d = product_equiv_lhs(qmax, n)
    for left, right in ((a, b), (b, c), (c, d)):
        diff = first_difference(left, right, qmax)
        if diff is not None:
            return diff
    return None


def stabilization_compare(qmax: int, n: Optional[int] = None, z_window: int = 12,
                          stats: Optional[SumStats] = None):
    """Compare the cleared finite-n identity at n (default n0) with its n -> oo form."""
    if n is None:
        n = stabilization_n0(qmax)
    params = {"n": n}
    qua, qua1 = CATALOG["qua"], CATALOG["qua1"]
    for side in ("cleared", "rhs"):
        finite = qua.build(side, qmax, params, stats)
        limit = qua1.build(side, qmax, {}, stats)
        diff = first_difference(finite, limit, qmax, z_window=z_window)
        if diff is not None:
            return diff
    return None


def stabilization_n0(qmax: int) -> int:
    return qmax + k_cut(qmax) + 1


def rogers_instance_compare(qmax: int, stats: Optional[SumStats] = None):
    """(1 - z^2 q) times the c,d -> oo sum at (a, b) = (z^2 q, z q) versus the thm2 sum."""
    a, b = ROGERS_PAIRS[0]
    left = mul(binomial_product([a], qmax), rogers_limit_lhs(a, b, qmax, stats))
    right = thm2_lhs(qmax, stats)
    if left != right:
        diff = first_difference(left, right, qmax)
        return diff if diff is not None else (qmax, 0, Fraction(left.qmax), Fraction(right.qmax))
    return None


def confluence_compare(qmax: int, t: int = 0, stats: Optional[SumStats] = None):
    """6phi5 at c = d = q^{-(qmax+1)} agrees with the c,d -> oo limit below qmax."""
    s, b = _pick(CONFLUENCE_PAIRS, t)
    big = M(1, -(qmax + 1))
    p = VWP65Params(s=s, b=b, c=big, d=big)
    a = p.a
    pairs = ((six_phi_five_lhs(p, qmax, stats), rogers_limit_lhs(a, b, qmax, stats)),
             (six_phi_five_rhs(p, qmax), rogers_limit_rhs(a, b, qmax)))
    for left, right in pairs:
        diff = first_difference(left, right, qmax)
        if diff is not None:
            return diff
    return None


def cross_s1_thm2_compare(qmax: int, stats: Optional[SumStats] = None):
    """s1 sum equals (1 + z) times the thm2 sum."""
    left = s1_lhs(qmax, stats)
    right = mul(binomial_product([M(-1, 0, 1)], qmax), thm2_lhs(qmax, stats))
    return first_difference(left, right, qmax)


def _vwp_lhs(qmax, t=0, stats=None):
    return six_phi_five_lhs(_pick(VWP65_TUPLES, t), qmax, stats)


def _vwp_rhs(qmax, t=0):
    return six_phi_five_rhs(_pick(VWP65_TUPLES, t), qmax)


def _rogers_lhs(qmax, t=0, stats=None):
    return rogers_limit_lhs(*_pick(ROGERS_PAIRS, t), qmax, stats)


def _rogers_rhs(qmax, t=0):
    return rogers_limit_rhs(*_pick(ROGERS_PAIRS, t), qmax)


def _qua_lhs(qmax, n=0, stats=None):
    return qua_sum(n, qmax, stats)


N_PARAM = ParamSpec(default=0, minimum=0)

_ENTRIES = [
    Identity("s1", "first semi-finite form", "sum_k (1+zq^k)(z^2;q)_k q^{k^2} z^k/(q;q)_k = (-z;q)_inf (z^2q;q^2)_inf",
             s1_lhs, s1_rhs),
    Identity("thm2", "second semi-finite form",
             "sum_k (1-z^2q^{2k+1})(z^2q;q)_k q^{k^2} z^k/(q;q)_k = (-zq;q)_inf (z^2q;q^2)_inf",
             thm2_lhs, thm2_rhs),
    Identity("ax", "quintuple product (cleared)",
             "[sum_{k in Z} (-1)^k q^{k(3k-1)/2} z^{3k}(1+zq^k)] (z,q/z;q)_inf = (q,q/z^2,z^2;q)_inf",
             ax_lhs, ax_rhs, multiplier=ax_multiplier, validity="qmax >= 0; z != 0 (formal)"),
    Identity("qua", "finite-n quintuple form (cleared)",
             "[sum_{k>=-n} (-1)^k (1-z^2q^{2k+1})(q^{n-k}/z^2;q)_k/(q^{n+1};q)_k z^{3k} q^{(3k^2+k)/2}]"
             " (1/z;q)_n (zq;q)_inf = (q,1/z^2;q)_n (z^2q;q)_inf",
             _qua_lhs, lambda qmax, n=0: qua_rhs(qmax, n),
             multiplier=lambda qmax, n=0: qua_multiplier(qmax, n),
             params={"n": ParamSpec(default=3, minimum=0, grid=tuple(range(11)))},
             validity="integer n >= 0; qmax >= 0"),
    Identity("qua1", "n -> oo limit of qua (cleared)",
             "[sum_{k in Z} (-1)^k (1-z^2q^{2k+1}) z^{3k} q^{(3k^2+k)/2}] (1/z,zq;q)_inf"
             " = (q,1/z^2,z^2q;q)_inf",
             qua1_lhs, qua1_rhs, multiplier=qua1_multiplier),
    Identity("product_equiv", "product rewriting at z -> zq^{-n}",
             "(-zq^{1-n};q)_inf (z^2q^{1-2n};q^2)_inf (zq^{1-n};q)_inf = (z^2q^{1-2n};q)_inf",
             lambda qmax, n=0: product_equiv_lhs(qmax, n),
             lambda qmax, n=0: product_equiv_rhs(qmax, n),
             multiplier=lambda qmax, n=0: product_equiv_multiplier(qmax, n),
             cleared=lambda qmax, n=0: product_equiv_cleared(qmax, n),
             params={"n": ParamSpec(default=2, minimum=0, grid=tuple(range(7)))},
             validity="integer n >= 0; qmax >= 0"),
    Identity("vwp65", "very-well-poised 6phi5 summation",
             "very-well-poised 6phi5 sum = (aq,aq/bc,aq/bd,aq/cd;q)_inf/(aq/b,aq/c,aq/d,aq/bcd;q)_inf"
             " at pinned monomial tuple t",
             _vwp_lhs, _vwp_rhs,
             params={"t": ParamSpec(default=0, minimum=0, maximum=len(VWP65_TUPLES) - 1,
                                    grid=tuple(range(len(VWP65_TUPLES))))},
             validity="t indexes VWP65_TUPLES; qmax >= 0"),
    Identity("rogers", "6phi5 summation, c=d->oo",
             "sum_k (a,b;q)_k (1-aq^{2k})/((q,aq/b;q)_k (1-a)) (aq/b)^k q^{k(k-1)} = (aq;q)_inf/(aq/b;q)_inf"
             " at pinned (a,b) pair t",
             _rogers_lhs, _rogers_rhs,
             params={"t": ParamSpec(default=0, minimum=0, maximum=len(ROGERS_PAIRS) - 1,
                                    grid=tuple(range(len(ROGERS_PAIRS))))},
             validity="t indexes ROGERS_PAIRS; qmax >= 0"),
    Check("mi1", "substitution and reindexing chain",
          "thm2 at z -> zq^{-n}: direct sum = sum over k >= -n = z^n (z^2q^{1-2n};q)_n/(q;q)_n * qua sum"
          " = (-zq^{1-n};q)_inf (z^2q^{1-2n};q^2)_inf",
          verify_mi1_chain_compare,
          params={"n": ParamSpec(default=1, minimum=0, grid=tuple(range(7)))},
          validity="integer n >= 0; qmax >= 0"),
    Check("stabilization", "qua at large n -> qua1",
          "cleared qua at n >= n0 = qmax + k_cut + 1 agrees with cleared qua1 up to qmax, |z-exp| <= z_window",
          stabilization_compare,
          params={"n": ParamSpec(default=None, minimum=0),
                  "z_window": ParamSpec(default=12, minimum=0)},
          validity="n >= 0 (default n0); z_window >= 0; qmax >= 0"),
    Check("rogers_instance", "c=d->oo limit at (z^2q, zq) -> thm2",
          "(1 - z^2 q) * c,d->oo sum at (a,b)=(z^2q,zq) equals the thm2 sum term for term",
          rogers_instance_compare),
    Check("confluence", "6phi5 at large finite c=d",
          "6phi5 at c=d=q^{-(qmax+1)} matches the c,d->oo limit on both sides",
          confluence_compare,
          params={"t": ParamSpec(default=0, minimum=0, maximum=len(CONFLUENCE_PAIRS) - 1,
                                 grid=tuple(range(len(CONFLUENCE_PAIRS))))}),
    Check("cross_s1_thm2", "s1 versus thm2",
          "s1 sum = (1 + z) * thm2 sum",
          cross_s1_thm2_compare),
]

CATALOG: Dict[str, object] = {e.name: e for e in _ENTRIES}


def list_identities() -> List[object]:
    return list(_ENTRIES)


def get(name: str):
    try:
        return CATALOG[name]
    except KeyError:
        raise UnknownIdentity(f"unknown identity {name!r}; known: {', '.join(CATALOG)}") from None


def resolve_params(entry, params: Optional[Mapping[str, int]]) -> Dict[str, int]:
    params = dict(params or {})
    unknown = set(params) - set(entry.params)
    if unknown:
        raise InvalidParams(f"{entry.name} takes no parameter(s) {sorted(unknown)}")
    out = {}
    for key, spec in entry.params.items():
        value = params.get(key, spec.default)
        if value is None:
            continue
        if isinstance(value, bool) or not isinstance(value, int):
            raise InvalidParams(f"{key} must be an integer")
        if value < spec.minimum or (spec.maximum is not None and value > spec.maximum):
            hi = "" if spec.maximum is None else f"..{spec.maximum}"
            raise InvalidParams(f"{key}={value} outside {spec.minimum}{hi or '..'}")
        out[key] = value
    return out


def verify(name: str, params: Optional[Mapping[str, int]] = None,
           qmax: int = DEFAULT_ORDER) -> VerifyReport:
    entry = get(name)
    if isinstance(qmax, bool) or not isinstance(qmax, int) or qmax < 0:
        raise InvalidParams(f"order must be a nonnegative integer, got {qmax!r}")
    params = resolve_params(entry, params)
    stats = SumStats()
    start = time.perf_counter()
    error = None
    diff = None
    try:
        diff = entry.compare(qmax, params, stats)
    except (BoundViolation, NotAUnit, Divergent, Inadmissible, ArithmeticError) as exc:
        error = f"{type(exc).__name__}: {exc}"
    elapsed = time.perf_counter() - start
    mismatch = Mismatch(*diff) if diff is not None else None
    status = "pass" if mismatch is None and error is None else "fail"
    return VerifyReport(name, params, status, qmax, mismatch, stats.terms, elapsed, error)


def default_grid(entry) -> List[Dict[str, int]]:
    keys = [k for k, s in entry.params.items() if s.grid]
    if not keys:
        return [{}]
    return [dict(zip(keys, values)) for values in product(*(entry.params[k].grid for k in keys))]


def _verify_job(job):
    name, params, qmax = job
    return verify(name, params, qmax)


def verify_all(qmax: int = DEFAULT_ORDER,
               param_grid: Optional[Mapping[str, List[Dict[str, int]]]] = None,
               jobs: int = 1) -> List[VerifyReport]:
    """Every catalog entry over its grid, reported in catalog order."""
    param_grid = dict(param_grid or {})
    work = []
    for entry in _ENTRIES:
        for params in param_grid.get(entry.name, default_grid(entry)):
            work.append((entry.name, params, qmax))
    if jobs <= 1:
        return [_verify_job(j) for j in work]
    from concurrent.futures import ProcessPoolExecutor
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_verify_job, work))
