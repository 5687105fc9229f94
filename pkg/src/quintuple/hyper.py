"""Formal summation engine, the very-well-poised 6phi5 sum and its c, d -> oo limit."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, List, Optional

from .qprod import binomial_product, finite_factors, infinite_factors
from .series import Monomial, QZSeries, invert, mul, sum_series, truncate

__all__ = [
    "BoundViolation", "Inadmissible", "SumStats", "VWP65Params", "Monomial",
    "sum_unilateral", "sum_bilateral", "summand", "pochhammer_order_bound",
    "six_phi_five_lhs", "six_phi_five_rhs", "rogers_limit_lhs", "rogers_limit_rhs",
]


class BoundViolation(ArithmeticError):
    def __init__(self, k: int, actual: int, bound: int):
        super().__init__(f"term k={k} has q-order {actual} below declared bound {bound}")
        self.k, self.actual, self.bound = k, actual, bound


class Inadmissible(ValueError):
    pass


@dataclass
class SumStats:
    terms: int = 0


def sum_unilateral(term: Callable[[int], QZSeries], k_start: int,
                   order_bound: Callable[[int], int], qmax: int,
                   k_stop: Optional[int] = None,
                   stats: Optional[SumStats] = None) -> QZSeries:
    """Sum ``term(k)`` for ``k = k_start, k_start+1, ...`` truncated at ``qmax``.

    ``order_bound(k)`` must be a lower bound for the q-order of ``term(k)``
    and convex in k (nondecreasing is the usual case).  Summation stops as
    soon as the bound exceeds ``qmax`` while no longer decreasing, or after
    ``k_stop`` (inclusive).  Every computed term is checked against its
    bound; a violation means the cutoff is unsound.
    """
    parts: List[QZSeries] = []
    k = k_start
    while k_stop is None or k <= k_stop:
        b = order_bound(k)
        if b > qmax:
            if order_bound(k + 1) >= b:
                break
            k += 1
            continue
        t = term(k)
        v = t.min_q_order()
        if v is not None and v < b:
            raise BoundViolation(k, v, b)
        if t.qmax < qmax:
            raise ArithmeticError(f"term k={k} only exact to q^{t.qmax}, need q^{qmax}")
        parts.append(t)
        if stats is not None:
            stats.terms += 1
        k += 1
    return sum_series(parts, qmax)


def sum_bilateral(term: Callable[[int], QZSeries], order_bound: Callable[[int], int],
                  qmax: int, k_min: Optional[int] = None,
                  stats: Optional[SumStats] = None) -> QZSeries:
    """Sum over ``k >= k_min`` (all integers if None) as two one-sided sweeps from 0."""
    up = sum_unilateral(term, 0, order_bound, qmax, stats=stats)
    if k_min is not None and k_min >= 0:
        raise ValueError("k_min must be negative; use sum_unilateral otherwise")
    down = sum_unilateral(lambda m: term(-m), 1, lambda m: order_bound(-m), qmax,
                          k_stop=None if k_min is None else -k_min, stats=stats)
    return sum_series([up, down], qmax)


def pochhammer_order_bound(a_order: int, k: int) -> int:
    """Lower bound on the q-order of ``(a; q)_k`` for k >= 0 and ``ord_q(a) = a_order``."""
    return sum(min(0, a_order + l) for l in range(k))


def summand(num_factors, prefactor: Monomial, den, bound: int, qmax: int) -> QZSeries:
    """``prefactor * prod(1 - m) / D`` exact to ``qmax``.

    ``den`` is either a list of monomials (D is their binomial product, a unit
    of q-order 0) or a callable ``work_order -> 1/D``.  The numerator may have
    negative q-order down to ``bound``; everything is computed that much
    deeper and truncated back.
    """
    work = qmax + max(0, -bound)
    num = binomial_product(num_factors, work, prefactor)
    if callable(den):
        inv = den(work)
    else:
        inv = invert(binomial_product(den, work))
    return truncate(mul(num, inv), qmax)


@dataclass(frozen=True)
class VWP65Params:
    """Parameters of the very-well-poised 6phi5 sum; ``a = s**2``."""

    s: Monomial
    b: Monomial
    c: Monomial
    d: Monomial

    @property
    def a(self) -> Monomial:
        return self.s * self.s

    @property
    def ratio(self) -> Monomial:
        return self.a.shift(1) / (self.b * self.c * self.d)

    def check(self, rhs: bool = False) -> None:
        a = self.a
        needs = {
            "s": self.s, "-s": -self.s,
            "aq/b": a.shift(1) / self.b, "aq/c": a.shift(1) / self.c,
            "aq/d": a.shift(1) / self.d, "qa/(bcd)": self.ratio,
        }
        for name, m in needs.items():
            if m.q_order < 1:
                raise Inadmissible(f"{name} = {m} must have q-order >= 1 (got {m.q_order})")
        if rhs:
            for name, m in {"aq/(bc)": a.shift(1) / (self.b * self.c),
                            "aq/(bd)": a.shift(1) / (self.b * self.d),
                            "aq/(cd)": a.shift(1) / (self.c * self.d)}.items():
                if m.q_order < 0:
                    raise Inadmissible(f"{name} = {m} must have q-order >= 0 (got {m.q_order})")

    def order_bound(self, k: int) -> int:
        b = k * self.ratio.q_order
        for m in (self.a, self.b, self.c, self.d):
            b += pochhammer_order_bound(m.q_order, k)
        return b


def six_phi_five_lhs(p: VWP65Params, qmax: int, stats: Optional[SumStats] = None) -> QZSeries:
    """Sum over k of the 6phi5 summand.

    The very-well-poised quotient ``(qs, -qs; q)_k / (s, -s; q)_k`` is used in
    its reduced form ``(1 - a q^{2k}) / (1 - a)``.
    """
    p.check()
    a, r = p.a, p.ratio
    aq = a.shift(1)
    den_args = [Monomial(1, 1, 0), aq / p.b, aq / p.c, aq / p.d]

    def term(k):
        num = [f for x in (a, p.b, p.c, p.d) for f in finite_factors(x, k)]
        num.append(a.shift(2 * k))
        den = [f for x in den_args for f in finite_factors(x, k)] + [a]
        return summand(num, r ** k, den, p.order_bound(k), qmax)

    return sum_unilateral(term, 0, p.order_bound, qmax, stats=stats)


def six_phi_five_rhs(p: VWP65Params, qmax: int) -> QZSeries:
    p.check(rhs=True)
    aq = p.a.shift(1)
    b, c, d = p.b, p.c, p.d
    num = infinite_factors([(aq, 1), (aq / (b * c), 1), (aq / (b * d), 1), (aq / (c * d), 1)], qmax)
    den = infinite_factors([(aq / b, 1), (aq / c, 1), (aq / d, 1), (aq / (b * c * d), 1)], qmax)
    return mul(binomial_product(num, qmax), invert(binomial_product(den, qmax)))


def _check_rogers(a: Monomial, b: Monomial) -> None:
    if a.q_order < 1:
        raise Inadmissible(f"a = {a} must have q-order >= 1")
    if (a.shift(1) / b).q_order < 1:
        raise Inadmissible(f"aq/b = {a.shift(1) / b} must have q-order >= 1")


def rogers_order_bound(a: Monomial, b: Monomial):
    w = (a.shift(1) / b).q_order
    return lambda k: k * w + k * (k - 1) + pochhammer_order_bound(b.q_order, k)


def rogers_limit_lhs(a: Monomial, b: Monomial, qmax: int,
                     stats: Optional[SumStats] = None) -> QZSeries:
    """Termwise c = d -> oo limit of the 6phi5 sum.

    ``(c;q)_k (d;q)_k / (cd)^k`` tends to ``q^{k(k-1)}`` while the
    ``aq/c, aq/d`` Pochhammers tend to 1.
    """
    _check_rogers(a, b)
    w = a.shift(1) / b
    bound = rogers_order_bound(a, b)

    def term(k):
        num = finite_factors(a, k) + finite_factors(b, k) + [a.shift(2 * k)]
        den = finite_factors(Monomial(1, 1, 0), k) + finite_factors(w, k) + [a]
        return summand(num, (w ** k).shift(k * (k - 1)), den, bound(k), qmax)

    return sum_unilateral(term, 0, bound, qmax, stats=stats)


def rogers_limit_rhs(a: Monomial, b: Monomial, qmax: int) -> QZSeries:
    _check_rogers(a, b)
    num = binomial_product(infinite_factors([(a.shift(1), 1)], qmax), qmax)
    den = binomial_product(infinite_factors([(a.shift(1) / b, 1)], qmax), qmax)
    return mul(num, invert(den))
