"""q-shifted factorials and truncated infinite products.

Arguments are either a :class:`~quintuple.series.Monomial` (the common case,
expanded exactly as a product of binomials) or a general QZSeries.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from .series import (Monomial, NotAUnit, QZSeries, _norm, add, invert, mul,
                     one, scale, truncate)

PochArg = Union[Monomial, QZSeries]


class Divergent(ArithmeticError):
    """An infinite product whose factors do not tend to 1 q-adically."""


def binomial_product(factors: Sequence[Monomial], qmax: int,
                     prefactor: Optional[Monomial] = None) -> QZSeries:
    """Exact expansion of ``prefactor * prod(1 - m for m in factors)`` up to ``qmax``.

    Factors may have negative q-order; partial products are only truncated
    above ``qmax`` plus the negativity still to come, so nothing that can
    fall back below ``qmax`` is ever dropped.
    """
    remaining = [0] * (len(factors) + 1)
    for t in range(len(factors) - 1, -1, -1):
        remaining[t] = remaining[t + 1] + max(0, -factors[t].alpha)
    if prefactor is None:
        acc = {(0, 0): 1}
    else:
        acc = {(prefactor.alpha, prefactor.beta): _norm(prefactor.c)}
    acc = {k: c for k, c in acc.items() if k[0] <= qmax + remaining[0]}
    for t, m in enumerate(factors):
        lim = qmax + remaining[t + 1]
        c, da, db = _norm(-m.c), m.alpha, m.beta
        new = {}
        for (i, j), v in acc.items():
            if i <= lim:
                new[(i, j)] = new.get((i, j), 0) + v
            ni = i + da
            if ni <= lim:
                key = (ni, j + db)
                new[key] = new.get(key, 0) + v * c
        acc = {k: v for k, v in new.items() if v}
        if not acc:
            break
    return QZSeries._from_acc(acc, qmax)


def finite_factors(a: Monomial, n: int, step: int = 1) -> List[Monomial]:
    """Monomials ``a q^{step*l}`` for ``0 <= l < n`` (n >= 0)."""
    return [a.shift(step * l) for l in range(n)]


def infinite_factors(specs: Iterable[Tuple[Monomial, int]], qmax: int,
                     allow_negative: bool = False) -> List[Monomial]:
    """Factor list for ``prod over (a, step) of (a; q^step)_inf`` exact up to ``qmax``.

    With ``allow_negative`` the finitely many factors of negative q-order are
    peeled off explicitly and the tail is extended by their total negativity.
    """
    specs = list(specs)
    negativity = 0
    for a, step in specs:
        if step < 1:
            raise ValueError("step must be a positive integer")
        if a.alpha < 0:
            if not allow_negative:
                raise Divergent(f"({a}; q^{step})_inf has a factor of negative q-order")
            l = 0
            while a.alpha + step * l < 0:
                negativity -= a.alpha + step * l
                l += 1
    factors = []
    top = qmax + negativity
    for a, step in specs:
        l = 0
        while a.alpha + step * l <= top:
            factors.append(a.shift(step * l))
            l += 1
    return factors


def _as_series_factor(a: QZSeries, l: int, qmax: int) -> QZSeries:
    # 1 - a q^l for a general series argument
    shifted = QZSeries._trusted({(i + l, j): c for (i, j), c in a._terms.items()},
                                a.qmax + l)
    return add(one(qmax), scale(shifted, -1))


def poch_finite(a: PochArg, n: int, qmax: int) -> QZSeries:
    """``(a; q)_n`` for any integer n, with ``(a;q)_{-m} = 1/(a q^{-m}; q)_m``."""
    if n >= 0:
        if isinstance(a, Monomial):
            return binomial_product(finite_factors(a, n), qmax)
        out = one(qmax)
        for l in range(n):
            out = mul(out, _as_series_factor(a, l, qmax))
        return truncate(out, min(out.qmax, qmax))
    m = -n
    if isinstance(a, Monomial):
        base = poch_finite(a.shift(-m), m, qmax)
    else:
        shifted = QZSeries._trusted({(i - m, j): c for (i, j), c in a._terms.items()},
                                    a.qmax - m)
        base = poch_finite(shifted, m, qmax)
    try:
        return invert(base)
    except NotAUnit as exc:
        raise NotAUnit(f"({a}; q)_{n} requires inverting a non-unit: {exc}") from None


def poch_inf_step(a: PochArg, step: int, qmax: int) -> QZSeries:
    """``(a; q^step)_inf`` truncated at ``qmax``; requires ``ord_q(a) >= 0``."""
    if isinstance(a, Monomial):
        return binomial_product(infinite_factors([(a, step)], qmax), qmax)
    v = a.min_q_order()
    if v is None:
        return one(qmax)
    if v < 0:
        raise Divergent("infinite product argument has negative q-order")
    out = one(qmax)
    l = 0
    while v + step * l <= qmax:
        out = mul(out, _as_series_factor(a, step * l, qmax))
        l += 1
    return truncate(out, min(out.qmax, qmax))


def poch_inf(a: PochArg, qmax: int) -> QZSeries:
    """``(a; q)_inf = prod_{l >= 0} (1 - a q^l)`` truncated at ``qmax``."""
    return poch_inf_step(a, 1, qmax)


def poch_inf_peeled(specs: Iterable[Tuple[Monomial, int]], qmax: int) -> QZSeries:
    """Product of ``(a; q^step)_inf`` allowing finitely many negative-order factors."""
    return binomial_product(infinite_factors(specs, qmax, allow_negative=True), qmax)


def poch_multi(args: Iterable[Monomial], n: Optional[int], qmax: int) -> QZSeries:
    """``(a, b, ..., c; q)_n``; ``n=None`` means the infinite product."""
    args = list(args)
    if n is None:
        return binomial_product(infinite_factors([(a, 1) for a in args], qmax), qmax)
    if n >= 0:
        return binomial_product([f for a in args for f in finite_factors(a, n)], qmax)
    out = one(qmax)
    for a in args:
        out = mul(out, poch_finite(a, n, qmax))
    return out


@lru_cache(maxsize=512)
def inverse_q_factorial(k: int, qmax: int) -> QZSeries:
    """``1 / (q; q)_k`` (k >= 0), cached since nearly every summand needs one."""
    return invert(binomial_product(finite_factors(Monomial(1, 1, 0), k), qmax))


@lru_cache(maxsize=64)
def inverse_euler(qmax: int) -> QZSeries:
    """``1 / (q; q)_inf``."""
    return invert(poch_inf(Monomial(1, 1, 0), qmax))
