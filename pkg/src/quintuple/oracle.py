"""Brute-force second opinions for the series kernel.

Nothing here calls the kernel's multiplication, inversion or Pochhammer
builders; results are plain dicts, wrapped in a QZSeries only at the end.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Sequence, Tuple

from .series import QZSeries

Term = Tuple[object, int, int]  # (coefficient, q-exponent, z-exponent)


@dataclass
class OracleTable:
    description: str
    entries: Dict[Tuple[int, int], Fraction] = field(default_factory=dict)


def partition_count(i: int) -> int:
    """Number of partitions of i, by the classic parts-DP."""
    if i < 0:
        raise ValueError("i must be >= 0")
    ways = [1] + [0] * i
    for part in range(1, i + 1):
        for total in range(part, i + 1):
            ways[total] += ways[total - part]
    return ways[i]


def _theta_monomials(form: str, k: int) -> List[Tuple[int, int, int]]:
    sign = -1 if k % 2 else 1
    if form == "ax":
        e = k * (3 * k - 1) // 2
        return [(sign, e, 3 * k), (sign, e + k, 3 * k + 1)]
    if form == "qua1":
        e = (3 * k * k + k) // 2
        return [(sign, e, 3 * k), (-sign, e + 2 * k + 1, 3 * k + 2)]
    raise ValueError(f"unknown theta form {form!r}")


def brute_theta_coeff(form: str, i: int, j: int, qmax: int) -> Fraction:
    """Coefficient of q^i z^j in the bilateral sum, looping k over a generous range."""
    if abs(i) > qmax:
        raise ValueError("|i| must not exceed qmax")
    # every summand has q-exponent >= (3k^2 - 5|k|)/2 - 1, so |k| <= qmax + 3 is plenty
    total = Fraction(0)
    for k in range(-(qmax + 3), qmax + 4):
        for c, a, b in _theta_monomials(form, k):
            if a == i and b == j:
                total += c
    return total


def theta_table(form: str, qmax: int) -> OracleTable:
    table = OracleTable(f"{form} bilateral sum up to q^{qmax}")
    for k in range(-(qmax + 3), qmax + 4):
        for c, a, b in _theta_monomials(form, k):
            if a <= qmax:
                table.entries[(a, b)] = table.entries.get((a, b), Fraction(0)) + c
    table.entries = {key: v for key, v in table.entries.items() if v}
    return table


def naive_product_expand(factors: Sequence[Iterable[Term]], qmax: int) -> QZSeries:
    """Left fold of explicit Laurent polynomials, dropping q-exponents above qmax.

    Only valid when every factor has nonnegative q-exponents.
    """
    acc: Dict[Tuple[int, int], Fraction] = {(0, 0): Fraction(1)}
    for factor in factors:
        factor = [(Fraction(c), a, b) for c, a, b in factor]
        if any(a < 0 for _, a, _ in factor):
            raise ValueError("naive expansion needs nonnegative q-exponents")
        new: Dict[Tuple[int, int], Fraction] = {}
        for (i, j), v in acc.items():
            for c, a, b in factor:
                if i + a <= qmax:
                    new[(i + a, j + b)] = new.get((i + a, j + b), Fraction(0)) + v * c
        acc = {k: v for k, v in new.items() if v}
    return QZSeries(acc, qmax)


def euler_product_coeffs(qmax: int) -> List[int]:
    """Coefficients of prod_{l>=1} (1 - q^l) by repeated polynomial multiplication."""
    coeffs = [1] + [0] * qmax
    for l in range(1, qmax + 1):
        for t in range(qmax, l - 1, -1):
            coeffs[t] -= coeffs[t - l]
    return coeffs


def binomial_factor(c, a: int, b: int) -> List[Term]:
    """The explicit polynomial ``1 - c q^a z^b``."""
    return [(1, 0, 0), (-Fraction(c), a, b)]
