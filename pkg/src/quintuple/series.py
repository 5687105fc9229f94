"""Exact bivariate truncated Laurent series in q and z.

A :class:`QZSeries` stores a finite map ``(i, j) -> c`` meaning ``c q^i z^j``
together with a truncation order ``qmax``.  Coefficients with ``i <= qmax``
are exact; everything above ``qmax`` is unknown.  Negative exponents are
allowed in both variables and there is no lower truncation.

Coefficients are exact rationals.  Internally integral values are kept as
``int`` (``Fraction`` arithmetic is an order of magnitude slower and most
coefficients in q-series work are integers); the public accessors always
hand back :class:`fractions.Fraction`.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Optional, Tuple, Union

Coefficient = Fraction
Number = Union[int, Fraction]
Key = Tuple[int, int]


class SeriesError(ArithmeticError):
    pass


class NotAUnit(SeriesError):
    """The series has no inverse in the ring (lowest q-slice is not a monomial)."""


class TruncationOverflow(SeriesError):
    pass


class OrderOutOfRange(SeriesError, IndexError):
    pass


def _norm(c: Number) -> Number:
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def as_coefficient(x) -> Fraction:
    """Convert ints, Fractions and strings like ``"-3/2"`` to a Fraction."""
    if isinstance(x, bool):
        raise TypeError("bool is not a coefficient")
    return Fraction(x)


class QZSeries:
    """Immutable truncated Laurent series in q (truncated) and z (exact)."""

    __slots__ = ("_terms", "_qmax", "_rows", "_hash")

    def __init__(self, terms: Mapping[Key, Number] | Iterable[Tuple[Key, Number]] = (), qmax: int = 0):
        if isinstance(terms, Mapping):
            terms = terms.items()
        qmax = int(qmax)
        clean = {}
        for (i, j), c in terms:
            i, j = int(i), int(j)
            if i > qmax:
                continue
            c = _norm(c if type(c) is int else Fraction(c))
            if c:
                key = (i, j)
                if key in clean:
                    c = _norm(clean[key] + c)
                    if not c:
                        del clean[key]
                        continue
                clean[key] = c
        self._terms = clean
        self._qmax = qmax
        self._rows = None
        self._hash = None

    @classmethod
    def _trusted(cls, terms: dict, qmax: int) -> "QZSeries":
        # terms already normalized: no zeros, nothing above qmax, ints where integral
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._qmax = qmax
        obj._rows = None
        obj._hash = None
        return obj

    @classmethod
    def _from_acc(cls, acc: dict, qmax: int) -> "QZSeries":
        terms = {}
        for k, c in acc.items():
            if c and k[0] <= qmax:
                terms[k] = _norm(c)
        return cls._trusted(terms, qmax)

    @property
    def qmax(self) -> int:
        return self._qmax

    @property
    def terms(self) -> dict:
        """Copy of the term map with Fraction values."""
        return {k: Fraction(c) for k, c in self._terms.items()}

    def items(self) -> Iterator[Tuple[Key, Fraction]]:
        for k in sorted(self._terms):
            yield k, Fraction(self._terms[k])

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def rows(self):
        """Terms grouped by q-exponent: sorted list of ``(i, ((j, c), ...))``."""
        if self._rows is None:
            by_q = {}
            for (i, j), c in self._terms.items():
                by_q.setdefault(i, []).append((j, c))
            self._rows = [(i, tuple(sorted(by_q[i]))) for i in sorted(by_q)]
        return self._rows

    def q_slice(self, i: int) -> dict:
        """The Laurent polynomial in z multiplying q^i, as ``{j: coefficient}``."""
        if i > self._qmax:
            raise OrderOutOfRange(f"q^{i} is above truncation order {self._qmax}")
        return {j: Fraction(c) for (a, j), c in self._terms.items() if a == i}

    def min_q_order(self) -> Optional[int]:
        if not self._terms:
            return None
        return min(i for i, _ in self._terms)

    def coeff(self, i: int, j: int) -> Fraction:
        if i > self._qmax:
            raise OrderOutOfRange(f"q^{i} is above truncation order {self._qmax}")
        return Fraction(self._terms.get((i, j), 0))

    def __eq__(self, other) -> bool:
        # structural: same truncation order and same term map
        if not isinstance(other, QZSeries):
            return NotImplemented
        return self._qmax == other._qmax and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._qmax, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"QZSeries({format_series(self)}, qmax={self._qmax})"

    def __add__(self, other):
        return add(self, _coerce(other, self._qmax))

    __radd__ = __add__

    def __neg__(self):
        return QZSeries._trusted({k: -c for k, c in self._terms.items()}, self._qmax)

    def __sub__(self, other):
        return add(self, -_coerce(other, self._qmax))

    def __rsub__(self, other):
        return add(_coerce(other, self._qmax), -self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return scale(self, other)
        if isinstance(other, Monomial):
            return mul_monomial(self, other)
        return mul(self, other)

    __rmul__ = __mul__


def _coerce(x, qmax: int) -> QZSeries:
    if isinstance(x, QZSeries):
        return x
    if isinstance(x, Monomial):
        return x.series(qmax)
    return monomial(x, 0, 0, qmax)


@dataclass(frozen=True)
class Monomial:
    """``c q^alpha z^beta`` with rational ``c != 0``; exact at every order."""

    c: Fraction
    alpha: int = 0
    beta: int = 0

    def __post_init__(self):
        c = as_coefficient(self.c)
        if c == 0:
            raise ValueError("monomial coefficient must be nonzero")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "alpha", int(self.alpha))
        object.__setattr__(self, "beta", int(self.beta))

    @property
    def q_order(self) -> int:
        return self.alpha

    def __mul__(self, other):
        if isinstance(other, Monomial):
            return Monomial(self.c * other.c, self.alpha + other.alpha, self.beta + other.beta)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Monomial(self.c * other, self.alpha, self.beta)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Monomial):
            return Monomial(self.c / other.c, self.alpha - other.alpha, self.beta - other.beta)
        return Monomial(self.c / as_coefficient(other), self.alpha, self.beta)

    def __neg__(self):
        return Monomial(-self.c, self.alpha, self.beta)

    def __pow__(self, k: int):
        return Monomial(self.c ** k, self.alpha * k, self.beta * k)

    def shift(self, dq: int) -> "Monomial":
        """This monomial times ``q^dq``."""
        return Monomial(self.c, self.alpha + dq, self.beta)

    def series(self, qmax: int) -> QZSeries:
        return monomial(self.c, self.alpha, self.beta, qmax)

    def __str__(self) -> str:
        return _format_term(self.c, self.alpha, self.beta)


def monomial(c, i: int, j: int, qmax: int) -> QZSeries:
    c = _norm(as_coefficient(c))
    if not c or i > qmax:
        return QZSeries._trusted({}, qmax)
    return QZSeries._trusted({(i, j): c}, qmax)


def one(qmax: int) -> QZSeries:
    return monomial(1, 0, 0, qmax)


def zero(qmax: int) -> QZSeries:
    return QZSeries._trusted({}, qmax)


def truncate(f: QZSeries, qmax: int) -> QZSeries:
    """Forget everything above ``qmax`` (which must not exceed ``f.qmax``)."""
    if qmax > f.qmax:
        raise OrderOutOfRange(f"cannot raise truncation order {f.qmax} to {qmax}")
    if qmax == f.qmax:
        return f
    return QZSeries._trusted({k: c for k, c in f._terms.items() if k[0] <= qmax}, qmax)


def add(f: QZSeries, g: QZSeries) -> QZSeries:
    qmax = min(f.qmax, g.qmax)
    acc = {k: c for k, c in f._terms.items() if k[0] <= qmax}
    for k, c in g._terms.items():
        if k[0] <= qmax:
            acc[k] = acc.get(k, 0) + c
    return QZSeries._from_acc(acc, qmax)


def sum_series(items: Iterable[QZSeries], qmax: int) -> QZSeries:
    acc = {}
    for f in items:
        qmax = min(qmax, f.qmax)
        for k, c in f._terms.items():
            acc[k] = acc.get(k, 0) + c
    return QZSeries._from_acc(acc, qmax)


def scale(f: QZSeries, c) -> QZSeries:
    c = _norm(as_coefficient(c))
    if not c:
        return zero(f.qmax)
    return QZSeries._trusted({k: _norm(v * c) for k, v in f._terms.items()}, f.qmax)


def mul_monomial(f: QZSeries, m: Monomial) -> QZSeries:
    """Exact shift-and-scale by a monomial; the truncation order moves by alpha."""
    c = _norm(m.c)
    terms = {(i + m.alpha, j + m.beta): _norm(v * c) for (i, j), v in f._terms.items()}
    return QZSeries._trusted(terms, f.qmax + m.alpha)


def _effective_order(f: QZSeries) -> int:
    v = f.min_q_order()
    return f.qmax + 1 if v is None else v


def mul(f: QZSeries, g: QZSeries) -> QZSeries:
    """Cauchy product.

    The result is exact up to ``min(f.qmax, g.qmax)`` when both factors have
    nonnegative q-order.  A factor with negative q-order ``-v`` pulls unknown
    coefficients of the other factor down by ``v``, so the result order is
    also capped at ``g.qmax + ord(f)`` and ``f.qmax + ord(g)``.
    """
    qmax = min(f.qmax, g.qmax, f.qmax + _effective_order(g), g.qmax + _effective_order(f))
    rows_g = g.rows()
    acc = {}
    get = acc.get
    for i1, r1 in f.rows():
        lim = qmax - i1
        for i2, r2 in rows_g:
            if i2 > lim:
                break
            i = i1 + i2
            for j1, c1 in r1:
                for j2, c2 in r2:
                    key = (i, j1 + j2)
                    acc[key] = get(key, 0) + c1 * c2
    return QZSeries._from_acc(acc, qmax)


def invert(f: QZSeries) -> QZSeries:
    """Multiplicative inverse of a unit.

    ``f`` is written as ``c q^v z^m (1 + h)`` with ``h`` of positive q-order
    and ``(1 + h)^{-1}`` is expanded order by order.  Exact up to
    ``f.qmax - 2v`` for ``v > 0`` and up to ``f.qmax`` otherwise.
    """
    v = f.min_q_order()
    if v is None:
        raise NotAUnit("zero series has no inverse")
    low = [(j, c) for (i, j), c in f._terms.items() if i == v]
    if len(low) != 1:
        raise NotAUnit(f"lowest q-slice at q^{v} has {len(low)} z-terms; not a unit")
    m, c = low[0]
    cinv = _norm(Fraction(1) / c)
    out_qmax = f.qmax - 2 * v
    depth = out_qmax + v  # relative orders 0..depth are required
    h = {}
    for (i, j), a in f._terms.items():
        t = i - v
        if 0 < t <= depth:
            h.setdefault(t, []).append((j - m, _norm(a * cinv)))
    g = [{0: 1}]
    for t in range(1, depth + 1):
        acc = {}
        for s in range(1, t + 1):
            hs = h.get(s)
            if not hs:
                continue
            gt = g[t - s]
            if not gt:
                continue
            for jh, ch in hs:
                for jg, cg in gt.items():
                    acc[jh + jg] = acc.get(jh + jg, 0) - ch * cg
        g.append({j: _norm(a) for j, a in acc.items() if a})
    terms = {}
    for t, slice_ in enumerate(g):
        for j, a in slice_.items():
            terms[(t - v, j - m)] = _norm(a * cinv)
    return QZSeries._trusted(terms, out_qmax)


def subst_z_qshift(f: QZSeries, m: int) -> QZSeries:
    """Substitute ``z -> z q^m``: the term ``(i, j)`` moves to ``(i + m j, j)``.

    Terms whose image would land above ``qmax`` raise TruncationOverflow, since
    the unknown part of ``f`` could also land there.  The caller must know
    that ``f`` has bounded z-degree above its truncation order.
    """
    terms = {}
    for (i, j), c in f._terms.items():
        ni = i + m * j
        if ni > f.qmax:
            raise TruncationOverflow(
                f"term q^{i} z^{j} maps to q^{ni}, above truncation order {f.qmax}")
        terms[(ni, j)] = c
    return QZSeries._trusted(terms, f.qmax)


def coeff(f: QZSeries, i: int, j: int) -> Fraction:
    return f.coeff(i, j)


def min_q_order(f: QZSeries) -> Optional[int]:
    return f.min_q_order()


def first_difference(f: QZSeries, g: QZSeries, N: int, z_window: Optional[int] = None):
    """First ``(i, j, f_ij, g_ij)`` in (i, j) order with ``i <= N`` where f and g differ."""
    if N > f.qmax or N > g.qmax:
        raise OrderOutOfRange(f"comparison order {N} exceeds truncation ({f.qmax}, {g.qmax})")
    keys = set(f._terms) | set(g._terms)
    for key in sorted(keys):
        i, j = key
        if i > N:
            break
        if z_window is not None and abs(j) > z_window:
            continue
        a = f._terms.get(key, 0)
        b = g._terms.get(key, 0)
        if a != b:
            return i, j, Fraction(a), Fraction(b)
    return None


def equal_up_to(f: QZSeries, g: QZSeries, N: int) -> bool:
    return first_difference(f, g, N) is None


def _format_term(c, i, j) -> str:
    c = Fraction(c)
    parts = []
    if i:
        parts.append("q" if i == 1 else f"q^{i}")
    if j:
        parts.append("z" if j == 1 else f"z^{j}")
    body = "*".join(parts)
    if not body:
        return str(c)
    if c == 1:
        return body
    if c == -1:
        return "-" + body
    return f"{c}*{body}"


def format_series(f: QZSeries, max_terms: int = 12) -> str:
    items = list(f.items())
    if not items:
        return "0"
    shown = " + ".join(_format_term(c, i, j) for (i, j), c in items[:max_terms])
    shown = shown.replace("+ -", "- ")
    if len(items) > max_terms:
        shown += f" + ... ({len(items) - max_terms} more)"
    return shown
