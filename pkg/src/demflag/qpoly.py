"""Exact arithmetic for q-polynomials and truncated power series in x.

Everything downstream is built on four value types:

* ``QPoly`` -- a Laurent polynomial in q with arbitrary-precision integer
  coefficients.  Graded multiplicities, q-binomial coefficients,
  q-Pochhammer products and q-series truncations all live here.  q is
  never truncated; arithmetic is exact.
* ``XSeriesQ`` -- a power series in x, truncated at a fixed order, whose
  coefficients are ``QPoly`` values.  Generating series in x over q live
  here; only x is ever truncated.
* ``XPoly`` -- an integer-coefficient polynomial in x (for the q = 1
  generating functions).
* ``RatFunX`` -- a quotient of two ``XPoly`` (the closed rational forms of
  the q = 1 series).

All values are immutable; every operation returns a fresh canonical
value, so they may be shared freely between threads.
"""

from __future__ import annotations

import functools
import re
from typing import Callable, Iterable, Iterator

from .errors import InexactDivision, NonUnitConstantTerm

__all__ = [
    "QPoly",
    "XSeriesQ",
    "XPoly",
    "RatFunX",
    "q_binomial",
    "q_pochhammer",
]


class QPoly:
    """Laurent polynomial in q over the integers, stored sparsely.

    The canonical form stores no zero coefficients; equality and hashing
    are structural.  Exponents may be negative.

    >>> p = QPoly({0: 1, 3: 2, 5: -1})
    >>> str(p)
    '1 + 2*q^3 - q^5'
    >>> QPoly.parse(str(p)) == p
    True
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: dict[int, int] | int = 0):
        if isinstance(terms, int):
            terms = {0: terms} if terms else {}
        self._terms: dict[int, int] = {e: c for e, c in terms.items() if c != 0}

    # -- constructors ------------------------------------------------

    @classmethod
    def zero(cls) -> QPoly:
        return cls()

    @classmethod
    def one(cls) -> QPoly:
        return cls(1)

    @classmethod
    def q(cls, exp: int = 1, coeff: int = 1) -> QPoly:
        """The monomial ``coeff * q^exp``."""
        return cls({exp: coeff})

    # -- inspection --------------------------------------------------

    def terms(self) -> Iterator[tuple[int, int]]:
        """Yield (exponent, coefficient) pairs in increasing exponent order."""
        return iter(sorted(self._terms.items()))

    def coeff(self, exp: int) -> int:
        return self._terms.get(exp, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def min_exp(self) -> int:
        """Lowest exponent with non-zero coefficient; raises on the zero polynomial."""
        if not self._terms:
            raise ValueError("zero polynomial has no minimal exponent")
        return min(self._terms)

    def max_exp(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no maximal exponent")
        return max(self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    # -- ring operations ---------------------------------------------

    def __add__(self, other: QPoly | int) -> QPoly:
        if isinstance(other, int):
            other = QPoly(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return QPoly(out)

    __radd__ = __add__

    def __neg__(self) -> QPoly:
        return QPoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other: QPoly | int) -> QPoly:
        if isinstance(other, int):
            other = QPoly(other)
        return self + (-other)

    def __rsub__(self, other: int) -> QPoly:
        return QPoly(other) - self

    def __mul__(self, other: QPoly | int) -> QPoly:
        if isinstance(other, int):
            return QPoly({e: c * other for e, c in self._terms.items()})
        out: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return QPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> QPoly:
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = QPoly.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = QPoly(other)
        if not isinstance(other, QPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __bool__(self) -> bool:
        return bool(self._terms)

    # -- substitutions and specialisations ---------------------------

    def subs_power(self, k: int) -> QPoly:
        """Substitute q -> q^k (k >= 1); every exponent is multiplied by k."""
        if k < 1:
            raise ValueError("substitution power must be >= 1")
        return QPoly({e * k: c for e, c in self._terms.items()})

    def subs_monomial(self, base: QPoly) -> QPoly:
        """Substitute q -> base, where base is a monomial ``c*q^t``."""
        if not base.is_monomial():
            raise ValueError("substitution base must be a monomial")
        ((t, c),) = base._terms.items()
        out: dict[int, int] = {}
        for e, c0 in self._terms.items():
            if e >= 0:
                ce = c**e
            elif abs(c) == 1:
                ce = 1 if e % 2 == 0 else c
            else:
                raise ValueError("cannot invert base coefficient %d" % c)
            out[t * e] = out.get(t * e, 0) + c0 * ce
        return QPoly(out)

    def shifted(self, exp: int) -> QPoly:
        """Multiply by q^exp."""
        return QPoly({e + exp: c for e, c in self._terms.items()})

    def at_one(self) -> int:
        """Evaluate at q = 1 (sum of coefficients)."""
        return sum(self._terms.values())

    def truncated(self, below: int) -> QPoly:
        """Drop all terms with exponent >= below."""
        return QPoly({e: c for e, c in self._terms.items() if e < below})

    def weight_split(self) -> tuple[int, QPoly]:
        """Factor out the lowest power of q.

        Returns (r, w) with ``q^r * w == self`` and w having a non-zero
        constant term; the zero polynomial yields (0, 0).
        """
        if not self._terms:
            return 0, QPoly.zero()
        r = self.min_exp()
        return r, self.shifted(-r)

    def divide_exact(self, d: QPoly) -> QPoly:
        """Exact Laurent division; raises InexactDivision on a remainder.

        Both operands are shifted to ordinary polynomials, divided by long
        division over the integers, and the quotient is shifted back.
        """
        if d.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return QPoly.zero()
        shift = self.min_exp() - d.min_exp()
        num = {e - self.min_exp(): c for e, c in self._terms.items()}
        den = {e - d.min_exp(): c for e, c in d._terms.items()}
        dd = max(den)
        dl = den[dd]
        quo: dict[int, int] = {}
        while num:
            nd = max(num)
            if nd < dd:
                raise InexactDivision(f"{self} is not divisible by {d}")
            c, rem = divmod(num[nd], dl)
            if rem:
                raise InexactDivision(f"{self} is not divisible by {d}")
            quo[nd - dd] = c
            for e, dc in den.items():
                e2 = nd - dd + e
                nc = num.get(e2, 0) - c * dc
                if nc:
                    num[e2] = nc
                else:
                    num.pop(e2, None)
        return QPoly({e + shift: c for e, c in quo.items()})

    # -- rendering ---------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts: list[str] = []
        for e, c in sorted(self._terms.items()):
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                qpart = "q" if e == 1 else f"q^{e}"
                body = qpart if mag == 1 else f"{mag}*{qpart}"
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append((" + " if c > 0 else " - ") + body)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"QPoly({self})"

    _TERM_RE = re.compile(r"^([+-]?)(?:(\d+)\*)?q(?:\^([+-]?\d+))?$")
    _INT_RE = re.compile(r"^[+-]?\d+$")

    @classmethod
    def parse(cls, text: str) -> QPoly:
        """Parse the canonical display format produced by ``str``."""
        s = text.strip()
        if s == "0":
            return cls.zero()
        s = s.replace(" - ", " + -")
        out: dict[int, int] = {}
        for tok in s.split(" + "):
            tok = tok.strip()
            if cls._INT_RE.match(tok):
                out[0] = out.get(0, 0) + int(tok)
                continue
            m = cls._TERM_RE.match(tok)
            if not m:
                raise ValueError(f"cannot parse term {tok!r}")
            sign = -1 if m.group(1) == "-" else 1
            coeff = int(m.group(2)) if m.group(2) else 1
            exp = int(m.group(3)) if m.group(3) else 1
            out[exp] = out.get(exp, 0) + sign * coeff
        return cls(out)


_Q = QPoly.q()


@functools.lru_cache(maxsize=None)
def q_binomial(n: int, m: int) -> QPoly:
    """Gaussian binomial coefficient [n choose m]_q.

    Conventions: [n choose 0]_q = 1 for every integer n (including
    negative n -- the degenerate indices of the level 2 -> 3 closed form
    require it); the value is 0 for m < 0, for n >= 0 with m > n, and for
    n < 0 with m > 0.
    """
    if m < 0:
        return QPoly.zero()
    if m == 0:
        return QPoly.one()
    if n < 0 or m > n:
        return QPoly.zero()
    # Pascal recursion keeps every step in N[q].
    return q_binomial(n - 1, m) + q_binomial(n - 1, m - 1).shifted(n - m)


def q_pochhammer(a: QPoly | int, n: int, step: QPoly | int) -> QPoly:
    """The product (a; step)_n = prod_{i=1..n} (1 - a * step^(i-1)).

    ``step`` generalises the usual base q so that products such as
    (x; q^2)_n and (-q; q^2)_n can be formed with a single routine.
    """
    if n < 0:
        raise ValueError("q-Pochhammer length must be >= 0")
    if isinstance(a, int):
        a = QPoly(a)
    if isinstance(step, int):
        step = QPoly(step)
    out = QPoly.one()
    factor = a
    for _ in range(n):
        out = out * (QPoly.one() - factor)
        factor = factor * step
    return out


class XSeriesQ:
    """Power series in x, truncated below ``order``, with QPoly coefficients.

    ``coeffs`` always has exactly ``order`` entries, so indexing is total
    below the order.  Binary operations truncate to the smaller order of
    the two operands.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[QPoly | int], order: int | None = None):
        cs = [c if isinstance(c, QPoly) else QPoly(c) for c in coeffs]
        if order is not None:
            if order < 1:
                raise ValueError("series order must be >= 1")
            cs = cs[:order] + [QPoly.zero()] * (order - len(cs))
        elif not cs:
            raise ValueError("series needs an order or at least one coefficient")
        self._coeffs = tuple(cs)

    @classmethod
    def zero(cls, order: int) -> XSeriesQ:
        return cls([], order)

    @classmethod
    def one(cls, order: int) -> XSeriesQ:
        return cls([QPoly.one()], order)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, QPoly | int]], order: int) -> XSeriesQ:
        out = [QPoly.zero()] * order
        for d, c in pairs:
            if 0 <= d < order:
                out[d] = out[d] + (c if isinstance(c, QPoly) else QPoly(c))
            elif d < 0:
                raise ValueError("negative x-exponent")
        return cls(out, order)

    @property
    def order(self) -> int:
        return len(self._coeffs)

    def coeff(self, d: int) -> QPoly:
        if d < 0:
            raise ValueError("negative x-exponent")
        if d >= self.order:
            raise ValueError(f"coefficient {d} beyond truncation order {self.order}")
        return self._coeffs[d]

    def coeffs(self) -> tuple[QPoly, ...]:
        return self._coeffs

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self._coeffs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, XSeriesQ):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __add__(self, other: XSeriesQ) -> XSeriesQ:
        n = min(self.order, other.order)
        return XSeriesQ([self._coeffs[i] + other._coeffs[i] for i in range(n)], n)

    def __sub__(self, other: XSeriesQ) -> XSeriesQ:
        n = min(self.order, other.order)
        return XSeriesQ([self._coeffs[i] - other._coeffs[i] for i in range(n)], n)

    def __neg__(self) -> XSeriesQ:
        return XSeriesQ([-c for c in self._coeffs], self.order)

    def __mul__(self, other: XSeriesQ) -> XSeriesQ:
        n = min(self.order, other.order)
        out = [QPoly.zero()] * n
        for i, a in enumerate(self._coeffs[:n]):
            if a.is_zero():
                continue
            for j in range(n - i):
                b = other._coeffs[j]
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return XSeriesQ(out, n)

    def scale(self, by: QPoly | int = 1, x_shift: int = 0) -> XSeriesQ:
        """Multiply by ``by * x^x_shift``; terms shifted past the order drop."""
        if x_shift < 0:
            raise ValueError("x-shift must be >= 0")
        by = by if isinstance(by, QPoly) else QPoly(by)
        out = [QPoly.zero()] * self.order
        for d, c in enumerate(self._coeffs):
            if d + x_shift < self.order and not c.is_zero():
                out[d + x_shift] = c * by
        return XSeriesQ(out, self.order)

    def inverse(self) -> XSeriesQ:
        """Multiplicative inverse up to the truncation order.

        The constant coefficient must be the unit +-1; anything else
        raises NonUnitConstantTerm.
        """
        c0 = self._coeffs[0]
        if c0 != QPoly.one() and c0 != QPoly(-1):
            raise NonUnitConstantTerm(f"constant term {c0} is not a unit")
        n = self.order
        out = [QPoly.zero()] * n
        out[0] = c0  # c0 is its own inverse
        for d in range(1, n):
            acc = QPoly.zero()
            for i in range(1, d + 1):
                si = self._coeffs[i]
                if not si.is_zero():
                    acc = acc + si * out[d - i]
            out[d] = -(c0 * acc)
        return XSeriesQ(out, n)

    def truncate(self, order: int) -> XSeriesQ:
        if order > self.order:
            raise ValueError("cannot extend a truncated series; use padded()")
        return XSeriesQ(self._coeffs[:order], order)

    def padded(self, order: int) -> XSeriesQ:
        """Reinterpret at a higher order.

        Only valid when the series is known exactly (a polynomial in x),
        e.g. the Carlitz q-Fibonacci polynomials; the caller is trusted.
        """
        if order < self.order:
            return self.truncate(order)
        return XSeriesQ(self._coeffs, order)

    def map_coeffs(self, fn: Callable[[int, QPoly], QPoly]) -> XSeriesQ:
        return XSeriesQ([fn(d, c) for d, c in enumerate(self._coeffs)], self.order)

    def sum_coeffs(self) -> QPoly:
        """Evaluate at x = 1 by summing all stored coefficients."""
        acc = QPoly.zero()
        for c in self._coeffs:
            acc = acc + c
        return acc

    def __repr__(self) -> str:
        shown = ", ".join(f"x^{d}: {c}" for d, c in enumerate(self._coeffs) if not c.is_zero())
        return f"XSeriesQ(order={self.order}; {shown or '0'})"


class XPoly:
    """Integer-coefficient polynomial in x, stored densely.

    The degree of the zero polynomial is the sentinel -1.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        self._coeffs = tuple(cs)

    @classmethod
    def zero(cls) -> XPoly:
        return cls()

    @classmethod
    def one(cls) -> XPoly:
        return cls((1,))

    @classmethod
    def x(cls, exp: int = 1, coeff: int = 1) -> XPoly:
        return cls((0,) * exp + (coeff,))

    def coeffs(self) -> tuple[int, ...]:
        return self._coeffs

    def coeff(self, d: int) -> int:
        return self._coeffs[d] if 0 <= d < len(self._coeffs) else 0

    def degree(self) -> int:
        return len(self._coeffs) - 1

    def is_zero(self) -> bool:
        return not self._coeffs

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = XPoly((other,))
        if not isinstance(other, XPoly):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __add__(self, other: XPoly | int) -> XPoly:
        if isinstance(other, int):
            other = XPoly((other,))
        n = max(len(self._coeffs), len(other._coeffs))
        return XPoly([self.coeff(i) + other.coeff(i) for i in range(n)])

    __radd__ = __add__

    def __neg__(self) -> XPoly:
        return XPoly([-c for c in self._coeffs])

    def __sub__(self, other: XPoly | int) -> XPoly:
        if isinstance(other, int):
            other = XPoly((other,))
        return self + (-other)

    def __rsub__(self, other: int) -> XPoly:
        return XPoly((other,)) - self

    def __mul__(self, other: XPoly | int) -> XPoly:
        if isinstance(other, int):
            return XPoly([c * other for c in self._coeffs])
        if self.is_zero() or other.is_zero():
            return XPoly.zero()
        out = [0] * (len(self._coeffs) + len(other._coeffs) - 1)
        for i, a in enumerate(self._coeffs):
            if a:
                for j, b in enumerate(other._coeffs):
                    out[i + j] += a * b
        return XPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> XPoly:
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = XPoly.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        parts: list[str] = []
        for d, c in enumerate(self._coeffs):
            if c == 0:
                continue
            mag = abs(c)
            if d == 0:
                body = str(mag)
            else:
                xpart = "x" if d == 1 else f"x^{d}"
                body = xpart if mag == 1 else f"{mag}*{xpart}"
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append((" + " if c > 0 else " - ") + body)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"XPoly({self})"


class RatFunX:
    """Quotient of two integer polynomials in x.

    Stored with a positive leading denominator coefficient; gcd reduction
    is not attempted, so equality is tested cross-multiplicatively.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: XPoly | int, den: XPoly | int = 1):
        num = num if isinstance(num, XPoly) else XPoly((num,))
        den = den if isinstance(den, XPoly) else XPoly((den,))
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if den.coeffs()[-1] < 0:
            num, den = -num, -den
        self.num = num
        self.den = den

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RatFunX):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self) -> int:  # pragma: no cover - not used as dict key
        return hash((self.num, self.den))

    def __mul__(self, other: RatFunX) -> RatFunX:
        return RatFunX(self.num * other.num, self.den * other.den)

    def expand(self, x_order: int) -> list[int]:
        """Maclaurin coefficients up to x_order by exact long division.

        The denominator must have constant term +-1 so that the recursion
        stays in the integers.
        """
        d0 = self.den.coeff(0)
        if d0 not in (1, -1):
            raise NonUnitConstantTerm(f"denominator constant term {d0} is not a unit")
        out: list[int] = []
        for k in range(x_order):
            acc = self.num.coeff(k)
            for i in range(1, min(k, self.den.degree()) + 1):
                acc -= self.den.coeff(i) * out[k - i]
            out.append(acc * d0)  # d0 is +-1
        return out

    def __str__(self) -> str:
        return f"({self.num}) / ({self.den})"

    def __repr__(self) -> str:
        return f"RatFunX({self})"
