"""Generating series of flag multiplicities and their closed forms.

``series_A`` assembles the two-variable series

    A_n(x, q) = sum_p  [D(m', n+p) : D(m, n)]_q  x^p

(and its weighted / parity-filtered variants) from the recursion engine.
At q = 1 these series are rational functions of x; this module also
implements the two closed-form families --

* level 1 -> m:  a ratio built from the Chebyshev-like polynomials
  a_n(x), and
* level m -> m+1:  d_n(x) / (1 - x^m)^(floor(n/(m+1)) + 1) with the
  numerators d_n(x) generated by a block transfer matrix K --

together with the recurrences the engine series must satisfy
(``check_genserrec``, ``check_elltheorem``) and the Carlitz q-Fibonacci
closed form of the weighted 2 -> 3 series.
"""

from __future__ import annotations

from dataclasses import dataclass

from .closed_forms import carlitz_S, poch_x, res2
from .errors import InvalidLevel
from .flag_engine import mult, weighted_mult
from .qpoly import QPoly, RatFunX, XPoly, XSeriesQ

__all__ = [
    "DEFAULT_X_ORDER",
    "SeriesSpec",
    "series_A",
    "series_q1",
    "a_poly",
    "chebyshev_P",
    "closed_A_1m",
    "KMatrix",
    "build_K",
    "d_poly",
    "closed_A_m_m1",
    "ratfun_expand",
    "check_genserrec",
    "check_elltheorem",
    "carlitz_closed_A23w",
]

DEFAULT_X_ORDER = 24


@dataclass(frozen=True)
class SeriesSpec:
    """Parameters of one generating series of flag multiplicities."""

    m_from: int
    m_to: int
    n: int
    weighted: bool = False
    parity_filter: int | None = None
    x_order: int = DEFAULT_X_ORDER

    def validate(self) -> None:
        if self.m_from < 1 or self.m_to < self.m_from:
            raise InvalidLevel(f"invalid level pair {self.m_from} -> {self.m_to}")
        if self.n < 0:
            raise ValueError("target weight must be >= 0")
        if self.x_order < 1:
            raise ValueError("x_order must be >= 1")
        if self.parity_filter not in (None, 0, 1):
            raise ValueError("parity filter must be 0 or 1")


def series_A(spec: SeriesSpec) -> XSeriesQ:
    """The series whose x^p coefficient is the (weighted) multiplicity at n+p.

    With a parity filter k only the terms with p = k (mod 2) are kept (at
    their original x-positions).
    """
    spec.validate()
    coeffs: list[QPoly] = []
    for p in range(spec.x_order):
        if spec.parity_filter is not None and p % 2 != spec.parity_filter:
            coeffs.append(QPoly.zero())
            continue
        if spec.weighted:
            _, w = weighted_mult(spec.m_from, spec.n + p, spec.m_to, spec.n)
            coeffs.append(w)
        else:
            coeffs.append(mult(spec.m_from, spec.n + p, spec.m_to, spec.n))
    return XSeriesQ(coeffs, spec.x_order)


def series_q1(m_from: int, m_to: int, n: int, x_order: int) -> list[int]:
    """The q = 1 coefficient list of the plain series (numerical multiplicities)."""
    return [mult(m_from, n + p, m_to, n).at_one() for p in range(x_order)]


# ---------------------------------------------------------------------------
# level 1 -> m closed form

_A_CACHE: list[XPoly] = []


def a_poly(n: int) -> XPoly:
    """The polynomial a_n(x): a_0 = a_1 = 1, then
    a_n = a_{n-1} - x a_{n-2} (n odd) and a_n = (1+x) a_{n-1} - x a_{n-2} (n even).
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if not _A_CACHE:
        _A_CACHE.extend([XPoly.one(), XPoly.one()])
    x = XPoly.x()
    while len(_A_CACHE) <= n:
        i = len(_A_CACHE)
        prev, prev2 = _A_CACHE[i - 1], _A_CACHE[i - 2]
        if i % 2:
            _A_CACHE.append(prev - x * prev2)
        else:
            _A_CACHE.append((XPoly.one() + x) * prev - x * prev2)
    return _A_CACHE[n]


def chebyshev_P(n: int) -> XPoly:
    """P_n(x): P_0 = P_1 = 1, P_{n+1} = P_n - x P_{n-1}.

    These are rescaled Chebyshev polynomials of the second kind,
    P_n(x^2) = x^n U_n(1/(2x)); they tie a_n(x) to that classical family
    via a_n(x) = (1+x)^floor(n/2) P_n(x/(1+x)).
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    prev2, prev = XPoly.one(), XPoly.one()
    if n == 0:
        return prev2
    x = XPoly.x()
    for _ in range(n - 1):
        prev2, prev = prev, prev - x * prev2
    return prev


def closed_A_1m(m: int, n: int) -> RatFunX:
    """Closed rational form of the q = 1 series from level 1 to level m.

    Writing n = ms + r with 0 <= r < m, the series equals
    a_{2m-2r-1} / (a_m a_{m+1})^(s+1) for floor(m/2) <= r <= m-1 and
    a_m a_{m-2r-1} / (a_m a_{m+1})^(s+1) for 0 <= r < floor(m/2).
    (For m = 1 the formula degenerates correctly to the constant 1.)
    """
    if m < 1:
        raise InvalidLevel("level must be >= 1")
    if n < 0:
        raise ValueError("n must be >= 0")
    s, r = divmod(n, m)
    den = (a_poly(m) * a_poly(m + 1)) ** (s + 1)
    if r >= m // 2:
        return RatFunX(a_poly(2 * m - 2 * r - 1), den)
    return RatFunX(a_poly(m) * a_poly(m - 2 * r - 1), den)


# ---------------------------------------------------------------------------
# level m -> m+1 closed form

@dataclass(frozen=True)
class KMatrix:
    """The (m+1) x (m+1) block transfer matrix K = K1 + K2 for the d_n(x).

    K1 carries the diagonal (ceil((m+1)/2) zeros, then x^(m-1)) and the
    full superdiagonal of ones; K2 carries the two antidiagonal bands.
    Row r expresses d at weight (m+1)p + r through the previous block.
    """

    m: int
    K: tuple[tuple[XPoly, ...], ...]
    K1: tuple[tuple[XPoly, ...], ...]
    K2: tuple[tuple[XPoly, ...], ...]

    def apply(self, vec: list[XPoly]) -> list[XPoly]:
        return [
            sum((row[j] * vec[j] for j in range(len(vec))), XPoly.zero())
            for row in self.K
        ]


def _k_rows(m: int) -> list[dict[int, XPoly]]:
    """Sparse rows of K, derived from the block recurrences of the q = 1
    series: row r lists {column: coefficient}."""
    x = XPoly.x()
    rows: list[dict[int, XPoly]] = [dict() for _ in range(m + 1)]
    if m == 1:
        rows[1] = {1: XPoly.one()}
        rows[0] = dict(rows[1])
        return rows
    for r in range(1, m + 1):
        if 1 <= r <= (m - 1) // 2 and not (m % 2 and r == (m - 1) // 2):
            rows[r] = {
                r + 1: XPoly.one(),
                m + 1 - r: x ** (m - 2 * r),
                m - r: x ** (m - 2 * r - 1),
            }
        elif m % 2 == 0 and r == m // 2:
            rows[r] = {r + 1: XPoly.one()}
        elif m % 2 and r == (m - 1) // 2:
            rows[r] = {(m + 1) // 2: XPoly.one(), (m + 3) // 2: x}
        elif m % 2 and r == (m + 1) // 2:
            rows[r] = {(m + 3) // 2: XPoly.one(), (m + 1) // 2: x ** (m - 1)}
        elif r <= m - 1:
            rows[r] = {
                r + 1: XPoly.one(),
                m + 1 - r: x ** (2 * m - 2 * r),
                r: x ** (m - 1),
            }
        else:  # r == m
            rows[r] = {1: XPoly.one(), m: x ** (m - 1)}
    rows[0] = dict(rows[m])
    return rows


def build_K(m: int) -> KMatrix:
    """Construct K (and its K1 / antidiagonal K2 split) for level m."""
    if m < 1:
        raise InvalidLevel("level must be >= 1")
    rows = _k_rows(m)
    zero = XPoly.zero()
    K = tuple(
        tuple(rows[r].get(c, zero) for c in range(m + 1)) for r in range(m + 1)
    )
    # K1: superdiagonal of ones plus the zero/x^(m-1) diagonal.
    x = XPoly.x()
    half = (m + 2) // 2  # ceil((m+1)/2) leading diagonal zeros
    K1 = tuple(
        tuple(
            XPoly.one()
            if c == r + 1
            else (x ** (m - 1) if c == r and r >= half else zero)
            for c in range(m + 1)
        )
        for r in range(m + 1)
    )
    K2 = tuple(
        tuple(K[r][c] - K1[r][c] for c in range(m + 1)) for r in range(m + 1)
    )
    return KMatrix(m, K, K1, K2)


def _d_base(m: int, n: int) -> XPoly:
    """The d_n(x) table for 0 <= n <= m.

    Branch precedence: the endpoints n = 0, m win, then the middle branch
    n = ceil((m-1)/2) (which overlaps its neighbours for even m), then
    1 <= n <= ceil((m-2)/2), then ceil(m/2) <= n <= m-1.
    """
    one = XPoly.one()
    if n in (0, m):
        return one
    if n == (m - 1 + 1) // 2:  # ceil((m-1)/2)
        return one + XPoly.x() if m % 2 else one
    if 1 <= n <= (m - 1) // 2:  # ceil((m-2)/2)
        return one + XPoly.x(m - 2 * n)
    if (m + 1) // 2 <= n <= m - 1:  # ceil(m/2)
        return one + XPoly.x(2 * m - 2 * n)
    raise AssertionError(f"d-table has no branch for (m, n) = ({m}, {n})")


_D_BLOCKS: dict[tuple[int, int], list[XPoly]] = {}


def _d_block(m: int, p: int) -> list[XPoly]:
    if p == 0:
        return [_d_base(m, i) for i in range(m + 1)]
    cached = _D_BLOCKS.get((m, p))
    if cached is None:
        cached = build_K(m).apply(_d_block(m, p - 1))
        _D_BLOCKS[(m, p)] = cached
    return cached


def d_poly(m: int, n: int) -> XPoly:
    """The numerator polynomial d_n(x) of the level m -> m+1 closed form.

    For n <= m the four-branch base table applies; beyond that, blocks of
    m+1 consecutive numerators are produced by repeated application of K.
    """
    if m < 1:
        raise InvalidLevel("level must be >= 1")
    if n < 0:
        raise ValueError("n must be >= 0")
    if n <= m:
        return _d_base(m, n)
    p, r = divmod(n, m + 1)
    return _d_block(m, p)[r]


def closed_A_m_m1(m: int, n: int) -> RatFunX:
    """Closed rational form of the q = 1 series from level m to m+1:
    d_n(x) / (1 - x^m)^(floor(n/(m+1)) + 1)."""
    if m < 1:
        raise InvalidLevel("level must be >= 1")
    if n < 0:
        raise ValueError("n must be >= 0")
    den = (XPoly.one() - XPoly.x(m)) ** (n // (m + 1) + 1)
    return RatFunX(d_poly(m, n), den)


def ratfun_expand(r: RatFunX, x_order: int) -> list[int]:
    """Maclaurin coefficients of a rational function (exact integers)."""
    return r.expand(x_order)


# ---------------------------------------------------------------------------
# recurrence checks on the q = 1 engine series

def _ladd(a: list[int], b: list[int]) -> list[int]:
    return [x + y for x, y in zip(a, b)]


def _lsub(a: list[int], b: list[int]) -> list[int]:
    return [x - y for x, y in zip(a, b)]


def _lshift(a: list[int], k: int) -> list[int]:
    return ([0] * k + a)[: len(a)]


def check_genserrec(m: int, n: int, x_order: int = DEFAULT_X_ORDER) -> bool:
    """Verify the four-branch recurrence of the level 1 -> m series at index n.

    Writing n + 1 = m n1 + n0 with 0 < n0 <= m (n1 >= -1, and the series
    at index -1 is the constant 1), the recurrence relates the series at
    n to those at n + 1 and n + 2; overlapping guards are resolved in
    source order.  Requires m >= 2.
    """
    if m < 2:
        raise InvalidLevel("the recurrence needs m >= 2")
    if n < -1:
        raise ValueError("n must be >= -1")

    def A(i: int) -> list[int]:
        if i == -1:
            return [1] + [0] * (x_order - 1)
        return series_q1(1, m, i, x_order)

    n0 = (n % m) + 1  # n + 1 = m*n1 + n0, 0 < n0 <= m
    not2 = 0 if m == 2 else 1
    if 2 * n0 == m - 1:
        rhs = A(n + 1)
    elif n0 == m - 1 or 2 * n0 == m - 2:
        a1 = A(n + 1)
        rhs = _lsub(a1, _lshift([not2 * c for c in a1], 1))
    elif 2 * n0 == m:
        rhs = _lsub(A(n + 1), _lshift([not2 * c for c in A(n + 2)], 2))
    else:
        a1 = A(n + 1)
        rhs = _lsub(_lsub(a1, _lshift(a1, 1)), _lshift([not2 * c for c in A(n + 2)], 2))
    return A(n) == rhs


def check_elltheorem(m: int, n: int, x_order: int = DEFAULT_X_ORDER) -> bool:
    """Verify the five-branch recurrence of the level m -> m+1 series at n.

    Writing n = (m+1) p_n - r_n with 0 <= r_n <= m, the series at n is a
    combination of the series at n+m and n+2r_n (and, for large r_n, at
    n + 2r_n - m - 1) with explicit powers of x.
    """
    if m < 1:
        raise InvalidLevel("level must be >= 1")
    if n < 0:
        raise ValueError("n must be >= 0")

    def A(i: int) -> list[int]:
        return series_q1(m, m + 1, i, x_order)

    p_n = -(-n // (m + 1))
    r_n = (m + 1) * p_n - n
    lhs = A(n)
    if r_n == 0:
        rhs = A(n + m)
    elif 1 <= r_n <= (m - 1) // 2:
        rhs = _lsub(A(n + m), _lshift(A(n + 2 * r_n), 2 * r_n))
    elif r_n == (m + 1) // 2 and m % 2:
        rhs = _lsub(A(n + m), _lshift(A(n + 2 * r_n), 2 * r_n - m))
    elif r_n == (m + 1) // 2:
        rhs = _lsub(A(n + m), _lshift(A(n + 2 * r_n), 2 * r_n))
    else:
        rhs = _lsub(A(n + m), _lshift(A(n + 2 * r_n), 2 * r_n - m))
        rhs = _lsub(rhs, _lshift(A(n + 2 * r_n - m - 1), 2 * r_n - m - 1))
    return lhs == rhs


# ---------------------------------------------------------------------------
# Carlitz closed form of the weighted 2 -> 3 series

def carlitz_closed_A23w(n: int, k: int, x_order: int) -> XSeriesQ:
    """Closed form of the parity-k weighted 2 -> 3 series at target weight n.

    Writing n = 6s + r, set s_0 = s - [r=1], s_1 = s - 1 + [r=3] + [r=5]
    and r' = [r=1] + [r=4].  The series is

        q^(-2 s_k^2 - k + k(1 - r')) S_{2 s_k + 1}(y, q^2)_k
            / (x^2; q^2)_{2s + floor(r/3) + 1}

    with y = q^(2 s_k + r') x.  (The Pochhammer index and the extra
    q^(k(1-r')) are the consistent normalisation; the recursion engine is
    the arbiter, see the verification suite.)
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if k not in (0, 1):
        raise ValueError("k must be 0 or 1")
    if x_order < 1:
        raise ValueError("x_order must be >= 1")
    s, r = divmod(n, 6)
    rp = (1 if r == 1 else 0) + (1 if r == 4 else 0)
    sk = s - 1 + (1 if r in (3, 5) else 0) if k else s - (1 if r == 1 else 0)
    S = carlitz_S(2 * sk + 1, k)
    # substitute x -> q^(2 sk + rp) x and q -> q^2 in S
    sub = XSeriesQ(
        [c.subs_power(2).shifted((2 * sk + rp) * d) for d, c in enumerate(S.coeffs())],
        x_order,
    )
    den = poch_x(1, 2 * s + r // 3 + 1, QPoly.q(2), x_order, x_deg=2)
    shift = -2 * sk * sk - k + k * (1 - rp)
    return sub.scale(QPoly.q(shift)) * den.inverse()
