"""Closed-form expressions for flag multiplicities and their q-series.

Everything in this module is computed *without* the recursion engines, so
each function doubles as an independent oracle for ``demflag.flag_engine``:

* ``cf_1to2`` / ``cf_2to3`` -- single q-binomial formulas for level 1 -> 2
  and level 2 -> 3 multiplicities;
* ``carlitz_S`` -- the Carlitz q-Fibonacci polynomials (both
  initial-condition families), recurrence and closed sum cross-checked;
* ``mock_theta`` -- Ramanujan's fifth-order series phi_0, phi_1;
* ``hypergeom_terms`` / ``hypergeom_rphis`` -- truncations of the basic
  hypergeometric series r_phi_s with exact term-wise ratios;
* ``gen_binomial_series`` and ``closed_A0_1to3`` -- q-binomial generating
  series in x;
* ``hyp_limit_term_2to3`` -- the alternating-Pochhammer form of the x^(2j)
  coefficient of the parity-0 weighted 2 -> 3 series.
"""

from __future__ import annotations

from .errors import InexactDivision
from .qpoly import QPoly, XSeriesQ, q_binomial, q_pochhammer

__all__ = [
    "res2",
    "cf_1to2",
    "cf_2to3",
    "carlitz_S",
    "mock_theta",
    "hypergeom_terms",
    "hypergeom_rphis",
    "gen_binomial_series",
    "closed_A0_1to3",
    "phi_1to2",
    "hyp_limit_term_2to3",
]

_ONE = QPoly.one()


def res2(s: int) -> int:
    """The residue in {0, 1} with s - res2(s) even."""
    return s & 1


def cf_1to2(s: int, p: int) -> QPoly:
    """[D(1, s+p) : D(2, s)]_q in closed form.

    Equals q^(p(s + p + res2(s))) * [floor(s/2)+p choose p] in base q^2.
    """
    if s < 0 or p < 0:
        raise ValueError("arguments must be >= 0")
    w = q_binomial(s // 2 + p, p).subs_power(2)
    return w.shifted(p * (s + p + res2(s)))


def _two_three_symbols(r: int, parity: int) -> tuple[int, int, int]:
    """The derived indices (r', r-bar, r-tilde) for weight residue r mod 6."""
    rp = (1 if r == 1 else 0) + (1 if r == 4 else 0)
    rbar = (1 if r in (1, 3, 5) else 0) * parity - (1 if r == 1 else 0)
    return rp, rbar, r // 3


def cf_2to3(n: int, p: int) -> QPoly:
    """[D(2, n+p) : D(3, n)]_q in closed form.

    Writing n = 6s + r with 0 <= r <= 5, the weighted part is a sum of
    products of two q^2-binomials over j = 0..floor(p/2), and the full
    multiplicity restores the prefactor
    q^(p(4s + r - r~ + ceil(p/2)) + res2(p)(r' + r~ - ceil(p/2))).
    """
    if n < 0 or p < 0:
        raise ValueError("arguments must be >= 0")
    s, r = divmod(n, 6)
    parity = res2(p)
    rp, rbar, rt = _two_three_symbols(r, parity)
    half = p // 2
    acc = QPoly.zero()
    for j in range(half + 1):
        term = q_binomial(2 * s + rt + half - j, 2 * s + rt).subs_power(2)
        term = term * q_binomial(s + j + rbar, 2 * j + parity).subs_power(2)
        acc = acc + term.shifted(2 * j * (j + rp + parity))
    shift = p * (4 * s + r - rt + (p + 1) // 2) + parity * (rp + rt - (p + 1) // 2)
    return acc.shifted(shift)


# ---------------------------------------------------------------------------
# Carlitz q-Fibonacci polynomials

def _carlitz_rec(n: int, k: int) -> list[QPoly]:
    """S_n(x, q)_k by the recurrence S_i = x S_{i-1} + q^(i-2) S_{i-2}.

    Returns the dense list of x-coefficients.  k selects the initial
    family: S_0 = 0, S_1 = 1 for k = 0; S_{-1} = 0, S_0 = 1 for k = 1.
    For k = 0 the recurrence also runs one step backwards, giving
    S_{-1}(x, q)_0 = q (needed by the degenerate closed series).
    """
    if k == 0:
        known = {-1: [QPoly.q(1)], 0: [], 1: [_ONE]}
    else:
        known = {-1: [], 0: [_ONE]}
    if n in known:
        return known[n]
    lo = max(known)
    prev2, prev1 = known[lo - 1], known[lo]
    for i in range(lo + 1, n + 1):
        cur = [QPoly.zero()] + prev1  # x * S_{i-1}
        qp = QPoly.q(i - 2)
        for d, c in enumerate(prev2):
            if d < len(cur):
                cur[d] = cur[d] + c * qp
            else:
                cur.append(c * qp)
        prev2, prev1 = prev1, cur
    while prev1 and prev1[-1].is_zero():
        prev1.pop()
    return prev1


def _carlitz_closed(n: int, k: int) -> list[QPoly] | None:
    """Closed q-binomial sum for S_n(x, q)_k, where it applies.

    k = 0, n >= 1: sum_j [n-1-j choose j]_q q^(j^2) x^(n-1-2j);
    k = 1, n >= 0: sum_j [n-j choose j]_q q^(j(j-1)) x^(n-2j).
    Returns None outside these ranges (the initial values stand alone).
    """
    if k == 0:
        if n < 1:
            return None
        top = n - 1
        expo = lambda j: j * j  # noqa: E731
    else:
        if n < 0:
            return None
        top = n
        expo = lambda j: j * (j - 1)  # noqa: E731
    out = [QPoly.zero()] * (top + 1) if top >= 0 else []
    for j in range(top // 2 + 1):
        out[top - 2 * j] = q_binomial(top - j, j).shifted(expo(j))
    while out and out[-1].is_zero():
        out.pop()
    return out


def carlitz_S(n: int, k: int) -> XSeriesQ:
    """The Carlitz q-Fibonacci polynomial S_n(x, q)_k as an exact x-polynomial.

    Both the recurrence and the closed q-binomial sum are evaluated and
    compared before returning; a mismatch raises AssertionError.
    """
    if k not in (0, 1):
        raise ValueError("k must be 0 or 1")
    if n < -1:
        raise ValueError("n must be >= -1")
    rec = _carlitz_rec(n, k)
    closed = _carlitz_closed(n, k)
    if closed is not None and closed != rec:
        raise AssertionError(
            f"recurrence and closed sum disagree for S_{n}(x,q)_{k}"
        )
    return XSeriesQ(rec, max(len(rec), 1))


# ---------------------------------------------------------------------------
# mock theta functions

def mock_theta(which: int, q_order: int) -> QPoly:
    """Truncation of the fifth-order mock theta series phi_0 or phi_1.

    phi_0(q) = sum_n q^(n^2) (-q; q^2)_n and
    phi_1(q) = sum_n q^((n+1)^2) (-q; q^2)_n; the n-th term's lowest
    exponent is n^2 (resp. (n+1)^2), so the sum is cut once that reaches
    q_order and the result truncated below q_order.
    """
    if which not in (0, 1):
        raise ValueError("which must be 0 or 1")
    if q_order < 1:
        raise ValueError("q_order must be >= 1")
    minus_q = QPoly.q(1, -1)
    q2 = QPoly.q(2)
    acc = QPoly.zero()
    n = 0
    while (n + which) ** 2 < q_order:
        term = q_pochhammer(minus_q, n, q2).shifted((n + which) ** 2)
        acc = acc + term
        n += 1
    return acc.truncated(q_order)


# ---------------------------------------------------------------------------
# basic hypergeometric series

def _poch_series(b: XSeriesQ, n: int, base: QPoly, order: int) -> XSeriesQ:
    """(b; base)_n where b genuinely involves x, as a truncated x-series."""
    out = XSeriesQ.one(order)
    factor = b.padded(order) if b.order < order else b.truncate(order)
    base_pow = QPoly.one()
    for _ in range(n):
        out = out * (XSeriesQ.one(order) - factor.scale(base_pow))
        base_pow = base_pow * base
    return out


def hypergeom_terms(
    upper: list[QPoly | XSeriesQ],
    lower: list[QPoly | XSeriesQ],
    base: QPoly,
    z_order: int,
    x_order: int,
) -> list[XSeriesQ]:
    """The z^n coefficients of the basic hypergeometric series r_phi_s.

    Term n is prod_i (a_i; base)_n / (prod_j (b_j; base)_n * (base; base)_n).
    Parameters that are plain ``QPoly`` contribute exact q-ratios: the
    pure-q denominator must divide the pure-q numerator exactly, else
    InexactDivision is raised.  Parameters given as ``XSeriesQ`` (with
    unit constant term) are inverted as truncated x-series instead.
    """
    if z_order < 1 or x_order < 1:
        raise ValueError("orders must be >= 1")
    terms: list[XSeriesQ] = []
    for n in range(z_order):
        num_q, den_q = _ONE, q_pochhammer(base, n, base)
        num_x = den_x = None
        for a in upper:
            if isinstance(a, QPoly):
                num_q = num_q * q_pochhammer(a, n, base)
            else:
                piece = _poch_series(a, n, base, x_order)
                num_x = piece if num_x is None else num_x * piece
        for b in lower:
            if isinstance(b, QPoly):
                den_q = den_q * q_pochhammer(b, n, base)
            else:
                piece = _poch_series(b, n, base, x_order)
                den_x = piece if den_x is None else den_x * piece
        ratio = num_q.divide_exact(den_q)
        t = XSeriesQ.one(x_order).scale(ratio)
        if num_x is not None:
            t = t * num_x
        if den_x is not None:
            t = t * den_x.inverse()
        terms.append(t)
    return terms


def hypergeom_rphis(
    upper: list[QPoly | XSeriesQ],
    lower: list[QPoly | XSeriesQ],
    base: QPoly,
    z_order: int,
    z_coeff: QPoly | int = 1,
    z_xdeg: int = 1,
    x_order: int | None = None,
) -> XSeriesQ:
    """The hypergeometric truncation with z = z_coeff * x^z_xdeg substituted.

    Collapses the term list of :func:`hypergeom_terms` into a single
    x-series.  Use :func:`hypergeom_terms` when the z-coefficients must be
    kept apart (e.g. to compare them against another series family).
    """
    if x_order is None:
        x_order = max(1, z_order * max(z_xdeg, 1))
    z_coeff = z_coeff if isinstance(z_coeff, QPoly) else QPoly(z_coeff)
    terms = hypergeom_terms(upper, lower, base, z_order, x_order)
    acc = XSeriesQ.zero(x_order)
    zc = QPoly.one()
    for n, t in enumerate(terms):
        if n * z_xdeg >= x_order:
            break
        acc = acc + t.scale(zc, x_shift=n * z_xdeg)
        zc = zc * z_coeff
    return acc


# ---------------------------------------------------------------------------
# q-binomial generating series in x

def gen_binomial_series(k: int, base: QPoly, x_order: int) -> XSeriesQ:
    """sum_j [j choose k]_base x^j, truncated at x_order.

    The companion identity (tested, not assumed) is
    sum_j [j choose k]_q x^j = x^k / (x; q)_{k+1}.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    return XSeriesQ(
        [q_binomial(j, k).subs_monomial(base) for j in range(x_order)], x_order
    )


def poch_x(coeff: QPoly | int, n: int, step: QPoly, x_order: int, x_deg: int = 1) -> XSeriesQ:
    """(coeff * x^x_deg; step)_n as an x-series: prod (1 - coeff step^(i-1) x^x_deg)."""
    coeff = coeff if isinstance(coeff, QPoly) else QPoly(coeff)
    out = XSeriesQ.one(x_order)
    cur = coeff
    for _ in range(n):
        out = out * XSeriesQ.from_pairs([(0, _ONE), (x_deg, -cur)], x_order)
        cur = cur * step
    return out


def phi_1to2(n: int, x_order: int) -> XSeriesQ:
    """The weighted level 1 -> 2 series 1 / (x; q^2)_n (with value 1 at n = 0)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return poch_x(1, n, QPoly.q(2), x_order).inverse()


def closed_A0_1to3(x_order: int) -> XSeriesQ:
    """The weight-0 level 1 -> 3 series: sum_i q^(i^2) (-qx; q^2)_i x^i.

    At x = 1 this specialises to the mock theta function phi_0.
    """
    if x_order < 1:
        raise ValueError("x_order must be >= 1")
    acc = XSeriesQ.zero(x_order)
    for i in range(x_order):
        term = poch_x(QPoly.q(1, -1), i, QPoly.q(2), x_order)
        acc = acc + term.scale(QPoly.q(i * i), x_shift=i)
    return acc


def hyp_limit_term_2to3(s: int, r: int, j: int) -> QPoly:
    """x^(2j) coefficient of the parity-0 weighted 2 -> 3 series times its
    Pochhammer denominator, in alternating-Pochhammer form.

    With s0 = s - [r=1] and r' = [r=1] + [r=4], the coefficient is
    q^(2j(s0+r') + j(j+1)) (-1)^j (q^(2s0+2); q^2)_j (q^(-2s0); q^2)_j
    divided exactly by (q^2; q^2)_j (-q^2; q^2)_j (q; q^2)_j (-q; q^2)_j.
    Each ratio must be a Laurent polynomial; otherwise InexactDivision.
    """
    if not (0 <= r <= 5):
        raise ValueError("r must be in 0..5")
    s0 = s - (1 if r == 1 else 0)
    rp = (1 if r == 1 else 0) + (1 if r == 4 else 0)
    q2 = QPoly.q(2)
    num = q_pochhammer(QPoly.q(2 * s0 + 2), j, q2) * q_pochhammer(
        QPoly.q(-2 * s0), j, q2
    )
    den = (
        q_pochhammer(q2, j, q2)
        * q_pochhammer(QPoly.q(2, -1), j, q2)
        * q_pochhammer(QPoly.q(1), j, q2)
        * q_pochhammer(QPoly.q(1, -1), j, q2)
    )
    ratio = num.divide_exact(den)
    sign = -1 if j % 2 else 1
    return (ratio * sign).shifted(2 * j * (s0 + rp) + j * (j + 1))
