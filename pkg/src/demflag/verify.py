"""Machine verification of every identity the package computes.

Each check sweeps a parameter grid, compares two independently computed
values with *exact* equality (tolerance zero), and reports the first
counterexample on failure.  The default grids are the acceptance bounds;
``max_scale`` rescales the primary bound of every check so that a fast
profile (small grids) and a deep profile (large grids) use the same code
path.  Structural bounds (e.g. a residue ranging over 0..5) are never
scaled.

The checks are grouped into suites (base / composition / closedforms /
series / characters) used by both the test suite and the command line
``demflag verify``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Iterable

from . import characters as ch
from . import closed_forms as cf
from . import flag_engine as fe
from . import gen_series as gs
from .qpoly import QPoly, XSeriesQ, q_binomial, q_pochhammer

__all__ = ["CheckResult", "SUITES", "all_checks", "run_suite", "suite_names"]

_ONE = QPoly.one()
_ZERO = QPoly.zero()


@dataclass
class CheckResult:
    name: str
    passed: bool
    cases: int
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f": {self.detail}" if (self.detail and not self.passed) else ""
        return f"{status} {self.name} ({self.cases} cases){extra}"


def _scaled(default: int, max_scale: int | None, floor: int = 1) -> int:
    return default if max_scale is None else max(floor, max_scale)


def _check(name: str, cases: Iterable[tuple]) -> CheckResult:
    """Run (label, got, want) triples until the first mismatch."""
    count = 0
    for label, got, want in cases:
        count += 1
        if got != want:
            return CheckResult(name, False, count, f"{label}: got {got}, want {want}")
    return CheckResult(name, True, count)


# ---------------------------------------------------------------------------
# criterion 1: the closed one-step table, against the recursion + rank-one route

def _step_by_recursion(m: int, s: int, n: int) -> QPoly:
    """One-step multiplicity avoiding the closed table: the recursion is
    unrolled all the way down to the rank-one formula."""
    if n < 0 or s < n:
        return _ZERO
    if s <= m:
        return fe.mult_base(m, s, m + 1, n)
    s1, s0 = divmod(s - 1, m)
    s0 += 1
    if 2 * s0 <= m:
        return _step_by_recursion(m, s - m - 1, n - m - 1).shifted(
            2 * (s - n)
        ) + _step_by_recursion(m, s - 2 * s0, n).shifted(4 * s1 * s0)
    acc = _step_by_recursion(m, s - m - 1, n - m - 1).shifted(2 * (s - n))
    acc = acc + _step_by_recursion(m, s + m - 2 * s0, n).shifted(
        (2 * s1 + 1) * (2 * s0 - m)
    )
    d = 2 * s0 - m
    k = 2 if (d >= 3 and s1 == 1) else 1 if (d >= 2) else 0 if d == 1 else -1
    for j in range(1, k + 1):
        acc = acc + _step_by_recursion(m, s - 2 * s0 + j - 1, n - m - 1).shifted(
            2 * s1 * (2 * s0 - j) + j + m - 2 * n
        )
    return acc


def check_base_table(max_scale: int | None = None) -> CheckResult:
    jmax = _scaled(6, max_scale)
    mmax = _scaled(6, max_scale)

    def cases():
        for m in range(1, mmax + 1):
            for j in range(jmax + 1):
                for k in range(m + 1):
                    s = m * j + k
                    for n in range(m + 1):
                        if s < n:
                            continue
                        if n == k:
                            want = QPoly.q(j * (m * j + 2 * k))
                        elif n == m - k:
                            want = QPoly.q((j + 1) * (m * j + 2 * k - m))
                        else:
                            want = _ZERO
                        yield (f"step m={m} s={s} n={n}", fe.mult_step(m, s, n), want)
                        yield (
                            f"step-recursive m={m} s={s} n={n}",
                            _step_by_recursion(m, s, n),
                            want,
                        )

    return _check("one-step base table (closed vs recursive)", cases())


# ---------------------------------------------------------------------------
# criteria 2, 3: closed forms against the engine

def check_cf_1to2(max_scale: int | None = None) -> CheckResult:
    total = _scaled(40, max_scale)
    cases = (
        (f"s={s} p={p}", cf.cf_1to2(s, p), fe.mult(1, s + p, 2, s))
        for s in range(total + 1)
        for p in range(total + 1 - s)
    )
    return _check("closed form 1->2", cases)


def check_cf_2to3(max_scale: int | None = None) -> CheckResult:
    total = _scaled(40, max_scale)
    cases = (
        (f"n={n} p={p}", cf.cf_2to3(n, p), fe.mult(2, n + p, 3, n))
        for n in range(total + 1)
        for p in range(total + 1 - n)
    )
    return _check("closed form 2->3", cases)


# ---------------------------------------------------------------------------
# criterion 4: composition across an intermediate level

def check_composition(max_scale: int | None = None) -> CheckResult:
    smax = _scaled(16, max_scale)

    def cases():
        for m_from, mid, m_to in ((1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)):
            for s in range(smax + 1):
                for n in range(s + 1):
                    acc = _ZERO
                    for p in range(n, s + 1):
                        acc = acc + fe.mult(m_from, s, mid, p) * fe.mult(mid, p, m_to, n)
                    yield (
                        f"{m_from}->{mid}->{m_to} s={s} n={n}",
                        acc,
                        fe.mult(m_from, s, m_to, n),
                    )

    return _check("composition through intermediate levels", cases())


# ---------------------------------------------------------------------------
# criterion 5: the two engines agree

def check_engine_agreement(max_scale: int | None = None) -> CheckResult:
    smax = _scaled(18, max_scale)

    def cases():
        for m_from in (1, 2, 3):
            for m_to in range(m_from, m_from + 3):
                for s in range(smax + 1):
                    part = fe.Partition.for_demazure(m_from, s)
                    for n in range(s + 1):
                        yield (
                            f"{part!r} m={m_to} n={n}",
                            fe.mult_partition(part, m_to, n),
                            fe.mult(m_from, s, m_to, n),
                        )

    return _check("partition engine vs step engine", cases())


# ---------------------------------------------------------------------------
# criterion 6: mock theta specialisations

def _min_exp_bound_1to3(p: int) -> int:
    # provable lower bound on the minimal q-exponent of the p-th term of
    # the level 1 -> 3 series at target weight 0 or 1
    return max(0, (p * p - p) // 3 - 1)


def _series_1to3_at_x1(target: int, q_order: int) -> QPoly:
    acc = _ZERO
    p = 0
    while _min_exp_bound_1to3(p) < q_order:
        acc = acc + fe.mult(1, target + p, 3, target)
        p += 1
    return acc.truncated(q_order)


def check_mock_theta(max_scale: int | None = None) -> CheckResult:
    q_order = _scaled(40, max_scale, floor=2)
    phi0 = cf.mock_theta(0, q_order)
    phi1 = cf.mock_theta(1, q_order)
    cases = [
        ("phi0 vs engine", _series_1to3_at_x1(0, q_order), phi0),
        ("phi1 vs engine", _series_1to3_at_x1(1, q_order).shifted(1).truncated(q_order), phi1),
    ]
    return _check("mock theta specialisations", iter(cases))


# ---------------------------------------------------------------------------
# criterion 7: the weighted 1 -> 2 series and its hypergeometric generating function

def check_phi_1to2(max_scale: int | None = None) -> CheckResult:
    nmax = _scaled(8, max_scale)
    x_order = 20

    def cases():
        for n in range(nmax + 1):
            closed = cf.phi_1to2(n + 1, x_order)
            for target in (2 * n, 2 * n + 1):
                got = gs.series_A(
                    gs.SeriesSpec(1, 2, target, weighted=True, x_order=x_order)
                )
                yield (f"weighted series n={target}", got, closed)

    return _check("weighted 1->2 series is 1/(x;q^2)_(n+1)", cases())


def check_1phi1(max_scale: int | None = None) -> CheckResult:
    z_order = _scaled(8, max_scale)
    x_order = 12
    x = XSeriesQ.from_pairs([(1, _ONE)], x_order)
    terms = cf.hypergeom_terms([QPoly.q(2)], [x], QPoly.q(2), z_order, x_order)
    cases = (
        (f"z^{n} coefficient", terms[n], cf.phi_1to2(n, x_order))
        for n in range(z_order)
    )
    return _check("1-phi-1 generating function of the weighted 1->2 series", cases)


# ---------------------------------------------------------------------------
# criterion 8: Carlitz q-Fibonacci closed form of the weighted 2 -> 3 series

def check_carlitz_closed(max_scale: int | None = None) -> CheckResult:
    smax = _scaled(3, max_scale)
    x_order = 16

    def cases():
        for s in range(smax + 1):
            for r in range(6):
                n = 6 * s + r
                for k in (0, 1):
                    got = gs.carlitz_closed_A23w(n, k, x_order)
                    want = gs.series_A(
                        gs.SeriesSpec(
                            2, 3, n, weighted=True, parity_filter=k, x_order=x_order
                        )
                    )
                    yield (f"n={n} k={k}", got, want)

    return _check("Carlitz closed form of weighted 2->3 series", cases())


# ---------------------------------------------------------------------------
# criterion 9: the alternating-Pochhammer (hypergeometric-limit) term form

def check_hyp_limit_display(max_scale: int | None = None) -> CheckResult:
    smax = _scaled(2, max_scale)
    jmax = 6
    x_order = 2 * jmax + 2

    def cases():
        for s in range(smax + 1):
            for r in range(6):
                n = 6 * s + r
                comp = gs.series_A(
                    gs.SeriesSpec(2, 3, n, weighted=True, parity_filter=0, x_order=x_order)
                )
                poch = cf.poch_x(1, n // 3 + 1, QPoly.q(2), x_order, x_deg=2)
                prod = comp * poch
                for j in range(jmax + 1):
                    yield (
                        f"s={s} r={r} j={j}",
                        cf.hyp_limit_term_2to3(s, r, j),
                        prod.coeff(2 * j),
                    )

    return _check("alternating-Pochhammer term form of weighted 2->3", cases())


# ---------------------------------------------------------------------------
# criteria 10, 11: rational closed forms at q = 1

def check_closed_1m(max_scale: int | None = None) -> CheckResult:
    x_order = 20
    nscale = max_scale

    def cases():
        for m in range(2, 6):
            nmax = 3 * m if nscale is None else min(3 * m, nscale)
            for n in range(nmax + 1):
                got = gs.ratfun_expand(gs.closed_A_1m(m, n), x_order)
                want = gs.series_q1(1, m, n, x_order)
                yield (f"m={m} n={n}", got, want)
        # the Fibonacci corner: 1/a_4 = 1/(1 - x - x^2)
        fib = gs.ratfun_expand(gs.closed_A_1m(3, 0), 6)
        yield ("fibonacci m=3 n=0", fib, [1, 1, 2, 3, 5, 8])

    return _check("rational closed form 1->m at q=1", cases())


def check_closed_m_m1(max_scale: int | None = None) -> CheckResult:
    x_order = 20
    nscale = max_scale

    def cases():
        for m in range(1, 6):
            nmax = 4 * (m + 1) if nscale is None else min(4 * (m + 1), nscale)
            for n in range(nmax + 1):
                got = gs.ratfun_expand(gs.closed_A_m_m1(m, n), x_order)
                want = gs.series_q1(m, m + 1, n, x_order)
                yield (f"m={m} n={n}", got, want)

    return _check("rational closed form m->m+1 at q=1", cases())


# ---------------------------------------------------------------------------
# criterion 12: the a_n / Chebyshev identities

def check_a_poly_identities(max_scale: int | None = None) -> CheckResult:
    nmax = _scaled(20, max_scale, floor=4)
    from .qpoly import XPoly

    def cases():
        one_plus_x = XPoly.one() + XPoly.x()
        for n in range(nmax + 1):
            d = n // 2
            pn = gs.chebyshev_P(n)
            # (1+x)^floor(n/2) P_n(x/(1+x)), denominators cleared
            acc = XPoly.zero()
            for kk in range(pn.degree() + 1):
                acc = acc + pn.coeff(kk) * XPoly.x(kk) * one_plus_x ** (d - kk)
            yield (f"chebyshev n={n}", acc, gs.a_poly(n))
        for n in range(2, nmax + 1, 2):
            yield (
                f"even split n={n}",
                gs.a_poly(n),
                gs.a_poly(n - 1) - XPoly.x(2) * gs.a_poly(max(n - 3, 0)),
            )
        for n in range(4, nmax + 1):
            yield (
                f"second recurrence n={n}",
                gs.a_poly(n),
                (XPoly.one() - XPoly.x()) * gs.a_poly(n - 2)
                - XPoly.x(2) * gs.a_poly(n - 4),
            )

    return _check("a_n and Chebyshev identities", cases())


# ---------------------------------------------------------------------------
# criterion 13: series recurrences on the engine

def check_genserrec(max_scale: int | None = None) -> CheckResult:
    nmax = _scaled(20, max_scale)
    x_order = 20
    cases = (
        (f"m={m} n={n}", gs.check_genserrec(m, n, x_order), True)
        for m in range(2, 6)
        for n in range(-1, nmax + 1)
    )
    return _check("recurrence of 1->m series at q=1", cases)


def check_elltheorem(max_scale: int | None = None) -> CheckResult:
    nmax = _scaled(20, max_scale)
    x_order = 20
    cases = (
        (f"m={m} n={n}", gs.check_elltheorem(m, n, x_order), True)
        for m in range(1, 6)
        for n in range(nmax + 1)
    )
    return _check("recurrence of m->m+1 series at q=1", cases)


# ---------------------------------------------------------------------------
# criterion 14: characters and dimensions

def check_dimension_sums(max_scale: int | None = None) -> CheckResult:
    smax = _scaled(20, max_scale)

    def cases():
        for m_from in (1, 2, 3):
            for m_to in range(m_from, m_from + 4):
                for s in range(smax + 1):
                    total = sum(
                        fe.mult(m_from, s, m_to, n).at_one() * ch.dim_demazure(m_to, n)
                        for n in range(s + 1)
                    )
                    yield (
                        f"dim sum {m_from}->{m_to} s={s}",
                        total,
                        ch.dim_demazure(m_from, s),
                    )

    return _check("dimension sums across flags", cases())


def check_character_assembly(max_scale: int | None = None) -> CheckResult:
    nmax = _scaled(10, max_scale)

    def cases():
        for m in (1, 2, 3):
            for n in range(nmax + 1):
                base = max(m, n)
                c0 = ch.graded_character(m, n, base)
                yield (
                    f"dim m={m} n={n}",
                    c0.total_dimension(),
                    ch.dim_demazure(m, n),
                )
                for lvl in (base + 1, base + 2):
                    yield (
                        f"via-level m={m} n={n} L={lvl}",
                        ch.graded_character(m, n, lvl),
                        c0,
                    )

    return _check("graded character assembly (via-level independence, dimension)", cases())


def check_char_product_rule(max_scale: int | None = None) -> CheckResult:
    pmax = _scaled(12, max_scale)
    d11 = ch.level_one_step_decomp(1, 1).ungraded()

    def cases():
        for m in range(1, 6):
            for p in range(pmax + 1):
                lhs = ch.ungraded_char(m, p) * d11
                rhs = _ZERO
                for w, coeff in ch.char_product_D11(m, p):
                    rhs = rhs + ch.ungraded_char(m, w) * coeff
                yield (f"m={m} p={p}", lhs, rhs)

    return _check("tensor product rule with the three-dimensional module", cases())


def check_graded_flag_identity(max_scale: int | None = None) -> CheckResult:
    smax = _scaled(10, max_scale)

    def cases():
        for m in (2, 3):
            for s in range(smax + 1):
                lhs = ch.graded_character(1, s, s + 2)
                rhs = ch.GradedCharacter()
                for n in range(s + 1):
                    poly = fe.mult(1, s, m, n)
                    if poly.is_zero():
                        continue
                    section = ch.graded_character(m, n, max(m, n))
                    for p, c in poly.terms():
                        rhs = rhs + section.shifted(p).scaled(c)
                yield (f"m={m} s={s}", rhs, lhs)

    return _check("graded character flag identity", cases())


# ---------------------------------------------------------------------------
# criterion 15: positivity and triangularity

def check_positivity_triangularity(max_scale: int | None = None) -> CheckResult:
    smax = _scaled(18, max_scale)

    def cases():
        for m_from in (1, 2, 3):
            for m_to in range(m_from, m_from + 3):
                for s in range(smax + 1):
                    for n in range(s + 3):
                        val = fe.mult(m_from, s, m_to, n)
                        if n > s:
                            yield (f"vanishing {m_from}->{m_to} s={s} n={n}", val, _ZERO)
                            continue
                        if n == s:
                            yield (f"delta {m_from}->{m_to} s={s}", val, _ONE)
                        ok = val.is_zero() or (
                            val.min_exp() >= 0
                            and all(c > 0 for _, c in val.terms())
                        )
                        yield (f"positivity {m_from}->{m_to} s={s} n={n}", ok, True)

    return _check("positivity and triangularity", cases())


# ---------------------------------------------------------------------------
# auxiliary invariants (not numbered acceptance criteria)

def check_binomial_series_identity(max_scale: int | None = None) -> CheckResult:
    kmax = _scaled(8, max_scale)
    x_order = 24

    def cases():
        for base in (QPoly.q(1), QPoly.q(2)):
            for k in range(kmax + 1):
                lhs = cf.gen_binomial_series(k, base, x_order)
                rhs = cf.poch_x(1, k + 1, base, x_order).inverse().scale(1, x_shift=k)
                yield (f"k={k} base={base}", lhs, rhs)

    return _check("binomial generating series identity", cases())


def check_carlitz_internal(max_scale: int | None = None) -> CheckResult:
    nmax = _scaled(24, max_scale)

    def cases():
        for k in (0, 1):
            for n in range(-1, nmax + 1):
                s = cf.carlitz_S(n, k)  # raises internally on mismatch
                yield (f"S_{n} k={k}", s.order >= 1, True)

    return _check("Carlitz recurrence vs closed sum", cases())


def check_strip_head(max_scale: int | None = None) -> CheckResult:
    part_max = _scaled(3, max_scale)

    def parts_pool():
        for ell in (2, 3):
            for parts in _staircases(ell, part_max):
                yield parts

    def cases():
        for parts in parts_pool():
            p = fe.Partition(parts)
            for s in range(p.size + 1):
                lhs = fe.mult_partition(p, p.xi0, s)
                red = fe.strip_head(p, s)
                rhs = fe.mult_partition(red.parts, red.level, red.target).shifted(
                    red.shift
                )
                yield (f"{parts} s={s}", lhs, rhs)

    return _check("head-stripping identity", cases())


def _staircases(ell: int, part_max: int):
    """All admissible partitions with ell parts below the head, parts <= part_max."""
    def rec(prefix: list[int], remaining: int):
        if remaining == 0:
            try:
                fe.Partition(tuple(prefix))
            except Exception:
                return
            yield tuple(prefix)
            return
        hi = prefix[-1] if prefix else part_max
        for v in range(1, hi + 1):
            yield from rec(prefix + [v], remaining - 1)

    yield from rec([], ell + 1)


def check_memo_transparency(max_scale: int | None = None) -> CheckResult:
    rng = random.Random(20250811)
    queries = []
    for _ in range(50):
        m_from = rng.randint(1, 3)
        m_to = rng.randint(m_from, m_from + 2)
        s = rng.randint(0, 14)
        n = rng.randint(0, s)
        queries.append((m_from, s, m_to, n))
    with_memo = [fe.mult(*qq) for qq in queries]
    fe.clear_caches()
    fe.set_memo_enabled(False)
    try:
        without = [fe.mult(*qq) for qq in queries]
    finally:
        fe.set_memo_enabled(True)
        fe.clear_caches()
    cases = (
        (f"query {qq}", a, b) for qq, a, b in zip(queries, with_memo, without)
    )
    return _check("memoization transparency", cases)


def check_qpoly_random_laws(max_scale: int | None = None) -> CheckResult:
    rng = random.Random(1311)

    def rand_poly():
        return QPoly(
            {rng.randint(-6, 6): rng.randint(-9, 9) for _ in range(rng.randint(0, 5))}
        )

    def cases():
        for i in range(200):
            a, b, c = rand_poly(), rand_poly(), rand_poly()
            yield (f"assoc #{i}", (a + b) + c, a + (b + c))
            yield (f"distrib #{i}", a * (b + c), a * b + a * c)
            yield (f"commut #{i}", a * b, b * a)
        for n in range(13):
            for mm in range(n + 1):
                yield (
                    f"pascal-a {n},{mm}",
                    q_binomial(n, mm),
                    q_binomial(n - 1, mm) + q_binomial(n - 1, mm - 1).shifted(n - mm),
                )
                yield (
                    f"pascal-b {n},{mm}",
                    q_binomial(n, mm),
                    q_binomial(n - 1, mm).shifted(mm) + q_binomial(n - 1, mm - 1),
                )
        for i in range(50):
            order = rng.randint(2, 8)
            coeffs = [QPoly(rng.choice((1, -1)))] + [
                QPoly({rng.randint(0, 3): rng.randint(-3, 3)})
                for _ in range(order - 1)
            ]
            s = XSeriesQ(coeffs, order)
            yield (f"inverse roundtrip #{i}", s * s.inverse(), XSeriesQ.one(order))
        for i in range(100):
            p = QPoly({rng.randint(0, 9): rng.randint(-9, 9) for _ in range(4)})
            if p.is_zero():
                continue
            r, w = p.weight_split()
            yield (f"weight split #{i}", w.shifted(r), p)

    return _check("ring laws, Pascal rules, series inverse, weight split", cases())


# ---------------------------------------------------------------------------
# suites

CheckFn = Callable[[int | None], CheckResult]

SUITES: dict[str, list[CheckFn]] = {
    "base": [check_base_table, check_qpoly_random_laws],
    "composition": [
        check_composition,
        check_engine_agreement,
        check_positivity_triangularity,
        check_strip_head,
        check_memo_transparency,
    ],
    "closedforms": [
        check_cf_1to2,
        check_cf_2to3,
        check_mock_theta,
        check_carlitz_closed,
        check_hyp_limit_display,
        check_carlitz_internal,
        check_binomial_series_identity,
    ],
    "series": [
        check_phi_1to2,
        check_1phi1,
        check_closed_1m,
        check_closed_m_m1,
        check_a_poly_identities,
        check_genserrec,
        check_elltheorem,
    ],
    "characters": [
        check_dimension_sums,
        check_character_assembly,
        check_char_product_rule,
        check_graded_flag_identity,
    ],
}


def suite_names() -> list[str]:
    return ["all", *SUITES]


def all_checks() -> list:
    seen = []
    for fns in SUITES.values():
        for fn in fns:
            if fn not in seen:
                seen.append(fn)
    return seen


def run_suite(name: str, max_scale: int | None = None, out=None) -> bool:
    """Run one suite (or "all"), printing a pass/fail line per identity."""
    import sys

    out = out or sys.stdout
    if name == "all":
        fns = all_checks()
    elif name in SUITES:
        fns = SUITES[name]
    else:
        raise KeyError(f"unknown suite {name!r}")
    ok = True
    for fn in fns:
        result = fn(max_scale)
        print(result.line(), file=out)
        ok = ok and result.passed
    return ok
