"""Graded multiplicities of Demazure flags for the rank-one hyperspecial
twisted current algebra.

``mult(m', s, m, n)`` is the graded multiplicity of the level-m Demazure
module D(m, n) in a level-m flag of D(m', s): the polynomial in N[q]
whose q^p coefficient counts flag sections shifted p grades deep.  Two
independent engines compute it:

* the *level-step engine*: [D(m,s) : D(m+1,n)]_q from a closed monomial
  table for n <= m together with a three-term recursion for n > m,
  chained across intermediate levels by the composition rule
  [D(m',s) : D(m,n)]_q = sum_p [D(m',s) : D(l,p)]_q [D(l,p) : D(m,n)]_q;

* the *partition engine*: a two-case recursion on the staircase-partition
  modules V(xi) (which include every Demazure module), descending in a
  well-founded order and bottoming out in a rank-one closed formula.

Their agreement on a large grid is the package's master self-check; see
``demflag.verify``.

Concurrency: all functions are pure; the only shared state is the memo
table, whose entries are immutable values keyed by the query, so
concurrent use returns the same results as sequential use.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

from .errors import InvalidLevel, InvalidShape, MemoLimitExceeded
from .qpoly import QPoly

__all__ = [
    "Partition",
    "MultiplicityTable",
    "StrippedQuery",
    "mult_base",
    "mult_step",
    "mult",
    "mult_partition",
    "weighted_mult",
    "mult_table",
    "strip_head",
    "clear_caches",
    "memo_stats",
    "set_memo_enabled",
]

_ZERO = QPoly.zero()
_ONE = QPoly.one()


# ---------------------------------------------------------------------------
# memoization

class _Memo:
    """Shared memo table with an optional hard size cap.

    When DEMFLAG_MEMO_LIMIT is set and would be exceeded, insertion fails
    loudly instead of evicting, so capped runs never silently degrade.
    """

    __slots__ = ("data", "hits", "enabled", "limit")

    def __init__(self):
        self.data: dict = {}
        self.hits = 0
        self.enabled = True
        self.limit = self._env_limit()

    @staticmethod
    def _env_limit() -> int | None:
        raw = os.environ.get("DEMFLAG_MEMO_LIMIT")
        return int(raw) if raw else None

    def get(self, key):
        if not self.enabled:
            return None
        val = self.data.get(key)
        if val is not None:
            self.hits += 1
        return val

    def put(self, key, value):
        if not self.enabled:
            return value
        if self.limit is not None and key not in self.data and len(self.data) >= self.limit:
            raise MemoLimitExceeded(
                f"memo table reached DEMFLAG_MEMO_LIMIT={self.limit} entries"
            )
        self.data[key] = value
        return value


_MEMO = _Memo()


def clear_caches() -> None:
    """Empty the memo table and re-read DEMFLAG_MEMO_LIMIT."""
    global _MEMO
    _MEMO = _Memo()


def memo_stats() -> dict:
    return {"entries": len(_MEMO.data), "hits": _MEMO.hits, "enabled": _MEMO.enabled}


def set_memo_enabled(flag: bool) -> None:
    _MEMO.enabled = bool(flag)


# ---------------------------------------------------------------------------
# partitions

class Partition:
    """A staircase partition (xi_0 >= xi_1 >= ... >= xi_l > 0).

    Below the head xi_0 the parts may take at most two adjacent values:
    (xi+1) repeated l-1-p times, then xi repeated p times, then a tail
    0 < xi_l <= xi.  ``V(xi)`` denotes the corresponding cyclic module;
    the Demazure module D(m, n) is the special case of head value m, see
    :meth:`for_demazure`.  A single-part partition is the degenerate case
    of the trivial (one-dimensional) module.
    """

    __slots__ = ("parts",)

    def __init__(self, parts: Iterable[int]):
        ps = tuple(int(p) for p in parts)
        if not ps:
            raise InvalidShape("empty partition")
        if any(p <= 0 for p in ps):
            raise InvalidShape(f"parts must be positive: {ps}")
        if any(ps[i] < ps[i + 1] for i in range(len(ps) - 1)):
            raise InvalidShape(f"parts must be non-increasing: {ps}")
        if len(ps) >= 3 and ps[1] - ps[-2] > 1:
            raise InvalidShape(
                f"middle parts of {ps} spread over more than two adjacent values"
            )
        self.parts = ps

    @classmethod
    def for_demazure(cls, m: int, s: int) -> Partition:
        """The partition with V(xi) = D(m, s): head value m repeated, tail s mod m.

        For s = 0 this degenerates to the single part (m,), the trivial
        module.
        """
        if m < 1:
            raise InvalidLevel(f"level must be >= 1, got {m}")
        if s < 0:
            raise ValueError("weight must be >= 0")
        if s == 0:
            return cls((m,))
        n0 = (s - 1) % m + 1
        n1 = (s - n0) // m
        return cls((m,) * (n1 + 1) + (n0,))

    @property
    def ell(self) -> int:
        """Number of parts below the head."""
        return len(self.parts) - 1

    @property
    def xi0(self) -> int:
        return self.parts[0]

    @property
    def tail(self) -> int:
        return self.parts[-1]

    @property
    def xi(self) -> int:
        """The repeated middle value (the part just above the tail)."""
        return self.parts[-2] if len(self.parts) >= 2 else self.parts[0]

    @property
    def p(self) -> int:
        """How many middle parts equal ``xi``."""
        if len(self.parts) < 3:
            return 0
        v = self.parts[-2]
        return sum(1 for x in self.parts[1:-1] if x == v)

    @property
    def size(self) -> int:
        """The weight carried by the partition: the sum of all parts below the head."""
        return sum(self.parts[1:])

    def canonical(self) -> tuple[int, ...]:
        return _canonical_parts(self.parts)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        return self.parts == other.parts

    def __hash__(self) -> int:
        return hash(self.parts)

    def __repr__(self) -> str:
        return f"Partition{self.parts}"


def _canonical_parts(parts: tuple[int, ...]) -> tuple[int, ...]:
    """Drop zero tail parts and re-point the head at the first middle part.

    The module does not depend on the head once there are middle parts,
    so canonicalising the head makes equal queries share a memo key.
    """
    ps = list(parts)
    while ps and ps[-1] == 0:
        ps.pop()
    if len(ps) >= 3:
        ps[0] = ps[1]
    return tuple(ps)


# ---------------------------------------------------------------------------
# rank-one base case

def mult_base(xi0: int, xi1: int, m: int, s: int) -> QPoly:
    """[D(xi0, xi1) : D(m, s)]_q for the two-row module, m >= xi0.

    The flag of D(xi0, xi1) by level-m modules has exactly one section in
    each admissible grade: the value is q^(xi1-s) when s = xi1 or when
    (2*xi1 - m)_+ < xi1 - s <= (2*xi1 - xi0)_+, and 0 otherwise
    (in particular for every s < 0 and s > xi1).
    """
    if not 0 <= xi1 <= xi0:
        raise InvalidShape(f"need 0 <= xi1 <= xi0, got ({xi0}, {xi1})")
    if m < xi0:
        raise InvalidLevel(f"flag level {m} below module level {xi0}")
    if s == xi1:
        return _ONE
    d = xi1 - s
    if max(0, 2 * xi1 - m) < d <= max(0, 2 * xi1 - xi0):
        return QPoly.q(d)
    return _ZERO


# ---------------------------------------------------------------------------
# level-step engine

def _step_table(m: int, s: int, n: int) -> QPoly:
    """Closed value of [D(m, mj+k) : D(m+1, n)]_q for 0 <= n <= m, s >= n.

    Writing s = mj + k with 0 <= k < m, the multiplicity is the single
    monomial q^(j(mj+2k)) if n = k, q^((j+1)(mj+2k-m)) if n = m-k, and 0
    otherwise.  (The two branches agree when both apply.)
    """
    j, k = divmod(s, m)
    if n == k:
        return QPoly.q(j * (m * j + 2 * k))
    if n == m - k:
        return QPoly.q((j + 1) * (m * j + 2 * k - m))
    return _ZERO


def _k_step(m: int, s1: int, s0: int) -> int:
    """Length of the extra sum in the 2*s0 > m recursion case.

    This is the staircase invariant of ((m+1), m^s1, s0): 2 when
    2*s0 - m >= 3 and s1 = 1; 1 when 2*s0 - m = 2 or (>= 3 with s1 > 1);
    0 when 2*s0 - m = 1; -1 otherwise (empty sum).
    """
    d = 2 * s0 - m
    if d >= 3:
        return 2 if s1 == 1 else 1
    if d == 2:
        return 1
    if d == 1:
        return 0
    return -1


def mult_step(m: int, s: int, n: int) -> QPoly:
    """[D(m, s) : D(m+1, n)]_q, one level up.

    For n <= m the closed table applies directly; for n > m the value is
    assembled by the three-term recursion on s = m*s1 + s0 (0 < s0 <= m),
    which splits on 2*s0 versus m.  Total on integers with m >= 1:
    negative n and s < n simply give 0.
    """
    if m < 1:
        raise InvalidLevel(f"level must be >= 1, got {m}")
    if n < 0 or s < n:
        return _ZERO
    if n <= m:
        return _step_table(m, s, n)
    key = ("step", m, s, n)
    cached = _MEMO.get(key)
    if cached is not None:
        return cached
    s1, s0 = divmod(s - 1, m)
    s0 += 1
    if 2 * s0 <= m:
        val = (
            mult_step(m, s - m - 1, n - m - 1).shifted(2 * (s - n))
            + mult_step(m, s - 2 * s0, n).shifted(4 * s1 * s0)
        )
    else:
        val = (
            mult_step(m, s - m - 1, n - m - 1).shifted(2 * (s - n))
            + mult_step(m, s + m - 2 * s0, n).shifted((2 * s1 + 1) * (2 * s0 - m))
        )
        for j in range(1, _k_step(m, s1, s0) + 1):
            val = val + mult_step(m, s - 2 * s0 + j - 1, n - m - 1).shifted(
                2 * s1 * (2 * s0 - j) + j + m - 2 * n
            )
    return _MEMO.put(key, val)


def mult(m_from: int, s: int, m_to: int, n: int) -> QPoly:
    """[D(m_from, s) : D(m_to, n)]_q via the chained level-step engine.

    Equal levels give the Kronecker delta; otherwise the composition rule
    sums over the weight p of the intermediate level, which only
    contributes for n <= p <= s.
    """
    if m_from < 1:
        raise InvalidLevel(f"level must be >= 1, got {m_from}")
    if m_to < m_from:
        raise InvalidLevel(f"target level {m_to} below source level {m_from}")
    if n < 0 or s < n:
        return _ZERO
    if m_to == m_from:
        return _ONE if n == s else _ZERO
    if m_to == m_from + 1:
        return mult_step(m_from, s, n)
    key = ("chain", m_from, s, m_to, n)
    cached = _MEMO.get(key)
    if cached is not None:
        return cached
    acc = _ZERO
    for p in range(n, s + 1):
        left = mult_step(m_from, s, p)
        if not left.is_zero():
            acc = acc + left * mult(m_from + 1, p, m_to, n)
    return _MEMO.put(key, acc)


def weighted_mult(m_from: int, s: int, m_to: int, n: int) -> tuple[int, QPoly]:
    """The weighted multiplicity: ``mult`` with its lowest q-power split off."""
    return mult(m_from, s, m_to, n).weight_split()


@dataclass
class MultiplicityTable:
    """All multiplicities [D(m_from, s) : D(m_to, n)]_q for 0 <= n <= s <= s_max."""

    m_from: int
    m_to: int
    rows: dict[tuple[int, int], QPoly] = field(default_factory=dict)

    def entry(self, s: int, n: int) -> QPoly:
        return self.rows.get((s, n), _ZERO)


def mult_table(m_from: int, m_to: int, s_max: int) -> MultiplicityTable:
    if s_max < 0:
        raise ValueError("s_max must be >= 0")
    table = MultiplicityTable(m_from, m_to)
    for s in range(s_max + 1):
        for n in range(s + 1):
            table.rows[(s, n)] = mult(m_from, s, m_to, n)
    return table


# ---------------------------------------------------------------------------
# partition engine

def _k_invariant(d: int, p: int) -> int:
    """The four-valued staircase invariant on (d = 2*tail - xi, p)."""
    if d >= 3:
        return 2 if p == 1 else 1
    if d == 2:
        return 1
    if d == 1:
        return 0
    return -1


def mult_partition(xi: Partition | Iterable[int], m: int, n: int) -> QPoly:
    """[V(xi) : D(m, n)]_q by the partition recursion, m >= head of xi.

    The recursion peels the tail of the partition, expressing the
    multiplicity through strictly smaller partitions (shorter, or smaller
    in the right-to-left lexicographic order) with explicit q-shifts; the
    two-row base case is :func:`mult_base`.  When the partition is the
    Demazure shape of its own level m the answer is the Kronecker delta
    at the partition weight.
    """
    part = xi if isinstance(xi, Partition) else Partition(xi)
    if m < 1:
        raise InvalidLevel(f"level must be >= 1, got {m}")
    return _vmult(part.canonical(), m, n)


def _vmult(parts: tuple[int, ...], m: int, n: int) -> QPoly:
    # parts is canonical and non-empty
    if n < 0:
        return _ZERO
    if len(parts) == 1:
        return _ONE if n == 0 else _ZERO
    if len(parts) == 2:
        return mult_base(parts[0], parts[1], m, n)

    key = ("part", parts, m, n)
    cached = _MEMO.get(key)
    if cached is not None:
        return cached

    ell = len(parts) - 1
    xi = parts[-2]
    tail = parts[-1]
    p = sum(1 for x in parts[1:-1] if x == xi)

    if parts[1] == xi:
        # every middle part equals xi: this is the Demazure shape of level xi
        if m == xi:
            return _MEMO.put(key, _ONE if n == sum(parts[1:]) else _ZERO)
        if m < xi:
            raise InvalidLevel(f"flag level {m} below partition head {xi}")
    elif m < xi + 1:
        raise InvalidLevel(f"flag level {m} below partition head {xi + 1}")

    # descent order: length first, then right-to-left lexicographic
    src_key = (len(parts), parts[::-1])

    def branch(raw: tuple[int, ...], shift: int) -> QPoly:
        image = _canonical_parts(raw)
        if not image:
            val = _ONE if n == 0 else _ZERO
        else:
            if (len(image), image[::-1]) >= src_key:
                raise RuntimeError(
                    f"partition recursion failed to descend: {parts} -> {image}"
                )
            val = _vmult(image, m, n)
        return val.shifted(shift)

    def xi_j(j: int) -> tuple[int, ...]:
        high = ell - p + 1 - (1 if j == 0 else 0) - (1 if j == -1 else 0)
        mid = p - 1 + (1 if j == 0 else 0)
        return (xi + 1,) * high + (xi,) * mid + (xi - tail + (1 if j == 2 else 0),)

    xiplus = (xi + 1,) * (ell - p + 1) + (xi,) * (p - 1) + (tail - 1,)
    acc = branch(xiplus, 0)

    if 2 * tail > xi:
        for j in range(_k_invariant(2 * tail - xi, p) + 1):
            acc = acc + branch(xi_j(j), (2 * ell - 1) * (2 * tail - xi - j))
        if tail == xi and p in (1, 2):
            acc = acc + branch(
                (xi + 1,) * (ell - 1),
                4 * tail * (ell - 1) - (p - 1) * (2 * ell - 1),
            )
    else:
        acc = acc + branch(xi_j(-1), 4 * tail * (ell - 1))
        if 2 * tail != xi and p == 1:
            acc = acc + branch(
                (xi + 1,) * (ell - 1) + (tail,), (2 * ell - 3) * xi + 2 * tail
            )
        if tail == 1 and p == 2:
            acc = acc + branch((xi + 1,) * (ell - 1), (2 * ell - 3) * xi)

    return _MEMO.put(key, acc)


# ---------------------------------------------------------------------------
# head stripping

class StrippedQuery(NamedTuple):
    """A head-stripped multiplicity query: q^shift * [V(parts) : D(level, target)]."""

    shift: int
    parts: tuple[int, ...]
    level: int
    target: int


def strip_head(xi: Partition | Iterable[int], s: int) -> StrippedQuery:
    """Rewrite [V(xi) : D(xi0, s)]_q with the head removed.

    The multiplicity equals q^(2(|xi| - s)) * [V(xi-bar) : D(xi0, s - xi0)]_q
    where xi-bar drops the head part.  This is a consistency identity
    only; the main computation path does not use it.
    """
    part = xi if isinstance(xi, Partition) else Partition(xi)
    if part.ell <= 1:
        raise InvalidShape("head stripping needs at least two parts below the head")
    shift = 2 * (part.size - s)
    return StrippedQuery(shift, part.parts[1:], part.parts[0], s - part.parts[0])
