"""Graded sl2-characters and dimensions of the Demazure modules D(m, n).

A ``GradedCharacter`` is the finite multiset of irreducible components
V(j) sitting at integer grades: a map (j, grade) -> multiplicity.  The
two-row module D(xi0, xi1) decomposes explicitly into one component per
grade (``level_one_step_decomp``); characters of general D(m, n) are
assembled from any flag at a level >= max(m, n), where every section is
a two-row module.  The assembly is validated by its own invariants:
independence of the assembling level, and the dimension formula
``dim_demazure``.
"""

from __future__ import annotations

from .errors import InvalidLevel, InvalidShape
from .flag_engine import mult
from .qpoly import QPoly

__all__ = [
    "GradedCharacter",
    "level_one_step_decomp",
    "dim_demazure",
    "graded_character",
    "char_product_D11",
    "ungraded_char",
    "sl2_irreducible_char",
]


class GradedCharacter:
    """Finite multiset {(sl2 highest weight j, grade p) -> multiplicity}.

    Grades are relative: the cyclic top sits at grade 0 and a flag
    section counted by q^p contributes p grades deeper.
    """

    __slots__ = ("entries",)

    def __init__(self, entries: dict[tuple[int, int], int] | None = None):
        self.entries: dict[tuple[int, int], int] = {
            k: v for k, v in (entries or {}).items() if v != 0
        }
        if any(v < 0 for v in self.entries.values()):
            raise ValueError("character multiplicities must be >= 0")

    def shifted(self, p: int) -> GradedCharacter:
        return GradedCharacter({(j, g + p): v for (j, g), v in self.entries.items()})

    def scaled(self, c: int) -> GradedCharacter:
        return GradedCharacter({k: c * v for k, v in self.entries.items()})

    def __add__(self, other: GradedCharacter) -> GradedCharacter:
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out.get(k, 0) + v
        return GradedCharacter(out)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GradedCharacter):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self) -> int:
        return hash(frozenset(self.entries.items()))

    def total_dimension(self) -> int:
        return sum((j + 1) * v for (j, _), v in self.entries.items())

    def sorted_entries(self) -> list[tuple[int, int, int]]:
        """(j, grade, multiplicity) triples, by grade then descending weight."""
        return sorted(
            ((j, g, v) for (j, g), v in self.entries.items()),
            key=lambda t: (t[1], -t[0]),
        )

    def ungraded(self) -> QPoly:
        """Forget grades: the sl2 weight-multiset as a Laurent polynomial."""
        acc = QPoly.zero()
        for (j, _), v in self.entries.items():
            acc = acc + sl2_irreducible_char(j) * v
        return acc

    def __repr__(self) -> str:
        inner = " ".join(f"({j},{g},{v})" for j, g, v in self.sorted_entries())
        return f"GradedCharacter[{inner}]"


def sl2_irreducible_char(j: int) -> QPoly:
    """Character of the (j+1)-dimensional irreducible: z^j + z^(j-2) + ... + z^(-j).

    (The Laurent variable doubles as the sl2 weight variable here.)
    """
    if j < 0:
        raise ValueError("highest weight must be >= 0")
    return QPoly({j - 2 * i: 1 for i in range(j + 1)})


def level_one_step_decomp(xi0: int, xi1: int) -> GradedCharacter:
    """Graded decomposition of the two-row module D(xi0, xi1).

    The component V(xi1 - i) sits at grade i for i = 0 .. (2 xi1 - xi0)_+;
    the module is irreducible exactly when 2 xi1 <= xi0.
    """
    if xi1 < 0 or xi1 > xi0:
        raise InvalidShape(f"need 0 <= xi1 <= xi0, got ({xi0}, {xi1})")
    top = max(0, 2 * xi1 - xi0)
    return GradedCharacter({(xi1 - i, i): 1 for i in range(top + 1)})


def dim_demazure(m: int, n: int) -> int:
    """Dimension of D(m, n).

    D(m, n) factors (as an sl2 module) into n1 copies of D(m, m) and one
    D(m, n0), where n = n1 m + n0 with 0 < n0 <= m; hence the dimension
    is ((m+1)(m+2)/2)^n1 * ((n0+1) + (2 n0 - m)_+ (m+1) / 2).  D(m, 0) is
    the trivial module.
    """
    if m < 1:
        raise InvalidLevel("level must be >= 1")
    if n < 0:
        raise ValueError("weight must be >= 0")
    if n == 0:
        return 1
    n0 = (n - 1) % m + 1
    n1 = (n - n0) // m
    top = ((m + 1) * (m + 2)) // 2
    return top**n1 * ((n0 + 1) + max(0, 2 * n0 - m) * (m + 1) // 2)


def graded_character(m: int, n: int, via_level: int | None = None) -> GradedCharacter:
    """ch_gr D(m, n), assembled through a flag at ``via_level``.

    Every section D(via_level, t) of the flag has t <= n <= via_level, so
    the two-row decomposition applies to each; a section counted by q^p
    contributes its character shifted p grades deeper.  The result must
    not depend on via_level (default: max(m, n)); that independence and
    the dimension formula are the correctness checks.
    """
    if via_level is None:
        via_level = max(m, n)
    if via_level < max(m, n):
        raise InvalidLevel(f"via level {via_level} below max({m}, {n})")
    acc = GradedCharacter()
    for t in range(n + 1):
        poly = mult(m, n, via_level, t)
        if poly.is_zero():
            continue
        section = level_one_step_decomp(via_level, t)
        for p, c in poly.terms():
            acc = acc + section.shifted(p).scaled(c)
    return acc


def char_product_D11(m: int, p: int) -> list[tuple[int, int]]:
    """The product rule for tensoring with the three-dimensional D(1, 1).

    Returns the signed combination of level-m weights whose (ungraded)
    characters sum to ch D(m, p) * ch D(1, 1): always D(m, p+1), plus for
    m > 1 and p > 0 the correction terms
    (1 - [2p0 = m] - [2p0 = m+1] - [p0 = m]) D(m, p-1) and
    (1 - [2p0 = m] - [2p0 = m-1]) D(m, p), where p = m p1 + p0 with
    0 < p0 <= m.  Zero coefficients are dropped.
    """
    if m < 1:
        raise InvalidLevel("level must be >= 1")
    if p < 0:
        raise ValueError("weight must be >= 0")
    out = [(p + 1, 1)]
    if m > 1 and p > 0:
        p0 = (p - 1) % m + 1
        c_minus = 1 - (2 * p0 == m) - (2 * p0 == m + 1) - (p0 == m)
        c_same = 1 - (2 * p0 == m) - (2 * p0 == m - 1)
        if c_minus:
            out.append((p - 1, c_minus))
        if c_same:
            out.append((p, c_same))
    return out


def ungraded_char(m: int, p: int) -> QPoly:
    """Ungraded sl2 character of D(m, p) via the two-row tensor factorisation.

    ch D(m, p) = ch D(m, m)^p1 * ch D(m, p0) with p = m p1 + p0,
    0 < p0 <= m; D(m, 0) is trivial.
    """
    if m < 1:
        raise InvalidLevel("level must be >= 1")
    if p < 0:
        raise ValueError("weight must be >= 0")
    if p == 0:
        return QPoly.one()
    p0 = (p - 1) % m + 1
    p1 = (p - p0) // m
    return level_one_step_decomp(m, m).ungraded() ** p1 * level_one_step_decomp(
        m, p0
    ).ungraded()
