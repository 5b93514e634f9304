"""demflag: exact graded multiplicities of Demazure flags and their q-series.

The package computes, in exact integer arithmetic, the polynomials
[D(m', s) : D(m, n)]_q counting grade-shifted level-m Demazure modules in
a flag of a level-m' module over the rank-one hyperspecial twisted
current algebra, together with every closed form attached to them:
q-binomial formulas, Carlitz q-Fibonacci polynomials, fifth-order mock
theta functions, basic hypergeometric truncations, and the rational
generating functions of the numerical (q = 1) multiplicities.
"""

from .characters import (
    GradedCharacter,
    char_product_D11,
    dim_demazure,
    graded_character,
    level_one_step_decomp,
    sl2_irreducible_char,
    ungraded_char,
)
from .closed_forms import (
    carlitz_S,
    cf_1to2,
    cf_2to3,
    closed_A0_1to3,
    gen_binomial_series,
    hyp_limit_term_2to3,
    hypergeom_rphis,
    hypergeom_terms,
    mock_theta,
    phi_1to2,
    poch_x,
    res2,
)
from .errors import (
    InexactDivision,
    InvalidLevel,
    InvalidShape,
    MemoLimitExceeded,
    NonUnitConstantTerm,
)
from .flag_engine import (
    MultiplicityTable,
    Partition,
    StrippedQuery,
    clear_caches,
    memo_stats,
    mult,
    mult_base,
    mult_partition,
    mult_step,
    mult_table,
    set_memo_enabled,
    strip_head,
    weighted_mult,
)
from .gen_series import (
    DEFAULT_X_ORDER,
    KMatrix,
    SeriesSpec,
    a_poly,
    build_K,
    carlitz_closed_A23w,
    chebyshev_P,
    check_elltheorem,
    check_genserrec,
    closed_A_1m,
    closed_A_m_m1,
    d_poly,
    ratfun_expand,
    series_A,
    series_q1,
)
from .qpoly import QPoly, RatFunX, XPoly, XSeriesQ, q_binomial, q_pochhammer

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_X_ORDER",
    "GradedCharacter",
    "InexactDivision",
    "InvalidLevel",
    "InvalidShape",
    "KMatrix",
    "MemoLimitExceeded",
    "MultiplicityTable",
    "NonUnitConstantTerm",
    "Partition",
    "QPoly",
    "RatFunX",
    "SeriesSpec",
    "StrippedQuery",
    "XPoly",
    "XSeriesQ",
    "a_poly",
    "build_K",
    "carlitz_S",
    "carlitz_closed_A23w",
    "cf_1to2",
    "cf_2to3",
    "char_product_D11",
    "chebyshev_P",
    "check_elltheorem",
    "check_genserrec",
    "clear_caches",
    "closed_A0_1to3",
    "closed_A_1m",
    "closed_A_m_m1",
    "d_poly",
    "dim_demazure",
    "gen_binomial_series",
    "graded_character",
    "hyp_limit_term_2to3",
    "hypergeom_rphis",
    "hypergeom_terms",
    "level_one_step_decomp",
    "memo_stats",
    "mock_theta",
    "mult",
    "mult_base",
    "mult_partition",
    "mult_step",
    "mult_table",
    "phi_1to2",
    "poch_x",
    "q_binomial",
    "q_pochhammer",
    "ratfun_expand",
    "res2",
    "series_A",
    "series_q1",
    "set_memo_enabled",
    "sl2_irreducible_char",
    "strip_head",
    "ungraded_char",
    "weighted_mult",
]
