"""Truncated multiple harmonic sums of general integer indices.

Exact and modular evaluation, reduction to positive indices, the generating
function of the values at non-positive integers, and a double-precision
check of the elimination identity on the two-sided analytic function.
"""
from .arith import (
    ModResidue,
    bernoulli,
    bernoulli_numbers,
    bernoulli_polynomial,
    faulhaber_closed,
    faulhaber_weights,
    mod_embed,
)
from .errors import (
    DenominatorCollision,
    DomainError,
    FMZVError,
    NotInvertible,
    OrderViolation,
    ParseError,
    PoleResidue,
    SizeGuard,
    TruncationTooSmall,
)
from .genfun import TruncSeries, extract_P, gr_closed_form, gr_recurrence, gr_series, integer_powersum_oracle
from .index import Combination, IndexInfo, Poly2, classify, format_index, parse_index
from .reduction import (
    ReductionTrace,
    evaluate_combination,
    evaluate_combination_exact,
    reduce,
    reduce_depth1,
    reduce_entry,
    reduce_full,
)
from .truncated import (
    TruncationRange,
    zeta_trunc_bruteforce,
    zeta_trunc_exact,
    zeta_trunc_mod,
)

__version__ = "0.1.0"
