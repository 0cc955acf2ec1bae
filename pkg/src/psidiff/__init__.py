"""Exact irrationality-measure computations for pairs of quadratic irrationals."""

from .contfrac import (
    CFExpansion,
    Convergent,
    continuant,
    convergents,
    denominators_up_to,
    expand_quadratic,
    is_nonintegral_sum_and_diff,
    rational_to_cf,
    tail,
)
from .exact import (
    Comparison,
    Interval,
    PHI,
    QuadExt,
    Rat,
    SQRT5,
    TAU,
    const,
    refine_compare,
    render_decimal,
    sqrt_interval,
)
from .imf import (
    BreakpointProfile,
    DValue,
    Letter,
    MergedWord,
    PsiValue,
    breakpoint_profile,
    convergent_distance,
    d_at,
    inv_psi,
    merged_word,
    profile_to_csv,
    psi,
    sign_changes,
)
from .numspec import parse_number, parse_surd
from .theorems import (
    DichotomyBranch,
    GapCertificate,
    NearOptimalityReport,
    OptimalPair,
    Witness,
    binet_fib,
    check_dichotomy,
    construct_optimal,
    find_witness,
    scan_dichotomy,
    scan_interleave_gap,
    scan_lemma_conseq,
    scan_lemma_conseq1,
    verify_near_optimality,
)

__version__ = "0.1.0"

__all__ = [
    "BreakpointProfile",
    "CFExpansion",
    "Comparison",
    "Convergent",
    "DValue",
    "DichotomyBranch",
    "GapCertificate",
    "Interval",
    "Letter",
    "MergedWord",
    "NearOptimalityReport",
    "OptimalPair",
    "PHI",
    "PsiValue",
    "QuadExt",
    "Rat",
    "SQRT5",
    "TAU",
    "Witness",
    "binet_fib",
    "breakpoint_profile",
    "check_dichotomy",
    "const",
    "construct_optimal",
    "continuant",
    "convergent_distance",
    "convergents",
    "d_at",
    "denominators_up_to",
    "expand_quadratic",
    "find_witness",
    "inv_psi",
    "is_nonintegral_sum_and_diff",
    "merged_word",
    "parse_number",
    "parse_surd",
    "profile_to_csv",
    "psi",
    "rational_to_cf",
    "refine_compare",
    "render_decimal",
    "scan_dichotomy",
    "scan_interleave_gap",
    "scan_lemma_conseq",
    "scan_lemma_conseq1",
    "sign_changes",
    "sqrt_interval",
    "tail",
    "verify_near_optimality",
]
