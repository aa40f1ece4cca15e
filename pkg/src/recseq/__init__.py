"""recseq: exact linear recurrences for sequences and lattice walks.

Derives (one variable) or discovers (several variables) pure linear
recurrences with polynomial coefficients for the expansion coefficients
of hyperexponential functions and for lattice-walk counts, then evaluates
any requested term far from the origin in linear time with a constant-size
sliding window of exact big integers/rationals.
"""

from .errors import (
    DegenerateLeadingCoefficient,
    EvalFail,
    InconsistentRecurrence,
    NoRecurrenceFound,
    NonRationalLeadingValue,
    ParseError,
    RecseqError,
    SingularAtOrigin,
    TableTooSmall,
    UnexpectedSingularity,
)
from .rat import Rat, digit_count, rat_canon, rational_pow
from .poly import MPoly, Poly, RatFn, poly_gcd
from .linalg import nullspace_exact
from .oracle import (
    HyperexpSpec,
    SeriesTrunc,
    StepSet,
    ValueTable,
    check_algebraic,
    mseries_from_spec,
    series_from_spec,
    walk_diagonal,
    walk_dp,
    walk_value,
)
from .recurrence import PureRec, index_vars, render_theorem
from .derive import SafeStart, logderiv, ode_to_rec, safe_start
from .guess import GuessConfig, guess_diag_rec, guess_pure_rec, guess_search
from .scheme import (
    EvalStats,
    Scheme,
    build_scheme,
    eval_diag,
    eval_point,
    read_scheme,
    scheme_from_text,
    scheme_to_text,
    write_scheme,
)
from .walks import (
    WalkReport,
    gf_from_steps,
    render_walk_report,
    render_walk_structured,
    walk2d_report,
)
from .parse import parse_hyperexp, parse_mpoly, parse_steps

__version__ = "0.1.0"

__all__ = [
    "DegenerateLeadingCoefficient", "EvalFail", "InconsistentRecurrence",
    "NoRecurrenceFound", "NonRationalLeadingValue", "ParseError",
    "RecseqError", "SingularAtOrigin", "TableTooSmall",
    "UnexpectedSingularity",
    "Rat", "digit_count", "rat_canon", "rational_pow",
    "MPoly", "Poly", "RatFn", "poly_gcd", "nullspace_exact",
    "HyperexpSpec", "SeriesTrunc", "StepSet", "ValueTable",
    "check_algebraic", "mseries_from_spec", "series_from_spec",
    "walk_diagonal", "walk_dp", "walk_value",
    "PureRec", "index_vars", "render_theorem",
    "SafeStart", "logderiv", "ode_to_rec", "safe_start",
    "GuessConfig", "guess_diag_rec", "guess_pure_rec", "guess_search",
    "EvalStats", "Scheme", "build_scheme", "eval_diag", "eval_point",
    "read_scheme", "scheme_from_text", "scheme_to_text", "write_scheme",
    "WalkReport", "gf_from_steps", "render_walk_report",
    "render_walk_structured", "walk2d_report",
    "parse_hyperexp", "parse_mpoly", "parse_steps",
]
