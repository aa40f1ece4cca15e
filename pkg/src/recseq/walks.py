"""Lattice-walk reports: recurrences, far values, diagonal sequence.

For a step set St the counting function F(a,b) (walks from the origin to
(a,b) using steps from St) has the rational generating function
1 / (1 - sum_s x1^s1 x2^s2).  The report pipeline:

1. build a DP count table, growing it if the guesser needs more data;
2. guess-and-verify one pure recurrence per axis and build a scheme;
3. evaluate F(K, 2K) through the scheme (a FAIL is recorded, not raised);
4. guess the diagonal recurrence, with a doubled verification margin, and
   evaluate F(2K, 2K) through it (never expected to hit a singularity --
   one would be a hard error);
5. keep the first 30 diagonal terms F(0,0) .. F(29,29).
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from fractions import Fraction

from .errors import EvalFail, TableTooSmall
from .guess import GuessConfig, guess_diag_rec, guess_search
from .oracle import StepSet, ValueTable, walk_dp
from .poly import MPoly
from .rat import digit_count
from .recurrence import PureRec
from .derive import safe_start
from .scheme import Scheme, build_scheme, eval_diag, eval_point, scheme_to_text

_WALK_VARS = ("x1", "x2")
DIAG_TERMS_REPORTED = 30


def gf_from_steps(st: StepSet) -> MPoly:
    """Denominator 1 - sum_s x1^s1 * x2^s2 of the counting function's
    generating function."""
    terms = {(0, 0): Fraction(1)}
    for s1, s2 in st.sorted_steps():
        terms[(s1, s2)] = terms.get((s1, s2), Fraction(0)) - 1
    return MPoly.from_terms(_WALK_VARS, terms)


@dataclass
class WalkReport:
    """Everything Walk2D-style analysis produces for one step set."""

    steps: StepSet
    scale: int                      # the K parameter
    gf_denominator: MPoly
    axis_recs: tuple[PureRec, PureRec]
    scheme: Scheme
    value_at_k_2k: int | None       # None means FAIL (singularity met)
    fail_detail: str | None
    diag_rec: PureRec
    value_at_2k_2k: int
    diag_terms: tuple[int, ...]     # F(0,0) .. F(29,29)

    def digit_counts(self) -> tuple[int | None, int]:
        def count(v):
            return 1 if v == 0 else digit_count(v)

        a = None if self.value_at_k_2k is None else count(self.value_at_k_2k)
        return a, count(self.value_at_2k_2k)


def _as_int(value) -> int:
    """Walk counts are integers; anything else is an internal error."""
    if isinstance(value, Fraction):
        if value.denominator != 1:
            raise AssertionError("non-integer walk count")
        return value.numerator
    return int(value)


def walk2d_report(
    st: StepSet,
    scale: int,
    cfg: GuessConfig | None = None,
    table_size: int = 60,
    table_cap: int = 960,
    guard_pad: int = 2,
) -> WalkReport:
    """Full walk analysis for one step set and scale parameter K >= 1.

    The fitting table starts at table_size x table_size and doubles while
    the guesser reports it is too small, up to table_cap.
    """
    if scale < 1:
        raise ValueError("K must be a positive integer")
    if cfg is None:
        cfg = GuessConfig(max_order=4, max_degree=2)

    size = table_size
    while True:
        table = walk_dp(st, (size, size))
        try:
            rec1 = guess_search(table, 1, cfg)
            rec2 = guess_search(table, 2, cfg)
            break
        except TableTooSmall:
            if 2 * size > table_cap:
                raise
            size *= 2

    scheme = build_scheme(
        [rec1, rec2],
        oracle=lambda box: walk_dp(st, box),
        guard_pad=guard_pad,
        provenance=("guessed", "guessed"),
    )

    value_k_2k: int | None
    fail_detail = None
    try:
        v, _ = eval_point(scheme, (scale, 2 * scale))
        value_k_2k = _as_int(v)
    except EvalFail as e:
        value_k_2k = None
        fail_detail = str(e)

    # Diagonal: guess with a doubled margin, growing the diagonal data the
    # same way the table grows.
    diag_cfg = GuessConfig(
        max_order=cfg.max_order,
        max_degree=cfg.max_degree,
        verify_margin=2 * cfg.verify_margin,
    )
    while True:
        diag_values = [table[(i, i)] for i in range(size + 1)]
        try:
            diag_rec = guess_diag_rec(diag_values, diag_cfg)
            break
        except TableTooSmall:
            if 2 * size > table_cap:
                raise
            size *= 2
            table = walk_dp(st, (size, size))

    n0 = safe_start(diag_rec).n0
    seed_len = diag_rec.order + n0
    value_2k_2k = _as_int(eval_diag(diag_rec, diag_values[:seed_len], 2 * scale))

    diag30 = tuple(diag_values[:DIAG_TERMS_REPORTED])
    return WalkReport(
        steps=st,
        scale=scale,
        gf_denominator=gf_from_steps(st),
        axis_recs=(rec1, rec2),
        scheme=scheme,
        value_at_k_2k=value_k_2k,
        fail_detail=fail_detail,
        diag_rec=diag_rec,
        value_at_2k_2k=value_2k_2k,
        diag_terms=diag30,
    )


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------

def _int_text(v: int, full: bool) -> str:
    """Decimal text of a (possibly huge) integer.

    With full=False, very large values are abbreviated to their first and
    last digits plus the exact digit count.
    """
    d = digit_count(v) if v else 1
    if full or d <= 40:
        if hasattr(sys, "set_int_max_str_digits") and d > 4000:
            sys.set_int_max_str_digits(d + 10)
        return str(v)
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(d + 10)
    s = str(abs(v))
    sign = "-" if v < 0 else ""
    return f"{sign}{s[:15]}...{s[-15:]} ({d} digits)"


def render_walk_report(report: WalkReport, full_values: bool = False) -> str:
    """Human-readable theorem-style text for the report."""
    st = report.steps
    K = report.scale
    lines = [
        f"Walks in the quarter plane with step set {st.render()}",
        "",
        "F(a,b) = number of paths from (0,0) to (a,b) using the step set.",
        f"Generating function: 1 / ({report.gf_denominator.render()})",
        "",
        "Pure recurrences, one per axis (guessed from a count table;",
        "verified on all table points, not proved):",
    ]
    for rec in report.axis_recs:
        lines.append(f"  axis {rec.axis} (order {rec.order}): {rec.render()}")
    lines.append("")
    a, b = report.digit_counts()
    if report.value_at_k_2k is None:
        lines.append(f"F({K},{2 * K}): FAIL ({report.fail_detail})")
    else:
        lines.append(f"F({K},{2 * K}) = {_int_text(report.value_at_k_2k, full_values)}")
        lines.append(f"  decimal digits: {a}")
    lines.append("")
    lines.append(
        f"Diagonal recurrence for a(n) = F(n,n) "
        f"(order {report.diag_rec.order}; guessed, verified, not proved):"
    )
    lines.append(f"  {report.diag_rec.render()}")
    lines.append(f"F({2 * K},{2 * K}) = {_int_text(report.value_at_2k_2k, full_values)}")
    lines.append(f"  decimal digits: {b}")
    lines.append("")
    lines.append(f"First {len(report.diag_terms)} diagonal terms F(0,0)..F({len(report.diag_terms) - 1},{len(report.diag_terms) - 1}):")
    lines.append(", ".join(str(v) for v in report.diag_terms))
    return "\n".join(lines) + "\n"


def render_walk_structured(report: WalkReport) -> str:
    """Structured text: metadata plus the full embedded scheme."""
    a, b = report.digit_counts()
    lines = [
        "walk-report 1",
        f"steps: {report.steps.render()}",
        f"scale: {report.scale}",
        f"gf-denominator: {report.gf_denominator.render()}",
        f"value-K-2K: {_int_text(report.value_at_k_2k, True) if report.value_at_k_2k is not None else 'FAIL'}",
        f"value-K-2K-digits: {a if a is not None else 'NA'}",
        f"diag-order: {report.diag_rec.order}",
        f"diag-recurrence: {report.diag_rec.render()}",
        f"value-2K-2K: {_int_text(report.value_at_2k_2k, True)}",
        f"value-2K-2K-digits: {b}",
        "diag-terms: " + " ".join(str(v) for v in report.diag_terms),
        "scheme:",
    ]
    return "\n".join(lines) + "\n" + scheme_to_text(report.scheme)
