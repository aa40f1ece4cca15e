"""Guess-and-verify discovery of pure recurrences from value tables.

The ansatz for axis j, order L and total coefficient degree D is

    sum_{i=0..L} c_i(n1..nd) * a(n - i*e_j) = 0,

with every c_i a polynomial of total degree <= D.  The unknown monomial
coefficients are solved exactly by nullspace_exact over a fitting set of
points near the origin, and any candidate must then reproduce a zero
residual at EVERY table point where all shifts are inside the box --
including a held-out margin beyond the fitting set.  A recurrence found
this way is verified evidence, not a proof, and is flagged as such
wherever it is reported.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import NoRecurrenceFound, TableTooSmall
from .linalg import modular_rank, nullspace_exact
from .oracle import ValueTable
from .poly import MPoly
from .recurrence import PureRec, index_vars, normalize_coeffs

# Extra fitting rows beyond the number of unknowns; makes spurious
# nullspace vectors from a barely-square system vanishingly unlikely.
_FIT_SLACK = 8


@dataclass(frozen=True)
class GuessConfig:
    """Search envelope: max order, max total coefficient degree, and the
    number of held-out verification points required for a hit."""

    max_order: int = 4
    max_degree: int = 3
    verify_margin: int = 16

    def __post_init__(self):
        if self.max_order < 1 or self.max_degree < 0:
            raise ValueError("need max_order >= 1 and max_degree >= 0")
        if self.verify_margin < 8:
            raise ValueError("verify_margin must be at least 8")


def _monomials(d: int, max_total: int) -> list[tuple[int, ...]]:
    """Exponent vectors of total degree <= max_total, in a fixed order."""
    out: list[tuple[int, ...]] = []

    def rec(prefix: tuple[int, ...], remaining: int, slots: int):
        if slots == 0:
            out.append(prefix)
            return
        for e in range(remaining + 1):
            rec(prefix + (e,), remaining - e, slots - 1)

    rec((), max_total, d)
    out.sort(key=lambda e: (sum(e), e))
    return out


def _usable_points(table: ValueTable, axis: int, order: int) -> list[tuple[int, ...]]:
    """Box points whose L shifts along the axis stay inside the box,
    ordered by coordinate sum then lexicographically (near-origin first)."""
    pts = [p for p in table.points() if p[axis - 1] >= order]
    pts.sort(key=lambda p: (sum(p), p))
    return pts


def _strip_leading_zero_coeffs(
    d: int, axis: int, coeffs: list[MPoly]
) -> list[MPoly] | None:
    """Re-index a relation whose first coefficient polynomials vanish.

    If c_0..c_{k-1} are identically zero the relation is really a pure
    recurrence of lower order for the shifted index; substituting
    n_axis -> n_axis + k makes c_k the new leading coefficient.  Returns
    None when every coefficient vanishes.
    """
    k = 0
    while k < len(coeffs) and coeffs[k].is_zero():
        k += 1
    if k == len(coeffs):
        return None
    if k == 0:
        out = list(coeffs)
    else:
        name = index_vars(d)[axis - 1]
        out = [c.shift(name, k) for c in coeffs[k:]]
    while len(out) > 1 and out[-1].is_zero():
        out.pop()
    return out


def guess_pure_rec(
    table: ValueTable,
    axis: int,
    order: int,
    degree: int,
    verify_margin: int = 16,
) -> PureRec | None:
    """Fit one (order, degree) ansatz against the table; None if no
    candidate survives exact verification on all usable points.

    Raises TableTooSmall when the table cannot supply
    (number of unknowns) + verify_margin usable points.
    """
    d = table.dimension
    if not 1 <= axis <= d:
        raise ValueError("axis out of range")
    if order < 1 or degree < 0:
        raise ValueError("need order >= 1 and degree >= 0")
    vs = index_vars(d)
    monos = _monomials(d, degree)
    unknowns = (order + 1) * len(monos)
    usable = _usable_points(table, axis, order)
    if len(usable) < unknowns + verify_margin:
        raise TableTooSmall(
            f"table-too-small: {len(usable)} usable points for "
            f"{unknowns} unknowns + margin {verify_margin}"
        )
    fit_count = min(unknowns + _FIT_SLACK, len(usable) - verify_margin)
    fit_points = usable[:fit_count]

    rows: list[list[Fraction]] = []
    for p in fit_points:
        mono_vals = [_mono_at(m, p) for m in monos]
        row: list[Fraction] = []
        for i in range(order + 1):
            shifted = list(p)
            shifted[axis - 1] -= i
            v = table[tuple(shifted)]
            row.extend(Fraction(mv * v) for mv in mono_vals)
        rows.append(row)

    # Cheap certified rejection: full column rank mod p means the exact
    # nullspace is trivial, so this (order, degree) cannot fit.
    rank = modular_rank(rows)
    if rank == unknowns:
        return None

    basis = nullspace_exact(rows)
    if not basis:
        return None

    candidates = []
    for vec in basis:
        coeffs = []
        for i in range(order + 1):
            chunk = vec[i * len(monos): (i + 1) * len(monos)]
            coeffs.append(
                MPoly.from_terms(vs, dict(zip(monos, chunk)))
            )
        stripped = _strip_leading_zero_coeffs(d, axis, coeffs)
        if stripped is None:
            continue
        norm = normalize_coeffs(stripped)
        support = sum(len(c.terms) for c in norm)
        key = tuple(
            (e, c) for poly in norm for e, c in poly.ordered_terms()
        )
        candidates.append((support, key, norm))
    candidates.sort(key=lambda t: (t[0], t[1]))

    for _, _, norm in candidates:
        rec = PureRec(d, axis, norm)
        if _verified_on_table(rec, table):
            return rec
    return None


def _mono_at(mono: tuple[int, ...], point: tuple[int, ...]) -> int:
    v = 1
    for e, p in zip(mono, point):
        if e:
            v *= p**e
    return v


def _verified_on_table(rec: PureRec, table: ValueTable) -> bool:
    for p in table.points():
        if p[rec.axis - 1] < rec.order:
            continue
        if rec.residual(p, table.__getitem__) != 0:
            return False
    return True


def envelope(cfg: GuessConfig) -> list[tuple[int, int]]:
    """(order, degree) pairs in search order: by order+degree, then order."""
    pairs = [
        (L, D)
        for L in range(1, cfg.max_order + 1)
        for D in range(0, cfg.max_degree + 1)
    ]
    pairs.sort(key=lambda t: (t[0] + t[1], t[0]))
    return pairs


def guess_search(table: ValueTable, axis: int, cfg: GuessConfig) -> PureRec:
    """First verified recurrence over the (order, degree) envelope.

    Deterministic given the table and config.  Raises TableTooSmall if
    some envelope point could not even be attempted (so a caller may grow
    the table and retry) and otherwise NoRecurrenceFound when the whole
    envelope yields nothing.
    """
    skipped_small = False
    for L, D in envelope(cfg):
        try:
            rec = guess_pure_rec(
                table, axis, L, D, verify_margin=cfg.verify_margin
            )
        except TableTooSmall:
            skipped_small = True
            continue
        if rec is not None:
            return rec
    if skipped_small:
        raise TableTooSmall(
            "table-too-small: envelope not exhausted at this table size"
        )
    raise NoRecurrenceFound(
        f"no-recurrence-found-within-bounds: order <= {cfg.max_order}, "
        f"degree <= {cfg.max_degree}"
    )


def guess_diag_rec(values: Sequence, cfg: GuessConfig) -> PureRec:
    """Univariate specialization: guess a recurrence for a plain sequence."""
    if not values:
        raise ValueError("empty sequence")
    table = ValueTable(
        (len(values) - 1,), {(i,): v for i, v in enumerate(values)}
    )
    return guess_search(table, 1, cfg)
