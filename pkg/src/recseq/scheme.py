"""Evaluation schemes: per-axis recurrences + seed box + guards.

To evaluate a(target) the evaluator climbs one axis at a time: pick the
axis (by the active permutation) whose coordinate exceeds the seed box,
slide a window of the last L values along that axis from the seed region
up to the target coordinate, and resolve each of the L window seeds
recursively in one dimension less.  Work is linear in the sum of the
target coordinates and the window per climb never holds more than L + 1
values; resolved sub-points are memoized per call and discarded.

Whenever a leading coefficient evaluates to zero at a concrete point the
current axis order is abandoned and the next permutation is tried; if all
d! orders hit a zero the evaluation fails (EvalFail), deterministically.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .derive import safe_start
from .errors import EvalFail, InconsistentRecurrence, UnexpectedSingularity
from .oracle import ValueTable
from .poly import Poly
from .recurrence import PureRec, index_vars
from . import parse as _parse


@dataclass
class EvalStats:
    """Instrumentation for one evaluation."""

    steps_taken: int = 0   # recurrence applications
    max_window: int = 0    # peak values retained during any one climb
    reroutes: int = 0      # axis permutations tried before the one that worked


@dataclass
class Scheme:
    """Everything needed to evaluate any lattice point of the sequence."""

    dimension: int
    recs: tuple[PureRec, ...]
    guards: tuple[int, ...]
    init_box: ValueTable
    provenance: tuple[str, ...]

    def __post_init__(self):
        d = self.dimension
        self.recs = tuple(self.recs)
        self.guards = tuple(int(g) for g in self.guards)
        self.provenance = tuple(self.provenance)
        if len(self.recs) != d or len(self.guards) != d or len(self.provenance) != d:
            raise ValueError("need exactly one recurrence/guard/provenance per axis")
        for j, rec in enumerate(self.recs, start=1):
            if rec.dimension != d or rec.axis != j:
                raise ValueError(f"recurrence for axis {j} has wrong axis/dimension")
        if self.init_box.dimension != d:
            raise ValueError("seed box dimension mismatch")
        for j in range(d):
            if self.init_box.box[j] < self.guards[j] + self.recs[j].order:
                raise ValueError("seed box too small for guard + order")

    def orders(self) -> tuple[int, ...]:
        return tuple(rec.order for rec in self.recs)


class _LeadingZero(Exception):
    """Internal: a leading coefficient vanished at a concrete point."""

    def __init__(self, point, axis):
        self.point = tuple(point)
        self.axis = axis
        super().__init__(f"leading coefficient zero at {self.point} (axis {axis})")


def _poly_int_coeffs(p: Poly) -> list[int] | None:
    """Coefficients as ints if they all are, else None."""
    out = []
    for c in p.coeffs:
        if c.denominator != 1:
            return None
        out.append(c.numerator)
    return out


def _horner_int(coeffs: list[int], x: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _climb(
    rec: PureRec,
    fixed_point: Sequence[int],
    t_start: int,
    seeds: list,
    t_target: int,
    stats: EvalStats,
):
    """Slide the recurrence along its axis from t_start up to t_target.

    ``seeds`` are the values at axis coordinates t_start - L .. t_start - 1
    (other coordinates as in fixed_point).  Uses plain integer arithmetic
    while every value stays integral, falling back to Fractions the moment
    a division is inexact.
    """
    L = rec.order
    specialized = rec.specialize(fixed_point)
    stats.max_window = max(stats.max_window, L + 1)
    int_coeffs = [_poly_int_coeffs(p) for p in specialized]
    int_mode = all(ic is not None for ic in int_coeffs) and all(
        isinstance(v, int) or (isinstance(v, Fraction) and v.denominator == 1)
        for v in seeds
    )
    if int_mode:
        window = [int(v) for v in seeds]
    else:
        window = [Fraction(v) for v in seeds]

    t = t_start
    while t <= t_target:
        if int_mode:
            c0 = _horner_int(int_coeffs[0], t)
            if c0 == 0:
                raise _LeadingZero(_with_axis(fixed_point, rec.axis, t), rec.axis)
            s = 0
            for i in range(1, L + 1):
                ci = _horner_int(int_coeffs[i], t)
                if ci:
                    s += ci * window[L - i]
            q, r = divmod(-s, c0)
            if r == 0:
                new = q
            else:
                int_mode = False
                window = [Fraction(v) for v in window]
                new = Fraction(-s, c0)
        else:
            c0 = specialized[0].eval_at(t)
            if c0 == 0:
                raise _LeadingZero(_with_axis(fixed_point, rec.axis, t), rec.axis)
            s = Fraction(0)
            for i in range(1, L + 1):
                ci = specialized[i].eval_at(t)
                if ci:
                    s += ci * window[L - i]
            new = -s / c0
        if L:
            window.append(new)
            window.pop(0)
        else:
            window = [new]
        stats.steps_taken += 1
        t += 1
    return window[-1]


def _with_axis(point: Sequence[int], axis: int, t: int) -> tuple[int, ...]:
    p = list(point)
    p[axis - 1] = t
    return tuple(p)


class _Evaluator:
    def __init__(self, scheme: Scheme, perm: tuple[int, ...], stats: EvalStats):
        self.s = scheme
        self.perm = perm
        self.stats = stats
        self.memo: dict[tuple[int, ...], object] = {}

    def resolve(self, p: tuple[int, ...]):
        s = self.s
        if all(x <= b for x, b in zip(p, s.init_box.box)):
            return s.init_box[p]
        hit = self.memo.get(p)
        if hit is not None:
            return hit
        axis = None
        for a in reversed(self.perm):
            if p[a - 1] > s.init_box.box[a - 1]:
                axis = a
                break
        rec = s.recs[axis - 1]
        L = rec.order
        g = s.guards[axis - 1]
        t0 = max(g + 1, L)
        seeds = [
            self.resolve(_with_axis(p, axis, t)) for t in range(t0 - L, t0)
        ]
        value = _climb(rec, p, t0, seeds, p[axis - 1], self.stats)
        self.memo[p] = value
        return value


def eval_point(
    scheme: Scheme,
    target: Sequence[int],
    order: Sequence[int] | None = None,
):
    """Exact value at the target point, plus evaluation statistics.

    Axis permutations are tried in lexicographic order until one avoids
    every zero leading coefficient; pass ``order`` to force a single one.
    Raises EvalFail when every permutation hits a zero.
    """
    target = tuple(int(x) for x in target)
    if len(target) != scheme.dimension:
        raise ValueError("target dimension mismatch")
    if any(x < 0 for x in target):
        raise ValueError("target coordinates must be nonnegative")
    if order is not None:
        perms = [tuple(int(a) for a in order)]
        if sorted(perms[0]) != list(range(1, scheme.dimension + 1)):
            raise ValueError("order must be a permutation of the axes")
    else:
        perms = list(itertools.permutations(range(1, scheme.dimension + 1)))
    last = None
    for k, perm in enumerate(perms):
        stats = EvalStats(reroutes=k)
        try:
            value = _Evaluator(scheme, perm, stats).resolve(target)
            return value, stats
        except _LeadingZero as e:
            last = e
    raise EvalFail(target, detail=str(last))


def eval_diag(rec: PureRec, initials: Sequence, n: int) -> object:
    """Sliding-window evaluation of a univariate recurrence to index n.

    ``initials`` are a(0), a(1), ...; at least order + safe-start of them
    are required.  A zero leading coefficient past the supplied initial
    values violates the safe-start contract and raises
    UnexpectedSingularity (this is a hard error, not a FAIL).
    """
    if rec.dimension != 1:
        raise ValueError("eval_diag needs a one-dimensional recurrence")
    if n < 0:
        raise ValueError("index must be nonnegative")
    n0 = safe_start(rec).n0
    if len(initials) < rec.order + n0:
        raise ValueError(
            f"need at least order + safe start = {rec.order + n0} initial values"
        )
    if n < len(initials):
        return initials[n]
    L = rec.order
    stats = EvalStats()
    seeds = list(initials[len(initials) - L:]) if L else []
    try:
        return _climb(rec, (0,), len(initials), seeds, n, stats)
    except _LeadingZero as e:
        raise UnexpectedSingularity(
            f"unexpected-singularity: leading coefficient zero at index {e.point[0]}"
        ) from None


# ---------------------------------------------------------------------------
# Construction from recurrences plus an oracle
# ---------------------------------------------------------------------------

def build_scheme(
    recs: Sequence[PureRec],
    oracle: Callable[[tuple[int, ...]], ValueTable],
    guard_pad: int = 2,
    provenance: Sequence[str] | None = None,
) -> Scheme:
    """Assemble a scheme: compute guards, fill the seed box from the
    oracle, and validate every recurrence against it (exact residuals).

    ``oracle`` must fill any requested box with exact sequence values.
    Raises InconsistentRecurrence if any residual on the seed box is
    nonzero -- the symptom of a wrong guess or a transcription bug.
    """
    recs = sorted(recs, key=lambda r: r.axis)
    d = recs[0].dimension
    if [r.axis for r in recs] != list(range(1, d + 1)):
        raise ValueError("need exactly one recurrence per axis")
    if guard_pad < 0:
        raise ValueError("guard_pad must be nonnegative")
    if provenance is None:
        provenance = ["guessed"] * d
    guards = tuple(
        _guard_for(rec, d, guard_pad) for rec in recs
    )
    box = tuple(g + rec.order for g, rec in zip(guards, recs))
    table = oracle(box)
    if table.box != box or table.dimension != d:
        raise ValueError("oracle returned a table on the wrong box")
    scheme = Scheme(d, tuple(recs), guards, table, tuple(provenance))
    _validate_scheme(scheme)
    return scheme


def _guard_for(rec: PureRec, d: int, guard_pad: int) -> int:
    """Largest detected integer zero of the leading coefficient near the
    origin, plus the pad.

    For a leading coefficient depending only on its own axis the zero set
    is found exactly (safe_start); otherwise zeros are detected pointwise
    on a small scan box.  Zeros farther out are handled at evaluation time
    by the pointwise check and rerouting.
    """
    try:
        z = safe_start(rec).n0
    except ValueError:
        scan = rec.order + guard_pad + 8
        z = 0
        c0 = rec.leading
        pts = itertools.product(*(range(scan + 1) for _ in range(d)))
        for p in pts:
            if c0.eval(p) == 0:
                z = max(z, p[rec.axis - 1])
    return z + guard_pad


def _validate_scheme(scheme: Scheme) -> None:
    table = scheme.init_box
    for rec in scheme.recs:
        for p in table.points():
            if p[rec.axis - 1] < rec.order:
                continue
            if rec.residual(p, table.__getitem__) != 0:
                raise InconsistentRecurrence(
                    f"recurrence-inconsistent-with-oracle: axis {rec.axis} "
                    f"residual nonzero at {p}"
                )


# ---------------------------------------------------------------------------
# Scheme files (structured text, byte-identical round trip)
# ---------------------------------------------------------------------------

_FORMAT_HEADER = "scheme-format 1"


def scheme_to_text(scheme: Scheme) -> str:
    """Stable structured text form of a scheme."""
    vs = index_vars(scheme.dimension)
    lines = [
        _FORMAT_HEADER,
        f"dimension: {scheme.dimension}",
        f"index-variables: {' '.join(vs)}",
    ]
    for rec, g, prov in zip(scheme.recs, scheme.guards, scheme.provenance):
        lines.append(f"axis: {rec.axis}")
        lines.append(f"order: {rec.order}")
        lines.append(f"provenance: {prov}")
        lines.append(f"guard: {g}")
        for i, c in enumerate(rec.coeffs):
            lines.append(f"coefficient {i}: {c.render()}")
    lines.append("init-box: " + " ".join(str(b) for b in scheme.init_box.box))
    lines.append("init-values:")
    lines.extend(scheme.init_box.grid_lines())
    lines.append("end")
    return "\n".join(lines) + "\n"


def scheme_from_text(text: str) -> Scheme:
    lines = text.splitlines()
    pos = 0

    def take(prefix: str) -> str:
        nonlocal pos
        if pos >= len(lines) or not lines[pos].startswith(prefix):
            raise ValueError(
                f"bad scheme file: expected {prefix!r} at line {pos + 1}"
            )
        out = lines[pos][len(prefix):].strip()
        pos += 1
        return out

    if take(_FORMAT_HEADER) != "":
        raise ValueError("bad scheme file: unsupported header")
    d = int(take("dimension:"))
    vs = tuple(take("index-variables:").split())
    if vs != index_vars(d):
        raise ValueError("bad scheme file: unexpected index variables")
    recs = []
    guards = []
    provenance = []
    for j in range(1, d + 1):
        if int(take("axis:")) != j:
            raise ValueError("bad scheme file: axes out of order")
        order = int(take("order:"))
        provenance.append(take("provenance:"))
        guards.append(int(take("guard:")))
        coeffs = []
        for i in range(order + 1):
            text_i = take(f"coefficient {i}:")
            coeffs.append(_parse.parse_mpoly(text_i, vs))
        recs.append(PureRec(d, j, tuple(coeffs)))
    box = tuple(int(x) for x in take("init-box:").split())
    take("init-values:")
    nrows = 1
    for b in box[:-1]:
        nrows *= b + 1
    grid = lines[pos: pos + nrows]
    pos += nrows
    take("end")
    table = ValueTable.from_grid_lines(box, grid)
    return Scheme(d, tuple(recs), tuple(guards), table, tuple(provenance))


def write_scheme(scheme: Scheme, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(scheme_to_text(scheme))


def read_scheme(path) -> Scheme:
    with open(path, "r", encoding="ascii") as fh:
        return scheme_from_text(fh.read())
