"""Brute-force oracles: truncated series expansion and lattice-walk DP.

These are the independent reference computations everything else is
checked against.  They deliberately share no logic with the recurrence
derivation or evaluation code: series come from truncated log/exp
arithmetic (see boxseries), walk counts from direct dynamic programming.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import boxseries as bs
from .errors import NonRationalLeadingValue
from .poly import MPoly, Poly
from .rat import rational_pow


# ---------------------------------------------------------------------------
# Symbolic description of the function class
# ---------------------------------------------------------------------------

@dataclass
class HyperexpSpec:
    """A function R = prod_i base_i ** exp_i * exp(exp_part).

    ``vars`` is the ordered variable tuple (d >= 1); every base must have a
    nonzero constant term so that the expansion at the origin exists, and
    exponents are exact rationals.  Instances are immutable by convention.
    """

    vars: tuple[str, ...]
    factors: tuple[tuple[MPoly, Fraction], ...] = ()
    exp_part: MPoly | None = None

    def __post_init__(self):
        self.vars = tuple(self.vars)
        if len(self.vars) < 1:
            raise ValueError("need at least one variable")
        self.factors = tuple(
            (base, Fraction(e)) for base, e in self.factors
        )
        for base, _ in self.factors:
            if base.vars != self.vars:
                raise ValueError("factor base variables disagree with spec")
            if base.constant_term() == 0:
                raise ValueError("factor base must have nonzero constant term")
        if self.exp_part is None:
            self.exp_part = MPoly.zero(self.vars)
        elif self.exp_part.vars != self.vars:
            raise ValueError("exp part variables disagree with spec")

    @property
    def dimension(self) -> int:
        return len(self.vars)

    def product(self, other: "HyperexpSpec") -> "HyperexpSpec":
        """Spec of the product of the two functions."""
        if self.vars != other.vars:
            raise ValueError("variable mismatch")
        return HyperexpSpec(
            self.vars,
            self.factors + other.factors,
            self.exp_part + other.exp_part,
        )

    def render(self) -> str:
        parts = []
        for base, e in sorted(
            self.factors, key=lambda f: (f[0].render(), f[1])
        ):
            if e == 1:
                parts.append(f"({base.render()})")
            elif e.denominator == 1:
                parts.append(f"({base.render()})^{e}")
            else:
                parts.append(f"({base.render()})^({e})")
        if not self.exp_part.is_zero():
            parts.append(f"exp({self.exp_part.render()})")
        return "*".join(parts) if parts else "1"

    def __str__(self) -> str:  # pragma: no cover - repr convenience
        return self.render()


@dataclass(frozen=True)
class SeriesTrunc:
    """Truncated univariate expansion: coeffs[n] is the exact n-th coefficient."""

    var: str
    order: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.order + 1:
            raise ValueError("coefficient count != order + 1")

    def truncate(self, order: int) -> "SeriesTrunc":
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return SeriesTrunc(self.var, order, self.coeffs[: order + 1])


# ---------------------------------------------------------------------------
# Value tables on lattice boxes
# ---------------------------------------------------------------------------

@dataclass
class ValueTable:
    """Exact sequence values on the product box [0, box_1] x ... x [0, box_d].

    ``values`` maps every lattice point of the box to an exact number
    (Fraction in general, int for counting sequences).  Treated as
    immutable once built.
    """

    box: tuple[int, ...]
    values: dict[tuple[int, ...], object] = field(repr=False)

    def __post_init__(self):
        self.box = tuple(int(b) for b in self.box)
        if any(b < 0 for b in self.box):
            raise ValueError("box bounds must be nonnegative")

    @property
    def dimension(self) -> int:
        return len(self.box)

    def __getitem__(self, point: tuple[int, ...]):
        return self.values[tuple(point)]

    def contains(self, point: Sequence[int]) -> bool:
        return all(0 <= p <= b for p, b in zip(point, self.box)) and len(
            point
        ) == len(self.box)

    def points(self) -> Iterable[tuple[int, ...]]:
        """All box points in row-major (lexicographic) order."""

        def rec(prefix, rem):
            if not rem:
                yield prefix
                return
            for i in range(rem[0] + 1):
                yield from rec(prefix + (i,), rem[1:])

        yield from rec((), self.box)

    def restrict(self, box: tuple[int, ...]) -> "ValueTable":
        """Sub-table on a smaller box."""
        box = tuple(box)
        if len(box) != self.dimension or any(
            b > s for b, s in zip(box, self.box)
        ):
            raise ValueError("not a sub-box")
        sub = ValueTable(box, {})
        sub.values = {
            p: self.values[p]
            for p in sub.points()
        }
        return sub

    def grid_lines(self) -> list[str]:
        """Text grid: one line per row (all coordinates but the last fixed,
        in lexicographic order), values space-separated."""
        lines = []
        if self.dimension == 1:
            prefixes = [()]
        else:
            def rec(prefix, rem):
                if not rem:
                    yield prefix
                    return
                for i in range(rem[0] + 1):
                    yield from rec(prefix + (i,), rem[1:])

            prefixes = list(rec((), self.box[:-1]))
        last = self.box[-1]
        for pre in prefixes:
            lines.append(
                " ".join(str(self.values[pre + (j,)]) for j in range(last + 1))
            )
        return lines

    @staticmethod
    def from_grid_lines(box: tuple[int, ...], lines: list[str]) -> "ValueTable":
        box = tuple(box)
        table = ValueTable(box, {})
        if len(box) == 1:
            prefixes = [()]
        else:
            def rec(prefix, rem):
                if not rem:
                    yield prefix
                    return
                for i in range(rem[0] + 1):
                    yield from rec(prefix + (i,), rem[1:])

            prefixes = list(rec((), box[:-1]))
        if len(lines) != len(prefixes):
            raise ValueError("grid line count does not match the box")
        values: dict[tuple[int, ...], object] = {}
        for pre, line in zip(prefixes, lines):
            cells = line.split()
            if len(cells) != box[-1] + 1:
                raise ValueError("grid row length does not match the box")
            for j, cell in enumerate(cells):
                f = Fraction(cell)
                values[pre + (j,)] = int(f) if f.denominator == 1 else f
        table.values = values
        return table


# ---------------------------------------------------------------------------
# Series oracles
# ---------------------------------------------------------------------------

def _normalized_log_exponent_sum(spec: HyperexpSpec, box: bs.Box):
    """(scalar prefactor, h) with R = prefactor * exp(h) on the box.

    Each base P with constant term c contributes exp_i * log(P/c) to h and
    the exact rational c**exp_i to the prefactor; the exp part contributes
    itself (its constant term must be zero, else the leading value e**c is
    irrational).
    """
    prefactor = Fraction(1)
    h = bs.zero(box)
    for base, e in spec.factors:
        c = base.constant_term()
        prefactor *= rational_pow(c, e)  # may raise NonRationalLeadingValue
        unit_base = base.scale(Fraction(1, c))
        lg = bs.log(bs.from_mpoly(unit_base, box), box)
        h = bs.add(h, bs.scale(lg, e, box), box)
    if spec.exp_part.constant_term() != 0:
        raise NonRationalLeadingValue(
            "exp part has a nonzero constant term; leading value would be e^c"
        )
    h = bs.add(h, bs.from_mpoly(spec.exp_part, box), box)
    return prefactor, h


def series_from_spec(spec: HyperexpSpec, order: int) -> SeriesTrunc:
    """Exact univariate expansion of the spec up to the given order."""
    if spec.dimension != 1:
        raise ValueError("series_from_spec needs a one-variable spec")
    if order < 0:
        raise ValueError("order must be nonnegative")
    box = (order,)
    prefactor, h = _normalized_log_exponent_sum(spec, box)
    g = bs.exp(h, box)
    return SeriesTrunc(
        spec.vars[0], order, tuple(prefactor * c for c in g)
    )


def mseries_from_spec(spec: HyperexpSpec, box: Sequence[int]) -> ValueTable:
    """Exact multivariate expansion coefficients on the whole box."""
    box = tuple(int(b) for b in box)
    if len(box) != spec.dimension:
        raise ValueError("box dimension != spec dimension")
    if any(b < 0 for b in box):
        raise ValueError("box bounds must be nonnegative")
    prefactor, h = _normalized_log_exponent_sum(spec, box)
    g = bs.exp(h, box)
    coeffs = bs.coefficients(g, box)
    return ValueTable(box, {p: prefactor * c for p, c in coeffs.items()})


def check_algebraic(series: SeriesTrunc, base: Poly, q: int) -> bool:
    """True iff series**q * base == 1 up to the truncation order.

    Independent verification for expansions of base**(-1/q): no recurrence
    or spec machinery involved, just truncated polynomial multiplication.
    """
    if q < 1:
        raise ValueError("q must be a positive integer")
    if base.var != series.var:
        raise ValueError("variable mismatch")
    n = series.order

    def tmul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
        out = [Fraction(0)] * (n + 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j in range(n + 1 - i):
                if b[j] != 0:
                    out[i + j] += x * b[j]
        return out

    acc = [Fraction(0)] * (n + 1)
    acc[0] = Fraction(1)
    s = list(series.coeffs)
    for _ in range(q):
        acc = tmul(acc, s)
    b = [base.coeff(i) for i in range(n + 1)]
    acc = tmul(acc, b)
    return acc[0] == 1 and all(c == 0 for c in acc[1:])


# ---------------------------------------------------------------------------
# Lattice walks
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StepSet:
    """A finite set of distinct nonnegative 2-D steps, none equal to (0,0)."""

    steps: frozenset[tuple[int, int]]

    @staticmethod
    def of(steps: Iterable[Sequence[int]]) -> "StepSet":
        out = set()
        for s in steps:
            s = (int(s[0]), int(s[1]))
            if s[0] < 0 or s[1] < 0:
                raise ValueError("steps must have nonnegative coordinates")
            if s == (0, 0):
                raise ValueError("step (0,0) is not allowed")
            out.add(s)
        if not out:
            raise ValueError("empty step set")
        return StepSet(frozenset(out))

    def sorted_steps(self) -> list[tuple[int, int]]:
        return sorted(self.steps)

    def render(self) -> str:
        return "[" + ", ".join(f"[{a},{b}]" for a, b in self.sorted_steps()) + "]"

    def __str__(self) -> str:  # pragma: no cover - repr convenience
        return self.render()


def walk_dp(st: StepSet, box: Sequence[int]) -> ValueTable:
    """Walk counts F on the whole box by dynamic programming.

    F(0,0) = 1 and F(a,b) = sum over steps (s1,s2) of F(a-s1, b-s2), with F
    identically zero off the nonnegative quadrant.
    """
    if len(box) != 2:
        raise ValueError("walks are two-dimensional")
    a_max, b_max = int(box[0]), int(box[1])
    if a_max < 0 or b_max < 0:
        raise ValueError("box bounds must be nonnegative")
    steps = st.sorted_steps()
    values: dict[tuple[int, int], int] = {}
    for a in range(a_max + 1):
        for b in range(b_max + 1):
            if a == 0 and b == 0:
                values[(0, 0)] = 1
                continue
            total = 0
            for s1, s2 in steps:
                pa, pb = a - s1, b - s2
                if pa >= 0 and pb >= 0:
                    total += values[(pa, pb)]
            values[(a, b)] = total
    return ValueTable((a_max, b_max), values)


def walk_value(st: StepSet, target: Sequence[int]) -> int:
    """Walk count at a single point, streaming the DP one row at a time.

    Same recursion as walk_dp but keeps only the rows a step can reach
    back to, so very large single values stay affordable in memory.
    """
    a_t, b_t = int(target[0]), int(target[1])
    if a_t < 0 or b_t < 0:
        raise ValueError("target must be nonnegative")
    steps = st.sorted_steps()
    depth = max(s2 for _, s2 in steps) + 1
    rows: list[list[int]] = []
    for b in range(b_t + 1):
        cur = [0] * (a_t + 1)
        for a in range(a_t + 1):
            if a == 0 and b == 0:
                cur[0] = 1
                continue
            total = 0
            for s1, s2 in steps:
                pa, pb = a - s1, b - s2
                if pa < 0 or pb < 0:
                    continue
                total += cur[pa] if s2 == 0 else rows[-(s2)][pa]
            cur[a] = total
        rows.append(cur)
        if len(rows) > depth:
            rows.pop(0)
    return rows[-1][a_t]


def walk_diagonal(st: StepSet, count: int) -> list[int]:
    """First ``count`` diagonal values F(0,0), F(1,1), ..., by direct DP."""
    if count < 1:
        raise ValueError("count must be positive")
    table = walk_dp(st, (count - 1, count - 1))
    return [table[(i, i)] for i in range(count)]
