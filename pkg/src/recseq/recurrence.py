"""Pure linear recurrences with polynomial coefficients.

A pure recurrence shifts along exactly one axis:

    c_0(n) * a(n) + c_1(n) * a(n - e_j) + ... + c_L(n) * a(n - L*e_j) = 0

where n = (n_1, ..., n_d), e_j is the unit vector of the recurrence axis
and every c_i is a polynomial in all index variables.  Stored coefficients
are normalized: denominators cleared, integer content removed, and the
sign fixed so the leading monomial of c_0 is positive.  c_0 and c_L are
never identically zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd as _intgcd
from typing import Callable, Sequence

from .poly import MPoly, RatFn, Poly


def index_vars(d: int) -> tuple[str, ...]:
    """Canonical index variable names: ("n",) for d = 1, else n1..nd."""
    if d < 1:
        raise ValueError("dimension must be >= 1")
    return ("n",) if d == 1 else tuple(f"n{i}" for i in range(1, d + 1))


@dataclass
class PureRec:
    """One-axis linear recurrence with polynomial coefficients.

    ``axis`` is 1-based.  ``coeffs[i]`` multiplies a(n - i*e_axis); the
    order is len(coeffs) - 1.  Instances are treated as immutable.
    """

    dimension: int
    axis: int
    coeffs: tuple[MPoly, ...]

    def __post_init__(self):
        if not 1 <= self.axis <= self.dimension:
            raise ValueError("axis out of range")
        self.coeffs = tuple(self.coeffs)
        if not self.coeffs:
            raise ValueError("no coefficients")
        vs = index_vars(self.dimension)
        for c in self.coeffs:
            if c.vars != vs:
                raise ValueError("coefficient variables must be the index variables")
        if self.coeffs[0].is_zero():
            raise ValueError("leading coefficient identically zero")
        if len(self.coeffs) > 1 and self.coeffs[-1].is_zero():
            raise ValueError("trailing coefficient identically zero")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> MPoly:
        return self.coeffs[0]

    @staticmethod
    def make(dimension: int, axis: int, coeffs: Sequence[MPoly]) -> "PureRec":
        """Build with canonical normalization (primitive, sign-fixed)."""
        return PureRec(dimension, axis, normalize_coeffs(coeffs))

    def shifted_point(self, point: Sequence[int], i: int) -> tuple[int, ...]:
        p = list(point)
        p[self.axis - 1] -= i
        return tuple(p)

    def residual(self, point: Sequence[int], value_at: Callable) -> Fraction:
        """sum_i c_i(point) * value_at(point - i*e_axis), exactly."""
        acc = Fraction(0)
        for i, c in enumerate(self.coeffs):
            cv = c.eval(point)
            if cv != 0:
                acc += cv * value_at(self.shifted_point(point, i))
        return acc

    def specialize(self, point: Sequence[int]) -> list[Poly]:
        """Coefficients as univariate polynomials in the axis variable,
        with the other coordinates frozen to the given point's values."""
        vs = index_vars(self.dimension)
        axis_var = vs[self.axis - 1]
        fixed = {
            v: point[i] for i, v in enumerate(vs) if v != axis_var
        }
        out = []
        for c in self.coeffs:
            s = c.substitute(fixed)
            out.append(s.to_poly())
        return out

    def solved_form(self) -> list[RatFn]:
        """Univariate only: the rational functions f_i with
        a(n) = sum_i f_i(n) a(n - i), i.e. f_i = -c_i / c_0."""
        if self.dimension != 1:
            raise ValueError("solved form is provided for one dimension only")
        c0 = self.coeffs[0].to_poly()
        return [
            RatFn.make(-c.to_poly(), c0) for c in self.coeffs[1:]
        ]

    @staticmethod
    def from_solved_form(fs: Sequence[RatFn]) -> "PureRec":
        """Inverse of solved_form: clear denominators of
        a(n) = sum f_i(n) a(n-i) back to polynomial coefficients."""
        if not fs:
            raise ValueError("need at least one rational coefficient")
        var = fs[0].num.var
        den = Poly.const(var, 1)
        for f in fs:
            den = den * f.den
        coeffs = [MPoly.from_poly(den)]
        for i, f in enumerate(fs):
            others = Poly.const(var, 1)
            for j, g in enumerate(fs):
                if j != i:
                    others = others * g.den
            coeffs.append(MPoly.from_poly(-(f.num * others)))
        return PureRec.make(1, 1, coeffs)

    def term_text(self, i: int) -> str:
        vs = index_vars(self.dimension)
        if self.dimension == 1:
            arg = "n" if i == 0 else f"n-{i}"
        else:
            parts = list(vs)
            if i:
                parts[self.axis - 1] = f"{vs[self.axis - 1]}-{i}"
            arg = ",".join(parts)
        return f"a({arg})"

    def render(self) -> str:
        """Equation text, e.g. ``3*n*a(n) - (3*n - 2)*a(n-1) = 0``."""
        pieces = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            # Pull the sign of the leading monomial out in front of the term.
            negative = c.leading_coeff() < 0
            text = (-c).render() if negative else c.render()
            term = self.term_text(i)
            if text == "1":
                body = term
            elif " " in text:
                body = f"({text})*{term}"
            else:
                body = f"{text}*{term}"
            if not pieces:
                pieces.append(f"-{body}" if negative else body)
            else:
                pieces.append(f"- {body}" if negative else f"+ {body}")
        return " ".join(pieces) + " = 0"

    def __str__(self) -> str:  # pragma: no cover - repr convenience
        return self.render()


def normalize_coeffs(coeffs: Sequence[MPoly]) -> tuple[MPoly, ...]:
    """Clear denominators, remove integer content, fix the sign.

    The sign convention: the leading monomial coefficient (graded-lex) of
    the first nonzero coefficient polynomial is positive.
    """
    coeffs = list(coeffs)
    if all(c.is_zero() for c in coeffs):
        raise ValueError("all coefficients are zero")
    lcm = 1
    for c in coeffs:
        for v in c.terms.values():
            lcm = lcm * v.denominator // _intgcd(lcm, v.denominator)
    scaled = [c.scale(lcm) for c in coeffs]
    g = 0
    for c in scaled:
        for v in c.terms.values():
            g = _intgcd(g, int(v))
    if g > 1:
        scaled = [c.scale(Fraction(1, g)) for c in scaled]
    lead = next(c for c in scaled if not c.is_zero())
    if lead.leading_coeff() < 0:
        scaled = [c.scale(-1) for c in scaled]
    return tuple(scaled)


def render_theorem(
    subject: str,
    rec: PureRec,
    first_values: Sequence,
    provenance: str = "derived",
    safe_start: int | None = None,
) -> str:
    """Human-readable statement of a recurrence and its first values."""
    lines = [f"Sequence: coefficient sequence a of {subject}"]
    status = (
        "proved by construction" if provenance == "derived"
        else "guessed from values; verified, not proved"
    )
    lines.append(f"Recurrence (order {rec.order}; {status}):")
    lines.append(f"  {rec.render()}")
    if safe_start is not None:
        lines.append(
            f"Safe start: leading coefficient has no integer zeros past {safe_start};"
            f" seed values up to index {safe_start} directly."
        )
    shown = ", ".join(str(v) for v in first_values)
    lines.append(f"First values: {shown}")
    return "\n".join(lines)
