"""Univariate recurrence derivation by coefficient extraction.

For a one-variable spec R the logarithmic derivative R'/R = A/B is an
explicit rational function.  Extracting the coefficient of x^n from the
identity B*R' - A*R = 0 yields, for every n >= 0,

    sum_k b_k (n+1-k) r_{n+1-k} - sum_k a_k r_{n-k} = 0,

a pure linear recurrence for the expansion coefficients r with
coefficients of degree <= 1 in the index.  Re-indexed so the highest
index appears first, the stored coefficient of r_{N-i} is

    c_i(N) = b_i * (N - i) - a_{i-1},

with order L = max(deg B, deg A + 1).  This derivation is correct by
construction: no guessing, no verification margin needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DegenerateLeadingCoefficient, SingularAtOrigin
from .oracle import HyperexpSpec
from .poly import MPoly, Poly, RatFn, poly_gcd
from .recurrence import PureRec, index_vars


def logderiv(spec: HyperexpSpec) -> RatFn:
    """R'/R = sum_i exp_i * base_i'/base_i + (exp part)' in lowest terms."""
    if spec.dimension != 1:
        raise ValueError("logderiv needs a one-variable spec")
    var = spec.vars[0]
    acc = RatFn.from_poly(spec.exp_part.partial(var).to_poly())
    for base, e in spec.factors:
        p = base.to_poly()
        acc = acc + RatFn.make(p.derivative().scale(e), p)
    return acc


def ode_to_rec(a: Poly, b: Poly) -> PureRec:
    """Pure recurrence for the expansion coefficients of R with R'/R = a/b.

    Preconditions: gcd(a, b) = 1 and b(0) != 0 (the expansion point is an
    ordinary point).  The result has order max(deg b, deg a + 1) and
    coefficients of degree <= 1 in the index variable.
    """
    a._check_var(b)
    if b.is_zero():
        raise ZeroDivisionError("zero denominator polynomial")
    if b.coeff(0) == 0:
        raise SingularAtOrigin("singular-at-origin: denominator vanishes at 0")
    if not a.is_zero():
        g = poly_gcd(a, b)
        if g.degree() > 0:
            raise ValueError("a and b must be coprime")
    order = max(b.degree(), a.degree() + 1)
    vs = index_vars(1)
    n = MPoly.var(vs, "n")
    coeffs = []
    for i in range(order + 1):
        c = MPoly.zero(vs)
        bi = b.coeff(i)
        if bi != 0:
            c = c + (n + MPoly.const(vs, -i)).scale(bi)
        if i >= 1:
            ai = a.coeff(i - 1)
            if ai != 0:
                c = c + MPoly.const(vs, -ai)
        coeffs.append(c)
    return PureRec.make(1, 1, coeffs)


@dataclass(frozen=True)
class SafeStart:
    """Largest nonnegative integer zero of the leading coefficient.

    The recurrence can be applied at every index strictly greater than
    ``n0``; values up to ``n0`` must come from the oracle.
    """

    n0: int


def _integer_roots(p: Poly, scan_bound: int) -> list[int]:
    """Nonnegative integer roots of a rational-coefficient polynomial.

    Exact for degree <= 1 and whenever the trailing integer data is small
    enough to factor by trial division; always complemented by a direct
    scan up to scan_bound.
    """
    # Clear denominators to integer coefficients.
    lcm = 1
    for c in p.coeffs:
        lcm = lcm * c.denominator // _gcd(lcm, c.denominator)
    ic = [int(c * lcm) for c in p.coeffs]
    roots: set[int] = set()
    # Factor out powers of the variable: root at 0.
    shift = 0
    while ic and ic[0] == 0:
        ic.pop(0)
        shift += 1
    if shift:
        roots.add(0)
    if not ic:
        return sorted(roots)
    if len(ic) == 2:  # linear: exact root
        num, den = -ic[0], ic[1]
        if num % den == 0 and num // den > 0:
            roots.add(num // den)
    else:
        trailing = abs(ic[0])
        if trailing <= 10**12:
            for d in _divisors(trailing):
                if _eval_int(ic, d) == 0:
                    roots.add(d)
        for t in range(1, scan_bound + 1):
            if _eval_int(ic, t) == 0:
                roots.add(t)
    return sorted(roots)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def _divisors(n: int) -> list[int]:
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def _eval_int(coeffs: list[int], x: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def safe_start(rec: PureRec, scan_bound: int | None = None) -> SafeStart:
    """Safe-start index for a recurrence whose leading coefficient depends
    only on the recurrence axis.

    n0 is the largest nonnegative integer zero of c_0 along the axis (0 if
    there is none).  Roots are found exactly for degree <= 1 and by trial
    division of the trailing data when it is small; a direct scan up to
    ``scan_bound`` (default max(1000, 2*order)) guards the rest.
    """
    axis_idx = rec.axis - 1
    c0 = rec.leading
    if c0.is_zero():
        raise DegenerateLeadingCoefficient("degenerate-leading-coefficient")
    for exps in c0.terms:
        if any(e != 0 for i, e in enumerate(exps) if i != axis_idx):
            raise ValueError(
                "safe_start needs a leading coefficient in the axis variable only"
            )
    var = index_vars(rec.dimension)[axis_idx]
    other = {
        v: Fraction(0) for v in index_vars(rec.dimension) if v != var
    }
    p = c0.substitute(other).to_poly()
    if scan_bound is None:
        scan_bound = max(1000, 2 * rec.order)
    roots = _integer_roots(p, scan_bound)
    return SafeStart(max(roots) if roots else 0)
