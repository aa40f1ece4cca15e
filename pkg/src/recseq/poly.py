"""Exact polynomial arithmetic over the rationals.

Two representations, matching how the rest of the package accesses them:

* ``Poly`` -- univariate, dense coefficient tuple indexed by degree.  Used
  for series-side bookkeeping where every coefficient is touched in order.
  The zero polynomial is the empty tuple and has degree -1.
* ``MPoly`` -- multivariate, sparse map from exponent vectors to nonzero
  rational coefficients.  Used for recurrence coefficients, which stay
  sparse in the index variables.
* ``RatFn`` -- a reduced ratio of two univariate ``Poly`` values.

All values are immutable after construction and all arithmetic is exact;
nothing in this module ever touches a float.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd as _intgcd
from typing import Iterable, Mapping, Sequence


def _as_frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


# ---------------------------------------------------------------------------
# Univariate dense polynomials
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Poly:
    """Dense univariate polynomial; coeffs[i] is the coefficient of var**i.

    Canonical form: no trailing zero coefficients (so the zero polynomial
    has an empty coefficient tuple and degree() == -1).
    """

    var: str
    coeffs: tuple[Fraction, ...]

    @staticmethod
    def from_coeffs(var: str, coeffs: Iterable) -> "Poly":
        cs = [_as_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        return Poly(var, tuple(cs))

    @staticmethod
    def zero(var: str) -> "Poly":
        return Poly(var, ())

    @staticmethod
    def const(var: str, c) -> "Poly":
        return Poly.from_coeffs(var, [c])

    @staticmethod
    def x(var: str) -> "Poly":
        return Poly(var, (Fraction(0), Fraction(1)))

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> Fraction:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def _check_var(self, other: "Poly") -> None:
        if self.var != other.var:
            raise ValueError(
                f"variable mismatch: {self.var!r} vs {other.var!r}"
            )

    def __add__(self, other: "Poly") -> "Poly":
        self._check_var(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly.from_coeffs(
            self.var, [self.coeff(i) + other.coeff(i) for i in range(n)]
        )

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __neg__(self) -> "Poly":
        return Poly(self.var, tuple(-c for c in self.coeffs))

    def __mul__(self, other: "Poly") -> "Poly":
        self._check_var(other)
        if self.is_zero() or other.is_zero():
            return Poly.zero(self.var)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b != 0:
                    out[i + j] += a * b
        return Poly.from_coeffs(self.var, out)

    def scale(self, c) -> "Poly":
        c = _as_frac(c)
        if c == 0:
            return Poly.zero(self.var)
        return Poly(self.var, tuple(a * c for a in self.coeffs))

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative polynomial power")
        result = Poly.const(self.var, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def eval_at(self, x) -> Fraction:
        """Horner evaluation at an exact rational point."""
        x = _as_frac(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "Poly":
        return Poly.from_coeffs(
            self.var, [i * c for i, c in enumerate(self.coeffs)][1:]
        )

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        """Exact polynomial division with remainder."""
        self._check_var(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dlead = other.leading()
        ddeg = other.degree()
        quot = [Fraction(0)] * max(0, len(rem) - ddeg)
        for i in range(len(rem) - 1, ddeg - 1, -1):
            if rem[i] == 0:
                continue
            f = rem[i] / dlead
            quot[i - ddeg] = f
            for j, b in enumerate(other.coeffs):
                rem[i - ddeg + j] -= f * b
        return Poly.from_coeffs(self.var, quot), Poly.from_coeffs(self.var, rem)

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self.scale(1 / self.leading())

    def render(self) -> str:
        return _render_terms(
            [((i,), c) for i, c in enumerate(self.coeffs) if c != 0],
            (self.var,),
        )

    def __str__(self) -> str:  # pragma: no cover - repr convenience
        return self.render()


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd of two univariate polynomials (Euclid, monic remainders)."""
    a._check_var(b)
    while not b.is_zero():
        _, r = a.divmod(b)
        a, b = b, r.monic() if not r.is_zero() else r
    return a.monic()


# ---------------------------------------------------------------------------
# Multivariate sparse polynomials
# ---------------------------------------------------------------------------

@dataclass
class MPoly:
    """Sparse multivariate polynomial over an ordered variable tuple.

    ``terms`` maps exponent vectors (tuples of nonnegative ints, one entry
    per variable) to nonzero rational coefficients.  Instances are treated
    as immutable; nothing mutates ``terms`` after construction.
    """

    vars: tuple[str, ...]
    terms: dict[tuple[int, ...], Fraction]

    @staticmethod
    def from_terms(vars: Sequence[str], terms: Mapping) -> "MPoly":
        vs = tuple(vars)
        out: dict[tuple[int, ...], Fraction] = {}
        for exps, c in terms.items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != len(vs):
                raise ValueError("exponent vector length != number of variables")
            if any(e < 0 for e in exps):
                raise ValueError("negative exponent")
            c = _as_frac(c)
            if c != 0:
                out[exps] = out.get(exps, Fraction(0)) + c
                if out[exps] == 0:
                    del out[exps]
        return MPoly(vs, out)

    @staticmethod
    def zero(vars: Sequence[str]) -> "MPoly":
        return MPoly(tuple(vars), {})

    @staticmethod
    def const(vars: Sequence[str], c) -> "MPoly":
        return MPoly.from_terms(vars, {(0,) * len(tuple(vars)): c})

    @staticmethod
    def var(vars: Sequence[str], name: str) -> "MPoly":
        vs = tuple(vars)
        if name not in vs:
            raise ValueError(f"unknown variable {name!r}")
        e = [0] * len(vs)
        e[vs.index(name)] = 1
        return MPoly(vs, {tuple(e): Fraction(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    def _check_vars(self, other: "MPoly") -> None:
        if self.vars != other.vars:
            raise ValueError(
                f"variable mismatch: {self.vars!r} vs {other.vars!r}"
            )

    def __add__(self, other: "MPoly") -> "MPoly":
        self._check_vars(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, Fraction(0)) + c
            if s == 0:
                out.pop(e, None)
            else:
                out[e] = s
        return MPoly(self.vars, out)

    def __sub__(self, other: "MPoly") -> "MPoly":
        return self + (-other)

    def __neg__(self) -> "MPoly":
        return MPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def scale(self, c) -> "MPoly":
        c = _as_frac(c)
        if c == 0:
            return MPoly.zero(self.vars)
        return MPoly(self.vars, {e: a * c for e, a in self.terms.items()})

    def __mul__(self, other: "MPoly") -> "MPoly":
        self._check_vars(other)
        out: dict[tuple[int, ...], Fraction] = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                s = out.get(e, Fraction(0)) + ca * cb
                if s == 0:
                    out.pop(e, None)
                else:
                    out[e] = s
        return MPoly(self.vars, out)

    def __pow__(self, n: int) -> "MPoly":
        if n < 0:
            raise ValueError("negative polynomial power")
        result = MPoly.const(self.vars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def eval(self, point: Sequence) -> Fraction:
        """Evaluate at an exact point (one value per variable)."""
        if len(point) != len(self.vars):
            raise ValueError("point length != number of variables")
        vals = [_as_frac(p) for p in point]
        acc = Fraction(0)
        for e, c in self.terms.items():
            t = c
            for v, k in zip(vals, e):
                if k:
                    t *= v**k
            acc += t
        return acc

    def partial(self, name: str) -> "MPoly":
        """Formal partial derivative with respect to one variable."""
        i = self.vars.index(name)
        out: dict[tuple[int, ...], Fraction] = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            ne = list(e)
            ne[i] -= 1
            out[tuple(ne)] = c * e[i]
        return MPoly(self.vars, out)

    def substitute(self, assignments: Mapping[str, object]) -> "MPoly":
        """Fix some variables to exact values; result keeps the others."""
        keep = [v for v in self.vars if v not in assignments]
        idx_keep = [i for i, v in enumerate(self.vars) if v not in assignments]
        vals = {i: _as_frac(assignments[v]) for i, v in enumerate(self.vars)
                if v in assignments}
        out: dict[tuple[int, ...], Fraction] = {}
        for e, c in self.terms.items():
            for i, val in vals.items():
                if e[i]:
                    c = c * val ** e[i]
            ne = tuple(e[i] for i in idx_keep)
            s = out.get(ne, Fraction(0)) + c
            if s == 0:
                out.pop(ne, None)
            else:
                out[ne] = s
        return MPoly(tuple(keep), out)

    def shift(self, name: str, offset: int) -> "MPoly":
        """Substitute name -> name + offset."""
        if offset == 0:
            return self
        i = self.vars.index(name)
        x_plus = MPoly.var(self.vars, name) + MPoly.const(self.vars, offset)
        out = MPoly.zero(self.vars)
        for e, c in self.terms.items():
            rest = list(e)
            k = rest[i]
            rest[i] = 0
            term = MPoly(self.vars, {tuple(rest): c}) * x_plus**k
            out = out + term
        return out

    def to_poly(self) -> Poly:
        """Convert a polynomial in exactly one variable to dense form."""
        if len(self.vars) != 1:
            raise ValueError("to_poly needs exactly one variable")
        if not self.terms:
            return Poly.zero(self.vars[0])
        n = max(e[0] for e in self.terms)
        coeffs = [Fraction(0)] * (n + 1)
        for e, c in self.terms.items():
            coeffs[e[0]] = c
        return Poly.from_coeffs(self.vars[0], coeffs)

    @staticmethod
    def from_poly(p: Poly) -> "MPoly":
        return MPoly.from_terms(
            (p.var,), {(i,): c for i, c in enumerate(p.coeffs)}
        )

    def ordered_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        """Terms in the canonical order: graded lexicographic, descending."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]),
                      reverse=True)

    def leading_coeff(self) -> Fraction:
        """Coefficient of the leading monomial under the canonical order."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.ordered_terms()[0][1]

    def render(self) -> str:
        return _render_terms(self.ordered_terms(), self.vars)

    def __str__(self) -> str:  # pragma: no cover - repr convenience
        return self.render()


# ---------------------------------------------------------------------------
# Canonical text rendering (shared by Poly and MPoly)
# ---------------------------------------------------------------------------

def _render_monomial(exps: tuple[int, ...], vars: tuple[str, ...]) -> str:
    parts = []
    for v, e in zip(vars, exps):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return "*".join(parts)


def _render_terms(terms, vars: tuple[str, ...]) -> str:
    """Render (exponents, coefficient) pairs in the order given.

    Canonical form: explicit ``*`` and ``^``, rationals as ``p/q``,
    coefficient +-1 elided next to a variable part, e.g.
    ``3/2*x^2 - x + 1/3``.
    """
    if not terms:
        return "0"
    if terms and isinstance(terms[0][0], int):  # dense input: (degree, coeff)
        terms = [((d,), c) for d, c in terms]
    # Univariate dense callers pass ascending degree; render descending.
    terms = sorted(terms, key=lambda t: (sum(t[0]), t[0]), reverse=True)
    pieces = []
    for exps, c in terms:
        mono = _render_monomial(exps, vars)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not pieces:
            pieces.append(body if c > 0 else f"-{body}")
        else:
            pieces.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(pieces)


# ---------------------------------------------------------------------------
# Rational functions (univariate)
# ---------------------------------------------------------------------------

def _poly_int_normalize(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    """Scale num/den jointly: integer coefficients, primitive, den leading > 0."""
    lcm = 1
    for c in (*num.coeffs, *den.coeffs):
        lcm = lcm * c.denominator // _intgcd(lcm, c.denominator)
    num = num.scale(lcm)
    den = den.scale(lcm)
    g = 0
    for c in (*num.coeffs, *den.coeffs):
        g = _intgcd(g, int(c))
    if g > 1:
        num = num.scale(Fraction(1, g))
        den = den.scale(Fraction(1, g))
    if den.leading() < 0:
        num, den = num.scale(-1), den.scale(-1)
    return num, den


@dataclass(frozen=True)
class RatFn:
    """Reduced rational function num/den of one variable.

    Canonical form: gcd(num, den) = 1; both have integer coefficients with
    joint content 1; den has a positive leading coefficient.
    """

    num: Poly
    den: Poly

    @staticmethod
    def make(num: Poly, den: Poly) -> "RatFn":
        num._check_var(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator polynomial")
        if num.is_zero():
            return RatFn(Poly.zero(num.var), Poly.const(num.var, 1))
        g = poly_gcd(num, den)
        if g.degree() > 0:
            num, _ = num.divmod(g)
            den, _ = den.divmod(g)
        num, den = _poly_int_normalize(num, den)
        return RatFn(num, den)

    @staticmethod
    def from_poly(p: Poly) -> "RatFn":
        return RatFn.make(p, Poly.const(p.var, 1))

    def __add__(self, other: "RatFn") -> "RatFn":
        return RatFn.make(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __mul__(self, other: "RatFn") -> "RatFn":
        return RatFn.make(self.num * other.num, self.den * other.den)

    def scale(self, c) -> "RatFn":
        return RatFn.make(self.num.scale(c), self.den)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def render(self) -> str:
        n = self.num.render()
        if self.den.degree() == 0 and self.den.coeffs[0] == 1:
            return n
        return f"({n}) / ({self.den.render()})"

    def __str__(self) -> str:  # pragma: no cover - repr convenience
        return self.render()
