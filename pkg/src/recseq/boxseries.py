"""Box-truncated multivariate power series over the rationals.

A series in d variables truncated to the box (b1, ..., bd) is stored as a
nested list: the outer list is indexed by the exponent of the first
variable (length b1 + 1) and each entry is a (d-1)-variable series on the
tail box; a 0-variable series is a plain Fraction.  Every operation
truncates outside the box, so coefficients inside the box are exact.

exp and log work along the first variable with the standard coefficient
recursions (g' = h'g resp. integrating f'/f), recursing into the remaining
variables for the constant slice.  This mirrors textbook univariate series
arithmetic lifted over a coefficient ring and shares no logic with the
recurrence machinery elsewhere in the package.
"""

from __future__ import annotations

from fractions import Fraction

Box = tuple[int, ...]


def zero(box: Box):
    if not box:
        return Fraction(0)
    return [zero(box[1:]) for _ in range(box[0] + 1)]


def const(box: Box, c):
    c = Fraction(c)
    if not box:
        return c
    s = zero(box)
    _set(s, (0,) * len(box), c)
    return s


def _set(s, exps: tuple[int, ...], c: Fraction) -> None:
    for e in exps[:-1]:
        s = s[e]
    s[exps[-1]] = c


def get(s, exps: tuple[int, ...]) -> Fraction:
    for e in exps:
        s = s[e]
    return s


def is_zero(s, box: Box) -> bool:
    if not box:
        return s == 0
    return all(is_zero(t, box[1:]) for t in s)


def add(a, b, box: Box):
    if not box:
        return a + b
    return [add(x, y, box[1:]) for x, y in zip(a, b)]


def scale(a, c: Fraction, box: Box):
    if not box:
        return a * c
    return [scale(x, c, box[1:]) for x in a]


def mul(a, b, box: Box):
    if not box:
        return a * b
    out = [zero(box[1:]) for _ in range(box[0] + 1)]
    tail = box[1:]
    for i, ai in enumerate(a):
        if is_zero(ai, tail):
            continue
        for j in range(box[0] + 1 - i):
            bj = b[j]
            if tail and is_zero(bj, tail):
                continue
            out[i + j] = add(out[i + j], mul(ai, bj, tail), tail)
    return out


def from_mpoly(p, box: Box):
    """Place the terms of an MPoly on the box (terms outside are dropped)."""
    if len(p.vars) != len(box):
        raise ValueError("polynomial arity != box dimension")
    s = zero(box)
    if not box:
        return p.constant_term()
    for exps, c in p.terms.items():
        if all(e <= b for e, b in zip(exps, box)):
            _set(s, exps, get(s, exps) + c)
    return s


def diff_first(a, box: Box):
    """Formal derivative along the first variable (result on the same box,
    top slice zero)."""
    if not box:
        raise ValueError("cannot differentiate a scalar")
    tail = box[1:]
    out = [zero(tail) for _ in range(box[0] + 1)]
    for n in range(1, box[0] + 1):
        out[n - 1] = scale(a[n], Fraction(n), tail)
    return out


def div(a, b, box: Box):
    """Series division a / b; the scalar constant term of b must be nonzero."""
    if not box:
        if b == 0:
            raise ZeroDivisionError("series division by zero constant")
        return a / b
    tail = box[1:]
    nonzero_b = [k for k in range(1, box[0] + 1) if not is_zero(b[k], tail)]
    out = []
    for n in range(box[0] + 1):
        acc = a[n]
        for k in nonzero_b:
            if k > n:
                break
            acc = add(acc, scale(mul(b[k], out[n - k], tail), Fraction(-1), tail), tail)
        out.append(div(acc, b[0], tail))
    return out


def exp(h, box: Box):
    """exp of a series whose scalar constant term is zero."""
    if not box:
        if h != 0:
            raise ValueError("exp needs zero scalar constant term")
        return Fraction(1)
    tail = box[1:]
    e0 = exp(h[0], tail)  # constant-slice part, recursive in the tail vars
    nonzero_h = [k for k in range(1, box[0] + 1) if not is_zero(h[k], tail)]
    g = [const(tail, 1) if tail else Fraction(1)]
    for n in range(1, box[0] + 1):
        acc = zero(tail)
        for k in nonzero_h:
            if k > n:
                break
            acc = add(acc, scale(mul(h[k], g[n - k], tail), Fraction(k), tail), tail)
        g.append(scale(acc, Fraction(1, n), tail))
    return [mul(e0, gn, tail) if tail else e0 * gn for gn in g]


def log(f, box: Box):
    """log of a series whose scalar constant term is 1."""
    if not box:
        if f != 1:
            raise ValueError("log needs scalar constant term 1")
        return Fraction(0)
    tail = box[1:]
    l0 = log(f[0], tail)
    q = div(diff_first(f, box), f, box)  # (d/dx1 f) / f
    out = [l0]
    for n in range(1, box[0] + 1):
        out.append(scale(q[n - 1], Fraction(1, n), tail))
    return out


def coefficients(s, box: Box) -> dict[tuple[int, ...], Fraction]:
    """Flatten to a {exponent vector: coefficient} map over the whole box."""
    out: dict[tuple[int, ...], Fraction] = {}

    def walk(node, prefix: tuple[int, ...], rem: Box):
        if not rem:
            out[prefix] = node
            return
        for i, child in enumerate(node):
            walk(child, prefix + (i,), rem[1:])

    walk(s, (), box)
    return out
