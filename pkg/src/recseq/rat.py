"""Exact scalar arithmetic helpers.

Integers are plain Python ints (arbitrary precision); rationals are
fractions.Fraction, whose normal form already matches what we need
everywhere: positive denominator, gcd(|num|, den) = 1, zero stored as 0/1.
This module adds the constructors and root extractions the rest of the
package needs on top of that.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import NonRationalLeadingValue

Rat = Fraction


def rat_canon(num: int, den: int) -> Fraction:
    """Build the canonical rational num/den.

    Raises ZeroDivisionError("zero-denominator") for den = 0.
    """
    if den == 0:
        raise ZeroDivisionError("zero-denominator")
    return Fraction(num, den)


def int_nth_root(value: int, n: int) -> int | None:
    """Exact n-th root of a nonnegative int, or None if it is not a power."""
    if value < 0 or n <= 0:
        raise ValueError("int_nth_root needs value >= 0 and n >= 1")
    if value in (0, 1) or n == 1:
        return value
    # Newton iteration on integers, then a local check.
    root = 1 << ((value.bit_length() + n - 1) // n)
    while True:
        nxt = ((n - 1) * root + value // root ** (n - 1)) // n
        if nxt >= root:
            break
        root = nxt
    for cand in (root - 1, root, root + 1):
        if cand >= 0 and cand**n == value:
            return cand
    return None


def rational_pow(base: Fraction, exponent: Fraction) -> Fraction:
    """base**exponent when the result is rational.

    Integer exponents always work (base nonzero for negative ones).  For
    exponent p/q the base must be an exact q-th power of a rational;
    otherwise the value is irrational and NonRationalLeadingValue is raised.
    """
    base = Fraction(base)
    exponent = Fraction(exponent)
    if exponent.denominator == 1:
        return base ** int(exponent)
    q = exponent.denominator
    if base < 0:
        if q % 2 == 0:
            raise NonRationalLeadingValue(
                f"({base})^({exponent}) is not a real rational"
            )
        root = rational_pow(-base, Fraction(1, q))
        return (-root) ** exponent.numerator
    rn = int_nth_root(base.numerator, q)
    rd = int_nth_root(base.denominator, q)
    if rn is None or rd is None:
        raise NonRationalLeadingValue(f"({base})^({exponent}) is irrational")
    return Fraction(rn, rd) ** exponent.numerator


def digit_count(v: int) -> int:
    """Number of decimal digits of |v|, without building the decimal string.

    Raises ValueError for v = 0 (no well-defined digit count here).
    """
    if v == 0:
        raise ValueError("digit_count of zero")
    v = abs(v)
    # 10**d <= v < 10**(d+1) bracketed from the bit length, then corrected.
    d = int(v.bit_length() * 0.30102999566398119)  # log10(2), slight underestimate
    p = 10**d
    while p <= v:
        d += 1
        p *= 10
    return d
