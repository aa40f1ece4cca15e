"""Seeded random test corpora.

Two function classes per dimension, mirroring the sample-output layout the
package is checked against: reciprocal cube roots 1/P^(1/3) of a random
polynomial P with constant term 1, and exponentials exp(P) of a random
polynomial with constant term 0 (a nonzero constant term would make the
leading expansion value e^c, which is not rational).

Ranges (own choices, documented here and in the README):

    d = 1: degree <= 4, coefficients in [-5, 5]
    d = 2: total degree <= 2, coefficients in [-3, 3]
    d = 3: total degree <= 2, at most 3 non-constant terms, coeffs in [-2, 2]

Higher-dimensional inputs are kept small so that scheme generation stays
at desk scale; generation is fully determined by the seed.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .oracle import HyperexpSpec
from .poly import MPoly

DEFAULT_SEED = 20220309

_VARS = {1: ("x",), 2: ("x1", "x2"), 3: ("x1", "x2", "x3")}


def _monomials(d: int, max_total: int) -> list[tuple[int, ...]]:
    out = []

    def rec(prefix, remaining, slots):
        if slots == 0:
            out.append(prefix)
            return
        for e in range(remaining + 1):
            rec(prefix + (e,), remaining - e, slots - 1)

    rec((), max_total, d)
    out.sort(key=lambda e: (sum(e), e))
    return out


def random_poly(
    rng: random.Random,
    dimension: int,
    constant_term: int,
    max_degree: int | None = None,
    coeff_bound: int | None = None,
    max_terms: int | None = None,
) -> MPoly:
    """Random polynomial with the given constant term and at least one
    non-constant term."""
    vars = _VARS[dimension]
    if max_degree is None:
        max_degree = {1: 4, 2: 2, 3: 2}[dimension]
    if coeff_bound is None:
        coeff_bound = {1: 5, 2: 3, 3: 2}[dimension]
    if max_terms is None:
        max_terms = {1: 5, 2: 6, 3: 3}[dimension]
    monos = [m for m in _monomials(dimension, max_degree) if any(m)]
    while True:
        terms = {(0,) * dimension: Fraction(constant_term)}
        chosen = monos if len(monos) <= max_terms else sorted(
            rng.sample(monos, max_terms)
        )
        for m in chosen:
            c = rng.randint(-coeff_bound, coeff_bound)
            if c:
                terms[m] = Fraction(c)
        p = MPoly.from_terms(vars, terms)
        if p.total_degree() >= 1:
            return p


def recip_cuberoot_spec(p: MPoly) -> HyperexpSpec:
    """1 / p^(1/3)."""
    return HyperexpSpec(p.vars, ((p, Fraction(-1, 3)),), None)


def exp_poly_spec(p: MPoly) -> HyperexpSpec:
    """exp(p)."""
    return HyperexpSpec(p.vars, (), p)


def corpus(dimension: int, count: int, seed: int = DEFAULT_SEED):
    """``count`` specs of each class: [(label, spec), ...].

    The two classes draw from independent, seed-derived streams so that
    changing the count of one class never changes the other's polynomials.
    """
    # Integer-derived seeds only: hashing strings is not stable across runs.
    rng_root = random.Random(seed * 1000 + dimension * 10 + 1)
    rng_exp = random.Random(seed * 1000 + dimension * 10 + 2)
    out = []
    for k in range(count):
        p = random_poly(rng_root, dimension, constant_term=1)
        out.append((f"recip-cuberoot-{dimension}d-{k + 1}", recip_cuberoot_spec(p)))
    for k in range(count):
        p = random_poly(rng_exp, dimension, constant_term=0)
        out.append((f"exp-poly-{dimension}d-{k + 1}", exp_poly_spec(p)))
    return out
