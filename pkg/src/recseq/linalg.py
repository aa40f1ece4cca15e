"""Exact rational linear algebra.

The one operation everything else needs is the exact right nullspace of a
rectangular rational matrix.  It is computed by Gaussian elimination over
Fraction with the pivot chosen by smallest bit size (which keeps the
intermediate entries from blowing up); no rounding can occur anywhere.

A fast modular rank bound is also provided.  It is only ever used as a
*rejection* filter: full column rank modulo a prime implies full column
rank over the rationals, so a trivial modular nullspace proves the exact
nullspace is trivial.  The converse is never assumed.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

# Primes just under 2**20 so that pivot * entry fits comfortably in int64.
_PRIMES = (1000003, 999983, 1000033, 1000037)


def _bitsize(x: Fraction) -> int:
    return x.numerator.bit_length() + x.denominator.bit_length()


def nullspace_exact(rows: list[list[Fraction]]) -> list[list[Fraction]]:
    """Basis of the exact right nullspace of the matrix given by rows.

    Returns a list of basis vectors (possibly empty), one per free column
    of the reduced row echelon form, in ascending free-column order.  The
    basis is canonical: vector k has a 1 in its free column and zeros in
    every other free column.
    """
    if not rows:
        return []
    ncols = len(rows[0])
    if any(len(r) != ncols for r in rows):
        raise ValueError("ragged matrix")
    if ncols == 0:
        return []
    m = [[Fraction(x) for x in row] for row in rows]
    nrows = len(m)

    pivot_cols: list[int] = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        # Pivot by smallest bit size to limit coefficient growth.
        best = None
        for i in range(r, nrows):
            if m[i][c] != 0:
                sz = _bitsize(m[i][c])
                if best is None or sz < best[0]:
                    best = (sz, i)
        if best is None:
            continue
        i = best[1]
        m[r], m[i] = m[i], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivot_cols.append(c)
        r += 1

    pivot_set = set(pivot_cols)
    free_cols = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for f in free_cols:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row_idx, pc in enumerate(pivot_cols):
            v[pc] = -m[row_idx][f]
        basis.append(v)
    return basis


def modular_rank(rows: list[list[Fraction]]) -> int | None:
    """Rank of the matrix modulo a fixed prime, or None if no prime applies.

    The returned value is a *lower bound* on the rational rank (rank can
    only drop modulo p).  In particular, full column rank mod p certifies
    that the exact nullspace is trivial.
    """
    if not rows or not rows[0]:
        return 0
    ncols = len(rows[0])
    for p in _PRIMES:
        try:
            mat = np.array(
                [
                    [
                        (x.numerator % p) * pow(x.denominator, -1, p) % p
                        for x in row
                    ]
                    for row in rows
                ],
                dtype=np.int64,
            )
        except ValueError:  # denominator divisible by p; try the next prime
            continue
        return _rank_mod_p(mat, p)
    return None


def _rank_mod_p(mat: np.ndarray, p: int) -> int:
    nrows, ncols = mat.shape
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        nz = np.nonzero(mat[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            mat[[r, i]] = mat[[i, r]]
        inv = pow(int(mat[r, c]), -1, p)
        mat[r] = (mat[r] * inv) % p
        below = mat[r + 1:, c]
        nzb = np.nonzero(below)[0]
        if nzb.size:
            rows_idx = r + 1 + nzb
            factors = mat[rows_idx, c][:, None]
            mat[rows_idx] = (mat[rows_idx] - factors * mat[r][None, :]) % p
        r += 1
    return r
