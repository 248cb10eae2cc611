"""Linear matroids over the rationals and signed Euler characteristics.

The signed Euler characteristic of a hyperplane arrangement complement is
computed combinatorially as the Crapo beta invariant of the column matroid
of the coefficient matrix prefixed with an identity block; no topology is
involved.
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import HypothesisError, InputError

__all__ = [
    "LinearMatroid",
    "beta",
    "signed_euler_char",
    "generic_euler_char",
]


def _to_fraction_rows(rows):
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def _rref(rows):
    """Reduced row echelon form with zero rows dropped; canonical for the
    row space, hence a sound memo key for the column matroid."""
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][c]
        m[r] = [x / inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
        if r == nrows:
            break
    return tuple(tuple(row) for row in m[:r])


class LinearMatroid:
    """Column matroid of an exact rational matrix."""

    __slots__ = ("rows", "ncols")

    def __init__(self, rows):
        rows = _to_fraction_rows(rows)
        if rows:
            n = len(rows[0])
            if any(len(r) != n for r in rows):
                raise InputError("matrix rows have mixed lengths")
        else:
            raise InputError("matrix must have at least one row")
        self.rows = rows
        self.ncols = len(rows[0])

    @property
    def ground_set(self):
        return tuple(range(self.ncols))

    def rank(self, subset=None) -> int:
        if subset is None:
            subset = range(self.ncols)
        cols = sorted(set(subset))
        if not all(0 <= c < self.ncols for c in cols):
            raise InputError("subset out of range")
        sub = [[row[c] for c in cols] for row in self.rows]
        return len(_rref(sub))

    def columns(self):
        return [tuple(row[c] for row in self.rows) for c in range(self.ncols)]


# ---------------------------------------------------------------------------
# Crapo beta invariant


@lru_cache(maxsize=65536)
def _beta_rref(key):
    """Beta of the column matroid whose realization has the given RREF.

    The RREF rows are canonical for the row space, so matrices realizing
    the same labelled matroid after row operations share cache entries.
    """
    rows = key
    if not rows:
        # rank zero: every element is a loop
        ncols = 0
        return 0
    ncols = len(rows[0])
    cols = [tuple(r[c] for r in rows) for c in range(ncols)]
    loops = [c for c in range(ncols) if not any(cols[c])]
    if loops:
        return 0 if ncols >= 2 else 0
    if ncols == 1:
        return 1
    rank = len(rows)
    # find an element that is neither a loop nor a coloop
    for e in range(ncols):
        deleted = tuple(tuple(x for i, x in enumerate(r) if i != e) for r in rows)
        drref = _rref(deleted)
        if len(drref) < rank:
            continue  # e is a coloop
        contracted = _contract_matrix(rows, e)
        return _beta_rref(drref) + _beta_rref(_rref(contracted))
    # every element is a coloop: free matroid
    return 1 if ncols == 1 else 0


def _contract_matrix(rows, e):
    """Realization of M/e: pivot on column e, drop its row and column."""
    m = [list(r) for r in rows]
    piv = next(i for i in range(len(m)) if m[i][e] != 0)
    m[0], m[piv] = m[piv], m[0]
    inv = m[0][e]
    m[0] = [x / inv for x in m[0]]
    for i in range(1, len(m)):
        if m[i][e] != 0:
            f = m[i][e]
            m[i] = [a - f * b for a, b in zip(m[i], m[0])]
    return tuple(
        tuple(x for j, x in enumerate(r) if j != e) for r in m[1:]
    )


def beta(m: LinearMatroid) -> int:
    """Crapo beta invariant; 0 when a loop is present (with more than one
    element), 1 for a single coloop."""
    if m.ncols == 0:
        raise InputError("beta needs a nonempty ground set")
    return _beta_rref(_rref(m.rows))


def beta_whitney(m: LinearMatroid) -> int:
    """Brute-force beta via the signed Whitney rank sum (test oracle)."""
    from itertools import combinations

    n = m.ncols
    r = m.rank()
    total = 0
    for size in range(n + 1):
        for sub in combinations(range(n), size):
            total += (-1) ** size * m.rank(sub)
    return (-1) ** r * total


# ---------------------------------------------------------------------------
# Euler characteristics


def signed_euler_char(z_rows) -> int:
    """(-1)^k times the Euler characteristic of the arrangement complement
    with coefficient matrix z (k+1 rows); equals beta of [I | z]."""
    z = _to_fraction_rows(z_rows)
    k1 = len(z)
    full = [
        tuple(Fraction(1 if i == j else 0) for j in range(k1)) + z[i]
        for i in range(k1)
    ]
    return beta(LinearMatroid(full))


def generic_euler_char(family, trials: int = 3, seed: int = 0, retry_budget: int = 200) -> int:
    """Signed Euler characteristic at generic parameters of a family.

    Samples random rational parameter points, rejects any point where an
    identically-nonzero minor of the coefficient block vanishes, and checks
    that all accepted samples agree.  The family must expose param_names,
    z_at(values) and nonzero_minors().
    """
    if trials < 2:
        raise InputError("need at least 2 trials")
    rng = random.Random(seed)
    minors = family.nonzero_minors()
    values = []
    for _ in range(trials):
        for _ in range(retry_budget):
            point = {
                name: Fraction(rng.randint(1, 10**4), rng.randint(1, 10**4))
                for name in family.param_names
            }
            if all(m.eval(point) != 0 for m in minors):
                values.append(signed_euler_char(family.z_at(point)))
                break
        else:
            raise HypothesisError(
                "could not sample a parameter point off the discriminant; "
                "the family may lie inside its own discriminant"
            )
    if len(set(values)) != 1:
        raise HypothesisError(
            f"Euler characteristic not stable across samples: {sorted(set(values))}"
        )
    return values[0]
