"""Tests for linear matroids and the beta invariant.

Oracle: brute-force signed Whitney rank sum over all column subsets.
"""

import random
from fractions import Fraction
from itertools import combinations
from math import comb

import pytest

from eulerdisc.errors import HypothesisError, InputError
from eulerdisc.matroid import (
    LinearMatroid,
    beta,
    beta_whitney,
    generic_euler_char,
    signed_euler_char,
)
from eulerdisc.symcore import MultiPoly, VarTable, parse


def rand_matroid(rng, max_rows=3, max_cols=7):
    rows = rng.randint(1, max_rows)
    cols = rng.randint(1, max_cols)
    return LinearMatroid(
        [[Fraction(rng.randint(-3, 3)) for _ in range(cols)] for _ in range(rows)]
    )


class TestRank:
    def test_trivial(self):
        m = LinearMatroid([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
        assert m.rank(()) == 0
        assert m.rank() == 3

    def test_realized_two_site_basis(self):
        X1, X2, Y = Fraction(1), Fraction(2), Fraction(3)
        z = [
            [1, 0, 0, X1 + X2, X1 + Y, X2 + Y],
            [0, 1, 0, 1, 1, 0],
            [0, 0, 1, 1, 0, 1],
        ]
        m = LinearMatroid(z)
        assert m.rank([0, 1, 2]) == 3
        assert m.rank([3, 4, 5]) == 3

    def test_rank_axioms_random(self):
        rng = random.Random(301)
        for _ in range(15):
            m = rand_matroid(rng, max_cols=5)
            n = m.ncols
            subsets = [
                frozenset(s)
                for size in range(n + 1)
                for s in combinations(range(n), size)
            ]
            rk = {s: m.rank(s) for s in subsets}
            for s in subsets:
                assert 0 <= rk[s] <= min(len(s), len(m.rows))
                for e in range(n):
                    assert rk[s] <= rk[s | {e}] <= rk[s] + 1
            for s in subsets:
                for t in subsets:
                    assert rk[s | t] + rk[s & t] <= rk[s] + rk[t]


class TestBeta:
    def test_base_cases(self):
        assert beta(LinearMatroid([[1]])) == 1  # single coloop
        assert beta(LinearMatroid([[0]])) == 0  # single loop
        assert beta(LinearMatroid([[1, 0], [0, 1]])) == 0  # two coloops
        assert beta(LinearMatroid([[1, 2, 0]])) == 0  # loop present

    def test_uniform_binomials(self):
        # generic points on a moment curve realize U_{r,n}
        for n in range(1, 7):
            for r in range(1, min(n, 4) + 1):
                rows = [[Fraction(c + 1) ** i for c in range(n)] for i in range(r)]
                m = LinearMatroid(rows)
                assert m.rank() == r
                expected = comb(n - 2, r - 1) if n >= 2 else 1
                assert beta(m) == expected

    def test_matches_whitney_oracle(self):
        rng = random.Random(302)
        for _ in range(40):
            m = rand_matroid(rng)
            assert beta(m) == beta_whitney(m)

    def test_deletion_contraction_identity(self):
        rng = random.Random(303)
        checked = 0
        while checked < 15:
            m = rand_matroid(rng, max_cols=6)
            n = m.ncols
            r = m.rank()
            for e in range(n):
                rest = [c for c in range(n) if c != e]
                if m.rank([e]) == 0 or m.rank(rest) < r:
                    continue  # loop or coloop
                deleted = LinearMatroid([[row[c] for c in rest] for row in m.rows])
                # contract by elimination on column e
                rows = [list(row) for row in m.rows]
                piv = next(i for i, row in enumerate(rows) if row[e] != 0)
                rows[0], rows[piv] = rows[piv], rows[0]
                rows[0] = [x / rows[0][e] for x in rows[0]]
                for i in range(1, len(rows)):
                    f = rows[i][e]
                    if f:
                        rows[i] = [a - f * b for a, b in zip(rows[i], rows[0])]
                contracted = LinearMatroid(
                    [[row[c] for c in rest] for row in rows[1:]]
                    or [[Fraction(0)] * (n - 1)]
                )
                assert beta(m) == beta(deleted) + beta(contracted)
                checked += 1
                break


class TestSignedEulerChar:
    def test_single_column_parallel_to_axis(self):
        assert signed_euler_char([[0], [1], [0]]) == 0

    def test_two_site_physical(self):
        X1, X2, Y = Fraction(1), Fraction(2), Fraction(3)
        z = [[X1 + X2, X1 + Y, X2 + Y], [1, 1, 0], [1, 0, 1]]
        assert signed_euler_char(z) == 4

    def test_artificial_generic(self):
        rng = random.Random(304)
        edges = {(0, 3), (0, 4), (1, 3), (1, 5), (1, 6), (2, 4), (2, 5), (2, 6)}
        vals = set()
        for _ in range(3):
            z = [
                [
                    Fraction(rng.randint(1, 9999), rng.randint(1, 9999))
                    if (i, j) in edges
                    else 0
                    for j in range(3, 7)
                ]
                for i in range(3)
            ]
            vals.add(signed_euler_char(z))
        # matroid invariance: all generic samples agree, and equal the volume
        assert vals == {5}

    def test_three_site_generic(self):
        rng = random.Random(305)
        pat = {
            (0, 4), (0, 5), (0, 6), (0, 7), (0, 8), (0, 9),
            (1, 4), (1, 5), (1, 8),
            (2, 4), (2, 6), (2, 8), (2, 9),
            (3, 4), (3, 7), (3, 9),
        }
        z = [
            [
                Fraction(rng.randint(1, 9999), rng.randint(1, 9999))
                if (i, j) in pat
                else 0
                for j in range(4, 10)
            ]
            for i in range(4)
        ]
        assert signed_euler_char(z) == 30


class _StubFamily:
    """Minimal family protocol for generic_euler_char."""

    def __init__(self):
        self.vt = VarTable(["a", "b"])
        self.param_names = ("a", "b")

    def nonzero_minors(self):
        return [parse("a", self.vt), parse("b", self.vt), parse("a - b", self.vt)]

    def z_at(self, point):
        a, b = point["a"], point["b"]
        return [[a, b], [1, 1], [1, 0]]


class TestGenericEulerChar:
    def test_stub_family_stable(self):
        fam = _StubFamily()
        v = generic_euler_char(fam, trials=3, seed=1)
        assert v == generic_euler_char(fam, trials=3, seed=2)

    def test_requires_two_trials(self):
        with pytest.raises(InputError):
            generic_euler_char(_StubFamily(), trials=1)

    def test_degenerate_family_raises(self):
        class Bad(_StubFamily):
            def nonzero_minors(self):
                return [parse("a - a", self.vt) + 0]  # identically zero

        bad = Bad()
        bad.nonzero_minors = lambda: [MultiPoly.zero(bad.vt)]
        with pytest.raises(HypothesisError):
            generic_euler_char(bad, trials=2, seed=0, retry_budget=5)
