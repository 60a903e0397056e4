from __future__ import annotations

import random
from fractions import Fraction

from nilrad import linalg


def test_rref_and_rank():
    a = [[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]]
    red, pivots = linalg.rref(a)
    assert pivots == [0]
    assert linalg.rank(a) == 1


def test_solve_and_nullspace():
    a = [[Fraction(1), Fraction(1)], [Fraction(1), Fraction(-1)]]
    x = linalg.solve(a, [Fraction(3), Fraction(1)])
    assert x == [Fraction(2), Fraction(1)]
    assert linalg.solve([[Fraction(1), Fraction(1)], [Fraction(1), Fraction(1)]],
                        [Fraction(0), Fraction(1)]) is None
    ns = linalg.nullspace([[Fraction(1), Fraction(1), Fraction(0)]])
    assert len(ns) == 2
    for v in ns:
        assert v[0] + v[1] == 0


def test_inv_round_trip():
    rng = random.Random(3)
    for _ in range(10):
        a = [[Fraction(rng.randint(-4, 4)) for _ in range(4)] for _ in range(4)]
        inv = linalg.inv(a)
        if inv is None:
            continue
        assert linalg.matmul(a, inv) == linalg.identity(4)


def test_hnf_canonical_for_lattice():
    # two bases of the same lattice give the same HNF
    b1 = [[2, 0, 1], [0, 3, 1]]
    b2 = [[2, 3, 2], [2, 6, 3]]  # row ops of b1
    assert linalg.hnf(b1) == linalg.hnf(b2)


def test_kernel_lattice_membership():
    rng = random.Random(5)
    for _ in range(25):
        mat = [[rng.randint(-3, 3) for _ in range(6)] for _ in range(2)]
        basis = linalg.kernel_lattice(mat)
        for row in basis:
            assert all(sum(m * x for m, x in zip(mrow, row)) == 0 for mrow in mat)
        # saturation: a random integer kernel vector must be an integer
        # combination of the basis (solve exactly and check integrality)
        ns = linalg.nullspace([[Fraction(v) for v in row] for row in mat], ncols=6)
        if not ns or not basis:
            continue
        v = ns[0]
        den = 1
        for x in v:
            den = den * x.denominator // __import__("math").gcd(den, x.denominator)
        v_int = [int(x * den) for x in v]
        coeffs = linalg.solve(
            [[Fraction(basis[r][c]) for r in range(len(basis))] for c in range(6)],
            [Fraction(x) for x in v_int],
        )
        assert coeffs is not None
        assert all(c.denominator == 1 for c in coeffs)


def test_sparse_nullspace_matches_dense():
    rng = random.Random(9)
    for _ in range(20):
        rows = []
        ncols = 8
        for _ in range(5):
            row = {c: Fraction(rng.randint(-2, 2)) for c in rng.sample(range(ncols), 3)}
            rows.append({c: v for c, v in row.items() if v})
        dense = [[row.get(c, Fraction(0)) for c in range(ncols)] for row in rows]
        sparse_dim = len(linalg.sparse_nullspace(rows, ncols))
        dense_dim = len(linalg.nullspace(dense, ncols=ncols))
        assert sparse_dim == dense_dim
        for v in linalg.sparse_nullspace(rows, ncols):
            assert all(
                sum(row.get(c, Fraction(0)) * v[c] for c in range(ncols)) == 0
                for row in rows
            )


def test_in_span():
    vs = [[Fraction(1), Fraction(0), Fraction(1)], [Fraction(0), Fraction(1), Fraction(1)]]
    assert linalg.in_span(vs, [Fraction(2), Fraction(3), Fraction(5)])
    assert not linalg.in_span(vs, [Fraction(0), Fraction(0), Fraction(1)])
