"""Exact linear algebra: determinants, kernels, normal forms.

Oracles here are deliberately naive: permutation-expansion determinants
and brute-force GF(2) searches.  The library must agree with them on
random inputs, not just on the hand-picked cases.
"""

import random
from fractions import Fraction
from itertools import permutations, product

import pytest

from quasigenus.linalg import (gf2_solve, identity, int_det, is_primitive,
                               mat_mul, mat_vec, nullspace, perm_parity,
                               primitive_vector, rank, rref,
                               smith_normal_form, solve_in_span, transpose)


def det_by_permutation_expansion(mat):
    """Sum over permutations of sign * product, the definition itself."""
    n = len(mat)
    total = 0
    for perm in permutations(range(n)):
        sign = 1
        seen = list(perm)
        for i in range(n):
            for j in range(i + 1, n):
                if seen[i] > seen[j]:
                    sign = -sign
        prod = 1
        for i in range(n):
            prod *= mat[i][perm[i]]
        total += sign * prod
    return total


def test_int_det_examples():
    assert int_det([[5]]) == 5
    assert int_det([[1, 2], [3, 4]]) == -2
    assert int_det([[2, 0, 0], [0, 3, 0], [0, 0, 4]]) == 24
    assert int_det([[1, 2], [2, 4]]) == 0


def test_int_det_matches_permutation_expansion():
    rng = random.Random(101)
    for _ in range(120):
        n = rng.randint(1, 4)
        mat = [[rng.randint(-6, 6) for _ in range(n)] for _ in range(n)]
        assert int_det(mat) == det_by_permutation_expansion(mat)


def test_perm_parity():
    assert perm_parity([1, 2, 3]) == 1
    assert perm_parity([2, 1, 3]) == -1
    assert perm_parity([3, 1, 2]) == 1


def test_matrix_helpers():
    a = [[1, 2], [3, 4]]
    assert transpose(a) == [[1, 3], [2, 4]]
    assert mat_vec(a, [1, 1]) == [3, 7]
    assert mat_mul(a, identity(2)) == [list(r) for r in a]
    b = mat_mul(a, a)
    assert b == [[7, 10], [15, 22]]


def test_rref_and_rank():
    rows = [[Fraction(2), Fraction(4)], [Fraction(1), Fraction(2)]]
    reduced, pivots = rref(rows)
    assert pivots == [0]
    assert reduced == [[Fraction(1), Fraction(2)]]
    assert rank([[1, 2], [2, 4]]) == 1
    assert rank([[1, 0], [0, 1]]) == 2


def test_nullspace_annihilates():
    rng = random.Random(202)
    for _ in range(100):
        nrows = rng.randint(1, 3)
        ncols = rng.randint(1, 4)
        mat = [[rng.randint(-5, 5) for _ in range(ncols)] for _ in range(nrows)]
        basis = nullspace(mat)
        assert len(basis) == ncols - rank(mat)
        for vec in basis:
            assert all(sum(Fraction(row[j]) * vec[j] for j in range(ncols)) == 0
                       for row in mat)


def test_nullspace_example():
    basis = nullspace([[1, 1]])
    assert len(basis) == 1
    v = basis[0]
    assert v[0] + v[1] == 0


def test_solve_in_span():
    basis = [[1, 0, 1], [0, 1, 1]]
    coeffs = solve_in_span(basis, [2, 3, 5])
    assert coeffs is not None
    got = [sum(Fraction(c) * Fraction(basis[i][j]) for i, c in enumerate(coeffs))
           for j in range(3)]
    assert got == [2, 3, 5]
    assert solve_in_span(basis, [1, 0, 0]) is None


def brute_gf2(rows, target):
    """Try all 2^k combinations of rows over GF(2)."""
    k = len(rows)
    m = len(target)
    for bits in product((0, 1), repeat=k):
        acc = [0] * m
        for b, row in zip(bits, rows):
            if b:
                acc = [(a + r) % 2 for a, r in zip(acc, row)]
        if acc == [t % 2 for t in target]:
            return bits
    return None


def test_gf2_solve_matches_brute_force():
    rng = random.Random(303)
    for _ in range(150):
        k = rng.randint(1, 4)
        m = rng.randint(1, 5)
        rows = [[rng.randint(0, 1) for _ in range(m)] for _ in range(k)]
        target = [rng.randint(0, 1) for _ in range(m)]
        got = gf2_solve(rows, target)
        expect = brute_gf2(rows, target)
        if expect is None:
            assert got is None
        else:
            assert got is not None
            combo = [0] * m
            for b, row in zip(got, rows):
                if b:
                    combo = [(a + r) % 2 for a, r in zip(combo, row)]
            assert combo == [t % 2 for t in target]


def is_unimodular(mat):
    return int_det(mat) in (1, -1)


def test_smith_normal_form_random():
    rng = random.Random(404)
    for _ in range(300):
        nrows = rng.randint(1, 4)
        ncols = rng.randint(1, 5)
        mat = [[rng.randint(-9, 9) for _ in range(ncols)] for _ in range(nrows)]
        s, d, t = smith_normal_form(mat)
        assert is_unimodular(s)
        assert is_unimodular(t)
        for i in range(nrows):
            for j in range(ncols):
                if i != j:
                    assert d[i][j] == 0
        assert mat_mul(mat_mul(s, d), t) == mat


def test_primitive_vector():
    assert primitive_vector([2, 4, 6]) == (1, 2, 3)
    assert primitive_vector([-3, 6]) == (1, -2)
    assert primitive_vector([Fraction(1, 2), Fraction(1, 3)]) == (3, 2)
    with pytest.raises(ValueError):
        primitive_vector([0, 0])


def test_primitive_vector_random():
    rng = random.Random(505)
    for _ in range(200):
        n = rng.randint(1, 5)
        vec = [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(n)]
        if all(x == 0 for x in vec):
            continue
        prim = primitive_vector(vec)
        assert is_primitive(prim)
        lead = next(x for x in prim if x != 0)
        assert lead > 0
        # proportional to the input
        ratio = None
        for a, b in zip(vec, prim):
            if b != 0:
                r = Fraction(a) / b
                assert ratio is None or r == ratio
                ratio = r
            else:
                assert a == 0


def test_is_primitive():
    assert is_primitive((1, 2))
    assert not is_primitive((2, 4))
    assert is_primitive((0, 1, 0))
