"""Exact integer and rational linear algebra."""

import random
from fractions import Fraction

from multicomplex import intlinalg
from multicomplex.intlinalg import (integer_kernel_basis, integer_quotient,
                                    matmul, rational_in_span,
                                    rational_kernel_basis, rational_rank,
                                    rational_rref, rational_solve,
                                    smith_form, solve_integer, xgcd)


def test_xgcd():
    for a, b in [(12, 18), (-4, 6), (0, 5), (7, 0), (0, 0), (240, 46)]:
        g, x, y = xgcd(a, b)
        assert g == a * x + b * y
        assert g >= 0
        if a or b:
            assert a % g == 0 and b % g == 0


def _is_unimodular(u):
    n = len(u)
    sf = smith_form(u)
    return all(sf.d[i] == 1 for i in range(n))


def test_smith_form_known():
    a = [[2, 4], [6, 8]]
    sf = smith_form(a)
    assert sf.d == [2, 4]
    # U a V reproduces the diagonal
    d = matmul(matmul(sf.U, a), sf.V)
    for i, row in enumerate(d):
        for j, x in enumerate(row):
            assert x == (sf.d[i] if i == j and
                         i < len(sf.d) else 0)
    assert _is_unimodular(sf.U) and _is_unimodular(sf.V)


def test_smith_form_random_factorization():
    rng = random.Random(7)
    for _ in range(25):
        rows, cols = rng.randint(1, 5), rng.randint(1, 5)
        a = [[rng.randint(-6, 6) for _ in range(cols)] for _ in range(rows)]
        sf = smith_form(a)
        d = matmul(matmul(sf.U, a), sf.V)
        for i in range(rows):
            for j in range(cols):
                expect = sf.d[i] if i == j and i < len(sf.d) \
                    else 0
                assert d[i][j] == expect
        # divisibility chain
        diag = [x for x in sf.d if x]
        for p, q in zip(diag, diag[1:]):
            assert q % p == 0
        # inverses really invert
        assert matmul(sf.U, sf.Uinv) == [
            [1 if i == j else 0 for j in range(rows)] for i in range(rows)]
        assert matmul(sf.V, sf.Vinv) == [
            [1 if i == j else 0 for j in range(cols)] for i in range(cols)]


def test_integer_kernel_is_saturated():
    # kernel of (2 4) is generated by the primitive (2, -1)
    basis = integer_kernel_basis([[2, 4]])
    assert len(basis) == 1
    v = basis[0]
    assert 2 * v[0] + 4 * v[1] == 0
    from math import gcd
    assert gcd(v[0], v[1]) == 1


def test_integer_kernel_trivial_and_empty_matrix():
    assert integer_kernel_basis([[2, 0], [0, 3]]) == []
    assert len(integer_kernel_basis([], cols=3)) == 3


def test_solve_integer():
    assert solve_integer([[2]], [3]) is None
    x = solve_integer([[2]], [4])
    assert x == [2]
    x = solve_integer([[1, 2], [0, 3]], [5, 6])
    assert x is not None
    assert [x[0] + 2 * x[1], 3 * x[1]] == [5, 6]
    # no columns: only the zero target is reachable
    assert solve_integer([], [0, 0], cols=0) == []
    assert solve_integer([[0], [0]], [1, 0]) is None


def test_integer_quotient_structure():
    # Z^2 / im diag(2, 3) is cyclic of order 6
    kernel = [[1, 0], [0, 1]]
    torsion, free, gens = integer_quotient(kernel, [[2, 0], [0, 3]])
    assert torsion == [6] and free == 0
    # Z^2 / im (2, 0) has a Z/2 and a free factor
    torsion, free, _ = integer_quotient(kernel, [[2], [0]])
    assert torsion == [2] and free == 1
    # no image at all
    torsion, free, _ = integer_quotient(kernel, [])
    assert torsion == [] and free == 2


def test_rational_rref_rank_kernel():
    a = [[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]]
    rref, pivots = rational_rref(a)
    assert pivots == [0]
    assert rational_rank(a) == 1
    ker = rational_kernel_basis(a)
    assert len(ker) == 1
    v = ker[0]
    assert v[0] + 2 * v[1] == 0
    assert rational_rank([]) == 0
    assert rational_rank([[0, 0], [0, 0]]) == 0


def test_rational_solve_and_span():
    a = [[1, 2], [3, 4]]
    x = rational_solve(a, [5, 6])
    assert x is not None
    assert [x[0] + 2 * x[1], 3 * x[0] + 4 * x[1]] == [5, 6]
    assert rational_solve([[1, 2], [2, 4]], [1, 3]) is None
    assert rational_in_span([[1, 2]], [Fraction(1, 2), Fraction(1)])
    assert not rational_in_span([[1, 2]], [1, 3])


def test_random_kernels_annihilate():
    rng = random.Random(21)
    for _ in range(30):
        rows, cols = rng.randint(1, 4), rng.randint(1, 5)
        a = [[rng.randint(-4, 4) for _ in range(cols)] for _ in range(rows)]
        for v in integer_kernel_basis(a, cols=cols):
            assert all(sum(a[i][j] * v[j] for j in range(cols)) == 0
                       for i in range(rows))
        for v in rational_kernel_basis(a, cols=cols):
            assert all(sum(a[i][j] * v[j] for j in range(cols)) == 0
                       for i in range(rows))
