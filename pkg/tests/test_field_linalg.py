from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mkoszul import linalg
from mkoszul.field import GF, QQ

F7 = GF(7)

fp_values = st.integers(min_value=0, max_value=6)
small = st.integers(min_value=-4, max_value=4)


@given(fp_values, fp_values, fp_values)
def test_fp_field_axioms(a, b, c):
    x, y, z = F7(a), F7(b), F7(c)
    assert (x + y) * z == x * z + y * z
    assert x * y == y * x
    assert x - x == 0
    if y:
        assert (x / y) * y == x
        assert y * y.inverse() == 1


def test_fp_fraction_coercion():
    assert F7(Fraction(1, 2)) == 4
    assert F7(-1) == 6
    with pytest.raises(ZeroDivisionError):
        F7(Fraction(1, 7))


def test_parse_and_render():
    assert QQ.parse("-3/6") == Fraction(-1, 2)
    assert QQ.render(Fraction(5, 3)) == "5/3"
    assert F7.render(F7.parse("1/2")) == "4"
    with pytest.raises(ValueError):
        QQ.parse("1.5")
    with pytest.raises(TypeError):
        QQ(0.5)


def test_non_prime_rejected():
    with pytest.raises(ValueError):
        GF(9)


matrices = st.integers(min_value=1, max_value=4).flatmap(
    lambda r: st.integers(min_value=1, max_value=5).flatmap(
        lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


@given(matrices)
def test_rank_nullity_and_kernel(rows):
    ncols = len(rows[0])
    kernel = linalg.nullspace(rows, ncols, QQ)
    assert linalg.rank(rows, QQ, ncols) + len(kernel) == ncols
    for v in kernel:
        assert all(x == 0 for x in linalg.matvec(linalg.as_matrix(rows, QQ), v, QQ))


@given(matrices)
def test_rref_is_reduced(rows):
    red, pivots = linalg.rref(rows, QQ)
    for k, (row, p) in enumerate(zip(red, pivots)):
        assert row[p] == 1
        assert all(not row[j] for j in range(p))
        assert all(not other[p] for i, other in enumerate(red) if i != k)
    assert pivots == sorted(pivots)


@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=3, max_size=3))
def test_inverse_and_det(rows):
    A = linalg.as_matrix(rows, QQ)
    det = linalg.det(A, QQ)
    if det == 0:
        with pytest.raises(ZeroDivisionError):
            linalg.inverse(A, QQ)
    else:
        assert linalg.matmul(linalg.inverse(A, QQ), A, QQ) == linalg.identity(3, QQ)


def test_det_against_cofactor_expansion():
    A = [[2, -1, 0], [1, 3, 4], [0, 5, -2]]
    cof = 2 * (3 * -2 - 4 * 5) - (-1) * (1 * -2 - 4 * 0) + 0
    assert linalg.det(A, QQ) == cof


@given(st.lists(st.lists(fp_values, min_size=3, max_size=3), min_size=2, max_size=2), st.lists(fp_values, min_size=2, max_size=2))
def test_solve_over_f7(rows, b):
    A = linalg.as_matrix(rows, F7)
    b = [F7(x) for x in b]
    x, kernel = linalg.solve(A, b, F7, 3)
    if x is None:
        assert linalg.rank(A, F7, 3) < linalg.rank([r + [bi] for r, bi in zip(A, b)], F7, 4)
    else:
        assert linalg.matvec(A, x, F7) == b
