import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from darboux.linalg import ExactMatrix, bareiss_determinant, echelon_rows, kernel_basis, normalize_vector, rank
from darboux.poly import DEFAULT_CONTEXT
from oracles import gauss_det, gauss_nullspace, gauss_rank

z, y = DEFAULT_CONTEXT.var("z"), DEFAULT_CONTEXT.var("y")


def _random_matrix(rng: random.Random):
    m, n = rng.randint(1, 12), rng.randint(1, 12)
    density = rng.choice((0.2, 0.5, 0.9))
    rows = [[Fraction(rng.randint(-9, 9), rng.randint(1, 5)) if rng.random() < density else Fraction(0)
             for _ in range(n)] for _ in range(m)]
    # some rank deficiency: overwrite a row with a combination of two others
    if m >= 3 and rng.random() < 0.5:
        s, t = Fraction(rng.randint(-3, 3)), Fraction(rng.randint(-3, 3), 2)
        rows[-1] = [s * u + t * v for u, v in zip(rows[0], rows[1])]
    return rows, n


def test_identity_has_empty_kernel():
    assert kernel_basis(ExactMatrix.from_dense([[1, 0], [0, 1]])) == []


def test_single_row_kernel():
    assert kernel_basis(ExactMatrix.from_dense([[1, -1]])) == [(1, 1)]


def test_zero_matrix_kernel_is_everything():
    M = ExactMatrix.from_dense([[0, 0, 0]])
    assert kernel_basis(M) == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    assert rank(M) == 0


def test_normalize_vector():
    assert normalize_vector([Fraction(-1, 2), Fraction(1, 3), 0]) == (3, -2, 0)
    assert normalize_vector([0, 0]) == (0, 0)


def test_pivot_rule_is_first_row_in_construction_order():
    M = ExactMatrix.from_dense([[0, 1], [2, 0], [3, 3]])
    prows, pcols = echelon_rows(M)
    assert pcols == [0, 1]
    assert prows[0] == {0: 1}  # row [2, 0] made primitive


def test_from_images_labels_rows_by_monomial():
    M = ExactMatrix.from_images([y * y + z, z], ["a", "b"])
    assert M.shape == (2, 2)
    assert M.row_labels[0] == (0, 2, 0, 0, 0, 0)
    assert kernel_basis(M) == []


def test_matrix_validation():
    with pytest.raises(ValueError):
        ExactMatrix(({5: Fraction(1)},), (0,), (0,))
    with pytest.raises(ValueError):
        ExactMatrix(({}, {}), (0, 0), (0,))


def test_bareiss_integer_and_polynomial():
    assert bareiss_determinant([[2, 1], [1, 3]], 0, 1, lambda a, b: a // b) == 5
    assert bareiss_determinant([[0, 1], [1, 0]], 0, 1, lambda a, b: a // b) == -1
    assert bareiss_determinant([], 0, 1, lambda a, b: a // b) == 1
    ctx = DEFAULT_CONTEXT
    D = bareiss_determinant([[z, y], [y, z]], ctx.zero(), ctx.one(), lambda a, b: a.exact_divide(b))
    assert D == z * z - y * y
    with pytest.raises(ValueError):
        bareiss_determinant([[1, 2]], 0, 1, lambda a, b: a // b)


def test_agrees_with_naive_gaussian_elimination_on_200_matrices():
    rng = random.Random(20240917)
    for _ in range(200):
        rows, n = _random_matrix(rng)
        M = ExactMatrix.from_dense(rows)
        assert rank(M) == gauss_rank(rows)
        expected = [normalize_vector(v) for v in gauss_nullspace(rows, n)]
        assert kernel_basis(M) == expected
        if len(rows) == n:
            assert bareiss_determinant(rows, Fraction(0), Fraction(1), lambda a, b: a / b) == gauss_det(rows)


small = st.builds(Fraction, st.integers(-4, 4), st.integers(1, 3))


@given(st.integers(1, 6).flatmap(
    lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=1, max_size=6)))
def test_kernel_soundness(rows):
    M = ExactMatrix.from_dense(rows)
    basis = kernel_basis(M)
    assert len(basis) + rank(M) == len(rows[0])
    for v in basis:
        assert all(c == 0 for c in M.apply(v))
        lead = next(c for c in v if c)
        assert lead > 0
