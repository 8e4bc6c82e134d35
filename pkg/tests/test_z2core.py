import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from z2annot.oracle import greedy_earliest_basis
from z2annot.z2core import (
    InconsistentSystemError,
    SingularMatrixError,
    Z2Error,
    Z2Matrix,
    coordinate_decomposition,
    earliest_basis,
    express_in_basis,
    in_column_space,
    inverse,
    mat_mul,
    rank,
)


def random_matrix(rng, rows, cols, density=0.5):
    return Z2Matrix.from_lists([[int(rng.random() < density) for _ in range(cols)] for _ in range(rows)])


def numpy_product(a, b):
    """Definition oracle: integer product reduced mod 2."""
    return (a.to_numpy().astype(int) @ b.to_numpy().astype(int)) % 2


@st.composite
def matrices(draw, max_rows=12, max_cols=12):
    rows = draw(st.integers(0, max_rows))
    cols = draw(st.integers(0, max_cols))
    data = draw(st.lists(st.integers(0, (1 << cols) - 1), min_size=rows, max_size=rows))
    return Z2Matrix.from_rows(rows, cols, data)


# -- representation ------------------------------------------------------


def test_padding_bits_rejected():
    with pytest.raises(Z2Error):
        Z2Matrix.from_rows(1, 2, [0b100])


def test_empty_matrices_are_valid():
    for m in (Z2Matrix.zeros(0, 5), Z2Matrix.zeros(4, 0), Z2Matrix.zeros(0, 0)):
        assert rank(m) == 0
        assert earliest_basis(m) == []
    assert inverse(Z2Matrix.zeros(0, 0)).shape == (0, 0)


def test_columns_roundtrip():
    rng = random.Random(3)
    a = random_matrix(rng, 7, 11)
    b = Z2Matrix.from_columns(7, a.columns())
    assert a == b
    assert a.transpose().transpose() == a


# -- mat_mul ---------------------------------------------------------------


def test_identity_times_a():
    a = random_matrix(random.Random(0), 3, 5)
    assert Z2Matrix.identity(3) @ a == a


def test_zero_annihilates():
    a = random_matrix(random.Random(1), 4, 3)
    assert (a @ Z2Matrix.zeros(3, 6)).is_zero()


def test_small_product_against_definition():
    a = Z2Matrix.from_lists([[1, 1], [0, 1]])
    b = Z2Matrix.from_lists([[1, 0], [1, 1]])
    expected = numpy_product(a, b)
    assert expected.tolist() == [[0, 1], [1, 1]]
    assert (a @ b).to_lists() == expected.tolist()


def test_dimension_mismatch():
    with pytest.raises(Z2Error):
        mat_mul(Z2Matrix.zeros(2, 3), Z2Matrix.zeros(2, 3))


@pytest.mark.parametrize("seed", range(10))
def test_mat_mul_matches_definition(seed):
    rng = random.Random(seed)
    m, n, p = rng.randint(1, 40), rng.randint(1, 40), rng.randint(1, 40)
    a, b = random_matrix(rng, m, n), random_matrix(rng, n, p)
    assert (a @ b).to_lists() == numpy_product(a, b).tolist()


# -- inverse ---------------------------------------------------------------


def test_inverse_examples():
    assert inverse(Z2Matrix.identity(4)) == Z2Matrix.identity(4)
    u = Z2Matrix.from_lists([[1, 1], [0, 1]])
    assert inverse(u) == u
    swap = Z2Matrix.from_lists([[0, 1], [1, 0]])
    inv = inverse(swap)
    assert inv == swap
    assert swap @ inv == Z2Matrix.identity(2)


def test_singular_reports_rank():
    with pytest.raises(SingularMatrixError) as exc:
        inverse(Z2Matrix.from_lists([[1, 1], [1, 1]]))
    assert exc.value.rank == 1


def test_inverse_non_square():
    with pytest.raises(Z2Error):
        inverse(Z2Matrix.zeros(2, 3))


@pytest.mark.parametrize("seed", range(20))
def test_inverse_random_invertible(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 30)
    while True:
        a = random_matrix(rng, n, n)
        if rank(a) == n:
            break
    inv = inverse(a)
    assert inv @ a == Z2Matrix.identity(n)
    assert a @ inv == Z2Matrix.identity(n)


# -- earliest basis / rank -------------------------------------------------


def test_earliest_basis_examples():
    assert earliest_basis(Z2Matrix.zeros(3, 4)) == []
    a = Z2Matrix.from_lists([[1, 0, 1], [0, 1, 1]])
    assert greedy_earliest_basis(a.columns()) == [0, 1]
    assert earliest_basis(a) == [0, 1]
    assert rank(a) == 2
    assert rank(Z2Matrix.identity(5)) == 5
    zero_first = Z2Matrix.from_lists([[0, 1, 1], [0, 0, 1]])
    assert 0 not in earliest_basis(zero_first)


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_greedy_prefix_characterization(a):
    basis = set(earliest_basis(a))
    cols = a.columns()
    for j in range(a.cols):
        grew = rank(Z2Matrix.from_columns(a.rows, cols[: j + 1])) > rank(Z2Matrix.from_columns(a.rows, cols[:j]))
        assert grew == (j in basis)


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rank_equals_rank_of_transpose(a):
    assert rank(a) == rank(a.transpose())


# -- coordinate decomposition ----------------------------------------------


def reconstruct(a, dec):
    """B_opt [I_r | R] as a matrix, to compare with A P."""
    b_opt = a.select_columns(dec.basis_indices)
    coords = Z2Matrix.identity(dec.rank).hstack(dec.remainder)
    return b_opt @ coords


def test_decomposition_examples():
    full = Z2Matrix.identity(3)
    assert coordinate_decomposition(full).remainder.cols == 0

    a = Z2Matrix.from_lists([[1, 0, 1], [0, 1, 1]])
    dec = coordinate_decomposition(a)
    assert dec.basis_indices == (0, 1)
    assert dec.remainder.to_lists() == [[1], [1]]

    dup = Z2Matrix.from_lists([[1, 0, 1], [1, 1, 1], [0, 1, 0]])  # column 2 copies column 0
    dec = coordinate_decomposition(dup)
    assert dec.basis_indices == (0, 1)
    assert dec.remainder.to_lists() == [[1], [0]]


@pytest.mark.parametrize("seed", range(100))
def test_decomposition_reconstructs(seed):
    rng = random.Random(seed)
    a = random_matrix(rng, rng.randint(0, 64), rng.randint(0, 64), density=rng.choice([0.1, 0.5]))
    dec = coordinate_decomposition(a)
    assert list(dec.basis_indices) == sorted(dec.basis_indices)
    assert reconstruct(a, dec) == a.select_columns(dec.permutation)
    for j in range(a.cols):
        assert express_in_basis(a.select_columns(dec.basis_indices), a.select_columns([j])).column(0) == dec.coordinates(j)


# -- express_in_basis / in_column_space ------------------------------------


def test_express_examples():
    b = Z2Matrix.from_columns(2, [0b11, 0b10])  # e1+e2, e2
    assert express_in_basis(b, b) == Z2Matrix.identity(2)
    assert express_in_basis(b, Z2Matrix.zeros(2, 3)).is_zero()
    x = express_in_basis(b, Z2Matrix.from_columns(2, [0b01]))
    assert x.to_lists() == [[1], [1]]


def test_express_inconsistent_names_column():
    b = Z2Matrix.from_columns(3, [0b001])
    with pytest.raises(InconsistentSystemError) as exc:
        express_in_basis(b, Z2Matrix.from_columns(3, [0b001, 0b010]))
    assert exc.value.column == 1


@settings(max_examples=100, deadline=None)
@given(matrices(), st.data())
def test_express_round_trip(a, data):
    basis = a.select_columns(earliest_basis(a))
    coeffs = data.draw(st.lists(st.integers(0, (1 << a.cols) - 1 if a.cols else 0), min_size=3, max_size=3))
    cols = a.columns()
    targets = []
    for c in coeffs:
        t = 0
        for j in range(a.cols):
            if (c >> j) & 1:
                t ^= cols[j]
        targets.append(t)
    tm = Z2Matrix.from_columns(a.rows, targets)
    assert basis @ express_in_basis(basis, tm) == tm


def test_in_column_space_examples():
    a = Z2Matrix.from_lists([[1], [0]])
    assert in_column_space(a, 0)
    assert in_column_space(a, a.column(0))
    assert not in_column_space(a, Z2Matrix.from_lists([[0], [1]]))


def test_in_column_space_matches_enumeration():
    rng = random.Random(9)
    for _ in range(20):
        a = random_matrix(rng, 5, 3)
        cols = a.columns()
        span = set()
        for mask in range(8):
            v = 0
            for j in range(3):
                if (mask >> j) & 1:
                    v ^= cols[j]
            span.add(v)
        for v in range(32):
            assert in_column_space(a, v) == (v in span)


def test_numpy_interop():
    arr = np.array([[1, 0, 3], [2, 1, 1]])
    m = Z2Matrix.from_numpy(arr)
    assert m.to_lists() == [[1, 0, 1], [0, 1, 1]]
    assert (m.to_numpy() == arr % 2).all()
