import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from gcx.errors import ContainmentError
from gcx.linalg import (
    ONE,
    ZERO,
    GaussianRational,
    I,
    Matrix,
    Subspace,
    column_space,
    coordinates,
    intersect,
    inverse,
    kernel,
    quotient_dim,
    rank,
    subspace_sum,
)
from oracles import sympy_rank, to_sympy

small = st.integers(-3, 3)
scalars = st.builds(lambda a, b, c: GaussianRational(a, b if c else 0), small, small, st.booleans())


@st.composite
def matrices(draw, max_rows=5, max_cols=5):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    # mostly zeros so ranks vary
    entry = st.one_of(st.just(ZERO), st.just(ZERO), scalars)
    return Matrix([[draw(entry) for _ in range(c)] for _ in range(r)])


def test_scalar_field_axioms():
    a = GaussianRational("1/2", 3)
    assert a * a.inverse() == ONE
    assert I * I == -ONE
    assert a.conjugate() == GaussianRational("1/2", -3)
    assert a - a == ZERO
    assert 2 * a == a + a


def test_scalar_rejects_floats():
    with pytest.raises(TypeError):
        GaussianRational(0.5)


@pytest.mark.parametrize(
    "value, text",
    [
        (GaussianRational("3/2"), "3/2"),
        (I, "i"),
        (-I, "-i"),
        (GaussianRational("1/2", "3/4"), "1/2+3/4i"),
        (GaussianRational(0, 2), "2i"),
        (GaussianRational(1, -1), "1-i"),
    ],
)
def test_scalar_str(value, text):
    assert str(value) == text


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_matches_sympy(m):
    assert rank(m) == sympy_rank(m)


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_kernel_is_killed_and_has_right_dimension(m):
    K = kernel(m)
    assert K.dim == m.ncols - rank(m)
    for v in K.basis:
        assert not any(m @ list(v))


@st.composite
def subspace_pairs(draw):
    n = draw(st.integers(1, 5))
    entry = st.one_of(st.just(ZERO), scalars)
    vecs = st.lists(st.lists(entry, min_size=n, max_size=n), max_size=4)
    return Subspace(n, draw(vecs)), Subspace(n, draw(vecs))


@settings(max_examples=60, deadline=None)
@given(subspace_pairs())
def test_sum_and_intersection_dimension_formula(pair):
    A, B = pair
    S = subspace_sum(A, B)
    X = intersect(A, B)
    assert S.dim + X.dim == A.dim + B.dim
    assert X <= A and X <= B and A <= S and B <= S


def test_intersection_against_sympy():
    A = column_space(Matrix([[1, 0], [0, 1], [0, 0]]))
    B = column_space(Matrix([[1, 0], [1, 0], [0, 1]]))
    X = intersect(A, B)
    assert X == Subspace(3, [[1, 1, 0]])


def test_subspace_equality_is_basis_independent():
    a = Subspace(3, [[1, 2, 0], [0, 1, I]])
    b = Subspace(3, [[1, 3, I], [2, 5, I]])
    assert a == b
    assert a != Subspace(3, [[1, 0, 0]])


def test_quotient_dim_checks_containment():
    big = Subspace(3, [[1, 0, 0], [0, 1, 0]])
    assert quotient_dim(Subspace(3, [[1, 1, 0]]), big) == 1
    with pytest.raises(ContainmentError):
        quotient_dim(Subspace(3, [[0, 0, 1]]), big)


def test_ambient_mismatch_is_an_error():
    with pytest.raises(ValueError):
        Subspace(2, [[1, 0]]) + Subspace(3, [[1, 0, 0]])


@settings(max_examples=40, deadline=None)
@given(matrices(4, 4))
def test_inverse_when_invertible(m):
    if m.nrows != m.ncols or rank(m) < m.nrows:
        return
    assert m @ inverse(m) == Matrix.identity(m.nrows)
    assert to_sympy(inverse(m)) == to_sympy(m).inv()


def test_coordinates_recover_combination():
    cols = [[1, 0, I], [0, 1, 1]]
    v = [2, 3, 2 * I + 3]
    assert coordinates(cols, [v]).column(0) == (GaussianRational(2), GaussianRational(3))
    with pytest.raises(ContainmentError):
        coordinates(cols, [[0, 0, 1]])


def test_equal_subspaces_get_identical_bases():
    m = Matrix([[0, 2, 4], [1, 1, 1], [2, 4, 6]])
    shuffled = Matrix([[r[2], r[0], r[1]] for r in m.rows])
    assert column_space(m).basis == column_space(shuffled).basis


def test_conjugate_transpose():
    m = Matrix([[1, I], [0, 2]])
    assert m.H == Matrix([[1, 0], [-I, 2]])
    assert m.H.H == m
