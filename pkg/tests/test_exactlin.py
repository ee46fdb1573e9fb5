from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from flatiso.errors import InputError
from flatiso.exactlin import (
    Matrix,
    Subspace,
    congruent_diagonalize,
    format_scalar,
    kernel_vectors,
    parse_scalar,
    rank,
    scalar,
    solve,
    vectors_rank,
)

small = st.integers(min_value=-4, max_value=4)
ratios = st.builds(Fraction, small, st.integers(min_value=1, max_value=3))


def matrices(rows=st.integers(1, 4), cols=st.integers(1, 4), entries=ratios):
    return st.tuples(rows, cols).flatmap(
        lambda rc: st.lists(st.lists(entries, min_size=rc[1], max_size=rc[1]), min_size=rc[0], max_size=rc[0])
    ).map(Matrix)


def square_matrices(n=st.integers(1, 4), entries=ratios):
    return n.flatmap(lambda k: st.lists(st.lists(entries, min_size=k, max_size=k), min_size=k, max_size=k)).map(Matrix)


def naive_product(a: Matrix, b: Matrix) -> list[list[Fraction]]:
    return [[sum((a[i, k] * b[k, j] for k in range(a.ncols)), Fraction(0)) for j in range(b.ncols)] for i in range(a.nrows)]


# scalars


@pytest.mark.parametrize("text, value", [("3", Fraction(3)), ("-3/4", Fraction(-3, 4)), ("6/8", Fraction(3, 4)), ("0", Fraction(0))])
def test_parse_scalar(text, value):
    assert parse_scalar(text) == value


@pytest.mark.parametrize("text", ["1.5", "1/0", "", "x", "1/2/3", "0x10"])
def test_parse_scalar_rejects(text):
    with pytest.raises(InputError):
        parse_scalar(text)


def test_scalar_refuses_floats_and_bools():
    with pytest.raises(InputError):
        scalar(0.5)
    with pytest.raises(InputError):
        scalar(True)


@given(ratios)
def test_format_parse_round_trip(x):
    assert parse_scalar(format_scalar(x)) == x


# solve


def test_solve_identity():
    x, kern = solve(Matrix.identity(2), (3, 5))
    assert x == (3, 5) and kern == []


def test_solve_unsolvable():
    assert solve(Matrix.zeros(2), (1, 0)) is None


def test_solve_rank_one():
    x, kern = solve(Matrix([[1, 2], [2, 4]]), (1, 2))
    assert x == (1, 0)
    assert Subspace.span(kern, 2) == Subspace.span([(-2, 1)], 2)


@given(matrices(), st.data())
def test_solve_particular_and_kernel(M, data):
    x0 = tuple(data.draw(st.lists(small, min_size=M.ncols, max_size=M.ncols)))
    b = M @ tuple(Fraction(v) for v in x0)
    sol = solve(M, b)
    assert sol is not None
    x, kern = sol
    assert M @ x == b
    for v in kern:
        assert not any(M @ v)


# rank and kernel


def test_rank_examples():
    assert rank(Matrix.zeros(3)) == 0
    assert rank(Matrix.identity(4)) == 4
    B1 = Matrix([[-1, 0, 0, 0, 0], [0, -1, 0, 0, 0], [0, -1, 0, 0, 0], [-1, 0, 0, 0, 0]])
    assert rank(B1) == 2


@given(matrices())
def test_rank_nullity(M):
    assert rank(M) + len(kernel_vectors(M)) == M.ncols
    assert rank(M) == rank(M.T)


@given(matrices(), st.data())
def test_matmul_matches_naive_product(a, data):
    b = data.draw(matrices(rows=st.just(a.ncols)))
    assert (a @ b).rows == tuple(tuple(r) for r in naive_product(a, b))


@given(square_matrices())
def test_inverse(M):
    if rank(M) < M.nrows:
        with pytest.raises(InputError, match="singular"):
            M.inverse()
        return
    assert M @ M.inverse() == Matrix.identity(M.nrows)


# congruence diagonalisation


@pytest.mark.parametrize(
    "G",
    [
        Matrix.diagonal([1, -1]),
        Matrix([[0, 1], [1, 0]]),
        Matrix.block([[Matrix.zeros(2), Matrix.identity(2)], [Matrix.identity(2), Matrix.zeros(2)]]),
    ],
)
def test_congruent_diagonalize_examples(G):
    D, P = congruent_diagonalize(G)
    assert P.T @ G @ P == D
    diag = [D[i, i] for i in range(D.nrows)]
    assert all(D[i, j] == 0 for i in range(D.nrows) for j in range(D.ncols) if i != j)
    assert sum(1 for d in diag if d > 0) == sum(1 for d in diag if d < 0) == G.nrows // 2


def test_congruent_diagonalize_identity_case():
    D, P = congruent_diagonalize(Matrix.diagonal([1, -1]))
    assert D == Matrix.diagonal([1, -1]) and P == Matrix.identity(2)


@given(square_matrices(entries=small))
def test_congruent_diagonalize_property(A):
    G = A + A.T
    D, P = congruent_diagonalize(G)
    assert P.T @ G @ P == D
    assert rank(P) == P.nrows
    assert all(D[i, j] == 0 for i in range(D.nrows) for j in range(D.ncols) if i != j)


# subspaces


@given(matrices(cols=st.just(4)), matrices(cols=st.just(4)))
def test_subspace_dimension_formula(a, b):
    S, T = Subspace.span(a.rows, 4), Subspace.span(b.rows, 4)
    assert (S + T).dim + S.intersect(T).dim == S.dim + T.dim
    for v in S.intersect(T).basis:
        assert v in S and v in T


@given(matrices(cols=st.just(3)))
def test_subspace_canonical_basis(a):
    S = Subspace.span(a.rows, 3)
    shuffled = Subspace.span(list(reversed(a.rows)) + [tuple(2 * x for x in a.rows[0])], 3)
    assert S == shuffled
    assert S.dim == vectors_rank(list(a.rows))
    for v in a.rows:
        c = S.coordinates(v)
        assert c is not None


def test_matrix_shape_errors():
    with pytest.raises(InputError):
        Matrix([[1, 2], [3]])
    with pytest.raises(InputError):
        Matrix.identity(2) @ Matrix.identity(3)
