import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from flatiso.errors import InputError, PreconditionError
from flatiso.exactlin import Matrix, Subspace, vectors_rank
from flatiso.families import hyperbolic_gram
from flatiso.quadspace import (
    QuadraticSpace,
    _ternary_solution,
    find_isotropic_vector,
    frame_from_coordinates,
    is_totally_isotropic,
    maximal_isotropic_subspace,
    orthogonal_complement,
    refine_frame_for_pair,
    signature,
    witt_frame,
    witt_index,
)

import samplers


def e(n, *idx):
    return tuple(1 if i in idx else 0 for i in range(n))


def frame_gram_ok(space, frame) -> bool:
    F = frame.matrix()
    G = F.T @ space.gram @ F
    n, k = space.dim, frame.k
    m = n - 2 * k
    return (
        G.submatrix(0, k, 0, k).is_zero()
        and G.submatrix(n - k, n, n - k, n).is_zero()
        and G.submatrix(0, k, n - k, n) == Matrix.identity(k)
        and G.submatrix(0, k, k, k + m).is_zero()
        and G.submatrix(k, k + m, n - k, n).is_zero()
        and vectors_rank(list(G.submatrix(k, k + m, k, k + m).rows)) == m
    )


def test_signature_examples(example_group):
    assert signature(QuadraticSpace(Matrix.identity(3))) == (3, 0, 0)
    assert signature(example_group.space) == (7, 7, 0)
    plane = Subspace.span([e(4, 0), e(4, 1)], 4)
    assert signature(QuadraticSpace(hyperbolic_gram(2)), plane) == (0, 0, 2)


def test_witt_index_examples(example_group):
    assert witt_index(QuadraticSpace.from_signature(1, 1)) == 1
    assert witt_index(example_group.space) == 7
    assert witt_index(QuadraticSpace(Matrix.identity(2))) == 0


def test_space_rejects_bad_grams():
    with pytest.raises(InputError, match="degenerate"):
        QuadraticSpace(Matrix([[1, 1], [1, 1]]))
    with pytest.raises(InputError, match="symmetric"):
        QuadraticSpace(Matrix([[1, 2], [0, 1]]))
    with pytest.raises(InputError, match="p >= q"):
        QuadraticSpace.from_signature(1, 2)


def test_total_isotropy_examples():
    sp = QuadraticSpace.from_signature(1, 1)
    assert is_totally_isotropic(sp, Subspace.zero(2))
    assert not is_totally_isotropic(sp, Subspace.span([e(2, 0)], 2))
    assert is_totally_isotropic(sp, Subspace.span([(1, 1)], 2))


def test_example_u0_is_isotropic(example_group):
    U = Subspace.span([e(14, i) for i in range(5)], 14)
    assert is_totally_isotropic(example_group.space, U)


def test_orthogonal_complement_examples():
    sp = QuadraticSpace(hyperbolic_gram(1))
    assert orthogonal_complement(sp, Subspace.full(2)) == Subspace.zero(2)
    line = Subspace.span([e(2, 0)], 2)
    assert orthogonal_complement(sp, line) == line


def test_double_complement_50_random_subspaces():
    rng = random.Random(5)
    for _ in range(50):
        p = rng.randint(1, 4)
        q = rng.randint(0, p)
        sp = samplers.scrambled_space(p, q, rng)
        n = sp.dim
        S = Subspace.span([[rng.randint(-2, 2) for _ in range(n)] for _ in range(rng.randint(0, n))], n)
        perp = orthogonal_complement(sp, S)
        assert perp.dim == n - S.dim
        assert orthogonal_complement(sp, perp) == S


def test_witt_frame_of_zero_subspace():
    sp = QuadraticSpace.from_signature(2, 1)
    frame = witt_frame(sp, Subspace.zero(3))
    assert frame.k == 0 and len(frame.w_basis) == 3


def test_witt_frame_keeps_a_standard_witt_basis(example_group):
    U = Subspace.span([e(14, i) for i in range(5)], 14)
    frame = witt_frame(example_group.space, U)
    assert frame.matrix() == Matrix.identity(14)


def test_witt_frame_random_planes_in_r63():
    rng = random.Random(11)
    for _ in range(10):
        sp = samplers.scrambled_space(3, 3, rng)
        U = maximal_isotropic_subspace(sp)
        plane = Subspace.span(U.basis[:2], 6)
        frame = witt_frame(sp, plane)
        assert frame.is_valid() and frame_gram_ok(sp, frame)


def test_witt_frame_needs_isotropic_input():
    sp = QuadraticSpace.from_signature(1, 1)
    with pytest.raises(PreconditionError):
        witt_frame(sp, Subspace.span([e(2, 0)], 2))


def test_frame_from_coordinates_rejects_non_witt_basis():
    with pytest.raises(PreconditionError):
        frame_from_coordinates(QuadraticSpace.from_signature(2, 2), 2)
    frame = frame_from_coordinates(QuadraticSpace(hyperbolic_gram(2)), 2)
    assert frame.is_valid()


@given(st.data())
def test_frame_coordinates_round_trip(data):
    rng = random.Random(data.draw(st.integers(0, 10_000)))
    sp = samplers.scrambled_space(3, 2, rng)
    frame = witt_frame(sp, maximal_isotropic_subspace(sp))
    v = tuple(Fraction(data.draw(st.integers(-5, 5))) for _ in range(5))
    assert frame.from_coordinates(*frame.coordinates(v)) == v


def test_pair_refinement_on_example_columns(example_group):
    gw = Matrix.diagonal([1, 1, -1, -1])
    b1 = [(-1, 0, 0, -1), (0, -1, -1, 0)]
    b2 = [(0, 1, -1, 0), (-1, 0, 0, 1)]
    ref = refine_frame_for_pair(gw, b1[0], b1[1], b2[0], b2[1])
    assert ref.dim_w_prime == 0 and ref.frame.is_valid()
    assert ref.witt_index_w == 2


def test_pair_refinement_hyperbolic_and_extra_summand():
    neg = lambda v: tuple(-x for x in v)
    # the dual of e0 is e2 and the dual of e1 is e3 = -b2i
    ref = refine_frame_for_pair(hyperbolic_gram(2), e(4, 0), e(4, 1), neg(e(4, 3)), e(4, 2))
    assert ref.dim_w_prime == 0
    gw = Matrix.block([[hyperbolic_gram(2), Matrix.zeros(4, 2)], [Matrix.zeros(2, 4), Matrix.diagonal([1, -1])]])
    ref = refine_frame_for_pair(gw, e(6, 0), e(6, 1), neg(e(6, 3)), e(6, 2))
    assert ref.dim_w_prime == 2 and ref.frame.is_valid()


def test_pair_refinement_needs_pairing():
    with pytest.raises(PreconditionError):
        refine_frame_for_pair(hyperbolic_gram(2), e(4, 0), e(4, 1), e(4, 0), e(4, 1))


# isotropic vectors


def brute_force_ternary(a, b, c, box=6):
    for x, y, z in itertools.product(range(-box, box + 1), repeat=3):
        if (x, y, z) != (0, 0, 0) and a * x * x + b * y * y + c * z * z == 0:
            return x, y, z
    return None


nonzero = st.integers(-12, 12).filter(bool)


@given(nonzero, nonzero, nonzero)
def test_ternary_solver_agrees_with_brute_force(a, b, c):
    sol = _ternary_solution([Fraction(a), Fraction(b), Fraction(c)])
    if sol is not None:
        x, y, z = sol
        assert any(sol) and a * x * x + b * y * y + c * z * z == 0
    if brute_force_ternary(a, b, c) is not None:
        assert sol is not None


def test_ternary_solver_proves_anisotropy():
    # x^2 + y^2 = 3 z^2 has no rational solution
    assert _ternary_solution([Fraction(1), Fraction(1), Fraction(-3)]) is None
    assert _ternary_solution([Fraction(1), Fraction(1), Fraction(1)]) is None


@given(st.integers(0, 10_000), st.integers(1, 4), st.integers(1, 4))
def test_isotropic_witness_matches_witt_index(seed, p, q):
    if q > p:
        p, q = q, p
    sp = samplers.scrambled_space(p, q, random.Random(seed))
    U = maximal_isotropic_subspace(sp)
    assert is_totally_isotropic(sp, U)
    assert U.dim == witt_index(sp) == q


def test_find_isotropic_vector_definite():
    assert find_isotropic_vector(Matrix.identity(3)) is None
    v = find_isotropic_vector(Matrix.diagonal([2, -8]))
    assert v is not None and 2 * v[0] ** 2 - 8 * v[1] ** 2 == 0
