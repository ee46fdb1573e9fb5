import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flatiso.centralizer import (
    NOT_OPEN,
    TRANSITIVE,
    IsoAlgebraElement,
    centralizer_algebra,
    certify_nilpotent,
    commutes_with_generators,
    homogeneity_verdict,
    is_nilpotent_matrix,
    lie_closure,
    orbit_span_dim,
    translation_independence,
)
from flatiso.exactlin import Matrix
from flatiso.families import hyperbolic_pair_family
from flatiso.isogrp import AffineIsometry, GroupPresentation, compose, u_gamma
from flatiso.lowdim import cross_matrix
from flatiso.nilrep import NilLieAlgebra, realize_group
from flatiso.quadspace import QuadraticSpace

import samplers


def unit(n, i):
    return tuple(int(j == i) for j in range(n))


@pytest.mark.parametrize("v", [(1, 0), (1, 1)])
def test_lorentz_plane_translation(v):
    sp = QuadraticSpace.from_signature(1, 1)
    P = GroupPresentation(sp, (AffineIsometry.translation_by(sp, v),))
    alg = centralizer_algebra(P)
    # the boost rescales null vectors and moves the others, so only translations survive
    assert len(alg) == 2
    assert all(e.linear.is_zero() for e in alg)


@pytest.mark.parametrize("p, q", [(1, 0), (2, 1), (2, 2), (3, 1)])
def test_empty_presentation_gives_full_algebra(p, q):
    n = p + q
    P = GroupPresentation(QuadraticSpace.from_signature(p, q), ())
    assert len(centralizer_algebra(P)) == n * (n - 1) // 2 + n


def test_centralizer_elements_commute(example_group):
    alg = centralizer_algebra(example_group)
    assert alg
    for e in alg:
        assert commutes_with_generators(e, example_group)


@settings(max_examples=15)
@given(st.integers(0, 100))
def test_invariant_under_generator_change(seed):
    P = hyperbolic_pair_family(2, seed, scramble=False)
    g1, g2 = P.generators[:2]
    Q = GroupPresentation(P.space, (g1, compose(g1, g2)) + P.generators[2:])
    a, b = centralizer_algebra(P), centralizer_algebra(Q)
    assert len(a) == len(b)
    assert all(commutes_with_generators(e, Q) for e in a)


def test_translation_lattice_is_transitive():
    sp = QuadraticSpace.from_signature(2, 1)
    P = GroupPresentation(sp, tuple(AffineIsometry.translation_by(sp, unit(3, i)) for i in range(3)))
    rep = homogeneity_verdict(P)
    assert rep.verdict == TRANSITIVE and rep.orbit_span_dim == 3 and rep.nilpotent_certified


def test_example_group_is_transitive(example_group):
    rep = homogeneity_verdict(example_group)
    assert rep.verdict == TRANSITIVE
    assert orbit_span_dim(rep.certificate) == 14
    assert certify_nilpotent(list(rep.certificate))


def test_lagrangian_candidate_is_not_open():
    space = QuadraticSpace(Matrix.block([[Matrix.zeros(3), Matrix.identity(3)], [Matrix.identity(3), Matrix.zeros(3)]]))

    def elem(x, u):
        A = Matrix.block([[Matrix.zeros(3), cross_matrix(x)], [Matrix.zeros(3), Matrix.zeros(3)]])
        return AffineIsometry(space, A, tuple(u) + (0, 0, 0))

    cand = GroupPresentation(space, (elem((1, 0, 0), (1, 0, 0)), elem((0, 1, 0), (0, 1, 0)), elem((0, 0, 0), (0, 0, 1))))
    assert homogeneity_verdict(cand).verdict == NOT_OPEN


def test_abelian_samples_with_three_dim_image_are_not_open():
    hits = 0
    for seed in range(30):
        P = samplers.abelian_r63(seed)
        if u_gamma(P).dim == 3:
            hits += 1
            assert homogeneity_verdict(P).verdict == NOT_OPEN
    assert hits


def test_nilpotency_certificates():
    n = 3
    z = (0,) * n
    shift = Matrix([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
    rot = Matrix([[0, -1, 0], [1, 0, 0], [0, 0, 0]])
    assert is_nilpotent_matrix(shift) and not is_nilpotent_matrix(rot)
    assert certify_nilpotent([IsoAlgebraElement(shift, z), IsoAlgebraElement(Matrix.zeros(3), (1, 0, 0))])
    assert not certify_nilpotent([IsoAlgebraElement(rot, z)])
    assert lie_closure([IsoAlgebraElement(rot, z)], bail=lambda e: not is_nilpotent_matrix(e.linear)) is None


def test_translation_independence(example_group):
    assert translation_independence(example_group)
    sp = QuadraticSpace.from_signature(2, 0)
    t = AffineIsometry.translation_by(sp, (1, 1))
    assert not translation_independence(GroupPresentation(sp, (t, t)))
    h = realize_group(NilLieAlgebra.heisenberg(), [unit(6, i) for i in range(6)])
    assert translation_independence(h)
