import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flatiso.errors import ConstructionError, InputError, ScopeError
from flatiso.exactlin import Matrix
from flatiso.families import random_unimodular
from flatiso.isogrp import AffineIsometry, GroupPresentation, transform_presentation, u_gamma
from flatiso.lowdim import (
    FREE_ABELIAN_WITH_HOLONOMY,
    HEISENBERG_TIMES_TRANSLATIONS,
    OUT_OF_SCOPE,
    PURE_TRANSLATIONS,
    RANK6_LATTICE,
    alpha_of,
    classify,
    construct_dim6,
    construct_sig2,
    cross_matrix,
    lagrangian_frame,
)
from flatiso.quadspace import QuadraticSpace

import samplers

E = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]


def test_cross_matrix_examples():
    assert cross_matrix((0, 0, 0)).is_zero()
    T = cross_matrix((1, 2, 3))
    assert T == -T.T
    assert T @ (4, 5, 6) == (2 * 6 - 3 * 5, 3 * 4 - 1 * 6, 1 * 5 - 2 * 4)
    with pytest.raises(InputError):
        cross_matrix((1, 2))


@given(st.lists(st.integers(-5, 5), min_size=3, max_size=3), st.lists(st.integers(-5, 5), min_size=3, max_size=3))
def test_cross_matrix_is_antisymmetric_product(x, y):
    assert cross_matrix(x) @ tuple(y) == tuple(-c for c in cross_matrix(y) @ tuple(x))
    assert cross_matrix(x) @ tuple(x) == (0, 0, 0)


def test_alpha_of_examples():
    P = construct_dim6("a", {"ustar": E[:2], "alpha": Fraction(-3, 2)})
    frame = lagrangian_frame(P.space, u_gamma(P))
    assert [alpha_of(g, frame) for g in P.generators] == [Fraction(-3, 2)] * 2
    ident = AffineIsometry.identity(P.space)
    assert alpha_of(ident, frame) == 0


def test_alpha_of_mismatch():
    P = construct_dim6("b", {"ustar": E})
    frame = lagrangian_frame(P.space, u_gamma(P))
    g = P.generators[0]
    # keep the corner block, move the translation onto another U* direction
    moved = AffineIsometry(P.space, g.nilpart, frame.from_coordinates((0, 0, 0), (), (0, 1, 0)))
    assert alpha_of(moved, frame) is None


def test_pure_translations():
    sp = QuadraticSpace.from_signature(2, 1)
    P = GroupPresentation(sp, (AffineIsometry.translation_by(sp, (1, 0, 0)), AffineIsometry.translation_by(sp, (0, 0, 1))))
    v = classify(P)
    assert v.tag == PURE_TRANSLATIONS and v.rank == 2
    assert not v.qualifiers


def test_sig2_single_generator_is_transitive():
    P = construct_sig2(1, 5, [{"c": 1, "u": (1, 0), "w": (1,)}])
    assert P.space.signature == (3, 2)
    v = classify(P)
    assert v.tag == FREE_ABELIAN_WITH_HOLONOMY and v.rank == 1 and v.qualifiers == ()


def test_sig2_rejects_broken_dependency():
    gens = [{"c": 1, "u": (1, 0), "w": (1,)}, {"c": 1, "u": (0, 1), "w": (2,)}]
    with pytest.raises(ConstructionError, match="dependency-condition"):
        construct_sig2(2, 5, gens)
    gens[1]["c"] = 2
    assert classify(construct_sig2(2, 5, gens)).tag == FREE_ABELIAN_WITH_HOLONOMY


def test_sig2_three_generators_in_dimension_eight():
    gens = [(1, (1, 0), (1, 0, 0, 0)), (2, (0, 1), (0, 1, 0, 0)), (-1, (0, 0), (0, 0, 1, 0))]
    P = construct_sig2(3, 8, gens)
    assert P.space.signature == (6, 2)
    v = classify(P)
    assert v.tag == FREE_ABELIAN_WITH_HOLONOMY and v.rank == 3


def test_sig2_shape_errors():
    with pytest.raises(ConstructionError):
        construct_sig2(1, 3, [(1, (1, 0), ())])
    with pytest.raises(ConstructionError):
        construct_sig2(2, 5, [(1, (1, 0), (1,))])
    with pytest.raises(ConstructionError, match="independent"):
        construct_sig2(2, 5, [(1, (1, 0), (1,)), (1, (1, 0), (1,))])


@settings(max_examples=15)
@given(st.integers(0, 300))
def test_sig2_samples_classify_after_basis_change(seed):
    P, _ = samplers.sig2_sample(seed)
    Q = transform_presentation(P, random_unimodular(P.dim, random.Random(seed)))
    expected = PURE_TRANSLATIONS if all(a.is_zero() for a in P.nilparts()) else FREE_ABELIAN_WITH_HOLONOMY
    assert classify(Q).tag == expected


def test_dim6_type_a():
    v = classify(construct_dim6("a", {"ustar": E[:2]}))
    assert v.tag == HEISENBERG_TIMES_TRANSLATIONS and v.rank == 3
    assert v.data["commutator_span"] == 1
    v = classify(construct_dim6("a", {"ustar": E[:2], "theta": [E[0]]}))
    assert v.tag == HEISENBERG_TIMES_TRANSLATIONS and v.rank == 4 and v.data["rank_theta"] == 1
    # e1* x e2* = e3, so a theta along e3 repeats the center
    with pytest.raises(ConstructionError, match="center"):
        construct_dim6("a", {"ustar": E[:2], "theta": [E[2]]})


def test_dim6_type_b():
    v = classify(construct_dim6("b", {"ustar": E}))
    assert v.tag == RANK6_LATTICE and v.rank == 6 and v.data["commutator_span"] == 3
    rules = [rule for rule, _ in v.trail]
    assert "alpha-agrees-on-non-commuting-pairs" in rules


def test_dim6_construction_errors():
    with pytest.raises(ConstructionError):
        construct_dim6("c", {"ustar": E})
    with pytest.raises(ConstructionError):
        construct_dim6("a", {"ustar": E[:2], "alpha": 0})
    with pytest.raises(ConstructionError):
        construct_dim6("a", {"ustar": [E[0], E[0]]})
    with pytest.raises(ConstructionError):
        construct_dim6("b", {"ustar": E, "theta": [E[0]]})


def test_mixed_alpha_is_out_of_scope():
    P = construct_dim6("a", {"ustar": E[:2]})
    Q = construct_dim6("a", {"ustar": E[:2], "alpha": 2})
    mixed = GroupPresentation(P.space, (P.generators[0], Q.generators[1]))
    v = classify(mixed)
    assert v.tag == OUT_OF_SCOPE and v.data["violated"] == "alpha-agrees-on-non-commuting-pairs"


def test_abelian_three_dim_image_is_out_of_scope():
    for seed in range(30):
        P = samplers.abelian_r63(seed)
        if u_gamma(P).dim == 3:
            v = classify(P)
            assert v.tag == OUT_OF_SCOPE
            assert "homogeneity not certified" in v.qualifiers or v.data.get("dim_u_gamma") == 3
            return
    pytest.fail("no sample with a three-dimensional holonomy image")


def test_large_signature_raises_scope_error(example_group):
    with pytest.raises(ScopeError):
        classify(example_group)


def test_lorentzian_holonomy_is_out_of_scope():
    sp = QuadraticSpace.from_signature(2, 1)
    shear = AffineIsometry(sp, Matrix([[0, 0, 0], [0, 0, 0], [1, 0, 0]]), (0, 0, 0))
    v = classify(GroupPresentation(sp, (shear,)))
    assert v.tag == OUT_OF_SCOPE
