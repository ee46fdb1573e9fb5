from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from flatiso.errors import InputError
from flatiso.exactlin import Matrix
from flatiso.isogrp import compose, holonomy_abelian, is_abelian, validate_presentation
from flatiso.nilrep import NilLieAlgebra, bch_inverse, bch_multiply, build_cotangent, realize_group, represent
from flatiso.quadspace import signature

H = build_cotangent(NilLieAlgebra.heisenberg())
elements = st.lists(st.builds(Fraction, st.integers(-4, 4), st.integers(1, 3)), min_size=6, max_size=6).map(tuple)


def unit(n, i):
    return tuple(int(j == i) for j in range(n))


def test_abelian_cotangent_gram():
    h = build_cotangent(NilLieAlgebra.abelian(2))
    assert h.gram() == Matrix([[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]])
    assert all(not any(h.bracket(x, y)) for x in h.basis() for y in h.basis())


def test_heisenberg_coadjoint_bracket():
    # [(e1, 0), (0, e3*)] = (0, -e2*)
    assert H.bracket(unit(6, 0), unit(6, 5)) == (0, 0, 0, 0, -1, 0)
    assert H.bracket(unit(6, 0), unit(6, 1)) == unit(6, 2)


def test_cotangent_signature():
    assert signature(H.space()) == (3, 3, 0)


@given(elements, elements, elements)
def test_pairing_is_invariant(x, y, z):
    assert H.pair(H.bracket(x, y), z) + H.pair(y, H.bracket(x, z)) == 0


@given(elements, elements, elements)
def test_bch_group_laws(x, y, z):
    assert bch_multiply(H, bch_multiply(H, x, y), z) == bch_multiply(H, x, bch_multiply(H, y, z))
    assert not any(bch_multiply(H, x, bch_inverse(x)))
    # group commutator is the Lie bracket in a 2-step algebra
    xy = bch_multiply(H, x, y)
    comm = bch_multiply(H, xy, bch_multiply(H, bch_inverse(x), bch_inverse(y)))
    assert comm == H.bracket(x, y)


@given(elements, elements, elements)
def test_represent_is_right_multiplication(g, k, x):
    assert represent(H, g).apply(x) == bch_multiply(H, x, bch_inverse(g))
    assert compose(represent(H, g), represent(H, k)) == represent(H, bch_multiply(H, g, k))


def test_represent_examples():
    ident = represent(H, (0,) * 6)
    assert ident.is_identity()
    g = represent(H, unit(6, 2))
    # the center acts by a pure translation
    assert g.nilpart.is_zero() and g.translation == tuple(-x for x in unit(6, 2))


def test_realize_heisenberg_generators():
    P = realize_group(NilLieAlgebra.heisenberg(), [unit(6, 0), unit(6, 1)])
    assert validate_presentation(P).admissible
    assert holonomy_abelian(P) and not is_abelian(P)
    assert P.space.signature == (3, 3)


def test_realize_abelian_gives_translations():
    P = realize_group(NilLieAlgebra.abelian(2), [unit(4, 0), unit(4, 1), unit(4, 3)])
    assert all(a.is_zero() for a in P.nilparts())
    assert is_abelian(P)


def test_realize_rejects_bad_input():
    with pytest.raises(InputError):
        realize_group(NilLieAlgebra.heisenberg(), [(0,) * 6])
    with pytest.raises(InputError):
        realize_group(NilLieAlgebra.heisenberg(), [(1, 0, 0)])


def test_non_two_step_algebra_rejected():
    # filiform: [e1, e2] = e3, [e1, e3] = e4
    with pytest.raises(InputError, match="2-step"):
        NilLieAlgebra.from_brackets(4, [(0, 1, 2, 1), (0, 2, 3, 1)])
    with pytest.raises(InputError):
        NilLieAlgebra.from_brackets(3, [(1, 0, 2, 1)])
    with pytest.raises(InputError):
        NilLieAlgebra.from_brackets(3, [(0, 1, 2, 1), (0, 1, 2, 2)])
