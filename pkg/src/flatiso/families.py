"""Seeded generators of admissible presentations, used by tests and the CLI.

Everything is built in Witt coordinates (U, W, U*) with a hyperbolic W and
then, optionally, moved to a scrambled basis.  Translations are drawn from
the exact solution space of the 2-step compatibility equations.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .errors import ConstructionError
from .exactlin import Matrix, Vector, kernel_vectors, rank
from .isogrp import AffineIsometry, BlockForm, GroupPresentation, transform_presentation, u_zero
from .quadspace import QuadraticSpace, frame_from_coordinates


def witt_gram(k: int, w_gram: Matrix) -> Matrix:
    m = w_gram.nrows
    Z = Matrix.zeros
    I = Matrix.identity(k)
    return Matrix.block([[Z(k, k), Z(k, m), I], [Z(m, k), w_gram, Z(m, k)], [I, Z(k, m), Z(k, k)]])


def hyperbolic_gram(r: int) -> Matrix:
    Z = Matrix.zeros(r)
    I = Matrix.identity(r)
    return Matrix.block([[Z, I], [I, Z]])


def translation_equations(nilparts: list[Matrix]) -> Matrix:
    """Linear system on (v_1, ..., v_m) stacked.

    Rows encode A_i v_i = 0, A_i v_j + A_j v_i = 0 and A_i A_j v_k = 0, which
    together make the closed commutator formula exact and every generator
    commutator central.
    """
    m = len(nilparts)
    n = nilparts[0].nrows
    rows: list[list[Fraction]] = []

    def emit(blocks: dict[int, Matrix]) -> None:
        for r in range(n):
            row = [Fraction(0)] * (m * n)
            for slot, mat in blocks.items():
                for c in range(n):
                    row[slot * n + c] += mat[r, c]
            rows.append(row)

    for i, a in enumerate(nilparts):
        emit({i: a})
    for i in range(m):
        for j in range(i + 1, m):
            emit({i: nilparts[j], j: nilparts[i]})
    for i in range(m):
        for j in range(m):
            if i == j:
                continue
            prod = nilparts[i] @ nilparts[j]
            if prod.is_zero():
                continue
            for k in range(m):
                emit({k: prod})
    return Matrix(rows)


def random_translations(nilparts: list[Matrix], rng: random.Random, tries: int = 50) -> list[Vector]:
    """A random solution of :func:`translation_equations` with all v_i nonzero
    and A_i v_j nonzero for every non-commuting pair, when one exists."""
    n = nilparts[0].nrows
    m = len(nilparts)
    kern = kernel_vectors(translation_equations(nilparts))
    if not kern:
        raise ConstructionError("translation-equations", "only zero translations are compatible")
    noncomm = [(i, j) for i in range(m) for j in range(i + 1, m) if not (nilparts[i] @ nilparts[j]).is_zero()]
    best = None
    for _ in range(tries):
        coeffs = [rng.randint(-3, 3) for _ in kern]
        flat = [sum((c * v[t] for c, v in zip(coeffs, kern)), Fraction(0)) for t in range(m * n)]
        vs = [tuple(flat[i * n : (i + 1) * n]) for i in range(m)]
        best = vs
        if all(any(v) for v in vs) and all(any(nilparts[i] @ vs[j]) for i, j in noncomm):
            return vs
    assert best is not None
    return best


def random_skew(k: int, rng: random.Random, lo: int = -3, hi: int = 3) -> Matrix:
    rows = [[Fraction(0)] * k for _ in range(k)]
    for i in range(k):
        for j in range(i + 1, k):
            c = Fraction(rng.randint(lo, hi))
            rows[i][j] = c
            rows[j][i] = -c
    return Matrix(rows)


def random_unimodular(n: int, rng: random.Random, steps: int | None = None) -> Matrix:
    """Product of a permutation and a few elementary shears (determinant +-1)."""
    perm = list(range(n))
    rng.shuffle(perm)
    rows = [[Fraction(1) if perm[i] == j else Fraction(0) for j in range(n)] for i in range(n)]
    for _ in range(steps if steps is not None else 2 * n) if n > 1 else ():
        i, j = rng.sample(range(n), 2)
        c = rng.choice([-1, 1])
        rows[i] = [a + c * b for a, b in zip(rows[i], rows[j])]
    return Matrix(rows)


def presentation_from_blocks(
    k: int,
    w_gram: Matrix,
    blocks: list[tuple[Matrix, Matrix]],
    rng: random.Random,
    scramble: bool = False,
    translations: list[Vector] | None = None,
) -> GroupPresentation:
    """Assemble A_i = [[0, -B^T G_W, C], [0, 0, B], [0, 0, 0]] from (B_i, C_i).

    Translations are solved for unless given.  With ``scramble`` the result is
    rewritten in a random unimodular basis.
    """
    space = QuadraticSpace(witt_gram(k, w_gram))
    frame = frame_from_coordinates(space, k)
    nils = [BlockForm(B, C, frame).assemble() for B, C in blocks]
    vs = translations if translations is not None else random_translations(nils, rng)
    gens = tuple(AffineIsometry(space, a, v) for a, v in zip(nils, vs))
    P = GroupPresentation(space, gens)
    if scramble:
        P = transform_presentation(P, random_unimodular(space.dim, rng))
    return P


def _nonzero(rng: random.Random, lo: int = -3, hi: int = 3) -> Fraction:
    while True:
        c = rng.randint(lo, hi)
        if c:
            return Fraction(c)


def hyperbolic_pair_family(k: int, seed: int, scramble: bool = True) -> GroupPresentation:
    """Two generators with rank-2 B blocks in a 4-dimensional hyperbolic W.

    B1 = F R, B2 = F*(c J R) + F(d R) where F, F* are the isotropic halves of
    W, J is the 2x2 rotation by a right angle and R is a random 2 x k matrix
    of rank 2; then B1^T G_W B2 = c R^T J R is skew of rank 2.  Extra
    generators with B = 0 are added when needed so that dim U_0 = k.
    """
    if k < 2:
        raise ConstructionError("k >= 2", "a non-commuting pair needs dim U_0 >= 2")
    rng = random.Random(seed)
    while True:
        R = Matrix([[Fraction(rng.randint(-2, 2)) for _ in range(k)] for _ in range(2)])
        if rank(R) == 2:
            break
    J = Matrix([[0, 1], [-1, 0]])
    c, d = _nonzero(rng), Fraction(rng.randint(-2, 2))
    B1 = Matrix.block([[R], [Matrix.zeros(2, k)]])
    B2 = Matrix.block([[R * d], [(J @ R) * c]])
    blocks = [(B1, random_skew(k, rng)), (B2, random_skew(k, rng))]
    wg = hyperbolic_gram(2)
    P = presentation_from_blocks(k, wg, blocks, rng)
    while u_zero(P).dim != k:
        blocks.append((Matrix.zeros(4, k), random_skew(k, rng)))
        P = presentation_from_blocks(k, wg, blocks, rng)
    if scramble:
        P = transform_presentation(P, random_unimodular(P.dim, rng))
    return P
