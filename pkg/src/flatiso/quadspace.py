"""Quadratic spaces, isotropy and Witt decompositions over the rationals.

A Witt frame for a totally isotropic subspace U is a basis
``u_1..u_k, w_1..w_{n-2k}, u*_1..u*_k`` in which the Gram matrix reads::

    [[0,   0,   I_k],
     [0,   G_W, 0  ],
     [I_k, 0,   0  ]]

``G_W`` is any invertible symmetric matrix; it is not normalised to a
+-1 signature matrix because that would leave the rational field.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .errors import InputError, PreconditionError
from .exactlin import (
    Matrix,
    Subspace,
    Vector,
    congruent_diagonalize,
    kernel_vectors,
    linear_combination,
    rank,
    solve,
    unit_vector,
    vector,
    vscale,
    vsub,
)


def form_signature(gram: Matrix) -> tuple[int, int, int]:
    """(positive, negative, zero) counts of a symmetric matrix."""
    if gram.nrows == 0:
        return 0, 0, 0
    D, _ = congruent_diagonalize(gram)
    diag = [D[i, i] for i in range(D.nrows)]
    return sum(d > 0 for d in diag), sum(d < 0 for d in diag), sum(d == 0 for d in diag)


def pair(gram: Matrix, x: Vector, y: Vector) -> Fraction:
    return sum((a * b for a, b in zip(x, gram @ y) if a and b), Fraction(0))


def restricted_gram(gram: Matrix, vectors: Sequence[Vector]) -> Matrix:
    if not vectors:
        return Matrix.zeros(0, 0)
    B = Matrix.from_columns(vectors)
    return B.T @ gram @ B


@dataclass(frozen=True)
class QuadraticSpace:
    """Q^n with a non-degenerate symmetric form of signature (p, q), p >= q."""

    gram: Matrix
    signature: tuple[int, int] = field(init=False)

    def __post_init__(self):
        g = self.gram
        if not isinstance(g, Matrix):
            g = Matrix(g)
            object.__setattr__(self, "gram", g)
        if not g.is_symmetric():
            raise InputError("Gram matrix must be square and symmetric")
        p, q, r = form_signature(g)
        if r:
            raise InputError("Gram matrix is degenerate")
        if p < q:
            raise InputError(f"signature ({p}, {q}) violates p >= q; negate the form")
        object.__setattr__(self, "signature", (p, q))

    @classmethod
    def from_signature(cls, p: int, q: int) -> QuadraticSpace:
        return cls(Matrix.diagonal([1] * p + [-1] * q))

    @property
    def dim(self) -> int:
        return self.gram.nrows

    @property
    def witt_index(self) -> int:
        return self.signature[1]

    def pair(self, x: Vector, y: Vector) -> Fraction:
        return pair(self.gram, x, y)

    def __repr__(self) -> str:
        p, q = self.signature
        return f"QuadraticSpace(dim={self.dim}, signature=({p}, {q}))"


def signature(space: QuadraticSpace, subspace: Subspace | None = None) -> tuple[int, int, int]:
    """(p, q, r) of the form restricted to ``subspace`` (whole space by default)."""
    if subspace is None:
        p, q = space.signature
        return p, q, 0
    return form_signature(restricted_gram(space.gram, subspace.basis))


def witt_index(space: QuadraticSpace, subspace: Subspace | None = None) -> int:
    p, q, r = signature(space, subspace)
    return r + min(p, q)


def is_totally_isotropic(space: QuadraticSpace | Matrix, S: Subspace) -> bool:
    gram = space.gram if isinstance(space, QuadraticSpace) else space
    if S.ambient_dim != gram.nrows:
        raise InputError("subspace does not live in this space")
    return restricted_gram(gram, S.basis).is_zero()


def orthogonal_complement(space: QuadraticSpace | Matrix, S: Subspace) -> Subspace:
    gram = space.gram if isinstance(space, QuadraticSpace) else space
    n = gram.nrows
    if S.ambient_dim != n:
        raise InputError("subspace does not live in this space")
    if not S.basis:
        return Subspace.full(n)
    rows = Matrix([gram @ b for b in S.basis])  # symmetric gram: (G b)^T x = <b, x>
    return Subspace.span(kernel_vectors(rows), n)


# ---------------------------------------------------------------------------
# Witt frames


@dataclass(frozen=True)
class WittFrame:
    gram: Matrix
    u_basis: tuple
    w_basis: tuple
    ustar_basis: tuple

    @property
    def k(self) -> int:
        return len(self.u_basis)

    @property
    def n(self) -> int:
        return self.gram.nrows

    @property
    def w_gram(self) -> Matrix:
        return restricted_gram(self.gram, self.w_basis)

    def basis(self) -> list[Vector]:
        return list(self.u_basis) + list(self.w_basis) + list(self.ustar_basis)

    def matrix(self) -> Matrix:
        """Change of basis with columns u_1..u_k, w_1.., u*_1..u*_k."""
        return Matrix.from_columns(self.basis())

    def u_subspace(self) -> Subspace:
        return Subspace.span(self.u_basis, self.n)

    def coordinates(self, v: Sequence) -> tuple[Vector, Vector, Vector]:
        """Split ``v`` into (U, W, U*) coordinate blocks."""
        sol = solve(self.matrix(), vector(v))
        if sol is None:  # pragma: no cover - frame matrices are invertible
            raise PreconditionError("frame does not span the space")
        c = sol[0]
        k, m = self.k, len(self.w_basis)
        return c[:k], c[k : k + m], c[k + m :]

    def from_coordinates(self, u: Sequence, w: Sequence, ustar: Sequence) -> Vector:
        coeffs = list(vector(u)) + list(vector(w)) + list(vector(ustar))
        return linear_combination(coeffs, self.basis(), self.n)

    def expected_gram(self) -> Matrix:
        k, m = self.k, len(self.w_basis)
        Z = Matrix.zeros
        I = Matrix.identity(k)
        return Matrix.block(
            [
                [Z(k, k), Z(k, m), I],
                [Z(m, k), self.w_gram, Z(m, k)],
                [I, Z(k, m), Z(k, k)],
            ]
        )

    def is_valid(self) -> bool:
        """All frame invariants: block Gram shape and invertible G_W."""
        P = self.matrix()
        if P.nrows != P.ncols or rank(P) != self.n:
            return False
        if P.T @ self.gram @ P != self.expected_gram():
            return False
        return rank(self.w_gram) == len(self.w_basis)


def witt_frame(space: QuadraticSpace | Matrix, U: Subspace) -> WittFrame:
    """Complete a totally isotropic U to a Witt frame.

    The dual vectors solve <u_j, x> = delta_ij (free variables zero), are
    corrected against earlier duals and made isotropic; W is the orthogonal
    complement of U + U*.  The result depends only on the input basis.
    """
    gram = space.gram if isinstance(space, QuadraticSpace) else space
    n = gram.nrows
    if not is_totally_isotropic(gram, U):
        raise PreconditionError("witt_frame needs a totally isotropic subspace")
    us = list(U.basis)
    k = len(us)
    duals: list[Vector] = []
    if k:
        M = Matrix([gram @ u for u in us])
        for i in range(k):
            sol = solve(M, unit_vector(k, i))
            if sol is None:  # pragma: no cover - impossible for non-degenerate forms
                raise PreconditionError("form is degenerate on the given subspace")
            x = sol[0]
            for j, d in enumerate(duals):
                c = pair(gram, x, d)
                if c:
                    x = vsub(x, vscale(c, us[j]))
            c = pair(gram, x, x)
            if c:
                x = vsub(x, vscale(c / 2, us[i]))
            duals.append(x)
    w = orthogonal_complement(gram, Subspace.span(us + duals, n))
    return WittFrame(gram, tuple(us), w.basis, tuple(duals))


def frame_from_coordinates(space: QuadraticSpace | Matrix, k: int) -> WittFrame:
    """Take the coordinate basis itself as a Witt frame with dim U = k.

    Raises PreconditionError when the Gram matrix is not in Witt block form.
    """
    gram = space.gram if isinstance(space, QuadraticSpace) else space
    n = gram.nrows
    if 2 * k > n:
        raise PreconditionError(f"cannot fit a {k}-dimensional isotropic block in dimension {n}")
    e = [unit_vector(n, i) for i in range(n)]
    frame = WittFrame(gram, tuple(e[:k]), tuple(e[k : n - k]), tuple(e[n - k :]))
    if not frame.is_valid():
        raise PreconditionError("coordinate basis is not a Witt basis for the requested block size")
    return frame


@dataclass(frozen=True)
class PairRefinement:
    """W = W_ij + W' + W*_ij, stored as a Witt frame inside W."""

    frame: WittFrame
    witt_index_w: int

    @property
    def dim_w_prime(self) -> int:
        return len(self.frame.w_basis)


def refine_frame_for_pair(w_gram: Matrix, b1i: Vector, b1j: Vector, b2i: Vector, b2j: Vector) -> PairRefinement:
    """Split W along two dual column pairs of the B-blocks.

    Needs <b1i, b2j> != 0.  The isotropic plane is span{b1i, b1j}; its dual is
    spanned by b2j / a and -b2i / a with a = <b1i, b2j>.
    """
    m = w_gram.nrows
    vecs = [vector(v) for v in (b1i, b1j, b2i, b2j)]
    if any(len(v) != m for v in vecs):
        raise InputError("column vectors must lie in W")
    b1i, b1j, b2i, b2j = vecs
    a = pair(w_gram, b1i, b2j)
    if not a:
        raise PreconditionError("duality pairing <b1i, b2j> vanishes")
    duals = (vscale(1 / a, b2j), vscale(-1 / a, b2i))
    iso = (b1i, b1j)
    for x in range(2):
        for y in range(2):
            if pair(w_gram, iso[x], iso[y]) or pair(w_gram, duals[x], duals[y]):
                raise PreconditionError("column pair is not totally isotropic")
            if pair(w_gram, iso[x], duals[y]) != (1 if x == y else 0):
                raise PreconditionError("rescaled B2 columns are not dual to the B1 columns")
    rest = orthogonal_complement(w_gram, Subspace.span(list(iso) + list(duals), m))
    frame = WittFrame(w_gram, iso, rest.basis, duals)
    p, q, r = form_signature(w_gram)
    return PairRefinement(frame, r + min(p, q))


# ---------------------------------------------------------------------------
# isotropic witnesses


def _rational_sqrt(x: Fraction) -> Fraction | None:
    if x < 0:
        return None
    a, b = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if a * a == x.numerator and b * b == x.denominator:
        return Fraction(a, b)
    return None


def _square_part(n: int) -> tuple[int, int]:
    """n = core * s^2 with core squarefree; returns (core, s)."""
    sign = -1 if n < 0 else 1
    n = abs(n)
    core, s, p = 1, 1, 2
    while p * p <= n:
        while n % (p * p) == 0:
            n //= p * p
            s *= p
        if n % p == 0:
            n //= p
            core *= p
        p += 1
    return sign * core * n, s


def _legendre_normal_form(coeffs: Sequence[int]) -> tuple[list[int], list[Fraction]]:
    """Squarefree, pairwise coprime coefficients plus per-variable scale factors.

    A solution X of the normalized equation gives x_i = X_i * scale_i.
    """
    a = list(coeffs)
    scale = [Fraction(1)] * 3
    while True:
        g = math.gcd(*a)
        a = [x // g for x in a]
        for i in range(3):
            a[i], s = _square_part(a[i])
            scale[i] /= s
        for i, j in ((0, 1), (0, 2), (1, 2)):
            p = math.gcd(a[i], a[j])
            if p > 1:
                l = 3 - i - j
                a[i], a[j], a[l] = a[i] // p, a[j] // p, a[l] * p
                scale[i] /= p
                scale[j] /= p
                break
        else:
            return a, scale


def _ternary_solution(d: Sequence[Fraction]) -> tuple[Fraction, Fraction, Fraction] | None:
    """A nonzero rational solution of d0 x^2 + d1 y^2 + d2 z^2 = 0, or None.

    After normalization Holzer's theorem bounds some solution by
    |x| <= sqrt|bc|, |y| <= sqrt|ac|, so the search is exhaustive.
    """
    if any(not c for c in d):
        raise ValueError("ternary coefficients must be nonzero")
    den = math.lcm(*(c.denominator for c in d))
    (a, b, c), scale = _legendre_normal_form([int(x * den) for x in d])
    if a > 0 and b > 0 and c > 0 or a < 0 and b < 0 and c < 0:
        return None
    for x in range(0, math.isqrt(abs(b * c)) + 1):
        for y in range(0, math.isqrt(abs(a * c)) + 1):
            if x == 0 and y == 0:
                continue
            t = -(a * x * x + b * y * y)
            if t % c:
                continue
            z2 = t // c
            if z2 < 0:
                continue
            z = math.isqrt(z2)
            if z * z == z2:
                return x * scale[0], y * scale[1], z * scale[2]
    return None


def _quaternary_solution(d: Sequence[Fraction], t_bound: int = 60) -> tuple | None:
    """Split d0 x^2 + d1 y^2 = t s^2 = -(d2 z^2 + d3 w^2) over small squarefree t."""
    for m in range(1, t_bound + 1):
        if _square_part(m)[1] != 1:
            continue
        for t in (m, -m):
            left = _ternary_solution([d[0], d[1], Fraction(-t)])
            if left is None or not left[2]:
                continue
            right = _ternary_solution([d[2], d[3], Fraction(t)])
            if right is None or not right[2]:
                continue
            x, y, s = left
            z, w, r = right
            return x * r, y * r, z * s, w * s
    return None


def find_isotropic_vector(gram: Matrix) -> Vector | None:
    """Some nonzero x with <x, x> = 0, or None if the search finds nothing.

    The search covers zero diagonals, square ratios of diagonal pairs,
    ternary diagonal subforms (decided exactly) and quaternary subforms
    split through a small common value.  A None is therefore a proof of
    anisotropy only for forms of dimension <= 3.
    """
    n = gram.nrows
    for i in range(n):
        if not gram[i, i]:
            return unit_vector(n, i)
    D, P = congruent_diagonalize(gram)
    d = [D[i, i] for i in range(n)]
    cols = P.columns()
    for i in range(n):
        if not d[i]:
            return cols[i]
    for i, j in combinations(range(n), 2):
        if (d[i] > 0) != (d[j] > 0):
            s = _rational_sqrt(-d[j] / d[i])
            if s is not None:
                return linear_combination([s, 1], [cols[i], cols[j]], n)
    for i, j, l in combinations(range(n), 3):
        signs = {d[i] > 0, d[j] > 0, d[l] > 0}
        if len(signs) < 2:
            continue
        sol = _ternary_solution([d[i], d[j], d[l]])
        if sol is not None:
            return linear_combination(list(sol), [cols[i], cols[j], cols[l]], n)
    for idx in combinations(range(n), 4):
        if len({d[i] > 0 for i in idx}) < 2:
            continue
        sol = _quaternary_solution([d[i] for i in idx])
        if sol is not None:
            return linear_combination(list(sol), [cols[i] for i in idx], n)
    return None


def maximal_isotropic_subspace(space: QuadraticSpace | Matrix) -> Subspace:
    """Greedily grow a totally isotropic subspace one isotropic vector at a time.

    Each new vector is an isotropic vector of the current W block, so the
    result is totally isotropic; its dimension equals the Witt index whenever
    every search step succeeds.
    """
    gram = space.gram if isinstance(space, QuadraticSpace) else space
    n = gram.nrows
    found: list[Vector] = []
    while True:
        frame = witt_frame(gram, Subspace.span(found, n))
        if not frame.w_basis:
            break
        x = find_isotropic_vector(frame.w_gram)
        if x is None:
            break
        found.append(linear_combination(x, frame.w_basis, n))
    return Subspace.span(found, n)
