"""Flat pseudo-Riemannian models for 2-step nilpotent groups.

Given a 2-step nilpotent Lie algebra g, the cotangent algebra h = g + g*
has bracket [(X, a), (Y, b)] = ([X, Y], ad*(X) b - ad*(Y) a) with
(ad*(X) b)(Z) = -b([X, Z]), and the pairing <(X, a), (Y, b)> = a(Y) + b(X)
is invariant of signature (n, n).  In exponential coordinates the group law
is x.y = x + y + [x, y]/2, and right translation by -g is the affine
isometry x -> x + [x, -g]/2 - g = (I + ad(g)/2) x - g.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError
from .exactlin import Matrix, Vector, scalar, vadd, vector, vscale
from .isogrp import AffineIsometry, GroupPresentation
from .quadspace import QuadraticSpace


@dataclass(frozen=True)
class NilLieAlgebra:
    """Structure constants: structure[(i, j)] = ((k, c), ...) for i < j, 0-based."""

    dim: int
    structure: tuple  # ((i, j, k, c), ...) sparse, i < j

    def __post_init__(self):
        n = self.dim
        if n < 0:
            raise InputError("dimension must be non-negative")
        seen = {}
        for entry in self.structure:
            i, j, k, c = entry
            if not (0 <= i < j < n and 0 <= k < n):
                raise InputError(f"bracket entry {(i, j, k)} out of range or not i < j")
            key = (i, j, k)
            if key in seen:
                raise InputError(f"bracket entry {key} given twice")
            seen[key] = scalar(c)
        object.__setattr__(self, "structure", tuple((i, j, k, c) for (i, j, k), c in sorted(seen.items()) if c))
        if not self.is_two_step():
            raise InputError("algebra is not 2-step nilpotent: [[e_i, e_j], e_l] != 0")

    @classmethod
    def from_brackets(cls, dim: int, brackets: Iterable[Sequence]) -> NilLieAlgebra:
        return cls(dim, tuple((int(i), int(j), int(k), scalar(c)) for i, j, k, c in brackets))

    @classmethod
    def heisenberg(cls) -> NilLieAlgebra:
        return cls(3, ((0, 1, 2, Fraction(1)),))

    @classmethod
    def abelian(cls, dim: int) -> NilLieAlgebra:
        return cls(dim, ())

    def bracket(self, x: Sequence, y: Sequence) -> Vector:
        out = [Fraction(0)] * self.dim
        for i, j, k, c in self.structure:
            coeff = x[i] * y[j] - x[j] * y[i]
            if coeff:
                out[k] += c * coeff
        return tuple(out)

    def basis(self) -> list[Vector]:
        return [tuple(Fraction(int(a == b)) for b in range(self.dim)) for a in range(self.dim)]

    def is_two_step(self) -> bool:
        e = self.basis()
        for i, j, _, _ in self.structure:
            z = self.bracket(e[i], e[j])
            if any(any(self.bracket(z, el)) for el in e):
                return False
        return True


@dataclass(frozen=True)
class CotangentAlgebra:
    base: NilLieAlgebra

    @property
    def n(self) -> int:
        return self.base.dim

    @property
    def dim(self) -> int:
        return 2 * self.base.dim

    def gram(self) -> Matrix:
        n = self.n
        Z, I = Matrix.zeros(n), Matrix.identity(n)
        return Matrix.block([[Z, I], [I, Z]])

    def space(self) -> QuadraticSpace:
        return QuadraticSpace(self.gram())

    def split(self, x: Sequence) -> tuple[Vector, Vector]:
        x = vector(x)
        if len(x) != self.dim:
            raise InputError(f"element of length {len(x)}, expected {self.dim}")
        return x[: self.n], x[self.n :]

    def coadjoint(self, X: Vector, eta: Vector) -> Vector:
        """ad*(X) eta, as the functional Z -> -eta([X, Z])."""
        return tuple(-sum((e * b for e, b in zip(eta, self.base.bracket(X, Z))), Fraction(0)) for Z in self.base.basis())

    def bracket(self, x: Sequence, y: Sequence) -> Vector:
        X, xi = self.split(x)
        Y, eta = self.split(y)
        top = self.base.bracket(X, Y)
        bottom = tuple(a - b for a, b in zip(self.coadjoint(X, eta), self.coadjoint(Y, xi)))
        return top + bottom

    def pair(self, x: Sequence, y: Sequence) -> Fraction:
        X, xi = self.split(x)
        Y, eta = self.split(y)
        return sum((a * b for a, b in zip(xi, Y)), Fraction(0)) + sum((a * b for a, b in zip(eta, X)), Fraction(0))

    def basis(self) -> list[Vector]:
        d = self.dim
        return [tuple(Fraction(int(a == b)) for b in range(d)) for a in range(d)]

    def ad(self, x: Sequence) -> Matrix:
        """Matrix of y -> [x, y]."""
        return Matrix.from_columns([self.bracket(x, e) for e in self.basis()])


def build_cotangent(g: NilLieAlgebra) -> CotangentAlgebra:
    return CotangentAlgebra(g)


def bch_multiply(h: CotangentAlgebra, x: Sequence, y: Sequence) -> Vector:
    """x.y = x + y + [x, y] / 2 (exact for 2-step algebras)."""
    x, y = vector(x), vector(y)
    return vadd(vadd(x, y), vscale(Fraction(1, 2), h.bracket(x, y)))


def bch_inverse(x: Sequence) -> Vector:
    return tuple(-a for a in vector(x))


def represent(h: CotangentAlgebra, g: Sequence) -> AffineIsometry:
    """(I + ad(g)/2, -g): right multiplication by g^-1."""
    g = vector(g)
    h.split(g)
    return AffineIsometry(h.space(), h.ad(g) * Fraction(1, 2), bch_inverse(g))


def realize_group(g: NilLieAlgebra, gens: Sequence[Sequence]) -> GroupPresentation:
    h = build_cotangent(g)
    elems = [vector(x) for x in gens]
    for x in elems:
        h.split(x)
        if not any(x):
            raise InputError("lattice generators must be nonzero")
    space = h.space()
    return GroupPresentation(space, tuple(represent(h, x) for x in elems))
