"""Affine isometries (I + A, v), group presentations and their structure.

Validation is layered.  An element is an *isometry* when its linear part
preserves the form, and *admissible* when in addition A^2 = 0, im A is
totally isotropic and orthogonal to v, Av = 0, A is skew-adjoint and
im A = (ker A)^perp.  Group-level data (U_Gamma, U_0, holonomy type) is
computed from generators only: every element's nilpotent part lies in the
span of the A_i and the products A_i A_j, and im(A_i A_j) lies in im A_i.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product

from .errors import InputError, StructureError
from .exactlin import (
    Matrix,
    Subspace,
    Vector,
    image_basis,
    is_zero_vector,
    kernel_basis,
    vadd,
    vector,
    vectors_rank,
    vneg,
    vscale,
    zero_vector,
)
from .quadspace import QuadraticSpace, WittFrame, is_totally_isotropic, orthogonal_complement, pair


@dataclass(frozen=True)
class AffineIsometry:
    """The affine map x -> x + A x + v."""

    space: QuadraticSpace
    nilpart: Matrix
    translation: tuple

    def __post_init__(self):
        n = self.space.dim
        a = self.nilpart if isinstance(self.nilpart, Matrix) else Matrix(self.nilpart)
        v = vector(self.translation)
        if a.shape != (n, n):
            raise InputError(f"nilpotent part has shape {a.shape}, expected ({n}, {n})")
        if len(v) != n:
            raise InputError(f"translation has length {len(v)}, expected {n}")
        object.__setattr__(self, "nilpart", a)
        object.__setattr__(self, "translation", v)

    @classmethod
    def identity(cls, space: QuadraticSpace) -> AffineIsometry:
        return cls(space, Matrix.zeros(space.dim), zero_vector(space.dim))

    @classmethod
    def translation_by(cls, space: QuadraticSpace, v: Sequence) -> AffineIsometry:
        return cls(space, Matrix.zeros(space.dim), vector(v))

    @classmethod
    def from_linear(cls, space: QuadraticSpace, linear: Matrix, translation: Sequence) -> AffineIsometry:
        return cls(space, linear - Matrix.identity(space.dim), vector(translation))

    @property
    def linear(self) -> Matrix:
        return Matrix.identity(self.space.dim) + self.nilpart

    @property
    def dim(self) -> int:
        return self.space.dim

    def apply(self, x: Sequence) -> Vector:
        x = vector(x)
        return vadd(vadd(x, self.nilpart @ x), self.translation)

    def is_identity(self) -> bool:
        return self.nilpart.is_zero() and is_zero_vector(self.translation)

    def __repr__(self) -> str:
        return f"AffineIsometry(nilpart={self.nilpart!r}, translation={self.translation!r})"


def _same_space(g1: AffineIsometry, g2: AffineIsometry) -> None:
    if g1.space != g2.space:
        raise InputError("isometries act on different quadratic spaces")


def compose(g1: AffineIsometry, g2: AffineIsometry) -> AffineIsometry:
    """g1 after g2: linear parts multiply, translation (I + A1) v2 + v1."""
    _same_space(g1, g2)
    a1, a2 = g1.nilpart, g2.nilpart
    nil = a1 + a2 + a1 @ a2
    t = vadd(vadd(g1.translation, g2.translation), a1 @ g2.translation)
    return AffineIsometry(g1.space, nil, t)


def inverse(g: AffineIsometry) -> AffineIsometry:
    a = g.nilpart
    n = g.dim
    if (a @ a).is_zero():
        inv = Matrix.identity(n) - a
    else:
        inv = g.linear.inverse()
    return AffineIsometry(g.space, inv - Matrix.identity(n), vneg(inv @ g.translation))


def commutator_formula(g1: AffineIsometry, g2: AffineIsometry) -> AffineIsometry:
    """(I + 2 A1 A2, 2 A1 v2), valid inside a 2-step admissible group."""
    _same_space(g1, g2)
    a1 = g1.nilpart
    return AffineIsometry(g1.space, (a1 @ g2.nilpart) * 2, vscale(2, a1 @ g2.translation))


def pair_compatible(g1: AffineIsometry, g2: AffineIsometry) -> bool:
    """Conditions under which the closed commutator formula is exact."""
    a1, a2 = g1.nilpart, g2.nilpart
    p12, p21 = a1 @ a2, a2 @ a1
    return (
        (a1 @ a1).is_zero()
        and (a2 @ a2).is_zero()
        and (p12 + p21).is_zero()
        and (a1 @ p21).is_zero()
        and (a2 @ p12).is_zero()
        and is_zero_vector(a1 @ g1.translation)
        and is_zero_vector(a2 @ g2.translation)
        and is_zero_vector(p12 @ g1.translation)
        and is_zero_vector(p21 @ g2.translation)
        and vadd(a1 @ g2.translation, a2 @ g1.translation) == zero_vector(g1.dim)
    )


def commutator(g1: AffineIsometry, g2: AffineIsometry) -> AffineIsometry:
    """g1 g2 g1^-1 g2^-1 by direct composition.

    For compatible pairs the closed formula is evaluated too and must agree.
    """
    direct = compose(compose(g1, g2), compose(inverse(g1), inverse(g2)))
    if pair_compatible(g1, g2):
        closed = commutator_formula(g1, g2)
        if closed != direct:  # pragma: no cover - would indicate an arithmetic bug
            raise AssertionError("commutator formula disagrees with direct composition")
    return direct


# ---------------------------------------------------------------------------
# validation


CHECK_NAMES = (
    "isometry",
    "nilpotent-square",
    "image-isotropic",
    "translation-orthogonal-to-image",
    "translation-in-kernel",
    "skew-adjoint",
    "image-equals-kernel-complement",
)


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple  # ((name, passed), ...) in CHECK_NAMES order

    def __getitem__(self, name: str) -> bool:
        return dict(self.checks)[name]

    @property
    def is_isometry(self) -> bool:
        return self["isometry"]

    @property
    def admissible(self) -> bool:
        return all(ok for _, ok in self.checks)

    @property
    def failures(self) -> list[str]:
        return [name for name, ok in self.checks if not ok]


def validate(g: AffineIsometry) -> ValidationReport:
    G = g.space.gram
    a = g.nilpart
    v = g.translation
    lin = g.linear
    im = image_basis(a)
    results = {
        "isometry": lin.T @ G @ lin == G,
        "nilpotent-square": (a @ a).is_zero(),
        "image-isotropic": is_totally_isotropic(G, im),
        "translation-orthogonal-to-image": all(pair(G, v, b) == 0 for b in im.basis),
        "translation-in-kernel": is_zero_vector(a @ v),
        "skew-adjoint": (a.T @ G + G @ a).is_zero(),
        "image-equals-kernel-complement": im == orthogonal_complement(G, kernel_basis(a)),
    }
    return ValidationReport(tuple((name, results[name]) for name in CHECK_NAMES))


# ---------------------------------------------------------------------------
# presentations


@dataclass(frozen=True)
class GroupPresentation:
    space: QuadraticSpace
    generators: tuple
    names: tuple = field(default=())

    def __post_init__(self):
        gens = tuple(self.generators)
        for g in gens:
            if g.space != self.space:
                raise InputError("generator lives in a different quadratic space")
        names = tuple(self.names) or tuple(f"g{i + 1}" for i in range(len(gens)))
        if len(names) != len(gens):
            raise InputError("one name per generator is required")
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "names", names)

    @property
    def dim(self) -> int:
        return self.space.dim

    def __len__(self) -> int:
        return len(self.generators)

    def nilparts(self) -> list[Matrix]:
        return [g.nilpart for g in self.generators]

    def translations(self) -> list[Vector]:
        return [g.translation for g in self.generators]


@dataclass(frozen=True)
class PresentationReport:
    generator_reports: tuple
    two_step: bool
    triple_products_vanish: bool = True

    @property
    def admissible(self) -> bool:
        return all(r.admissible for r in self.generator_reports) and self.two_step and self.triple_products_vanish


def check_two_step(P: GroupPresentation) -> bool:
    """[[g_i, g_j], g_k] = id for all generator triples.

    This makes every generator commutator central, which forces the whole
    group to be 2-step nilpotent.
    """
    gens = P.generators
    for i, gi in enumerate(gens):
        for gj in gens[i + 1 :]:
            c = commutator(gi, gj)
            if c.is_identity():
                continue
            for gk in gens:
                if not commutator(c, gk).is_identity():
                    return False
    return True


def validate_presentation(P: GroupPresentation) -> PresentationReport:
    reports = tuple(validate(g) for g in P.generators)
    two_step = all(r.is_isometry for r in reports) and check_two_step(P)
    return PresentationReport(reports, two_step, triple_products_vanish(P))


def triple_products_vanish(P: GroupPresentation) -> bool:
    """A_i A_j A_k = 0 for all generator triples."""
    nils = P.nilparts()
    pairs = [a @ b for a, b in product(nils, repeat=2)]
    return all((ab @ c).is_zero() for ab in pairs if not ab.is_zero() for c in nils)


def holonomy_abelian(P: GroupPresentation) -> bool:
    """A_i A_j = 0 for all ordered generator pairs, including i = j."""
    nils = P.nilparts()
    return all((a @ b).is_zero() for a, b in product(nils, repeat=2))


def is_abelian(P: GroupPresentation) -> bool:
    gens = P.generators
    return all(commutator(a, b).is_identity() for i, a in enumerate(gens) for b in gens[i + 1 :])


def u_gamma(P: GroupPresentation) -> Subspace:
    vecs = [c for a in P.nilparts() for c in a.columns()]
    return Subspace.span(vecs, P.dim)


def u_zero(P: GroupPresentation) -> Subspace:
    ug = u_gamma(P)
    return ug.intersect(orthogonal_complement(P.space, ug))


def translation_span(P: GroupPresentation) -> Subspace:
    return Subspace.span(P.translations(), P.dim)


def lie_bracket(x: tuple[Matrix, Vector], y: tuple[Matrix, Vector]) -> tuple[Matrix, Vector]:
    """Bracket in the affine Lie algebra: ([A, B], A w - B v)."""
    a, v = x
    b, w = y
    t = tuple(p - q for p, q in zip(a @ w, b @ v))
    return a @ b - b @ a, t


def flatten_log(x: tuple[Matrix, Vector]) -> Vector:
    a, v = x
    return tuple(e for r in a.rows for e in r) + tuple(v)


def group_rank(P: GroupPresentation) -> int:
    """Dimension of span{log g_i} + span{[log g_i, log g_j]}.

    For a 2-step group this span is the Lie algebra of its unipotent hull.
    """
    logs = [(g.nilpart, g.translation) for g in P.generators]
    vecs = [flatten_log(x) for x in logs]
    for i in range(len(logs)):
        for j in range(i + 1, len(logs)):
            vecs.append(flatten_log(lie_bracket(logs[i], logs[j])))
    return vectors_rank(vecs)


def enumerate_words(P: GroupPresentation, max_length: int) -> list[AffineIsometry]:
    """All products of at most ``max_length`` generators and inverses.

    Elements are deduplicated by exact equality and listed in breadth-first
    discovery order, letters ordered g1, g1^-1, g2, g2^-1, ...
    """
    if max_length < 0:
        raise InputError("word length must be non-negative")
    letters = []
    for g in P.generators:
        letters.extend([g, inverse(g)])
    ident = AffineIsometry.identity(P.space)
    seen = {ident}
    out = [ident]
    frontier = [ident]
    for _ in range(max_length):
        nxt = []
        for w in frontier:
            for s in letters:
                e = compose(w, s)
                if e not in seen:
                    seen.add(e)
                    out.append(e)
                    nxt.append(e)
        frontier = nxt
        if not frontier:
            break
    return out


def transform_presentation(P: GroupPresentation, M: Matrix) -> GroupPresentation:
    """Rewrite P in the coordinates x' = M^-1 x (columns of M are the new basis)."""
    Minv = M.inverse()
    space = QuadraticSpace(M.T @ P.space.gram @ M)
    gens = tuple(AffineIsometry(space, Minv @ g.nilpart @ M, Minv @ g.translation) for g in P.generators)
    return GroupPresentation(space, gens, P.names)


# ---------------------------------------------------------------------------
# block forms relative to a Witt frame


@lru_cache(maxsize=256)
def _frame_inverse(frame: WittFrame) -> Matrix:
    return frame.matrix().inverse()


@dataclass(frozen=True)
class BlockForm:
    """A = [[0, -B^T G_W, C], [0, 0, B], [0, 0, 0]] in the frame basis."""

    B: Matrix
    C: Matrix
    frame: WittFrame

    def assemble(self) -> Matrix:
        k = self.frame.k
        m = self.B.nrows
        Z = Matrix.zeros
        top = -(self.B.T @ self.frame.w_gram) if m else Z(k, 0)
        return Matrix.block(
            [
                [Z(k, k), top, self.C],
                [Z(m, k), Z(m, m), self.B],
                [Z(k, k), Z(k, m), Z(k, k)],
            ]
        )

    def to_ambient(self) -> Matrix:
        P = self.frame.matrix()
        return P @ self.assemble() @ _frame_inverse(self.frame)

    def column(self, j: int) -> Vector:
        return self.B.column(j)


def in_frame(a: Matrix, frame: WittFrame) -> Matrix:
    return _frame_inverse(frame) @ a @ frame.matrix()


def block_form(g: AffineIsometry | Matrix, frame: WittFrame) -> BlockForm:
    a = g.nilpart if isinstance(g, AffineIsometry) else g
    k = frame.k
    n = frame.n
    m = n - 2 * k
    af = in_frame(a, frame)
    if not af.submatrix(0, n, 0, k).is_zero():
        raise StructureError("A does not annihilate U_0 in this frame")
    if not af.submatrix(k, n, 0, k + m).is_zero() or not af.submatrix(k + m, n, 0, n).is_zero():
        raise StructureError("A does not map U_0-perp into U_0 and everything into U_0-perp")
    B = af.submatrix(k, k + m, k + m, n)
    C = af.submatrix(0, k, k + m, n)
    top = af.submatrix(0, k, k, k + m)
    gw = frame.w_gram
    if m and top != -(B.T @ gw):
        raise StructureError("upper middle block is not -B^T G_W")
    if not C.is_skew():
        raise StructureError("C block is not skew-symmetric")
    if m and not (B.T @ gw @ B).is_zero():
        raise StructureError("columns of B are not isotropic and mutually orthogonal")
    return BlockForm(B, C, frame)


def split_translation(g: AffineIsometry, frame: WittFrame) -> tuple[Vector, Vector, Vector]:
    return frame.coordinates(g.translation)


@dataclass(frozen=True)
class RulesReport:
    isotropy: bool
    crossover: bool
    duality_applicable: bool
    duality_witness: tuple | None  # (i, j), 0-based, with <b1^j, b2^i> != 0
    commutator_block: bool  # C3 == -2 B1^T G_W B2 and B3 == 0
    commutator_translation_in_u0: bool
    dual_components_in_common_kernel: bool
    structure_error: str | None = None

    @property
    def duality(self) -> bool:
        return not self.duality_applicable or self.duality_witness is not None

    @property
    def rules_hold(self) -> bool:
        return self.structure_error is None and self.isotropy and self.crossover and self.duality and self.commutator_block

    @property
    def realizable(self) -> bool:
        """False flags a pair that cannot sit in a homogeneous-space fundamental group."""
        return self.rules_hold and self.commutator_translation_in_u0 and self.dual_components_in_common_kernel


def check_rules(g1: AffineIsometry, g2: AffineIsometry, frame: WittFrame) -> RulesReport:
    _same_space(g1, g2)
    try:
        f1, f2 = block_form(g1, frame), block_form(g2, frame)
        g3 = commutator(g1, g2)
        f3 = block_form(g3, frame)
    except StructureError as exc:
        return RulesReport(False, False, False, None, False, False, False, str(exc))
    gw = frame.w_gram
    B1, B2 = f1.B, f2.B
    k = frame.k
    isotropy = (B1.T @ gw @ B1).is_zero() and (B2.T @ gw @ B2).is_zero()
    M = B1.T @ gw @ B2 if B1.nrows else Matrix.zeros(k, k)
    crossover = M.is_skew()
    prod12 = g1.nilpart @ g2.nilpart
    applicable = not prod12.is_zero()
    witness = None
    if applicable:
        for i in range(k):
            for j in range(k):
                if M[j, i]:
                    witness = (i, j)
                    break
            if witness:
                break
    block_ok = f3.C == M * -2 and f3.B.is_zero()
    v3 = vscale(2, g1.nilpart @ g2.translation)
    u0 = frame.u_subspace()
    in_u0 = (
        v3 == vscale(-2, g2.nilpart @ g1.translation)
        and g3.translation == v3
        and u0.contains(v3)
    )
    _, _, s1 = split_translation(g1, frame)
    _, _, s2 = split_translation(g2, frame)
    kernel_ok = all(is_zero_vector(B @ s) for B in (B1, B2) for s in (s1, s2)) if B1.nrows else True
    return RulesReport(isotropy, crossover, applicable, witness, block_ok, in_u0, kernel_ok)


def commutator_pairs(P: GroupPresentation) -> list[tuple[int, int]]:
    """Generator pairs whose group commutator is not the identity."""
    gens = P.generators
    return [
        (i, j)
        for i in range(len(gens))
        for j in range(i + 1, len(gens))
        if not commutator(gens[i], gens[j]).is_identity()
    ]


def noncommuting_pairs(P: GroupPresentation) -> list[tuple[int, int]]:
    """Generator pairs whose linear parts do not commute (A_i A_j != 0)."""
    nils = P.nilparts()
    return [
        (i, j)
        for i in range(len(nils))
        for j in range(i + 1, len(nils))
        if not (nils[i] @ nils[j]).is_zero()
    ]


def pairing_matrix(f1: BlockForm, f2: BlockForm) -> Matrix:
    """B1^T G_W B2."""
    k = f1.frame.k
    if not f1.B.nrows:
        return Matrix.zeros(k, k)
    return f1.B.T @ f1.frame.w_gram @ f2.B
