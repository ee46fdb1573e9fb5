"""Groups in dimension <= 6 and in signature (n-2, 2).

:func:`classify` walks a decision tree whose branches are checkable
structural facts; each branch taken is appended to the verdict's trail
together with the rule it relies on.  An input that contradicts one of
those rules is tagged ``OutOfScope`` with the violated rule attached.

The constructors build the two converse families: abelian groups with
2-dimensional holonomy image in signature (n-2, 2), and the two
non-abelian families in signature (3, 3).
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from .centralizer import TRANSITIVE, homogeneity_verdict, translation_independence
from .errors import ConstructionError, InputError, ScopeError, StructureError
from .exactlin import (
    Matrix,
    Subspace,
    Vector,
    is_zero_vector,
    kernel_vectors,
    linearly_independent,
    scalar,
    vector,
    vectors_rank,
)
from .families import witt_gram
from .isogrp import (
    AffineIsometry,
    BlockForm,
    GroupPresentation,
    block_form,
    commutator,
    commutator_pairs,
    group_rank,
    holonomy_abelian,
    is_abelian,
    u_gamma,
)
from .quadspace import QuadraticSpace, WittFrame, frame_from_coordinates, is_totally_isotropic, witt_frame

PURE_TRANSLATIONS = "PureTranslations"
FREE_ABELIAN_WITH_HOLONOMY = "FreeAbelianWithHolonomy"
HEISENBERG_TIMES_TRANSLATIONS = "HeisenbergTimesTranslations"
RANK6_LATTICE = "Rank6Lattice"
OUT_OF_SCOPE = "OutOfScope"

NOT_CERTIFIED = "homogeneity not certified"


def cross_matrix(x: Sequence) -> Matrix:
    """T(x) with T(x) y = x cross y."""
    x = vector(x)
    if len(x) != 3:
        raise InputError(f"cross_matrix needs a 3-vector, got length {len(x)}")
    a, b, c = x
    z = Fraction(0)
    return Matrix([[z, -c, b], [c, z, -a], [-b, a, z]])


def lagrangian_frame(space: QuadraticSpace | Matrix, U: Subspace) -> WittFrame:
    frame = witt_frame(space, U)
    if frame.w_basis:
        raise StructureError("U is not half-dimensional, so there is no U + U* splitting")
    return frame


def alpha_of(g: AffineIsometry, frame: WittFrame) -> Fraction | None:
    """alpha with C = alpha T(u*) for g in a frame of shape U + U* (dim 3 each).

    Returns 0 when C = 0 and None when no alpha fits.
    """
    if frame.k != 3 or frame.w_basis:
        raise StructureError("alpha_of needs a frame U + U* with dim U = 3")
    C = block_form(g, frame).C
    if C.is_zero():
        return Fraction(0)
    _, _, ustar = frame.coordinates(g.translation)
    T = cross_matrix(ustar)
    for i in range(3):
        for j in range(3):
            if T[i, j]:
                alpha = C[i, j] / T[i, j]
                return alpha if C == T * alpha else None
    return None


@dataclass(frozen=True)
class ClassificationVerdict:
    tag: str
    data: dict = field(default_factory=dict)
    trail: tuple = ()  # ((rule, finding), ...)
    qualifiers: tuple = ()

    @property
    def rank(self) -> int | None:
        return self.data.get("rank")


class _Trail:
    def __init__(self):
        self.steps: list[tuple[str, str]] = []

    def add(self, rule: str, finding: str) -> None:
        self.steps.append((rule, finding))

    def verdict(self, tag: str, data: dict, qualifiers=()) -> ClassificationVerdict:
        return ClassificationVerdict(tag, data, tuple(self.steps), tuple(qualifiers))

    def out(self, rule: str, finding: str, data: dict | None = None) -> ClassificationVerdict:
        self.add(rule, "VIOLATED: " + finding)
        return ClassificationVerdict(OUT_OF_SCOPE, dict(data or {}, violated=rule), tuple(self.steps))


def _commutator_translation_span(P: GroupPresentation) -> int:
    vecs = []
    gens = P.generators
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            c = commutator(gens[i], gens[j])
            if not c.is_identity():
                vecs.append(c.translation)
    return vectors_rank(vecs) if vecs else 0


def classify(P: GroupPresentation, assert_malcev: bool = False) -> ClassificationVerdict:
    n = P.dim
    p, q = P.space.signature[:2]
    if n > 6 and q > 2:
        raise ScopeError(f"classification covers dimension <= 6 or signature (n-2, 2); got ({p}, {q})")
    t = _Trail()
    t.add("scope", f"dimension {n}, signature ({p}, {q})")
    report = homogeneity_verdict(P)
    qualifiers = [] if report.verdict == TRANSITIVE else [NOT_CERTIFIED]
    t.add("homogeneity", f"centralizer verdict {report.verdict}")
    if not translation_independence(P):
        note = "translation parts dependent"
        if assert_malcev:
            return t.out("independent-translations-of-a-minimal-basis", note)
        qualifiers.append("translation parts dependent; inconclusive without a minimal generating set")
    rank = group_rank(P)
    nils = P.nilparts()

    if all(a.is_zero() for a in nils):
        t.add("pure-translations", "every linear part is the identity")
        return t.verdict(PURE_TRANSLATIONS, {"rank": rank, "dim_u_gamma": 0}, qualifiers)

    if q <= 1:
        return t.out("riemannian-lorentzian-pure-translations", "signature admits only pure translations")
    if n <= 4:
        return t.out("dimension-at-most-four-pure-translations", "dimension <= 4 admits only pure translations")
    if not holonomy_abelian(P):
        return t.out("abelian-holonomy-below-dimension-fourteen", "linear parts do not commute")
    t.add("abelian-holonomy-below-dimension-fourteen", "linear parts commute")

    ug = u_gamma(P)
    if is_abelian(P):
        t.add("group-abelian", "all generator commutators trivial")
        if ug.dim == 3:
            return t.out("no-abelian-group-with-three-dim-holonomy-image", "abelian with dim U_Gamma = 3", {"dim_u_gamma": 3})
        if ug.dim != 2:
            return t.out("holonomy-image-is-two-dimensional", f"dim U_Gamma = {ug.dim}", {"dim_u_gamma": ug.dim})
        for a in nils:
            if not a.is_zero() and Subspace.span(a.columns(), n) != ug:
                return t.out("image-of-any-nonzero-holonomy-is-U_Gamma", "some im A differs from U_Gamma")
        t.add("image-of-any-nonzero-holonomy-is-U_Gamma", "dim U_Gamma = 2 = rk A for every A != 0")
        if not is_totally_isotropic(P.space, ug):
            return t.out("U_Gamma-totally-isotropic", "U_Gamma is not totally isotropic")
        frame = witt_frame(P.space, ug)
        try:
            forms = [block_form(a, frame) for a in nils]
        except StructureError as exc:
            return t.out("witt-block-form", str(exc))
        if any(not f.B.is_zero() for f in forms):
            return t.out("holonomy-only-in-corner-block", "a B block is nonzero")
        coords = [frame.coordinates(v) for v in P.translations()]
        if any(not is_zero_vector(c[2]) for c in coords):
            return t.out("translations-in-U_Gamma-perp", "some translation has a U_Gamma* component")
        t.add("translations-in-U_Gamma-perp", "all U_Gamma* components vanish")
        cs = [f.C[0, 1] for f in forms]
        ws = [c[1] for c in coords]
        m = len(frame.w_basis)
        if m:
            lambdas = kernel_vectors(Matrix.from_columns(ws))
        else:
            lambdas = [tuple(Fraction(int(i == j)) for j in range(len(ws))) for i in range(len(ws))]
        for lam in lambdas:
            if sum((l * c for l, c in zip(lam, cs)), Fraction(0)):
                return t.out("w-dependencies-carry-over-to-C", f"relation {tuple(str(x) for x in lam)} on w but not on C")
        t.add("w-dependencies-carry-over-to-C", f"{len(lambdas)} relations checked")
        data = {"rank": rank, "dim_u_gamma": 2}
        if (p, q) == (3, 2):
            ref = next((i for i, c in enumerate(cs) if c), None)
            if ref is None or is_zero_vector(ws[ref]):
                return t.out("signature-3-2-w-proportional-to-c", "reference generator has w = 0")
            for c, w in zip(cs, ws):
                if w != tuple(c / cs[ref] * x for x in ws[ref]):
                    return t.out("signature-3-2-w-proportional-to-c", "w_i != (c_i / c_ref) w_ref")
            t.add("signature-3-2-w-proportional-to-c", f"reference generator {ref + 1}")
            if rank > 3:
                return t.out("signature-3-2-rank-at-most-three", f"rank {rank}")
        if (p, q) == (4, 2) and rank > 4:
            return t.out("signature-4-2-rank-at-most-four", f"rank {rank}")
        return t.verdict(FREE_ABELIAN_WITH_HOLONOMY, data, qualifiers)

    t.add("group-non-abelian", "some generator commutator is nontrivial")
    if (n, p, q) != (6, 3, 3):
        return t.out("non-abelian-needs-signature-3-3-in-dimension-six", f"signature ({p}, {q}) in dimension {n}")
    if ug.dim != 3 or not is_totally_isotropic(P.space, ug):
        return t.out("holonomy-image-is-lagrangian", f"dim U_Gamma = {ug.dim}")
    frame = lagrangian_frame(P.space, ug)
    alphas = []
    for g in P.generators:
        try:
            a = alpha_of(g, frame)
        except StructureError as exc:
            return t.out("corner-block-form", str(exc))
        if a is None:
            return t.out("C-is-alpha-times-cross-matrix", "no alpha fits some generator")
        alphas.append(a)
    for i, j in commutator_pairs(P):
        if alphas[i] != alphas[j] or not alphas[i]:
            return t.out("alpha-agrees-on-non-commuting-pairs", f"generators {i + 1}, {j + 1}")
    t.add("alpha-agrees-on-non-commuting-pairs", "common alpha " + str(next(a for a in alphas if a)))
    span = _commutator_translation_span(P)
    data = {"rank": rank, "dim_u_gamma": 3, "commutator_span": span}
    if rank <= 5:
        if span != 1 or rank < 3:
            return t.out("heisenberg-times-translations", f"rank {rank}, commutator span {span}", data)
        t.add("heisenberg-times-translations", f"rank {rank} = 3 + {rank - 3}")
        data["rank_theta"] = rank - 3
        return t.verdict(HEISENBERG_TIMES_TRANSLATIONS, data, qualifiers)
    if rank == 6 and span == 3:
        t.add("rank-six-center-is-commutator-span", "commutator translations span 3 dimensions")
        return t.verdict(RANK6_LATTICE, data, qualifiers)
    return t.out("rank-six-center-is-commutator-span", f"rank {rank}, commutator span {span}", data)


# ---------------------------------------------------------------------------
# constructors


def _coerce_gen(gen, n_w: int) -> tuple[Fraction, Vector, Vector]:
    if isinstance(gen, dict):
        c, u, w = gen.get("c", 0), gen.get("u", (0, 0)), gen.get("w", (0,) * n_w)
    else:
        c, u, w = gen
    u, w = vector(u), vector(w)
    if len(u) != 2 or len(w) != n_w:
        raise ConstructionError("generator-shape", f"need u of length 2 and w of length {n_w}")
    return scalar(c), u, w


def construct_sig2(k: int, n: int, gens: Sequence) -> GroupPresentation:
    """Abelian generators ((I, 0, C_i), (u_i, w_i, 0)) in signature (n-2, 2).

    Witt coordinates: U (2), W (n-4, G_W = I), U* (2).
    """
    if n < 4:
        raise ConstructionError("n >= 4", "signature (n-2, 2) needs n >= 4")
    if len(gens) != k:
        raise ConstructionError("k generators", f"expected {k} generators, got {len(gens)}")
    m = n - 4
    parsed = [_coerce_gen(g, m) for g in gens]
    space = QuadraticSpace(witt_gram(2, Matrix.identity(m)))
    frame = frame_from_coordinates(space, 2)
    cs = [c for c, _, _ in parsed]
    if m:
        relations = kernel_vectors(Matrix.from_columns([w for _, _, w in parsed]))
    else:
        relations = [tuple(Fraction(int(i == j)) for j in range(k)) for i in range(k)]
    for lam in relations:
        if sum((l * c for l, c in zip(lam, cs)), Fraction(0)):
            raise ConstructionError("dependency-condition", "a relation among the w_i does not hold among the C_i")
    vs = [frame.from_coordinates(u, w, (0, 0)) for _, u, w in parsed]
    if not linearly_independent(vs):
        raise ConstructionError("independent-translations", "translation parts are linearly dependent")
    gens_out = []
    for c, _, _ in parsed:
        C = Matrix([[0, c], [-c, 0]])
        A = BlockForm(Matrix.zeros(m, 2), C, frame).assemble()
        gens_out.append(A)
    return GroupPresentation(space, tuple(AffineIsometry(space, a, v) for a, v in zip(gens_out, vs)))


def _dim6_space() -> tuple[QuadraticSpace, WittFrame]:
    space = QuadraticSpace(witt_gram(3, Matrix.zeros(0)))
    return space, frame_from_coordinates(space, 3)


def _corner(C: Matrix) -> Matrix:
    return Matrix.block([[Matrix.zeros(3), C], [Matrix.zeros(3), Matrix.zeros(3)]])


def construct_dim6(kind: str, params: dict) -> GroupPresentation:
    """Non-abelian groups in signature (3, 3) with C_i = alpha T(u*_i).

    kind "a": Heisenberg generators from ``ustar`` (two vectors) plus up to two
    translations ``theta`` in U.  kind "b": three generators from ``ustar``.
    Optional ``u`` gives U components of the generator translations.
    """
    alpha = scalar(params.get("alpha", 1))
    if not alpha:
        raise ConstructionError("alpha != 0", "alpha must be nonzero")
    ustars = [vector(x) for x in params.get("ustar", ())]
    want = {"a": 2, "b": 3}.get(kind)
    if want is None:
        raise ConstructionError("type a or b", f"unknown type {kind!r}")
    if len(ustars) != want or any(len(x) != 3 for x in ustars):
        raise ConstructionError("ustar-shape", f"type {kind} needs {want} vectors of length 3")
    if not linearly_independent(ustars):
        raise ConstructionError("independent-ustar", "the u* vectors are linearly dependent")
    us = [vector(x) for x in params.get("u", [(0, 0, 0)] * want)]
    if len(us) != want or any(len(x) != 3 for x in us):
        raise ConstructionError("u-shape", f"need {want} U components of length 3")
    theta = [vector(x) for x in params.get("theta", ())] if kind == "a" else []
    if kind == "b" and params.get("theta"):
        raise ConstructionError("theta-only-for-type-a", "type b takes no extra translations")
    if len(theta) > 2 or any(len(x) != 3 for x in theta):
        raise ConstructionError("theta-shape", "at most two translation vectors of length 3")
    space, frame = _dim6_space()
    gens = []
    for u, s in zip(us, ustars):
        A = _corner(cross_matrix(s) * alpha)
        gens.append(AffineIsometry(space, A, frame.from_coordinates(u, (), s)))
    for th in theta:
        gens.append(AffineIsometry.translation_by(space, frame.from_coordinates(th, (), (0, 0, 0))))
    P = GroupPresentation(space, tuple(gens))
    center = []
    for i in range(want):
        for j in range(i + 1, want):
            center.append(commutator(gens[i], gens[j]).translation)
    if not linearly_independent([g.translation for g in gens] + center):
        raise ConstructionError("independent-translations-with-center", "generator and center translations are dependent")
    return P
