"""Fixed points of group elements, and witness-producing criteria for the
commutator of a non-commuting pair.

Conventions for a pair g1 = (I + A1, v1), g2 = (I + A2, v2) in a Witt frame
with respect to U_0: M = B1^T G_W B2 is the pairing matrix, u3 is the U_0
component of A1 v2 and v_i = (u_i, w_i, u*_i).  The commutator is
g3 = (I + 2 A1 A2, 2 A1 v2); its C block is -2M and its translation 2 u3
lies in U_0.  So any x in U_0* with -M x = u3 gives the fixed point -x of g3.

Each criterion below is a sufficient condition for such an x and builds it
the way its proof does.  A criterion that does not apply returns nothing,
which never means "no fixed point".
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InputError, StructureError
from .exactlin import Matrix, Vector, dot, is_zero_vector, linearly_independent, rank, solve, vneg, zero_vector
from .families import hyperbolic_pair_family
from .isogrp import (
    AffineIsometry,
    GroupPresentation,
    block_form,
    commutator,
    enumerate_words,
    holonomy_abelian,
    noncommuting_pairs,
    u_zero,
)
from .quadspace import WittFrame, form_signature, witt_frame

COMMUTATOR_PREIMAGE = "commutator-preimage"
TRANSLATION_FREE_COMPONENT = "translation-free-component"
RANK_TWO_KERNEL_COLLINEAR = "rank-two-kernel-collinear"
RANK_THREE_ADAPTED_PREIMAGE = "rank-three-adapted-preimage"
FOUR_DIM_ANNIHILATOR = "four-dim-annihilator"
WORD_SCAN = "word-scan"
DIRECT = "direct"

CASCADE = (COMMUTATOR_PREIMAGE, RANK_TWO_KERNEL_COLLINEAR, RANK_THREE_ADAPTED_PREIMAGE, FOUR_DIM_ANNIHILATOR)


@dataclass(frozen=True)
class FixedPointWitness:
    element: AffineIsometry
    point: Vector
    provenance: str

    def verify(self) -> bool:
        return self.element.apply(self.point) == self.point


def fixed_point(g: AffineIsometry) -> Vector | None:
    """Some p with g(p) = p, i.e. A p = -v, or None."""
    sol = solve(g.nilpart, vneg(g.translation))
    return None if sol is None else sol[0]


# ---------------------------------------------------------------------------
# pair data in a frame


@dataclass(frozen=True)
class PairData:
    frame: WittFrame
    B1: Matrix
    C1: Matrix
    B2: Matrix
    C2: Matrix
    M: Matrix  # B1^T G_W B2, skew
    u3: Vector  # U_0 component of A1 v2
    w1: Vector
    s1: Vector  # U_0* component of v1
    w2: Vector
    s2: Vector

    @property
    def k(self) -> int:
        return self.frame.k

    def swapped(self) -> PairData:
        """Data for (g2, g1): pairing -M and u3 -> -u3 give the same preimage x."""
        return PairData(self.frame, self.B2, self.C2, self.B1, self.C1, -self.M, vneg(self.u3), self.w2, self.s2, self.w1, self.s1)

    def b1t_g(self, z: Vector) -> Vector:
        """B1^T G_W z."""
        return self.B1.T @ (self.frame.w_gram @ z)


def pair_data(g1: AffineIsometry, g2: AffineIsometry, frame: WittFrame) -> PairData:
    f1, f2 = block_form(g1, frame), block_form(g2, frame)
    m = len(frame.w_basis)
    gw = frame.w_gram
    M = f1.B.T @ gw @ f2.B if m else Matrix.zeros(frame.k)
    u, w, s = frame.coordinates(g1.nilpart @ g2.translation)
    if not is_zero_vector(w) or not is_zero_vector(s):
        raise StructureError("A1 v2 does not lie in U_0")
    _, w1, s1 = frame.coordinates(g1.translation)
    _, w2, s2 = frame.coordinates(g2.translation)
    return PairData(frame, f1.B, f1.C, f2.B, f2.C, M, u, w1, s1, w2, s2)


def _preimage(d: PairData, target: Vector) -> Vector | None:
    """x with -M x = target."""
    sol = solve(-d.M, target)
    return None if sol is None else sol[0]


def _collinear_factor(a: Vector, b: Vector) -> Fraction | None:
    """lambda != 0 with a = lambda b, or None."""
    if is_zero_vector(b):
        return None
    idx = next(i for i, x in enumerate(b) if x)
    lam = a[idx] / b[idx]
    if not lam or any(x != lam * y for x, y in zip(a, b)):
        return None
    return lam


def _through_b1_transpose(d: PairData) -> Vector | None:
    """Write u3 = B1^T G_W z with z from the translation data, then invert -M.

    Uses u3 = B1^T G_W (w1 - lambda w2) / lambda when u*_1 = lambda u*_2, and
    u3 = -B1^T G_W w2 when u*_2 = 0.  Requires im M = im B1^T.
    """
    if rank(d.M) != rank(d.B1):
        return None
    if is_zero_vector(d.s2):
        z = vneg(d.w2)
    else:
        lam = _collinear_factor(d.s1, d.s2)
        if lam is None:
            return None
        z = tuple((a - lam * b) / lam for a, b in zip(d.w1, d.w2))
    if d.b1t_g(z) != d.u3:
        return None
    return _preimage(d, d.u3)


# ---------------------------------------------------------------------------
# criteria; each returns x in U_0* coordinates or None when it does not apply


def crit_commutator_preimage(d: PairData) -> Vector | None:
    return _preimage(d, d.u3)


def crit_translation_free_component(d: PairData) -> Vector | None:
    """rk M = rk B_i and the U_0* component of the other translation vanishes."""
    for data in (d, d.swapped()):
        if is_zero_vector(data.s2):
            x = _through_b1_transpose(data)
            if x is not None:
                return x
    return None


def crit_rank_two_kernel_collinear(d: PairData) -> Vector | None:
    """dim U_0 = 3 and some B_i has rank 2: ker B_i is a line holding u*_1, u*_2."""
    if d.k != 3:
        return None
    for data in (d, d.swapped()):
        if rank(data.B1) != 2:
            continue
        if any(not is_zero_vector(data.B1 @ s) for s in (data.s1, data.s2)):
            continue
        x = _through_b1_transpose(data)
        if x is not None:
            return x
    return None


def crit_rank_three_adapted_preimage(d: PairData) -> Vector | None:
    """dim U_0 = 3, rk B1 = rk B2 = 3, dim(im B1 + im B2) <= 5.

    With alpha = <b1^i, b2^j> != 0, xi = <b1^i, w2>, eta = <b1^j, w2> the
    preimage is x_i = -eta / alpha, x_j = xi / alpha, zero elsewhere.
    """
    if d.k != 3 or rank(d.B1) != 3 or rank(d.B2) != 3:
        return None
    if rank(Matrix.block([[d.B1, d.B2]])) > 5:
        return None
    if not (is_zero_vector(d.s1) and is_zero_vector(d.s2)):
        return None
    hit = next(((i, j) for i in range(3) for j in range(3) if d.M[i, j]), None)
    if hit is None:
        return None
    i, j = hit
    alpha = d.M[i, j]
    gw = d.frame.w_gram
    xi = dot(d.B1.column(i), gw @ d.w2)
    eta = dot(d.B1.column(j), gw @ d.w2)
    x = [Fraction(0)] * 3
    x[i] = -eta / alpha
    x[j] = xi / alpha
    x = tuple(x)
    return x if -d.M @ x == d.u3 else None


def crit_four_dim_annihilator(d: PairData) -> Vector | None:
    """dim U_0 = 4 and rk M = rk B1 = rk B2.

    Collinear u*'s reduce to the B1^T route; independent u*'s force
    im B1^T = ker u*_1^T cap ker u*_2^T, which contains u3.
    """
    if d.k != 4:
        return None
    r = rank(d.M)
    if not (r == rank(d.B1) == rank(d.B2)):
        return None
    if not linearly_independent([d.s1, d.s2]):
        for data in (d, d.swapped()):
            x = _through_b1_transpose(data)
            if x is not None:
                return x
        return None
    if dot(d.s1, d.u3) or dot(d.s2, d.u3):
        return None
    rows_b1 = d.B1.T.columns() if d.B1.nrows else []
    if any(dot(s, b) for s in (d.s1, d.s2) for b in rows_b1):
        return None
    return _preimage(d, d.u3)


CRITERIA = {
    COMMUTATOR_PREIMAGE: crit_commutator_preimage,
    TRANSLATION_FREE_COMPONENT: crit_translation_free_component,
    RANK_TWO_KERNEL_COLLINEAR: crit_rank_two_kernel_collinear,
    RANK_THREE_ADAPTED_PREIMAGE: crit_rank_three_adapted_preimage,
    FOUR_DIM_ANNIHILATOR: crit_four_dim_annihilator,
}


def _pair_frame(g1: AffineIsometry, g2: AffineIsometry) -> WittFrame:
    P = GroupPresentation(g1.space, (g1, g2))
    return witt_frame(g1.space, u_zero(P))


def _witness(g3: AffineIsometry, d: PairData, x: Vector | None, name: str) -> FixedPointWitness | None:
    if x is None:
        return None
    point = d.frame.from_coordinates(zero_vector(d.k), zero_vector(len(d.frame.w_basis)), vneg(x))
    w = FixedPointWitness(g3, point, name)
    return w if w.verify() else None


def _prepare(g1: AffineIsometry, g2: AffineIsometry, frame: WittFrame | None):
    if (g1.nilpart @ g2.nilpart).is_zero():
        raise InputError("the linear parts commute (A1 A2 = 0); the criteria need a non-commuting pair")
    frame = frame if frame is not None else _pair_frame(g1, g2)
    try:
        d = pair_data(g1, g2, frame)
    except StructureError:
        return None, frame, None
    return commutator(g1, g2), frame, d


@dataclass(frozen=True)
class CriterionOutcome:
    name: str
    witness: FixedPointWitness | None


def criteria_witnesses(g1: AffineIsometry, g2: AffineIsometry, frame: WittFrame | None = None) -> list[CriterionOutcome]:
    """Run every criterion independently (not just the first that fires)."""
    g3, frame, d = _prepare(g1, g2, frame)
    if d is None:
        return [CriterionOutcome(name, None) for name in CRITERIA]
    return [CriterionOutcome(name, _witness(g3, d, fn(d), name)) for name, fn in CRITERIA.items()]


def commutator_fixed_point(g1: AffineIsometry, g2: AffineIsometry, frame: WittFrame | None = None) -> FixedPointWitness | None:
    """First witness along the cascade, or None when no criterion applies."""
    g3, frame, d = _prepare(g1, g2, frame)
    if d is None:
        return None
    for name in CASCADE:
        w = _witness(g3, d, CRITERIA[name](d), name)
        if w is not None:
            return w
    return None


def sig44_pair_family(seed: int) -> GroupPresentation:
    """Two-generator admissible presentations in signature (4, 4) with dim U_0 = 2."""
    return hyperbolic_pair_family(2, seed)


# ---------------------------------------------------------------------------
# dimension diagnostic


@dataclass(frozen=True)
class Inequality:
    label: str
    lhs: int
    rhs: int

    @property
    def holds(self) -> bool:
        return self.lhs >= self.rhs


@dataclass(frozen=True)
class PairDiagnostic:
    pair: tuple
    rank_b1: int
    rank_b2: int
    rank_pairing: int
    image_sum_dim: int
    witness: FixedPointWitness | None
    rules_error: str | None = None


@dataclass(frozen=True)
class DiagnosticReport:
    n: int
    s: int
    dim_u0: int
    holonomy_abelian: bool
    witt_index_w: int | None
    dim_w: int | None
    pairs: tuple = ()
    inequalities: tuple = ()
    status: str = ""
    witnesses: tuple = field(default=())

    @property
    def violated(self) -> list[Inequality]:
        return [q for q in self.inequalities if not q.holds]


def _real_witt_index(gram: Matrix) -> int:
    p, q, r = form_signature(gram)
    return r + min(p, q)


def dimension_diagnostic(P: GroupPresentation) -> DiagnosticReport:
    n = P.dim
    s = P.space.signature[1]
    u0 = u_zero(P)
    k = u0.dim
    if holonomy_abelian(P):
        return DiagnosticReport(n, s, k, True, None, None, status="abelian holonomy")
    frame = witt_frame(P.space, u0)
    gw = frame.w_gram
    m = len(frame.w_basis)
    wi = _real_witt_index(gw) if m else 0
    pairs = []
    witnesses = []
    for i, j in noncommuting_pairs(P):
        g1, g2 = P.generators[i], P.generators[j]
        try:
            d = pair_data(g1, g2, frame)
        except StructureError as exc:
            pairs.append(PairDiagnostic((i, j), 0, 0, 0, 0, None, str(exc)))
            continue
        w = commutator_fixed_point(g1, g2, frame)
        if w is not None:
            witnesses.append(w)
        image_sum = rank(Matrix.block([[d.B1, d.B2]])) if m else 0
        pairs.append(PairDiagnostic((i, j), rank(d.B1), rank(d.B2), rank(d.M), image_sum, w))
    ineqs = [Inequality("s >= dim U_0 + wi(W)", s, k + wi), Inequality("dim U_0 + wi(W) >= s", k + wi, s)]
    for p in pairs:
        if p.rules_error:
            continue
        tag = f"pair {p.pair[0] + 1},{p.pair[1] + 1}"
        ineqs.append(Inequality(f"{tag}: rk B1 >= 2", p.rank_b1, 2))
        ineqs.append(Inequality(f"{tag}: wi(W) >= rk B1", wi, p.rank_b1))
        ineqs.append(Inequality(f"{tag}: wi(W) >= rk B2", wi, p.rank_b2))
        ineqs.append(Inequality(f"{tag}: dim W >= 2 rk B1", m, 2 * p.rank_b1))
        if k == 4 and max(p.rank_b1, p.rank_b2) >= 3:
            ineqs.append(Inequality(f"{tag}: wi(W) >= 3 when dim U_0 = 4 and rk B >= 3", wi, 3))
        if k == 3 and p.image_sum_dim == 6:
            ineqs.append(Inequality(f"{tag}: wi(W) >= 4 when dim U_0 = 3 and dim(im B1 + im B2) = 6", wi, 4))
    ineqs.append(Inequality("dim U_0 >= 2 for non-commuting holonomy", k, 2))
    ineqs = tuple(ineqs)
    violated = [q for q in ineqs if not q.holds]
    if any(p.rules_error for p in pairs):
        status = "structure violated"
    elif witnesses:
        status = "fixed point found"
    elif violated:
        status = "inequality violated"
    elif s == 7 and n == 14:
        status = "bound attained: s = 7, n = 14"
    elif s >= 7:
        status = "bound satisfied"
    else:  # pragma: no cover - excluded by the dimension bound
        status = "unresolved"
    return DiagnosticReport(n, s, k, False, wi, m, tuple(pairs), ineqs, status, tuple(witnesses))


def freeness_scan(P: GroupPresentation, max_length: int = 4) -> FixedPointWitness | None:
    """First non-identity word of length <= max_length that has a fixed point."""
    if max_length < 1:
        raise InputError("word length bound must be at least 1")
    for g in enumerate_words(P, max_length):
        if g.is_identity():
            continue
        p = fixed_point(g)
        if p is not None:
            return FixedPointWitness(g, p, WORD_SCAN)
    return None
