"""Centralizer Lie algebra of a presentation and the homogeneity verdict.

The centralizer of Gamma inside iso(Q^n_s) is the solution space of

    L A_i - A_i L = 0,   L v_i - A_i t = 0,   L^T G + G L = 0

over pairs (L, t).  Skew-adjointness is built in by writing L = G^-1 K with
K skew, so one exact kernel computation gives the whole algebra.

A full orbit span at 0 only shows the centralizer has an open orbit.  To
call the action transitive we also need the orbit to be closed, which we
certify by exhibiting centralizer elements whose translations span Q^n and
which generate a nilpotent Lie algebra of nilpotent affine maps (a unipotent
group, whose orbits are closed).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactlin import Matrix, Vector, is_zero_vector, kernel_vectors, linearly_independent, vectors_rank
from .isogrp import GroupPresentation, flatten_log, lie_bracket, u_zero
from .quadspace import orthogonal_complement, pair

TRANSITIVE = "transitive"
OPEN_ORBIT_ONLY = "open-orbit-only"
NOT_OPEN = "not-open"


@dataclass(frozen=True)
class IsoAlgebraElement:
    linear: Matrix
    translation: tuple

    def bracket(self, other: IsoAlgebraElement) -> IsoAlgebraElement:
        lin, t = lie_bracket((self.linear, self.translation), (other.linear, other.translation))
        return IsoAlgebraElement(lin, t)

    def flat(self) -> Vector:
        return flatten_log((self.linear, self.translation))

    def is_zero(self) -> bool:
        return self.linear.is_zero() and is_zero_vector(self.translation)


@dataclass(frozen=True)
class CentralizerReport:
    algebra_basis: tuple
    orbit_span_dim: int
    nilpotent_certified: bool
    verdict: str
    certificate: tuple = ()  # spanning elements of the certified nilpotent subalgebra
    certificate_source: str | None = None


def _skew_parameters(n: int) -> list[tuple[int, int]]:
    return [(a, b) for a in range(n) for b in range(a + 1, n)]


def _skew_adjoint_basis(gram: Matrix) -> list[Matrix]:
    """Basis G^-1 (E_ab - E_ba), a < b, of the skew-adjoint matrices."""
    n = gram.nrows
    ginv = gram.inverse()
    cols = ginv.columns()
    basis = []
    zero = Fraction(0)
    for a, b in _skew_parameters(n):
        rows = [[zero] * n for _ in range(n)]
        for i in range(n):
            rows[i][b] = cols[a][i]
            rows[i][a] = -cols[b][i]
        basis.append(Matrix(rows))
    return basis


def residual(element: IsoAlgebraElement, generator) -> tuple[Matrix, Vector]:
    """[S, X] for S = (L, t) and X = (A, v)."""
    return lie_bracket((element.linear, element.translation), (generator.nilpart, generator.translation))


def centralizer_algebra(P: GroupPresentation) -> tuple[IsoAlgebraElement, ...]:
    n = P.dim
    gram = P.space.gram
    lin_basis = _skew_adjoint_basis(gram)
    zero_vec = (Fraction(0),) * n
    params: list[IsoAlgebraElement] = [IsoAlgebraElement(L, zero_vec) for L in lin_basis]
    for i in range(n):
        e = tuple(Fraction(1) if j == i else Fraction(0) for j in range(n))
        params.append(IsoAlgebraElement(Matrix.zeros(n), e))
    if not P.generators:
        return tuple(params)
    columns = []
    for s in params:
        col: list[Fraction] = []
        for g in P.generators:
            lin, t = residual(s, g)
            for r in lin.rows:
                col.extend(r)
            col.extend(t)
        columns.append(tuple(col))
    system = Matrix.from_columns(columns)
    out = []
    for c in kernel_vectors(system):
        lin = Matrix.zeros(n)
        t = list(zero_vec)
        for coeff, s in zip(c, params):
            if not coeff:
                continue
            if not s.linear.is_zero():
                lin = lin + s.linear * coeff
            else:
                t = [a + coeff * b for a, b in zip(t, s.translation)]
        out.append(IsoAlgebraElement(lin, tuple(t)))
    return tuple(out)


def commutes_with_generators(element: IsoAlgebraElement, P: GroupPresentation) -> bool:
    for g in P.generators:
        lin, t = residual(element, g)
        if not lin.is_zero() or not is_zero_vector(t):
            return False
    gram = P.space.gram
    return (element.linear.T @ gram + gram @ element.linear).is_zero()


def orbit_span_dim(elements) -> int:
    return vectors_rank([e.translation for e in elements])


# ---------------------------------------------------------------------------
# nilpotency certificate


class _Echelon:
    """Incremental row echelon form; each stored row is zero at earlier pivots."""

    def __init__(self):
        self.rows: list[tuple[int, list[Fraction]]] = []

    def __len__(self) -> int:
        return len(self.rows)

    def add(self, v: Vector) -> bool:
        """Insert v; False when it already lies in the span."""
        r = list(v)
        for piv, row in self.rows:
            c = r[piv]
            if c:
                r = [a - c * b for a, b in zip(r, row)]
        piv = next((i for i, x in enumerate(r) if x), None)
        if piv is None:
            return False
        c = r[piv]
        self.rows.append((piv, [x / c for x in r]))
        return True


def _span_basis(elements: list[IsoAlgebraElement]) -> list[IsoAlgebraElement]:
    """Greedy independent subset (keeps input order)."""
    ech = _Echelon()
    return [e for e in elements if ech.add(e.flat())]


def lie_closure(elements, bail=None) -> list[IsoAlgebraElement] | None:
    """Basis of the Lie algebra generated by ``elements``.

    ``bail`` is an optional predicate on new elements; when it fires the
    closure stops early and None is returned.
    """
    ech = _Echelon()
    basis = [e for e in elements if ech.add(e.flat())]
    if bail is not None and any(bail(e) for e in basis):
        return None
    frontier = list(basis)
    while frontier:
        new = []
        for x in frontier:
            for y in list(basis):
                z = x.bracket(y)
                if not z.is_zero() and ech.add(z.flat()):
                    if bail is not None and bail(z):
                        return None
                    basis.append(z)
                    new.append(z)
        frontier = new
    return basis


def lower_central_series_terminates(basis: list[IsoAlgebraElement]) -> bool:
    """g^1 = g, g^(k+1) = [g, g^k]; True iff it reaches 0."""
    current = basis
    while current:
        nxt = _span_basis([x.bracket(y) for x in basis for y in current])
        if len(nxt) >= len(current):
            return False
        current = nxt
    return True


def is_nilpotent_matrix(m: Matrix) -> bool:
    p = m
    for _ in range(m.nrows):
        if p.is_zero():
            return True
        p = p @ m
    return p.is_zero()


def certify_nilpotent(elements) -> bool:
    """The Lie algebra generated by ``elements`` is nilpotent and consists of nilpotent maps."""
    closure = lie_closure(elements, bail=lambda e: not is_nilpotent_matrix(e.linear))
    if closure is None:
        return False
    return lower_central_series_terminates(closure)


def flag_subalgebra(P: GroupPresentation, algebra) -> list[IsoAlgebraElement]:
    """Centralizer elements with L(U_0) = 0 and L(U_0-perp) in U_0.

    Such L strictly lower the flag U_0 < U_0-perp < Q^n, so the affine maps
    they define generate a nilpotent algebra of nilpotent matrices.
    """
    gram = P.space.gram
    u0 = u_zero(P)
    perp = orthogonal_complement(gram, u0).basis
    if not algebra:
        return []
    cols = []
    for e in algebra:
        conds: list[Fraction] = []
        for u in u0.basis:
            conds.extend(e.linear @ u)
        for y in perp:
            ly = e.linear @ y
            conds.extend(pair(gram, ly, x) for x in perp)
        cols.append(tuple(conds))
    if not cols[0]:
        return list(algebra)
    n = P.dim
    out = []
    for c in kernel_vectors(Matrix.from_columns(cols)):
        lin = Matrix.zeros(n)
        t = [Fraction(0)] * n
        for coeff, e in zip(c, algebra):
            if coeff:
                lin = lin + e.linear * coeff
                t = [a + coeff * b for a, b in zip(t, e.translation)]
        out.append(IsoAlgebraElement(lin, tuple(t)))
    return out


def homogeneity_verdict(P: GroupPresentation) -> CentralizerReport:
    algebra = centralizer_algebra(P)
    n = P.dim
    span = orbit_span_dim(algebra)
    if span < n:
        return CentralizerReport(algebra, span, False, NOT_OPEN)
    candidates = [("flag", flag_subalgebra(P, algebra)), ("full", list(algebra))]
    for source, cand in candidates:
        if orbit_span_dim(cand) < n:
            continue
        spanning = _translation_spanning_subset(cand, n)
        if certify_nilpotent(spanning):
            return CentralizerReport(algebra, span, True, TRANSITIVE, tuple(spanning), source)
    return CentralizerReport(algebra, span, False, OPEN_ORBIT_ONLY)


def _translation_spanning_subset(elements, n: int) -> list[IsoAlgebraElement]:
    chosen: list[IsoAlgebraElement] = []
    ech = _Echelon()
    for e in elements:
        if ech.add(e.translation):
            chosen.append(e)
            if len(ech) == n:
                break
    return chosen


def translation_independence(P: GroupPresentation) -> bool:
    """Generator translation parts are linearly independent."""
    return linearly_independent(P.translations())
