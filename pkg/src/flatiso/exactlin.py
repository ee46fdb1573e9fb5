"""Exact rational linear algebra.

Scalars are :class:`fractions.Fraction`, vectors are plain tuples of
fractions and matrices are immutable :class:`Matrix` values.  Every routine
is exact; elimination always picks the first nonzero entry of a column as
pivot, so bases come out identical across runs.
"""

from __future__ import annotations

import math
import re
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError

Scalar = Fraction
Vector = tuple  # tuple[Fraction, ...]

_ZERO = Fraction(0)
_ONE = Fraction(1)
_SCALAR_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


# ---------------------------------------------------------------------------
# scalars


def scalar(value) -> Fraction:
    """Coerce ``value`` to an exact rational.

    Accepts ints, fractions and strings of the form ``"p"`` or ``"p/q"``.
    Floats are refused since they are not exact.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InputError(f"booleans are not scalars: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_scalar(value)
    if hasattr(value, "numerator") and hasattr(value, "denominator") and not isinstance(value, float):
        return Fraction(int(value.numerator), int(value.denominator))
    raise InputError(f"not an exact scalar: {value!r}")


def parse_scalar(text: str) -> Fraction:
    m = _SCALAR_RE.match(text.replace("−", "-"))
    if m is None:
        raise InputError(f"malformed scalar {text!r} (expected 'p' or 'p/q')")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise InputError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_scalar(x: Fraction) -> str:
    x = scalar(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# vectors


def vector(values: Iterable) -> Vector:
    return tuple(scalar(v) for v in values)


def zero_vector(n: int) -> Vector:
    return (_ZERO,) * n


def unit_vector(n: int, i: int) -> Vector:
    return tuple(_ONE if j == i else _ZERO for j in range(n))


def vadd(u: Vector, v: Vector) -> Vector:
    _check_same_length(u, v)
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Vector, v: Vector) -> Vector:
    _check_same_length(u, v)
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, v: Vector) -> Vector:
    c = scalar(c)
    return tuple(c * a for a in v)


def vneg(v: Vector) -> Vector:
    return tuple(-a for a in v)


def dot(u: Vector, v: Vector) -> Fraction:
    """Euclidean dot product (no form involved)."""
    _check_same_length(u, v)
    return sum((a * b for a, b in zip(u, v) if a and b), _ZERO)


def is_zero_vector(v: Vector) -> bool:
    return not any(v)


def linear_combination(coeffs: Sequence, vectors: Sequence[Vector], n: int | None = None) -> Vector:
    if n is None:
        if not vectors:
            raise InputError("cannot infer length of an empty combination")
        n = len(vectors[0])
    out = [_ZERO] * n
    for c, v in zip(coeffs, vectors):
        if c:
            for i, a in enumerate(v):
                if a:
                    out[i] += c * a
    return tuple(out)


def _check_same_length(u, v):
    if len(u) != len(v):
        raise InputError(f"length mismatch: {len(u)} vs {len(v)}")


# ---------------------------------------------------------------------------
# matrices


class Matrix:
    """Immutable dense matrix of fractions."""

    __slots__ = ("_rows", "nrows", "ncols", "_hash")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        data = tuple(tuple(scalar(x) for x in row) for row in rows)
        if data:
            width = len(data[0])
            if any(len(r) != width for r in data):
                raise InputError("ragged matrix rows")
        else:
            width = ncols or 0
        if ncols is not None and width != ncols:
            raise InputError(f"expected {ncols} columns, got {width}")
        self._rows = data
        self.nrows = len(data)
        self.ncols = width
        self._hash = None

    @classmethod
    def _trusted(cls, rows: tuple, ncols: int) -> Matrix:
        m = object.__new__(cls)
        m._rows = rows
        m.nrows = len(rows)
        m.ncols = ncols
        m._hash = None
        return m

    # constructors -----------------------------------------------------

    @classmethod
    def zeros(cls, nrows: int, ncols: int | None = None) -> Matrix:
        ncols = nrows if ncols is None else ncols
        return cls._trusted(tuple((_ZERO,) * ncols for _ in range(nrows)), ncols)

    @classmethod
    def identity(cls, n: int) -> Matrix:
        return cls.diagonal([_ONE] * n)

    @classmethod
    def diagonal(cls, entries: Sequence) -> Matrix:
        entries = [scalar(e) for e in entries]
        n = len(entries)
        return cls._trusted(
            tuple(tuple(entries[i] if i == j else _ZERO for j in range(n)) for i in range(n)), n
        )

    @classmethod
    def from_columns(cls, columns: Sequence[Vector], nrows: int | None = None) -> Matrix:
        columns = [vector(c) for c in columns]
        if not columns:
            return cls.zeros(nrows or 0, 0)
        n = len(columns[0])
        if any(len(c) != n for c in columns):
            raise InputError("columns of unequal length")
        return cls._trusted(tuple(tuple(c[i] for c in columns) for i in range(n)), len(columns))

    @classmethod
    def block(cls, blocks: Sequence[Sequence[Matrix]]) -> Matrix:
        """Assemble a block matrix; every block row must agree in height."""
        rows = []
        ncols = None
        for brow in blocks:
            height = brow[0].nrows
            if any(b.nrows != height for b in brow):
                raise InputError("block heights differ within a block row")
            width = sum(b.ncols for b in brow)
            if ncols is None:
                ncols = width
            elif width != ncols:
                raise InputError("block rows have different total widths")
            for i in range(height):
                rows.append(tuple(x for b in brow for x in b._rows[i]))
        return cls._trusted(tuple(rows), ncols or 0)

    # access -----------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def rows(self) -> tuple:
        return self._rows

    def row(self, i: int) -> Vector:
        return self._rows[i]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self._rows)

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.ncols)]

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def submatrix(self, r0: int, r1: int, c0: int, c1: int) -> Matrix:
        return Matrix._trusted(tuple(r[c0:c1] for r in self._rows[r0:r1]), c1 - c0)

    @property
    def T(self) -> Matrix:
        if not self._rows:
            return Matrix.zeros(self.ncols, 0)
        return Matrix._trusted(tuple(zip(*self._rows)), self.nrows)

    # arithmetic -------------------------------------------------------

    def _integer_rows(self) -> tuple[list[list[int]], int]:
        """Rows scaled to integers by the common denominator d."""
        d = 1
        for r in self._rows:
            for a in r:
                if a.denominator != 1:
                    d = math.lcm(d, a.denominator)
        if d == 1:
            return [[a.numerator for a in r] for r in self._rows], 1
        return [[a.numerator * (d // a.denominator) for a in r] for r in self._rows], d

    def __matmul__(self, other):
        # products run over integers with a single division per output entry
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise InputError(f"cannot multiply {self.shape} by {other.shape}")
            left, d1 = self._integer_rows()
            right, d2 = other._integer_rows()
            w = other.ncols
            d = d1 * d2
            out = []
            for r in left:
                acc = [0] * w
                for k, a in enumerate(r):
                    if a:
                        for j, b in enumerate(right[k]):
                            if b:
                                acc[j] += a * b
                out.append(tuple(Fraction(x, d) if d != 1 else Fraction(x) for x in acc))
            return Matrix._trusted(tuple(out), w)
        if isinstance(other, tuple):
            if self.ncols != len(other):
                raise InputError(f"cannot apply {self.shape} matrix to length-{len(other)} vector")
            nz = [(k, b) for k, b in enumerate(other) if b]
            return tuple(sum((r[k] * b for k, b in nz if r[k]), _ZERO) for r in self._rows)
        return NotImplemented

    def __add__(self, other: Matrix) -> Matrix:
        self._check_shape(other)
        return Matrix._trusted(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._rows, other._rows)), self.ncols
        )

    def __sub__(self, other: Matrix) -> Matrix:
        self._check_shape(other)
        return Matrix._trusted(
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self._rows, other._rows)), self.ncols
        )

    def __neg__(self) -> Matrix:
        return Matrix._trusted(tuple(tuple(-a for a in r) for r in self._rows), self.ncols)

    def __mul__(self, c) -> Matrix:
        if isinstance(c, Matrix):
            return NotImplemented
        c = scalar(c)
        return Matrix._trusted(tuple(tuple(c * a for a in r) for r in self._rows), self.ncols)

    __rmul__ = __mul__

    def _check_shape(self, other):
        if not isinstance(other, Matrix) or self.shape != other.shape:
            raise InputError(f"shape mismatch: {self.shape} vs {getattr(other, 'shape', None)}")

    # predicates -------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nrows, self.ncols, self._rows))
        return self._hash

    def is_zero(self) -> bool:
        return not any(any(r) for r in self._rows)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def is_symmetric(self) -> bool:
        return self.is_square() and all(
            self._rows[i][j] == self._rows[j][i] for i in range(self.nrows) for j in range(i + 1, self.ncols)
        )

    def is_skew(self) -> bool:
        return self.is_square() and all(
            self._rows[i][j] == -self._rows[j][i] for i in range(self.nrows) for j in range(i, self.ncols)
        )

    def inverse(self) -> Matrix:
        if not self.is_square():
            raise InputError("only square matrices can be inverted")
        n = self.nrows
        aug = [list(r) + [_ONE if i == j else _ZERO for j in range(n)] for i, r in enumerate(self._rows)]
        red, pivots = rref(aug, n)
        if len(pivots) < n or pivots[-1] >= n:
            raise InputError("matrix is singular")
        return Matrix._trusted(tuple(tuple(r[n:]) for r in red[:n]), n)

    def to_strings(self) -> list[list[str]]:
        return [[format_scalar(x) for x in r] for r in self._rows]

    def __repr__(self) -> str:
        body = "; ".join(" ".join(format_scalar(x) for x in r) for r in self._rows)
        return f"Matrix({self.nrows}x{self.ncols}: [{body}])"


def outer(u: Vector, v: Vector) -> Matrix:
    return Matrix._trusted(tuple(tuple(a * b for b in v) for a in u), len(v))


# ---------------------------------------------------------------------------
# elimination


def rref(rows: list[list[Fraction]], ncols: int | None = None) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form, in place on a list of row lists.

    Only the first ``ncols`` columns are eligible as pivots (the rest are
    carried along, e.g. an augmented right-hand side).
    """
    m = len(rows)
    if m == 0:
        return rows, []
    width = len(rows[0])
    if ncols is None:
        ncols = width
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, m):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        lead = prow[c]
        if lead != 1:
            inv = _ONE / lead
            prow = [x * inv if x else x for x in prow]
            rows[r] = prow
        nz = [j for j in range(c, width) if prow[j]]
        for i in range(m):
            if i == r:
                continue
            row = rows[i]
            f = row[c]
            if f:
                for j in nz:
                    row[j] -= f * prow[j]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return rows, pivots


def _kernel_from_rref(red: list[list[Fraction]], pivots: list[int], ncols: int) -> list[Vector]:
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [_ZERO] * ncols
        v[f] = _ONE
        for r, p in enumerate(pivots):
            if red[r][f]:
                v[p] = -red[r][f]
        basis.append(tuple(v))
    return basis


def solve(M: Matrix, b: Sequence) -> tuple[Vector, list[Vector]] | None:
    """Solve ``M x = b`` exactly.

    Returns ``(x, kernel)`` where ``x`` is the particular solution with all
    free variables zero and ``kernel`` spans ker M, or ``None`` when b is not
    in the image of M.
    """
    b = vector(b)
    if len(b) != M.nrows:
        raise InputError(f"right-hand side has length {len(b)}, matrix has {M.nrows} rows")
    n = M.ncols
    aug = [list(r) + [bi] for r, bi in zip(M.rows, b)]
    red, pivots = rref(aug, n)
    for r in range(len(pivots), len(red)):
        if red[r][n]:
            return None
    x = [_ZERO] * n
    for r, p in enumerate(pivots):
        x[p] = red[r][n]
    return tuple(x), _kernel_from_rref(red, pivots, n)


def kernel_vectors(M: Matrix) -> list[Vector]:
    """Kernel basis as produced by elimination (one vector per free column)."""
    red, pivots = rref([list(r) for r in M.rows], M.ncols)
    return _kernel_from_rref(red, pivots, M.ncols)


def kernel_basis(M: Matrix) -> Subspace:
    return Subspace.span(kernel_vectors(M), M.ncols)


def image_basis(M: Matrix) -> Subspace:
    return Subspace.span(M.columns(), M.nrows)


def rank(M: Matrix) -> int:
    if M.nrows == 0 or M.ncols == 0:
        return 0
    _, pivots = rref([list(r) for r in M.rows], M.ncols)
    return len(pivots)


def vectors_rank(vectors: Sequence[Vector]) -> int:
    if not vectors:
        return 0
    _, pivots = rref([list(v) for v in vectors])
    return len(pivots)


def linearly_independent(vectors: Sequence[Vector]) -> bool:
    return vectors_rank(vectors) == len(vectors)


def congruent_diagonalize(G: Matrix) -> tuple[Matrix, Matrix]:
    """Symmetric Gaussian elimination: returns ``(D, P)`` with ``P.T @ G @ P == D``.

    ``D`` is diagonal with arbitrary rational entries; they are not
    normalised to +-1 because that would need square roots.
    """
    if not G.is_symmetric():
        raise InputError("congruent_diagonalize needs a symmetric matrix")
    n = G.nrows
    a = [list(r) for r in G.rows]
    p = [[_ONE if i == j else _ZERO for j in range(n)] for i in range(n)]

    def add_multiple(dst: int, src: int, f: Fraction) -> None:
        # column op then row op keeps a symmetric
        for r in range(n):
            a[r][dst] += f * a[r][src]
        for c in range(n):
            a[dst][c] += f * a[src][c]
        for r in range(n):
            p[r][dst] += f * p[r][src]

    def swap(i: int, j: int) -> None:
        for r in range(n):
            a[r][i], a[r][j] = a[r][j], a[r][i]
        a[i], a[j] = a[j], a[i]
        for r in range(n):
            p[r][i], p[r][j] = p[r][j], p[r][i]

    for i in range(n):
        if not a[i][i]:
            j = next((j for j in range(i + 1, n) if a[j][j]), None)
            if j is not None:
                swap(i, j)
            else:
                j = next((j for j in range(i + 1, n) if a[i][j]), None)
                if j is None:
                    continue
                add_multiple(i, j, _ONE)
        d = a[i][i]
        for j in range(i + 1, n):
            if a[j][i]:
                add_multiple(j, i, -a[j][i] / d)
    D = Matrix(a)
    P = Matrix(p)
    return D, P


# ---------------------------------------------------------------------------
# subspaces


@dataclass(frozen=True)
class Subspace:
    """A linear subspace of Q^n held by its reduced row echelon basis.

    The canonical basis makes equality of subspaces plain tuple equality.
    """

    ambient_dim: int
    basis: tuple

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> Subspace:
        rows = [list(vector(v)) for v in vectors]
        for r in rows:
            if len(r) != ambient_dim:
                raise InputError(f"vector of length {len(r)} in ambient dimension {ambient_dim}")
        if not rows:
            return cls(ambient_dim, ())
        red, pivots = rref(rows)
        return cls(ambient_dim, tuple(tuple(red[i]) for i in range(len(pivots))))

    @classmethod
    def zero(cls, n: int) -> Subspace:
        return cls(n, ())

    @classmethod
    def full(cls, n: int) -> Subspace:
        return cls(n, tuple(unit_vector(n, i) for i in range(n)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def matrix(self) -> Matrix:
        """Basis vectors as columns (ambient_dim x dim)."""
        if not self.basis:
            return Matrix.zeros(self.ambient_dim, 0)
        return Matrix.from_columns(self.basis)

    def contains(self, v: Sequence) -> bool:
        v = vector(v)
        if len(v) != self.ambient_dim:
            raise InputError("vector length does not match ambient dimension")
        return vectors_rank(list(self.basis) + [v]) == self.dim

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def contains_subspace(self, other: Subspace) -> bool:
        return all(self.contains(v) for v in other.basis)

    def __add__(self, other: Subspace) -> Subspace:
        self._check(other)
        return Subspace.span(self.basis + other.basis, self.ambient_dim)

    def intersect(self, other: Subspace) -> Subspace:
        self._check(other)
        if not self.basis or not other.basis:
            return Subspace.zero(self.ambient_dim)
        cols = list(self.basis) + [vneg(v) for v in other.basis]
        ker = kernel_vectors(Matrix.from_columns(cols))
        k = self.dim
        vecs = [linear_combination(c[:k], self.basis, self.ambient_dim) for c in ker]
        return Subspace.span(vecs, self.ambient_dim)

    def coordinates(self, v: Sequence) -> Vector | None:
        """Coefficients of ``v`` in this basis, or None when v is outside."""
        if not self.basis:
            return () if is_zero_vector(vector(v)) else None
        sol = solve(self.matrix(), v)
        return None if sol is None else sol[0]

    def _check(self, other: Subspace) -> None:
        if self.ambient_dim != other.ambient_dim:
            raise InputError("subspaces live in different ambient spaces")
