"""Dense matrices of exact rationals and the elimination-based algorithms on them."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import Inconsistent, NonSquare, SingularMatrix
from .poly import RationalPoly, as_fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


class RationalMatrix:
    """Immutable ``rows x cols`` matrix stored row-major.

    Zero-sized shapes (``0 x m``, ``n x 0``) are valid and behave as the
    identity elements of stacking.
    """

    __slots__ = ("rows", "cols", "entries", "_hash")

    def __init__(self, rows: int, cols: int, entries: Iterable = None):
        if rows < 0 or cols < 0:
            raise ValueError("negative dimension")
        if entries is None:
            flat = (_ZERO,) * (rows * cols)
        else:
            flat = tuple(as_fraction(x) for x in entries)
        if len(flat) != rows * cols:
            raise ValueError(
                "expected %d entries for a %dx%d matrix, got %d" % (rows * cols, rows, cols, len(flat))
            )
        self.rows = rows
        self.cols = cols
        self.entries = flat
        self._hash = None

    # -- constructors -------------------------------------------------------
    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "RationalMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), cols, [x for r in rows for x in r])

    @classmethod
    def from_columns(cls, columns: Sequence["RationalMatrix"], rows: int | None = None) -> "RationalMatrix":
        if not columns:
            return cls(rows or 0, 0)
        return hstack(columns)

    @classmethod
    def column(cls, values: Sequence) -> "RationalMatrix":
        return cls(len(values), 1, values)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(n, n, [_ONE if i == j else _ZERO for i in range(n) for j in range(n)])

    # -- access -------------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> "RationalMatrix":
        return RationalMatrix(self.rows, 1, self.entries[j::self.cols] if self.cols else ())

    def columns(self) -> list["RationalMatrix"]:
        return [self.col(j) for j in range(self.cols)]

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def block(self, r0: int, r1: int, c0: int, c1: int) -> "RationalMatrix":
        """Submatrix of rows ``r0:r1`` and columns ``c0:c1``."""
        return RationalMatrix(
            r1 - r0, c1 - c0, [self.entries[i * self.cols + j] for i in range(r0, r1) for j in range(c0, c1)]
        )

    def select_columns(self, idx: Sequence[int]) -> "RationalMatrix":
        return RationalMatrix(self.rows, len(idx), [self.entries[i * self.cols + j] for i in range(self.rows) for j in idx])

    def with_entry(self, i: int, j: int, value) -> "RationalMatrix":
        e = list(self.entries)
        e[i * self.cols + j] = as_fraction(value)
        return RationalMatrix(self.rows, self.cols, e)

    # -- arithmetic ---------------------------------------------------------
    @property
    def T(self) -> "RationalMatrix":
        return RationalMatrix(self.cols, self.rows, [self[i, j] for j in range(self.cols) for i in range(self.rows)])

    def _check_same(self, other: "RationalMatrix"):
        if self.shape != other.shape:
            raise ValueError("shape mismatch %s vs %s" % (self.shape, other.shape))

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        self._check_same(other)
        return RationalMatrix(self.rows, self.cols, [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        self._check_same(other)
        return RationalMatrix(self.rows, self.cols, [a - b for a, b in zip(self.entries, other.entries)])

    def __neg__(self) -> "RationalMatrix":
        return RationalMatrix(self.rows, self.cols, [-a for a in self.entries])

    def __mul__(self, scalar) -> "RationalMatrix":
        if isinstance(scalar, RationalMatrix):
            raise TypeError("use @ for matrix products")
        c = as_fraction(scalar)
        return RationalMatrix(self.rows, self.cols, [c * a for a in self.entries])

    __rmul__ = __mul__

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise ValueError("cannot multiply %dx%d by %dx%d" % (self.rows, self.cols, other.rows, other.cols))
        n, k, m = self.rows, self.cols, other.cols
        a, b = self.entries, other.entries
        bcols = [b[j::m] for j in range(m)] if m else []
        out = []
        for i in range(n):
            ri = a[i * k:(i + 1) * k]
            nz = [(t, x) for t, x in enumerate(ri) if x]
            for j in range(m):
                cj = bcols[j]
                s = _ZERO
                for t, x in nz:
                    y = cj[t]
                    if y:
                        s += x * y
                out.append(s)
        return RationalMatrix(n, m, out)

    def __pow__(self, e: int) -> "RationalMatrix":
        if not self.is_square():
            raise NonSquare("power of a non-square matrix")
        result = RationalMatrix.identity(self.rows)
        for _ in range(e):
            result = result @ self
        return result

    def trace(self) -> Fraction:
        if not self.is_square():
            raise NonSquare("trace of a non-square matrix")
        return sum((self[i, i] for i in range(self.rows)), _ZERO)

    def is_zero(self) -> bool:
        return not any(self.entries)

    def rank(self) -> int:
        return rank(self)

    def inverse(self) -> "RationalMatrix":
        return inverse(self)

    def is_invertible(self) -> bool:
        return self.is_square() and rank(self) == self.rows

    # -- comparisons / display ---------------------------------------------
    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self.entries))
        return self._hash

    def to_strings(self) -> list[list[str]]:
        return [[str(x) for x in self.row(i)] for i in range(self.rows)]

    def __repr__(self) -> str:
        return "RationalMatrix(%d, %d, %s)" % (self.rows, self.cols, self.to_strings())


def hstack(blocks: Sequence[RationalMatrix]) -> RationalMatrix:
    blocks = list(blocks)
    rows = blocks[0].rows
    if any(b.rows != rows for b in blocks):
        raise ValueError("hstack row mismatch")
    cols = sum(b.cols for b in blocks)
    entries = []
    for i in range(rows):
        for b in blocks:
            entries.extend(b.row(i))
    return RationalMatrix(rows, cols, entries)


def vstack(blocks: Sequence[RationalMatrix]) -> RationalMatrix:
    blocks = list(blocks)
    cols = blocks[0].cols
    if any(b.cols != cols for b in blocks):
        raise ValueError("vstack column mismatch")
    return RationalMatrix(sum(b.rows for b in blocks), cols, [x for b in blocks for x in b.entries])


def block_diag(*blocks: RationalMatrix) -> RationalMatrix:
    n = sum(b.rows for b in blocks)
    m = sum(b.cols for b in blocks)
    rows = [[_ZERO] * m for _ in range(n)]
    r0 = c0 = 0
    for b in blocks:
        for i in range(b.rows):
            for j in range(b.cols):
                rows[r0 + i][c0 + j] = b[i, j]
        r0 += b.rows
        c0 += b.cols
    return RationalMatrix(n, m, [x for r in rows for x in r])


def companion(p: RationalPoly) -> RationalMatrix:
    """Companion matrix of a monic ``p``: ones on the subdiagonal, ``-p_i`` in the last column."""
    if not p.is_monic():
        raise ValueError("companion matrix needs a monic polynomial")
    n = p.degree
    rows = [[_ZERO] * n for _ in range(n)]
    for i in range(1, n):
        rows[i][i - 1] = _ONE
    for i in range(n):
        rows[i][n - 1] = -p[i]
    return RationalMatrix.from_rows(rows, n)


# -- elimination -----------------------------------------------------------

def _rref_rows(rows: list[list[Fraction]], ncols: int, extra: list[list[Fraction]] | None = None):
    """In-place Gauss-Jordan on the first ``ncols`` columns; ``extra`` rows follow along."""
    nrows = len(rows)
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        pr = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if pr is None:
            continue
        if pr != r:
            rows[r], rows[pr] = rows[pr], rows[r]
            if extra is not None:
                extra[r], extra[pr] = extra[pr], extra[r]
        piv = rows[r][c]
        if piv != 1:
            inv = 1 / piv
            rows[r] = [x * inv for x in rows[r]]
            if extra is not None:
                extra[r] = [x * inv for x in extra[r]]
        prow = rows[r]
        pext = extra[r] if extra is not None else None
        for i in range(nrows):
            if i == r:
                continue
            f = rows[i][c]
            if f:
                rows[i] = [x - f * y for x, y in zip(rows[i], prow)]
                if extra is not None:
                    extra[i] = [x - f * y for x, y in zip(extra[i], pext)]
        pivots.append(c)
        r += 1
    return pivots


def rref_with_transform(M: RationalMatrix) -> tuple[RationalMatrix, RationalMatrix, list[int]]:
    """Reduced row echelon form ``R`` with an invertible ``E`` such that ``E @ M == R``.

    Pivots are chosen as the first nonzero entry at or below the current row,
    which makes both ``R`` and ``E`` reproducible.
    """
    rows = M.to_rows()
    extra = RationalMatrix.identity(M.rows).to_rows()
    pivots = _rref_rows(rows, M.cols, extra)
    R = RationalMatrix(M.rows, M.cols, [x for r in rows for x in r])
    E = RationalMatrix(M.rows, M.rows, [x for r in extra for x in r])
    return R, E, pivots


def rref(M: RationalMatrix) -> tuple[RationalMatrix, list[int]]:
    rows = M.to_rows()
    pivots = _rref_rows(rows, M.cols)
    return RationalMatrix(M.rows, M.cols, [x for r in rows for x in r]), pivots


def rank(M: RationalMatrix) -> int:
    if M.rows == 0 or M.cols == 0:
        return 0
    return len(_rref_rows(M.to_rows(), M.cols))


def kernel_basis(M: RationalMatrix) -> list[RationalMatrix]:
    """Basis of the right null space, one ``cols x 1`` column per free variable."""
    R, pivots = rref(M)
    pivot_set = set(pivots)
    basis = []
    for f in range(M.cols):
        if f in pivot_set:
            continue
        v = [_ZERO] * M.cols
        v[f] = _ONE
        for i, p in enumerate(pivots):
            v[p] = -R[i, f]
        basis.append(RationalMatrix.column(v))
    return basis


def kernel_matrix(M: RationalMatrix) -> RationalMatrix:
    basis = kernel_basis(M)
    if not basis:
        return RationalMatrix(M.cols, 0)
    return hstack(basis)


def solve(A: RationalMatrix, B: RationalMatrix) -> RationalMatrix:
    """A particular solution ``X`` of ``A @ X == B`` (free variables set to zero)."""
    if A.rows != B.rows:
        raise ValueError("row mismatch in solve")
    rows = [list(A.row(i)) + list(B.row(i)) for i in range(A.rows)]
    pivots = _rref_rows(rows, A.cols)
    r = len(pivots)
    for i in range(r, A.rows):
        if any(rows[i][A.cols:]):
            raise Inconsistent("linear system has no solution")
    X = [[_ZERO] * B.cols for _ in range(A.cols)]
    for i, p in enumerate(pivots):
        X[p] = rows[i][A.cols:]
    return RationalMatrix(A.cols, B.cols, [x for r_ in X for x in r_])


def inverse(M: RationalMatrix) -> RationalMatrix:
    if not M.is_square():
        raise NonSquare("only square matrices can be inverted")
    R, E, pivots = rref_with_transform(M)
    if len(pivots) != M.rows:
        raise SingularMatrix("matrix is singular")
    return E


def char_poly(M: RationalMatrix) -> RationalPoly:
    """``det(sI - M)`` by the Faddeev-LeVerrier recurrence."""
    if not M.is_square():
        raise NonSquare("characteristic polynomial of a %dx%d matrix" % M.shape)
    n = M.rows
    coeffs = [_ZERO] * (n + 1)
    coeffs[n] = _ONE
    if n == 0:
        return RationalPoly(coeffs)
    ident = RationalMatrix.identity(n)
    Mk = ident
    for k in range(1, n + 1):
        AM = M @ Mk
        c = -AM.trace() / k
        coeffs[n - k] = c
        if k < n:
            Mk = AM + ident * c
    return RationalPoly(coeffs)


def poly_of_matrix(p: RationalPoly, M: RationalMatrix) -> RationalMatrix:
    """Evaluate ``p(M)`` by Horner's scheme."""
    if not M.is_square():
        raise NonSquare("polynomial of a non-square matrix")
    n = M.rows
    ident = RationalMatrix.identity(n)
    acc = RationalMatrix.zeros(n, n)
    for a in reversed(p.coeffs):
        acc = acc @ M + ident * a
    return acc
