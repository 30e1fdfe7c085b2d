"""Smith normal form of ``sI - M`` over Q[s] and the invariant factors it yields."""
from __future__ import annotations

from .errors import NonSquare
from .matrix import RationalMatrix
from .poly import RationalPoly


def _char_matrix(M: RationalMatrix) -> list[list[RationalPoly]]:
    n = M.rows
    return [
        [RationalPoly((-M[i, j], 1)) if i == j else RationalPoly((-M[i, j],)) for j in range(n)]
        for i in range(n)
    ]


def smith_diagonal(P: list[list[RationalPoly]]) -> list[RationalPoly]:
    """Diagonal of the Smith normal form of a square polynomial matrix.

    Uses unimodular row/column operations only. The pivot at each stage is
    the nonzero entry of least degree, ties broken by row-major position.
    Zero diagonal entries are reported as the zero polynomial.
    """
    a = [row[:] for row in P]
    n = len(a)
    diag = []
    for t in range(n):
        while True:
            best = None
            for i in range(t, n):
                for j in range(t, n):
                    e = a[i][j]
                    if not e.is_zero() and (best is None or e.degree < best[0]):
                        best = (e.degree, i, j)
            if best is None:
                diag.extend(RationalPoly() for _ in range(t, n))
                return diag
            _, pi, pj = best
            a[t], a[pi] = a[pi], a[t]
            for row in a:
                row[t], row[pj] = row[pj], row[t]
            piv = a[t][t]
            dirty = False
            for i in range(t + 1, n):
                if a[i][t].is_zero():
                    continue
                q, r = divmod(a[i][t], piv)
                if not q.is_zero():
                    a[i] = [x - q * y if k >= t else x for k, (x, y) in enumerate(zip(a[i], a[t]))]
                dirty = dirty or not r.is_zero()
            for j in range(t + 1, n):
                if a[t][j].is_zero():
                    continue
                q, r = divmod(a[t][j], piv)
                if not q.is_zero():
                    for row in a[t:]:
                        row[j] = row[j] - q * row[t]
                dirty = dirty or not r.is_zero()
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, n) for j in range(t + 1, n) if not piv.divides(a[i][j])),
                None,
            )
            if bad is None:
                diag.append(piv.monic())
                break
            a[t] = [x + y if k >= t else x for k, (x, y) in enumerate(zip(a[t], a[bad]))]
    return diag


def invariant_factors(M: RationalMatrix) -> list[RationalPoly]:
    """Nontrivial monic invariant factors ``d1 | d2 | ...`` of ``sI - M``.

    Two square matrices are similar exactly when these lists are equal.
    """
    if not M.is_square():
        raise NonSquare("invariant factors of a %dx%d matrix" % M.shape)
    if M.rows == 0:
        return []
    diag = smith_diagonal(_char_matrix(M))
    return [d for d in diag if d.degree > 0]
