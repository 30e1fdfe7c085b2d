"""Rational canonical (Frobenius) form via cyclic vectors.

The change of basis is built directly: pick a vector whose local minimal
polynomial is the minimal polynomial, split off an invariant complement
using a dual cyclic vector of the transpose, and recurse on the complement.
"""
from __future__ import annotations

import random
from typing import Iterator

from .errors import NonSquare
from .matrix import RationalMatrix, block_diag, companion, hstack, kernel_matrix, rank, solve
from .poly import RationalPoly

MAX_CANDIDATES = 400


def _krylov_dependency(vectors: Iterator[RationalMatrix], limit: int) -> RationalPoly:
    """Monic polynomial from the first linear dependency among ``v0, v1, ...``."""
    cols: list[RationalMatrix] = []
    for k, v in enumerate(vectors):
        if k > limit:
            break
        cand = cols + [v]
        K = hstack(cand)
        if rank(K) < len(cand):
            if not cols:
                return RationalPoly.constant(1)
            c = solve(hstack(cols), v)
            return RationalPoly([-c[j, 0] for j in range(len(cols))] + [1])
        cols.append(v)
    raise ArithmeticError("no dependency found within %d steps" % limit)


def _vec(M: RationalMatrix) -> RationalMatrix:
    return RationalMatrix(M.rows * M.cols, 1, M.entries)


def minimal_polynomial(M: RationalMatrix) -> RationalPoly:
    if not M.is_square():
        raise NonSquare("minimal polynomial of a non-square matrix")

    def powers():
        P = RationalMatrix.identity(M.rows)
        while True:
            yield _vec(P)
            P = P @ M

    return _krylov_dependency(powers(), M.rows)


def local_minimal_polynomial(M: RationalMatrix, v: RationalMatrix) -> RationalPoly:
    """Monic generator of the annihilator of ``v`` under ``M``."""

    def orbit():
        x = v
        while True:
            yield x
            x = M @ x

    return _krylov_dependency(orbit(), M.rows)


def krylov_matrix(M: RationalMatrix, v: RationalMatrix, length: int) -> RationalMatrix:
    cols = [v]
    for _ in range(length - 1):
        cols.append(M @ cols[-1])
    return hstack(cols) if cols else RationalMatrix(M.rows, 0)


def candidate_vectors(n: int, rng: random.Random) -> Iterator[RationalMatrix]:
    """Standard basis vectors first, then seeded random small-integer vectors."""
    for i in range(n):
        yield RationalMatrix.column([1 if j == i else 0 for j in range(n)])
    while True:
        yield RationalMatrix.column([rng.randint(-3, 3) for _ in range(n)])


def _split_cyclic(M: RationalMatrix, rng: random.Random):
    """Krylov basis, minimal polynomial and invariant complement of one maximal cyclic summand."""
    n = M.rows
    mu = minimal_polynomial(M)
    e = mu.degree
    MT = M.T
    vs = candidate_vectors(n, rng)
    for _, v in zip(range(MAX_CANDIDATES), vs):
        if local_minimal_polynomial(M, v) != mu:
            continue
        K = krylov_matrix(M, v, e)
        tried = 0
        for _, w in zip(range(MAX_CANDIDATES), candidate_vectors(n, rng)):
            if local_minimal_polynomial(MT, w) != mu:
                continue
            W = krylov_matrix(MT, w, e).T
            if rank(W @ K) == e:
                return K, mu, kernel_matrix(W)
            tried += 1
            if tried > n + 2:
                break
    raise ArithmeticError("cyclic vector search exhausted")


def frobenius_basis(M: RationalMatrix, seed: int = 0) -> tuple[RationalMatrix, list[RationalPoly]]:
    """Invertible ``P`` and factors ``d1 | d2 | ...`` with ``P^-1 M P`` block companion.

    The blocks of ``P^-1 M P`` are ``companion(d1), companion(d2), ...`` in
    that order, matching :func:`invariant_factors`.
    """
    if not M.is_square():
        raise NonSquare("Frobenius form of a non-square matrix")
    rng = random.Random(seed)
    n = M.rows
    basis = RationalMatrix.identity(n)
    restricted = M
    pieces: list[tuple[RationalMatrix, RationalPoly]] = []
    while restricted.rows:
        K, mu, comp = _split_cyclic(restricted, rng)
        pieces.append((basis @ K, mu))
        if comp.cols == 0:
            break
        restricted = solve(comp, restricted @ comp)
        basis = basis @ comp
    pieces.reverse()
    if not pieces:
        return RationalMatrix.identity(0), []
    P = hstack([p for p, _ in pieces])
    return P, [f for _, f in pieces]


def frobenius_form(factors: list[RationalPoly]) -> RationalMatrix:
    if not factors:
        return RationalMatrix(0, 0)
    return block_diag(*(companion(f) for f in factors))
