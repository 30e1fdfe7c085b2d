"""Kalman rank and the Brunovsky sequences of a linear controlled system."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .exactmath import RationalMatrix, hstack, rank


@dataclass(frozen=True)
class ControlSystem:
    """The pair ``(A, B)`` of ``x' = A x + B u``.

    ``B`` may have zero columns, which models an autonomous ODE.
    """

    A: RationalMatrix
    B: RationalMatrix

    def __post_init__(self):
        if not self.A.is_square():
            raise ValueError("A must be square, got %dx%d" % self.A.shape)
        if self.A.rows < 1:
            raise ValueError("state dimension must be at least 1")
        if self.B.rows != self.A.rows:
            raise ValueError("B must have %d rows, got %d" % (self.A.rows, self.B.rows))

    @classmethod
    def from_rows(cls, A, B=None, m: int | None = None) -> "ControlSystem":
        A = RationalMatrix.from_rows(A)
        if B is None or (m == 0):
            return cls(A, RationalMatrix(A.rows, 0))
        return cls(A, RationalMatrix.from_rows(B, m))

    @property
    def n(self) -> int:
        return self.A.rows

    @property
    def m(self) -> int:
        return self.B.cols


@dataclass(frozen=True)
class BrunovskySequences:
    """``k``, ``R(A, B)`` and ``P(A, B)`` together with the chain selection.

    ``chains[i]`` is the number of Krylov vectors kept for column ``i`` of
    ``B`` (before sorting); ``permutation`` lists column indices so that
    ``p[t] == chains[permutation[t]]``.
    """

    k: int
    r: tuple[int, ...]
    p: tuple[int, ...]
    chains: tuple[int, ...] = field(repr=False)
    permutation: tuple[int, ...] = field(repr=False)
    selected: tuple[tuple[int, int], ...] = field(repr=False)


def krylov_blocks(sys: ControlSystem) -> list[RationalMatrix]:
    """``[B, AB, ..., A^(n-1) B]`` as separate blocks."""
    blocks = [sys.B]
    for _ in range(sys.n - 1):
        blocks.append(sys.A @ blocks[-1])
    return blocks


def controllability_matrix(sys: ControlSystem) -> RationalMatrix:
    if sys.m == 0:
        return RationalMatrix(sys.n, 0)
    return hstack(krylov_blocks(sys))


def kalman_rank(sys: ControlSystem) -> int:
    return brunovsky_sequences(sys).k


def r_sequence(sys: ControlSystem) -> tuple[int, ...]:
    return brunovsky_sequences(sys).r


def p_indices(sys: ControlSystem) -> tuple[int, ...]:
    return brunovsky_sequences(sys).p


def conjugate_partition(r, length: int) -> tuple[int, ...]:
    """``p_i = #{j : r_j >= i}`` for ``i = 1..length``."""
    return tuple(sum(1 for x in r if x >= i) for i in range(1, length + 1))


def _rank_increments(sys: ControlSystem) -> list[int]:
    blocks = krylov_blocks(sys) if sys.m else []
    r = []
    prev = 0
    for j in range(sys.n):
        cur = rank(hstack(blocks[: j + 1])) if sys.m else 0
        r.append(cur - prev)
        prev = cur
    return r


@lru_cache(maxsize=4096)
def brunovsky_sequences(sys: ControlSystem) -> BrunovskySequences:
    """Greedy Krylov selection of the basis set.

    Scans ``A^j b_i`` by power ``j`` first, then column ``i``, keeping a
    vector when it raises the rank of those already kept and its
    predecessor ``A^(j-1) b_i`` was kept.
    """
    n, m = sys.n, sys.m
    kept: list[RationalMatrix] = []
    selected: list[tuple[int, int]] = []
    chains = [0] * m
    current = [sys.B.col(i) for i in range(m)]
    for j in range(n):
        for i in range(m):
            if chains[i] != j:
                continue
            cand = kept + [current[i]]
            if rank(hstack(cand)) == len(cand):
                kept.append(current[i])
                selected.append((j, i))
                chains[i] += 1
        current = [sys.A @ v for v in current]
    k = len(kept)
    r = _rank_increments(sys)
    if sum(r) != k:
        raise AssertionError("greedy selection disagrees with the Kalman rank")
    permutation = tuple(sorted(range(m), key=lambda i: (-chains[i], i)))
    p = tuple(chains[i] for i in permutation)
    return BrunovskySequences(
        k=k,
        r=tuple(r),
        p=p,
        chains=tuple(chains),
        permutation=permutation,
        selected=tuple(selected),
    )


def selected_basis(sys: ControlSystem) -> RationalMatrix:
    """The kept vectors ``A^j b_i`` in scan order, as columns."""
    seq = brunovsky_sequences(sys)
    if not seq.selected:
        return RationalMatrix(sys.n, 0)
    powers = krylov_blocks(sys)
    return hstack([powers[j].col(i) for j, i in seq.selected])
