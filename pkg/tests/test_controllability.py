import random

import pytest

from lcsequiv import ControlSystem, RationalMatrix
from lcsequiv.controllability import (
    brunovsky_sequences,
    conjugate_partition,
    controllability_matrix,
    kalman_rank,
    p_indices,
    r_sequence,
    selected_basis,
)
from lcsequiv.exactmath import hstack, rank

from corpus import brunovsky_system, corpus, random_witness

J2E2 = ControlSystem.from_rows([[0, 1], [0, 0]], [[0], [1]])
EX_FIRST = ControlSystem.from_rows([[0, 0], [0, -2]], [[1], [0]])


def rank_increments_oracle(sys):
    """Rank differences of ``[B, AB, ..., A^j B]`` computed from scratch."""
    cols, prev, out, block = [], 0, [], sys.B
    for _ in range(sys.n):
        cols.append(block)
        cur = rank(hstack(cols)) if sys.m else 0
        out.append(cur - prev)
        prev = cur
        block = sys.A @ block
    return tuple(out)


def test_system_validation():
    with pytest.raises(ValueError):
        ControlSystem(RationalMatrix.zeros(2, 3), RationalMatrix.zeros(2, 1))
    with pytest.raises(ValueError):
        ControlSystem(RationalMatrix.zeros(2, 2), RationalMatrix.zeros(3, 1))
    sys = ControlSystem.from_rows([[1]], m=0)
    assert (sys.n, sys.m) == (1, 0)


@pytest.mark.parametrize(
    "sys, expected",
    [
        (J2E2, [[0, 1], [1, 0]]),
        (ControlSystem.from_rows([[1, 2], [3, 4]], [[0], [0]]), [[0, 0], [0, 0]]),
        (EX_FIRST, [[1, 0], [0, 0]]),
    ],
)
def test_controllability_matrix(sys, expected):
    assert controllability_matrix(sys) == RationalMatrix.from_rows(expected)


@pytest.mark.parametrize(
    "sys, k",
    [(J2E2, 2), (ControlSystem.from_rows([[1, 2], [3, 4]], [[0], [0]]), 0), (EX_FIRST, 1)],
)
def test_kalman_rank(sys, k):
    assert kalman_rank(sys) == k


def test_r_sequence_examples():
    assert r_sequence(J2E2) == (1, 1)
    assert r_sequence(ControlSystem(RationalMatrix.identity(3), RationalMatrix.zeros(3, 1))) == (0, 0, 0)
    assert r_sequence(brunovsky_system((2, 1), 2)) == (2, 1, 0)


def test_p_indices_examples():
    assert p_indices(J2E2) == (2,)
    assert p_indices(ControlSystem(RationalMatrix.identity(3), RationalMatrix.zeros(3, 2))) == (0, 0)
    assert p_indices(brunovsky_system((2, 1), 2)) == (2, 1)
    assert p_indices(EX_FIRST) == (1,)


def test_pure_ode():
    sys = ControlSystem.from_rows([[0, 1], [-1, 0]], m=0)
    seq = brunovsky_sequences(sys)
    assert seq.k == 0 and seq.r == (0, 0) and seq.p == ()


def test_conjugate_partition():
    assert conjugate_partition((2, 1, 0), 2) == (2, 1)
    assert conjugate_partition((3, 3, 1), 4) == (3, 2, 2, 0)
    assert conjugate_partition((0, 0), 1) == (0,)


CORPUS = corpus(seed=11, size=60)


@pytest.mark.parametrize("idx", range(len(CORPUS)))
def test_sequence_properties(idx):
    sys = CORPUS[idx]
    seq = brunovsky_sequences(sys)
    assert seq.r == rank_increments_oracle(sys)
    # r is nonincreasing, bounded by m, sums to k
    assert all(a >= b for a, b in zip(seq.r, seq.r[1:]))
    assert all(x <= sys.m for x in seq.r)
    assert sum(seq.r) == seq.k == sum(seq.p)
    assert len(seq.p) == sys.m
    assert list(seq.p) == sorted(seq.p, reverse=True)
    assert seq.p == conjugate_partition(seq.r, sys.m)
    S = selected_basis(sys)
    assert S.cols == seq.k and rank(S) == seq.k


@pytest.mark.parametrize("idx", range(0, len(CORPUS), 3))
def test_feedback_invariance(idx):
    sys = CORPUS[idx]
    rng = random.Random(idx)
    other = random_witness(rng, sys.n, sys.m).apply(sys)
    a, b = brunovsky_sequences(sys), brunovsky_sequences(other)
    assert (a.k, a.r, a.p) == (b.k, b.r, b.p)
