import itertools
import random

import numpy as np
import pytest

from lcsequiv import RationalMatrix, RationalPoly
from lcsequiv.exactmath import IrrationalFactor, block_diag, char_poly, companion
from lcsequiv.spectral import (
    Inertia,
    fully_similar,
    imaginary_axis_factor,
    inertia,
    polynomial_inertia,
    similarity_transform,
    zero_part_class,
    zero_parts_similar,
)

from corpus import rand_matrix, similar_copy

S = RationalPoly([0, 1])
ONE = RationalPoly([1])
J2 = RationalMatrix.from_rows([[0, 1], [0, 0]])
Z2 = RationalMatrix.zeros(2, 2)


def comp(*factors):
    return block_diag(*(companion(f) for f in factors))


@pytest.mark.parametrize(
    "p, expected",
    [
        (S ** 2 + 1, S ** 2 + 1),
        ((S + 1) * (S - 2), ONE),
        (S ** 2 * (S - 1), S ** 2),
        ((S ** 2 + 4) ** 2 * (S ** 2 - 4) * S, (S ** 2 + 4) ** 2 * S),
        ((S ** 2 - 2 * S + 5) * (S ** 2 + 2 * S + 5), ONE),
    ],
)
def test_imaginary_axis_factor(p, expected):
    assert imaginary_axis_factor(p) == expected


def test_imaginary_axis_factor_irrational():
    # roots are +-2^(1/4) and +-i 2^(1/4); the axis factor s^2 + sqrt(2) is not rational
    with pytest.raises(IrrationalFactor):
        imaginary_axis_factor(S ** 4 - 2)


@pytest.mark.parametrize(
    "M, expected",
    [
        (RationalMatrix.from_rows([[-1, 0, 0], [0, 2, 0], [0, 0, 0]]), (1, 1, 1)),
        (RationalMatrix.from_rows([[0, 1], [-1, 0]]), (0, 0, 2)),
        (companion((S + 1) ** 2 * (S - 3) * (S ** 2 + 4)), (2, 1, 2)),
        (RationalMatrix(0, 0), (0, 0, 0)),
        (companion(S ** 4 - 2), (1, 1, 2)),
        # roots 1 +- 2i and -1 +- 2i
        (companion((S ** 2 - 2 * S + 5) * (S ** 2 + 2 * S + 5)), (2, 2, 0)),
    ],
)
def test_inertia_examples(M, expected):
    assert inertia(M).as_tuple() == expected


@pytest.mark.parametrize("seed", range(30))
def test_inertia_matches_numpy_for_simple_spectra(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 6)
    M = rand_matrix(rng, n, n, 0.8)
    eig = np.linalg.eigvals(np.array([[float(x) for x in M.row(i)] for i in range(n)]))
    re = eig.real
    if np.min(np.abs(re)) < 1e-6:
        pytest.skip("eigenvalue too close to the imaginary axis for a float oracle")
    expected = (int(np.sum(re < 0)), int(np.sum(re > 0)), 0)
    assert inertia(M).as_tuple() == expected


@pytest.mark.parametrize("seed", range(10))
def test_inertia_similarity_invariant(seed):
    rng = random.Random(seed)
    M = comp(S ** 2 + 1, (S + 2) ** 2, S - 1, S)
    assert inertia(similar_copy(rng, M)) == inertia(M) == Inertia(2, 1, 3)


def test_polynomial_inertia_with_multiplicity():
    assert polynomial_inertia((S ** 2 + 1) ** 3 * (S + 1) ** 2).as_tuple() == (2, 0, 6)


@pytest.mark.parametrize(
    "M, p0, factors",
    [
        (RationalMatrix.from_rows([[-1, 0], [0, -2]]), ONE, ()),
        (J2, S ** 2, (S ** 2,)),
        (Z2, S ** 2, (S, S)),
        (comp(S ** 2 + 1, (S ** 2 + 1) * (S - 3)), (S ** 2 + 1) ** 2, (S ** 2 + 1, S ** 2 + 1)),
    ],
)
def test_zero_part_class_examples(M, p0, factors):
    zp = zero_part_class(M)
    assert zp.p0 == p0
    assert zp.invariant_factors == factors


def test_zero_part_class_irrational():
    zp = zero_part_class(comp(S ** 4 - 2))
    assert zp.p0 is None and zp.invariant_factors is None
    assert zp.n_zero == 2
    (block,) = zp.blocks
    assert block.partition == (1,) and block.roots == 2 and not block.exact


@pytest.mark.parametrize(
    "M1, M2, expected",
    [
        (J2, Z2, False),
        (RationalMatrix.from_rows([[-1]]), RationalMatrix.from_rows([[-2]]), True),
        (comp((S ** 2 + 1) * (S - 1)), comp((S ** 2 + 1) * (S + 2)), True),
        (comp((S ** 2 + 1) * (S - 1)), comp((S ** 2 + 4) * (S - 1)), False),
        (comp(S ** 2 * (S + 1)), comp(S, S + 1, S), False),
        (comp(S ** 4 - 2), comp((S ** 4 - 2) * (S ** 2 - 9)), True),
        (comp(S ** 4 - 2), comp(S ** 4 - 3), False),
        (comp(S ** 4 - 2), comp(S ** 2 + 2), False),
    ],
)
def test_zero_parts_similar_examples(M1, M2, expected):
    assert zero_parts_similar(M1, M2) is expected
    assert zero_parts_similar(M2, M1) is expected


@pytest.mark.parametrize("seed", range(8))
def test_zero_parts_similar_under_similarity(seed):
    rng = random.Random(seed)
    M = comp(S ** 2 + 1, (S ** 2 + 1) * S, S ** 4 - 2, S + 3)
    assert zero_parts_similar(M, similar_copy(rng, M))


def test_zero_parts_similar_is_equivalence_relation():
    family = [
        comp(S ** 2 + 1),
        comp((S ** 2 + 1) * (S - 2)),
        comp(S ** 2 + 1, S + 5),
        comp(S ** 2 + 4),
        comp(S, S),
        comp(S ** 2),
        comp(S ** 4 - 2),
        comp((S ** 4 - 2) * (S ** 2 - 1)),
        comp(S - 1),
        comp(S + 1, S - 1),
    ]
    rel = {(i, j): zero_parts_similar(a, b) for (i, a), (j, b) in itertools.product(enumerate(family), repeat=2)}
    for i in range(len(family)):
        assert rel[i, i]
    for i, j in itertools.product(range(len(family)), repeat=2):
        assert rel[i, j] == rel[j, i]
    for i, j, k in itertools.product(range(len(family)), repeat=3):
        if rel[i, j] and rel[j, k]:
            assert rel[i, k]


def test_fully_similar_examples():
    M = RationalMatrix.from_rows([[1, 2], [3, 4]])
    assert fully_similar(M, M)
    assert not fully_similar(J2, Z2)
    assert not fully_similar(M, RationalMatrix.identity(3))


@pytest.mark.parametrize("seed", range(10))
def test_similarity_transform(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 5)
    if seed % 2:
        M = rand_matrix(rng, n, n, 0.6)
    else:
        M = comp(*[S - 1] * (n - 1) + [(S - 1) * (S + 1)]) if n > 1 else comp(S)
    M2 = similar_copy(rng, M)
    assert fully_similar(M, M2)
    T = similarity_transform(M, M2, seed)
    assert T.inverse() @ M @ T == M2
    assert char_poly(M) == char_poly(M2)


def test_similarity_transform_none():
    assert similarity_transform(J2, Z2) is None
