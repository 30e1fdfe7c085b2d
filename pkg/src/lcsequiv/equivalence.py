"""Linear, differential and topological equivalence deciders."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .controllability import ControlSystem, brunovsky_sequences
from .decomposition import CanonicalForm, FeedbackWitness, canonical_form
from .exactmath import RationalMatrix, RationalPoly, block_diag
from .spectral import (
    Inertia,
    ZeroPartClass,
    cached_invariant_factors,
    inertia,
    similarity_transform,
    zero_part_class,
    zero_parts_similar,
)

LINEAR = "linear"
DIFFERENTIAL = "differential"
TOPOLOGICAL = "topological"
RELATIONS = (LINEAR, DIFFERENTIAL, TOPOLOGICAL)

# failed_condition names, in the order they are checked
DIMENSIONS = "dimensions"
KALMAN_RANK = "k"
R_SEQUENCE = "R"
INERTIA = "inertia"
ZERO_PART = "zero-part-similarity"
UNCONTROLLABLE = "uncontrollable-similarity"


@dataclass(frozen=True)
class SystemInvariants:
    n: int
    m: int
    k: int
    r: tuple[int, ...]
    p: tuple[int, ...]
    inertia: Inertia
    zero_part: ZeroPartClass
    uncontrollable_factors: tuple[RationalPoly, ...]

    @property
    def zero_part_factors(self) -> tuple[RationalPoly, ...] | None:
        return self.zero_part.invariant_factors


@dataclass(frozen=True)
class EquivalenceVerdict:
    relation: str
    equivalent: bool
    failed_condition: str | None = None
    witness: FeedbackWitness | None = None

    def __bool__(self) -> bool:
        return self.equivalent


@lru_cache(maxsize=4096)
def classify(sys: ControlSystem) -> SystemInvariants:
    form = canonical_form(sys)
    seq = brunovsky_sequences(sys)
    M = form.M_uncontrollable
    return SystemInvariants(
        n=sys.n,
        m=sys.m,
        k=form.k,
        r=seq.r,
        p=seq.p,
        inertia=inertia(M),
        zero_part=zero_part_class(M),
        uncontrollable_factors=cached_invariant_factors(M),
    )


def _controllable_mismatch(sys1: ControlSystem, sys2: ControlSystem) -> str | None:
    if (sys1.n, sys1.m) != (sys2.n, sys2.m):
        return DIMENSIONS
    s1, s2 = brunovsky_sequences(sys1), brunovsky_sequences(sys2)
    if s1.k != s2.k:
        return KALMAN_RANK
    if s1.r != s2.r:
        return R_SEQUENCE
    return None


def _align_canonical(f1: CanonicalForm, f2: CanonicalForm, seed: int) -> FeedbackWitness | None:
    S = similarity_transform(f1.M_uncontrollable, f2.M_uncontrollable, seed)
    if S is None:
        return None
    m = f1.D.cols
    return FeedbackWitness(
        block_diag(RationalMatrix.identity(f1.k), S),
        RationalMatrix.identity(m),
        RationalMatrix(m, f1.k + S.rows),
    )


def decide_linear(sys1: ControlSystem, sys2: ControlSystem, seed: int = 0) -> EquivalenceVerdict:
    """Feedback equivalence with a verified witness when it holds."""
    failed = _controllable_mismatch(sys1, sys2)
    if failed:
        return EquivalenceVerdict(LINEAR, False, failed)
    f1, f2 = canonical_form(sys1), canonical_form(sys2)
    middle = _align_canonical(f1, f2, seed)
    if middle is None:
        return EquivalenceVerdict(LINEAR, False, UNCONTROLLABLE)
    witness = f1.witness.then(middle).then(f2.witness.inverse())
    if not witness.carries(sys1, sys2):
        raise ArithmeticError("composed witness failed substitution check")
    return EquivalenceVerdict(LINEAR, True, None, witness)


def decide_differential(sys1: ControlSystem, sys2: ControlSystem, seed: int = 0) -> EquivalenceVerdict:
    """Differential equivalence coincides with linear equivalence."""
    v = decide_linear(sys1, sys2, seed)
    return EquivalenceVerdict(DIFFERENTIAL, v.equivalent, v.failed_condition, v.witness)


def decide_topological(sys1: ControlSystem, sys2: ControlSystem) -> EquivalenceVerdict:
    """Decided from ``k``, ``R``, the inertia of ``M`` and the class of its zero part.

    No witness is produced: the transformations involved are nonlinear.
    """
    failed = _controllable_mismatch(sys1, sys2)
    if failed:
        return EquivalenceVerdict(TOPOLOGICAL, False, failed)
    c1, c2 = classify(sys1), classify(sys2)
    if c1.inertia != c2.inertia:
        return EquivalenceVerdict(TOPOLOGICAL, False, INERTIA)
    M1 = canonical_form(sys1).M_uncontrollable
    M2 = canonical_form(sys2).M_uncontrollable
    if not zero_parts_similar(M1, M2):
        return EquivalenceVerdict(TOPOLOGICAL, False, ZERO_PART)
    return EquivalenceVerdict(TOPOLOGICAL, True)


def decide(relation: str, sys1: ControlSystem, sys2: ControlSystem, seed: int = 0) -> EquivalenceVerdict:
    if relation == LINEAR:
        return decide_linear(sys1, sys2, seed)
    if relation == DIFFERENTIAL:
        return decide_differential(sys1, sys2, seed)
    if relation == TOPOLOGICAL:
        return decide_topological(sys1, sys2)
    raise ValueError("unknown relation %r" % relation)
