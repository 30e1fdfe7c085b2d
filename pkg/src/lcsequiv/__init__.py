"""Exact linear, differential and topological classification of ``x' = Ax + Bu``."""
from .controllability import (
    BrunovskySequences,
    ControlSystem,
    brunovsky_sequences,
    conjugate_partition,
    controllability_matrix,
    kalman_rank,
    p_indices,
    r_sequence,
)
from .decomposition import (
    CanonicalForm,
    FeedbackWitness,
    NotControllable,
    SingularWitness,
    brunovsky_normalize,
    canonical_form,
    decouple_cross_block,
    kalman_split,
)
from .equivalence import (
    EquivalenceVerdict,
    SystemInvariants,
    classify,
    decide_differential,
    decide_linear,
    decide_topological,
)
from .exactmath import RationalMatrix, RationalPoly
from .spectral import (
    Inertia,
    ZeroPartClass,
    fully_similar,
    imaginary_axis_factor,
    inertia,
    similarity_transform,
    zero_part_class,
    zero_parts_similar,
)

__version__ = "0.1.0"
