"""Inertia and the similarity class of the zero-real-part restriction.

Everything here is exact. For a squarefree ``q`` we write
``q(i w) = u(w) + i v(w)`` with real ``u, v``; the common factor
``h = gcd(u, v)`` collects the roots of ``q`` that are symmetric under
``s -> -s``. Its real roots are exactly the imaginary-axis roots of ``q``
and its other roots split evenly between the two open half-planes. The
remaining roots are counted with a Cauchy index.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .exactmath import (
    ONE,
    IrrationalFactor,
    NonSquare,
    RationalMatrix,
    RationalPoly,
    ZeroPolynomial,
    cauchy_index,
    char_poly,
    frobenius_basis,
    gcd_free_basis,
    invariant_factors,
    kernel_matrix,
    multiplicity,
    poly_gcd,
    poly_of_matrix,
    solve,
    squarefree_decompose,
    sturm_real_root_count,
)

_I_POWERS = ((1, 0), (0, 1), (-1, 0), (0, -1))


@dataclass(frozen=True)
class Inertia:
    n_neg: int
    n_pos: int
    n_zero: int

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.n_neg, self.n_pos, self.n_zero)

    @property
    def dimension(self) -> int:
        return self.n_neg + self.n_pos + self.n_zero


@dataclass(frozen=True)
class ZeroPartBlock:
    """Imaginary-axis eigenvalues sharing one Jordan structure.

    ``partition`` lists the Jordan block sizes at each such eigenvalue.
    ``carrier`` is a squarefree rational polynomial whose imaginary-axis
    roots are exactly those eigenvalues; when ``exact`` it has no other
    roots. ``roots`` counts the eigenvalues.
    """

    partition: tuple[int, ...]
    carrier: RationalPoly
    roots: int
    exact: bool


@dataclass(frozen=True)
class ZeroPartClass:
    """Similarity class of the restriction to the imaginary-axis generalized eigenspace.

    ``p0`` and ``invariant_factors`` are ``None`` when the imaginary-axis
    factor of the characteristic polynomial is not defined over the
    rationals; ``blocks`` always determines the class.
    """

    n_zero: int
    p0: RationalPoly | None
    invariant_factors: tuple[RationalPoly, ...] | None
    blocks: tuple[ZeroPartBlock, ...]


def axis_parts(q: RationalPoly) -> tuple[RationalPoly, RationalPoly]:
    """Real and imaginary parts ``(u, v)`` of ``q(i w)`` as polynomials in ``w``."""
    u, v = [], []
    for k, a in enumerate(q.coeffs):
        re, im = _I_POWERS[k % 4]
        u.append(a * re)
        v.append(a * im)
    return RationalPoly(u), RationalPoly(v)


def _symmetric_factor(q: RationalPoly) -> RationalPoly:
    u, v = axis_parts(q)
    return poly_gcd(u, v)


def _from_axis(h: RationalPoly) -> RationalPoly:
    """Monic ``s``-polynomial whose roots are ``i w`` for the roots ``w`` of ``h``."""
    c = h.coeffs
    parities = {k % 2 for k, a in enumerate(c) if a}
    if len(parities) > 1:
        raise ArithmeticError("symmetric factor must be even or odd")
    out = []
    for k, a in enumerate(c):
        # h(-i s) = sum a_k (-i)^k s^k; the common power of i is dropped
        out.append(a * (-1) ** (k // 2))
    return RationalPoly(out).monic()


def _split_zero_root(h: RationalPoly) -> tuple[int, RationalPoly]:
    """``h = w^a H(w^2)`` with ``H(0) != 0``; returns ``(a, H)``."""
    c = list(h.coeffs)
    a = 0
    while c and c[0] == 0:
        c.pop(0)
        a += 1
    return a, RationalPoly(c[0::2])


def _imaginary_count_sf(q: RationalPoly) -> int:
    if q.degree <= 0:
        return 0
    h = _symmetric_factor(q)
    if h.degree <= 0:
        return 0
    return sturm_real_root_count(h)


def _imaginary_part_sf(q: RationalPoly) -> tuple[RationalPoly, int, bool]:
    """``(carrier, count, exact)`` for the imaginary-axis roots of a squarefree ``q``."""
    h = _symmetric_factor(q)
    if h.degree <= 0:
        return ONE, 0, True
    z = sturm_real_root_count(h)
    if z == h.degree:
        return _from_axis(h), z, True
    a, H = _split_zero_root(h)
    pos = sturm_real_root_count(H, 0, None) if H.degree > 0 else 0
    if pos == 0:
        return RationalPoly.monomial(a), z, True
    if pos == H.degree:
        return _from_axis(h), z, True
    return _from_axis(h), z, False


def imaginary_axis_factor(p: RationalPoly) -> RationalPoly:
    """Monic divisor of ``p`` carrying exactly its zero-real-part roots, with multiplicity.

    Raises :class:`IrrationalFactor` when that divisor has irrational
    coefficients (e.g. ``s^4 - 2``, whose imaginary-axis part is
    ``s^2 + sqrt(2)``).
    """
    if p.is_zero():
        raise ZeroPolynomial("imaginary-axis factor of the zero polynomial")
    out = ONE
    for q, mult in squarefree_decompose(p):
        carrier, z, exact = _imaginary_part_sf(q)
        if not exact:
            raise IrrationalFactor("imaginary-axis factor of %s is not rational" % q)
        out = out * carrier**mult
    return out


def _half_plane_counts_sf(q: RationalPoly) -> tuple[int, int, int]:
    """``(neg, pos, zero)`` root counts of a squarefree ``q``."""
    d = q.degree
    if d <= 0:
        return 0, 0, 0
    u, v = axis_parts(q)
    h = poly_gcd(u, v)
    dh = h.degree
    z = sturm_real_root_count(h) if dh > 0 else 0
    u1, v1 = u.exact_div(h), v.exact_div(h)
    d1 = d - dh
    # u1 and v1 have opposite parity, so their degrees never coincide
    if v1.degree > u1.degree:
        idx = cauchy_index(u1, v1)
    else:
        idx = -cauchy_index(v1, u1)
    sym = dh - z
    neg = (d1 + idx) // 2 + sym // 2
    pos = (d1 - idx) // 2 + sym // 2
    return neg, pos, z


def polynomial_inertia(p: RationalPoly) -> Inertia:
    if p.is_zero():
        raise ZeroPolynomial("inertia of the zero polynomial")
    neg = pos = zero = 0
    for q, mult in squarefree_decompose(p):
        a, b, c = _half_plane_counts_sf(q)
        neg += mult * a
        pos += mult * b
        zero += mult * c
    return Inertia(neg, pos, zero)


def inertia(M: RationalMatrix) -> Inertia:
    """Eigenvalue counts with negative, positive and zero real part."""
    if not M.is_square():
        raise NonSquare("inertia of a %dx%d matrix" % M.shape)
    if M.rows == 0:
        return Inertia(0, 0, 0)
    return polynomial_inertia(char_poly(M))


def _partition(g: RationalPoly, factors) -> tuple[int, ...]:
    return tuple(sorted((e for e in (multiplicity(g, d) for d in factors) if e), reverse=True))


def zero_part_blocks(factors) -> tuple[ZeroPartBlock, ...]:
    """Group imaginary-axis eigenvalues of a matrix by Jordan structure."""
    grouped: dict[tuple[int, ...], list] = {}
    for g in gcd_free_basis(factors):
        carrier, z, exact = _imaginary_part_sf(g)
        if z == 0:
            continue
        part = _partition(g, factors)
        acc = grouped.setdefault(part, [ONE, 0, True])
        acc[0] = acc[0] * carrier
        acc[1] += z
        acc[2] = acc[2] and exact
    return tuple(
        ZeroPartBlock(part, carrier, z, exact)
        for part, (carrier, z, exact) in sorted(grouped.items())
    )


def _factors_from_blocks(blocks) -> tuple[RationalPoly, ...]:
    width = max((len(b.partition) for b in blocks), default=0)
    out = []
    for i in range(width):
        f = ONE
        for b in blocks:
            if i < len(b.partition):
                f = f * b.carrier ** b.partition[i]
        out.append(f)
    return tuple(sorted(out, key=RationalPoly.sort_key))


def restriction_to_kernel(M: RationalMatrix, p: RationalPoly) -> RationalMatrix:
    """``M`` restricted to ``ker p(M)``, in the coordinates of :func:`kernel_matrix`."""
    V = kernel_matrix(poly_of_matrix(p, M))
    if V.cols == 0:
        return RationalMatrix(0, 0)
    return solve(V, M @ V)


@lru_cache(maxsize=4096)
def zero_part_class(M: RationalMatrix) -> ZeroPartClass:
    if not M.is_square():
        raise NonSquare("zero part of a %dx%d matrix" % M.shape)
    if M.rows == 0:
        return ZeroPartClass(0, ONE, (), ())
    factors = invariant_factors(M)
    blocks = zero_part_blocks(factors)
    n_zero = sum(b.roots * sum(b.partition) for b in blocks)
    try:
        p0 = imaginary_axis_factor(char_poly(M))
    except IrrationalFactor:
        return ZeroPartClass(n_zero, None, None, blocks)
    restricted = restriction_to_kernel(M, p0)
    zf = tuple(invariant_factors(restricted))
    if all(b.exact for b in blocks) and zf != _factors_from_blocks(blocks):
        raise ArithmeticError("zero-part invariant factors disagree with the block structure")
    return ZeroPartClass(n_zero, p0, zf, blocks)


def _same_imaginary_roots(c1: RationalPoly, c2: RationalPoly, z: int) -> bool:
    return _imaginary_count_sf(poly_gcd(c1, c2)) == z


def zero_parts_similar(M1: RationalMatrix, M2: RationalMatrix) -> bool:
    """True when the zero-real-part restrictions of ``M1`` and ``M2`` are similar."""
    if not M1.is_square() or not M2.is_square():
        raise NonSquare("zero-part similarity needs square matrices")
    b1 = zero_part_class(M1).blocks
    b2 = zero_part_class(M2).blocks
    if [(b.partition, b.roots) for b in b1] != [(b.partition, b.roots) for b in b2]:
        return False
    return all(_same_imaginary_roots(x.carrier, y.carrier, x.roots) for x, y in zip(b1, b2))


@lru_cache(maxsize=4096)
def cached_invariant_factors(M: RationalMatrix) -> tuple[RationalPoly, ...]:
    return tuple(invariant_factors(M))


def fully_similar(M1: RationalMatrix, M2: RationalMatrix) -> bool:
    if not M1.is_square() or not M2.is_square() or M1.shape != M2.shape:
        return False
    return cached_invariant_factors(M1) == cached_invariant_factors(M2)


def similarity_transform(M1: RationalMatrix, M2: RationalMatrix, seed: int = 0) -> RationalMatrix | None:
    """Invertible ``S`` with ``S^-1 M1 S == M2``, or ``None`` if they are not similar.

    Both matrices are brought to rational canonical form by cyclic vectors
    and the two changes of basis are composed.
    """
    if not fully_similar(M1, M2):
        return None
    if M1.rows == 0:
        return RationalMatrix(0, 0)
    P1, f1 = frobenius_basis(M1, seed)
    P2, f2 = frobenius_basis(M2, seed)
    if f1 != f2:
        raise ArithmeticError("cyclic decomposition disagrees with invariant factors")
    S = P1 @ P2.inverse()
    if S.inverse() @ M1 @ S != M2:
        raise ArithmeticError("similarity transform failed verification")
    return S
