"""Univariate polynomials over the rationals, root counting and coprime bases.

Coefficients are stored in ascending degree order as :class:`fractions.Fraction`
values; trailing zeros are stripped on construction so the representation of
every polynomial is unique.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import BothZero, NotSquarefree, ZeroPolynomial

ZERO_DEGREE = -1
"""Degree reported for the zero polynomial."""


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not accepted as exact rationals: %r" % value)
    return Fraction(value)


class RationalPoly:
    """Immutable polynomial in ``s`` with rational coefficients."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable = ()):
        c = [as_fraction(a) for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self._c = tuple(c)

    # -- constructors -------------------------------------------------------
    @classmethod
    def constant(cls, value) -> "RationalPoly":
        return cls((value,))

    @classmethod
    def monomial(cls, degree: int, coeff=1) -> "RationalPoly":
        return cls([0] * degree + [coeff])

    @classmethod
    def from_roots(cls, roots: Iterable) -> "RationalPoly":
        p = cls.constant(1)
        for r in roots:
            p = p * cls((-as_fraction(r), 1))
        return p

    # -- basic accessors ----------------------------------------------------
    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._c

    @property
    def degree(self) -> int:
        return len(self._c) - 1

    @property
    def lc(self) -> Fraction:
        if not self._c:
            return Fraction(0)
        return self._c[-1]

    def is_zero(self) -> bool:
        return not self._c

    def is_constant(self) -> bool:
        return len(self._c) <= 1

    def is_monic(self) -> bool:
        return bool(self._c) and self._c[-1] == 1

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self._c):
            return self._c[i]
        return Fraction(0)

    def __len__(self) -> int:
        return len(self._c)

    # -- arithmetic ---------------------------------------------------------
    @staticmethod
    def _coerce(other) -> "RationalPoly":
        if isinstance(other, RationalPoly):
            return other
        return RationalPoly.constant(other)

    def __add__(self, other) -> "RationalPoly":
        other = self._coerce(other)
        a, b = self._c, other._c
        if len(a) < len(b):
            a, b = b, a
        return RationalPoly([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    __radd__ = __add__

    def __neg__(self) -> "RationalPoly":
        return RationalPoly([-x for x in self._c])

    def __sub__(self, other) -> "RationalPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "RationalPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "RationalPoly":
        other = self._coerce(other)
        a, b = self._c, other._c
        if not a or not b:
            return RationalPoly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        return RationalPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "RationalPoly":
        if e < 0:
            raise ValueError("negative exponent")
        result = RationalPoly.constant(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other) -> tuple["RationalPoly", "RationalPoly"]:
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self._c)
        dq = other.degree
        if len(rem) - 1 < dq:
            return RationalPoly(), self
        quot = [Fraction(0)] * (len(rem) - dq)
        inv_lc = 1 / other.lc
        oc = other._c
        for k in range(len(rem) - 1 - dq, -1, -1):
            q = rem[k + dq] * inv_lc
            quot[k] = q
            if q:
                for j in range(dq + 1):
                    rem[k + j] -= q * oc[j]
        return RationalPoly(quot), RationalPoly(rem[:dq])

    def __floordiv__(self, other) -> "RationalPoly":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "RationalPoly":
        return divmod(self, other)[1]

    def exact_div(self, other) -> "RationalPoly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError("%s does not divide %s" % (other, self))
        return q

    def divides(self, other: "RationalPoly") -> bool:
        if self.is_zero():
            return other.is_zero()
        return (other % self).is_zero()

    def monic(self) -> "RationalPoly":
        if self.is_zero():
            raise ZeroPolynomial("the zero polynomial has no monic associate")
        lc = self.lc
        if lc == 1:
            return self
        return RationalPoly([x / lc for x in self._c])

    def derivative(self) -> "RationalPoly":
        return RationalPoly([i * x for i, x in enumerate(self._c)][1:])

    def __call__(self, x):
        acc = Fraction(0) if not isinstance(x, float) else 0.0
        for a in reversed(self._c):
            acc = acc * x + a
        return acc

    def scale_variable(self, c) -> "RationalPoly":
        """Return ``p(c*s)``."""
        c = as_fraction(c)
        return RationalPoly([a * c**i for i, a in enumerate(self._c)])

    # -- comparisons / display ---------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, RationalPoly):
            return self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self._c == RationalPoly.constant(other)._c
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._c)

    def sort_key(self):
        return (self.degree, self._c)

    def to_strings(self) -> list[str]:
        return [str(a) for a in self._c]

    def __repr__(self) -> str:
        return "RationalPoly(%s)" % self

    def __str__(self) -> str:
        if not self._c:
            return "0"
        terms = []
        for i in range(len(self._c) - 1, -1, -1):
            a = self._c[i]
            if a == 0:
                continue
            mag = abs(a)
            if i == 0:
                body = str(mag)
            else:
                var = "s" if i == 1 else "s^%d" % i
                body = var if mag == 1 else "%s*%s" % (mag, var)
            sign = "-" if a < 0 else "+"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += " %s %s" % (sign, body)
        return out


S = RationalPoly((0, 1))
ONE = RationalPoly((1,))


def poly_gcd(p: RationalPoly, q: RationalPoly) -> RationalPoly:
    """Monic greatest common divisor via the Euclidean algorithm."""
    if p.is_zero() and q.is_zero():
        raise BothZero("gcd(0, 0) is undefined")
    a, b = p, q
    while not b.is_zero():
        a, b = b, (a % b)
        if not b.is_zero():
            b = b.monic()
    return a.monic()


def poly_lcm(p: RationalPoly, q: RationalPoly) -> RationalPoly:
    return (p * q).exact_div(poly_gcd(p, q)).monic()


def squarefree_decompose(p: RationalPoly) -> list[tuple[RationalPoly, int]]:
    """Yun's algorithm.

    Returns ``[(f1, m1), (f2, m2), ...]`` with ``p == prod(fi**mi)``, each
    ``fi`` monic, squarefree and non-constant, pairwise coprime, and
    ``m1 < m2 < ...``.
    """
    if p.is_zero():
        raise ZeroPolynomial("cannot decompose the zero polynomial")
    p = p.monic()
    if p.degree == 0:
        return []
    dp = p.derivative()
    a = poly_gcd(p, dp)
    b = p.exact_div(a)
    c = dp.exact_div(a)
    d = c - b.derivative()
    out = []
    i = 1
    while b.degree > 0:
        a = poly_gcd(b, d)
        b = b.exact_div(a)
        c = d.exact_div(a)
        d = c - b.derivative()
        if a.degree > 0:
            out.append((a, i))
        i += 1
    return out


def squarefree_part(p: RationalPoly) -> RationalPoly:
    if p.is_zero():
        raise ZeroPolynomial("cannot take the squarefree part of zero")
    if p.degree <= 0:
        return ONE
    return p.exact_div(poly_gcd(p, p.derivative())).monic()


def is_squarefree(p: RationalPoly) -> bool:
    return poly_gcd(p, p.derivative()).degree == 0


# -- Sturm sequences and Cauchy indices ------------------------------------

def signed_remainder_sequence(p: RationalPoly, q: RationalPoly) -> list[RationalPoly]:
    """``p, q, -rem(p, q), ...`` until the last nonzero term."""
    seq = [p]
    a, b = p, q
    while not b.is_zero():
        seq.append(b)
        a, b = b, -(a % b)
    return seq


def sturm_chain(p: RationalPoly) -> list[RationalPoly]:
    return signed_remainder_sequence(p, p.derivative())


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _sign_at(p: RationalPoly, x) -> int:
    if x == math.inf:
        return _sign(p.lc)
    if x == -math.inf:
        return _sign(p.lc) * (-1 if p.degree % 2 else 1)
    return _sign(p(x))


def sign_variations(seq: Sequence[RationalPoly], x) -> int:
    """Number of sign changes of ``seq`` evaluated at ``x`` (zeros skipped).

    ``x`` may be a rational or ``math.inf`` / ``-math.inf``.
    """
    signs = [s for s in (_sign_at(f, x) for f in seq) if s]
    return sum(1 for u, v in zip(signs, signs[1:]) if u != v)


def _bound(x, default):
    if x is None:
        return default
    if isinstance(x, float):
        if math.isinf(x):
            return x
        raise TypeError("finite interval ends must be exact rationals")
    return as_fraction(x)


def sturm_real_root_count(p: RationalPoly, lo=None, hi=None) -> int:
    """Number of distinct real roots of a squarefree ``p`` in ``(lo, hi]``.

    ``None`` (or a float infinity) stands for an unbounded end.
    """
    if p.is_zero():
        raise ZeroPolynomial("the zero polynomial has infinitely many roots")
    if not is_squarefree(p):
        raise NotSquarefree("Sturm counting needs a squarefree polynomial: %s" % p)
    lo = _bound(lo, -math.inf)
    hi = _bound(hi, math.inf)
    if lo >= hi:
        return 0
    chain = sturm_chain(p)
    return sign_variations(chain, lo) - sign_variations(chain, hi)


def real_root_count(p: RationalPoly) -> int:
    """Distinct real roots of any nonzero ``p``."""
    if p.degree <= 0:
        return 0
    return sturm_real_root_count(squarefree_part(p))


def cauchy_index(num: RationalPoly, den: RationalPoly) -> int:
    """Cauchy index of ``num/den`` over the whole real line.

    Counts jumps of the rational function from -inf to +inf minus jumps from
    +inf to -inf, computed with the signed remainder sequence of
    ``(den, num)``.
    """
    if den.is_zero():
        raise ZeroPolynomial("denominator is zero")
    seq = signed_remainder_sequence(den, num)
    return sign_variations(seq, -math.inf) - sign_variations(seq, math.inf)


# -- coprime bases ---------------------------------------------------------

def gcd_free_basis(polys: Iterable[RationalPoly]) -> list[RationalPoly]:
    """Pairwise coprime, squarefree, monic basis for the given polynomials.

    Every squarefree factor of every input (as returned by
    :func:`squarefree_decompose`) is a product of basis elements, so each
    basis element divides an input with a single well-defined multiplicity.
    The result is sorted by degree then coefficients, so it does not depend
    on the order of the inputs.
    """
    work = [f for p in polys if not p.is_zero() and p.degree > 0 for f, _ in squarefree_decompose(p)]
    basis: list[RationalPoly] = []
    for p in work:
        pending = [p]
        while pending:
            f = pending.pop()
            if f.degree <= 0:
                continue
            for idx, b in enumerate(basis):
                g = poly_gcd(f, b)
                if g.degree > 0:
                    del basis[idx]
                    rest_b = b.exact_div(g).monic()
                    rest_f = f.exact_div(g).monic()
                    pending.extend(x for x in (g, rest_b, rest_f) if x.degree > 0)
                    break
            else:
                basis.append(f)
    return sorted(basis, key=RationalPoly.sort_key)


def multiplicity(f: RationalPoly, p: RationalPoly) -> int:
    """Largest ``e`` with ``f**e`` dividing ``p`` (``f`` non-constant)."""
    if f.degree <= 0:
        raise ValueError("multiplicity of a constant is undefined")
    e = 0
    while not p.is_zero():
        q, r = divmod(p, f)
        if not r.is_zero():
            break
        p = q
        e += 1
    return e
