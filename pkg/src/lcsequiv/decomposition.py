"""Canonical form of a controlled system and the feedback witness that reaches it.

A witness ``(O, Q, L)`` carries ``(A1, B1)`` to
``(O^-1 A1 O + O^-1 B1 L, O^-1 B1 Q)``; in trajectory terms ``x = O y`` and
``u = L y + Q v``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache

from .controllability import ControlSystem, brunovsky_sequences, krylov_blocks, selected_basis
from .exactmath import (
    ExactMathError,
    Inconsistent,
    RationalMatrix,
    block_diag,
    hstack,
    kernel_matrix,
    rank,
    solve,
    vstack,
)


class SingularWitness(ExactMathError, ValueError):
    pass


class NotControllable(ExactMathError, ValueError):
    pass


@dataclass(frozen=True)
class FeedbackWitness:
    O: RationalMatrix
    Q: RationalMatrix
    L: RationalMatrix

    def __post_init__(self):
        n, m = self.O.rows, self.Q.rows
        if not self.O.is_square() or not self.Q.is_square():
            raise ValueError("O and Q must be square")
        if self.L.shape != (m, n):
            raise ValueError("L must be %dx%d, got %dx%d" % (m, n, *self.L.shape))
        if rank(self.O) != n:
            raise SingularWitness("O is singular")
        if rank(self.Q) != m:
            raise SingularWitness("Q is singular")

    @classmethod
    def identity(cls, n: int, m: int) -> "FeedbackWitness":
        return cls(RationalMatrix.identity(n), RationalMatrix.identity(m), RationalMatrix(m, n))

    @property
    def n(self) -> int:
        return self.O.rows

    @property
    def m(self) -> int:
        return self.Q.rows

    @cached_property
    def O_inv(self) -> RationalMatrix:
        return self.O.inverse()

    @cached_property
    def Q_inv(self) -> RationalMatrix:
        return self.Q.inverse()

    def apply(self, sys: ControlSystem) -> ControlSystem:
        if (sys.n, sys.m) != (self.n, self.m):
            raise ValueError("witness is %dx%d, system is %dx%d" % (self.n, self.m, sys.n, sys.m))
        Oi = self.O_inv
        return ControlSystem(Oi @ sys.A @ self.O + Oi @ sys.B @ self.L, Oi @ sys.B @ self.Q)

    def carries(self, sys1: ControlSystem, sys2: ControlSystem) -> bool:
        """Exact check of both witness equations."""
        if (sys1.n, sys1.m) != (self.n, self.m) or (sys2.n, sys2.m) != (self.n, self.m):
            return False
        return self.apply(sys1) == sys2

    def then(self, other: "FeedbackWitness") -> "FeedbackWitness":
        """Witness for ``sys1 -> sys3`` given ``self: sys1 -> sys2`` and ``other: sys2 -> sys3``."""
        return FeedbackWitness(
            self.O @ other.O,
            self.Q @ other.Q,
            self.L @ other.O + self.Q @ other.L,
        )

    def inverse(self) -> "FeedbackWitness":
        return FeedbackWitness(self.O_inv, self.Q_inv, -(self.Q_inv @ self.L @ self.O_inv))


@dataclass(frozen=True)
class KalmanSplit:
    T: RationalMatrix
    A11: RationalMatrix
    A12: RationalMatrix
    A22: RationalMatrix
    B1: RationalMatrix


@dataclass(frozen=True)
class CanonicalForm:
    k: int
    C: RationalMatrix
    D: RationalMatrix
    M_uncontrollable: RationalMatrix
    p: tuple[int, ...]
    witness: FeedbackWitness

    @property
    def system(self) -> ControlSystem:
        n = self.k + self.M_uncontrollable.rows
        m = self.D.cols
        return ControlSystem(
            block_diag(self.C, self.M_uncontrollable),
            RationalMatrix.from_rows(self.D.to_rows() + [[0] * m] * (n - self.k), m),
        )


def brunovsky_blocks(p, m: int) -> tuple[RationalMatrix, RationalMatrix]:
    """``C = diag(J_p1, J_p2, ...)`` and ``D`` with unit columns ``e_pi``."""
    chains = [q for q in p if q > 0]
    k = sum(chains)
    C = [[0] * k for _ in range(k)]
    D = [[0] * m for _ in range(k)]
    offset = 0
    for i, q in enumerate(chains):
        for j in range(q - 1):
            C[offset + j][offset + j + 1] = 1
        D[offset + q - 1][i] = 1
        offset += q
    return RationalMatrix.from_rows(C, k), RationalMatrix.from_rows(D, m)


def kalman_split(sys: ControlSystem) -> KalmanSplit:
    """Change of basis separating the controllable subspace.

    The first ``k`` columns of ``T`` are the selected Krylov vectors in scan
    order; the rest are the first standard basis vectors that complete them.
    """
    n = sys.n
    S = selected_basis(sys)
    k = S.cols
    cols = [S.col(j) for j in range(k)]
    for i in range(n):
        if len(cols) == n:
            break
        e = RationalMatrix.column([1 if t == i else 0 for t in range(n)])
        if rank(hstack(cols + [e])) == len(cols) + 1:
            cols.append(e)
    T = hstack(cols)
    Ti = T.inverse()
    At = Ti @ sys.A @ T
    Bt = Ti @ sys.B
    if not At.block(k, n, 0, k).is_zero() or not Bt.block(k, n, 0, sys.m).is_zero():
        raise ArithmeticError("controllable subspace is not invariant")
    return KalmanSplit(
        T=T,
        A11=At.block(0, k, 0, k),
        A12=At.block(0, k, k, n),
        A22=At.block(k, n, k, n),
        B1=Bt.block(0, k, 0, sys.m),
    )


def _left_kernel_rows(M: RationalMatrix) -> list[RationalMatrix]:
    K = kernel_matrix(M.T)
    return [K.col(j).T for j in range(K.cols)]


def brunovsky_normalize(A11: RationalMatrix, B1: RationalMatrix, p) -> FeedbackWitness:
    """Witness carrying a controllable ``(A11, B1)`` onto its Brunovsky form.

    For every chain length ``q`` (longest first) we pick row vectors ``c``
    annihilating ``[B, AB, ..., A^(q-2) B]`` whose images ``c A^(q-1) B`` are
    independent of those already chosen. The rows ``c, cA, ..., cA^(q-1)`` of
    all chains form ``O^-1``; ``Q`` and ``L`` then cancel the chain ends.
    """
    k, m = A11.rows, B1.cols
    if k == 0:
        return FeedbackWitness.identity(0, m)
    blocks = krylov_blocks(ControlSystem(A11, B1)) if m else []
    if m == 0 or rank(hstack(blocks)) != k:
        raise NotControllable("pair is not completely controllable")
    lengths = sorted((q for q in p if q > 0), reverse=True)
    if sum(lengths) != k:
        raise NotControllable("indices %s do not sum to %d" % (tuple(p), k))
    gamma: list[RationalMatrix] = []
    chain_rows: list[tuple[RationalMatrix, int]] = []
    for q in sorted(set(lengths), reverse=True):
        need = lengths.count(q)
        if q >= 2:
            candidates = _left_kernel_rows(hstack(blocks[: q - 1]))
        else:
            candidates = [RationalMatrix.identity(k).block(i, i + 1, 0, k) for i in range(k)]
        for c in candidates:
            if need == 0:
                break
            g = c @ blocks[q - 1]
            if rank(vstack(gamma + [g])) > len(gamma):
                gamma.append(g)
                chain_rows.append((c, q))
                need -= 1
        if need:
            raise NotControllable("no admissible chain generator of length %d" % q)
    rows = []
    tops = []
    for c, q in chain_rows:
        x = c
        for _ in range(q):
            rows.append(x)
            x = x @ A11
        tops.append(x)
    T = vstack(rows)
    if rank(T) != k:
        raise NotControllable("chain rows are dependent")
    G = vstack(gamma)
    F = vstack(tops)
    r = G.rows
    G_right = solve(G, RationalMatrix.identity(r))
    N = kernel_matrix(G)
    Q = hstack([G_right, N]) if N.cols else G_right
    O = T.inverse()
    L = -(G_right @ F) @ O
    return FeedbackWitness(O, Q, L)


def decouple_cross_block(
    A11: RationalMatrix, A12: RationalMatrix, A22: RationalMatrix, B1: RationalMatrix
) -> tuple[RationalMatrix, RationalMatrix]:
    """Solve ``A11 Z - Z A22 + B1 W = -A12`` for ``(Z, W)``.

    Unknowns are ordered as ``Z`` row-major then ``W`` row-major; the
    particular solution with free variables at zero is returned.
    """
    k, d, m = A11.rows, A22.rows, B1.cols
    if k == 0 or d == 0:
        return RationalMatrix(k, d), RationalMatrix(m, d)
    nz = k * d
    coeff = [[0] * (nz + m * d) for _ in range(k * d)]
    rhs = []
    for a in range(k):
        for b in range(d):
            row = coeff[a * d + b]
            for c in range(k):
                row[c * d + b] += A11[a, c]
            for e in range(d):
                row[a * d + e] -= A22[e, b]
            for e in range(m):
                row[nz + e * d + b] += B1[a, e]
            rhs.append(-A12[a, b])
    try:
        x = solve(RationalMatrix.from_rows(coeff, nz + m * d), RationalMatrix.column(rhs))
    except Inconsistent as exc:
        raise Inconsistent("cross block equation unsolvable; (A11, B1) must be controllable") from exc
    vals = [x[i, 0] for i in range(x.rows)]
    return RationalMatrix(k, d, vals[:nz]), RationalMatrix(m, d, vals[nz:])


@lru_cache(maxsize=4096)
def canonical_form(sys: ControlSystem) -> CanonicalForm:
    """Canonical form with a witness composed as split, decouple, normalize."""
    n, m = sys.n, sys.m
    seq = brunovsky_sequences(sys)
    k = seq.k
    d = n - k
    split = kalman_split(sys)
    w_split = FeedbackWitness(split.T, RationalMatrix.identity(m), RationalMatrix(m, n))

    Z, W = decouple_cross_block(split.A11, split.A12, split.A22, split.B1)
    P = block_diag(RationalMatrix.identity(k), RationalMatrix.identity(d))
    if k and d:
        P = vstack([hstack([RationalMatrix.identity(k), Z]), hstack([RationalMatrix(d, k), RationalMatrix.identity(d)])])
    w_decouple = FeedbackWitness(P, RationalMatrix.identity(m), hstack([RationalMatrix(m, k), W]) if k else W)

    w_ctrl = brunovsky_normalize(split.A11, split.B1, seq.p)
    w_norm = FeedbackWitness(
        block_diag(w_ctrl.O, RationalMatrix.identity(d)),
        w_ctrl.Q,
        hstack([w_ctrl.L, RationalMatrix(m, d)]) if d else w_ctrl.L,
    )
    witness = w_split.then(w_decouple).then(w_norm)
    C, D = brunovsky_blocks(seq.p, m)
    form = CanonicalForm(k=k, C=C, D=D, M_uncontrollable=split.A22, p=seq.p, witness=witness)
    if not witness.carries(sys, form.system):
        raise ArithmeticError("canonical witness failed substitution check")
    return form
