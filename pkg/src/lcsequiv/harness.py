"""Numerical cross-check of feedback witnesses by simulation.

Floating point is confined to this module; nothing computed here feeds a
decision of the exact deciders.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from .controllability import ControlSystem
from .decomposition import FeedbackWitness
from .exactmath import RationalMatrix

DEFAULT_OVERFLOW = 1e12


class NonFinite(ArithmeticError):
    pass


def to_float(M: RationalMatrix) -> np.ndarray:
    return np.array([float(x) for x in M.entries], dtype=float).reshape(M.rows, M.cols)


@dataclass(frozen=True)
class ControlSignal:
    """Continuous input ``u(t)`` with one value per channel.

    ``zero``: no parameters. ``step``: ``levels`` per channel (a constant
    input from ``t = 0``). ``polynomial``: ``coeffs[i]`` ascending in ``t``
    for channel ``i``. ``piecewise-linear``: shared ``knots`` and per-channel
    ``values``; held constant outside the knot range.
    """

    kind: str
    m: int
    levels: tuple[float, ...] = ()
    coeffs: tuple[tuple[float, ...], ...] = ()
    knots: tuple[float, ...] = ()
    values: tuple[tuple[float, ...], ...] = ()

    def __post_init__(self):
        if self.kind not in ("zero", "step", "polynomial", "piecewise-linear"):
            raise ValueError("unknown signal kind %r" % self.kind)

    @classmethod
    def zero(cls, m: int) -> "ControlSignal":
        return cls("zero", m)

    @classmethod
    def step(cls, levels) -> "ControlSignal":
        levels = tuple(float(x) for x in levels)
        return cls("step", len(levels), levels=levels)

    @classmethod
    def polynomial(cls, coeffs) -> "ControlSignal":
        coeffs = tuple(tuple(float(c) for c in row) for row in coeffs)
        return cls("polynomial", len(coeffs), coeffs=coeffs)

    @classmethod
    def piecewise_linear(cls, knots, values) -> "ControlSignal":
        knots = tuple(float(t) for t in knots)
        values = tuple(tuple(float(v) for v in row) for row in values)
        if any(len(row) != len(knots) for row in values):
            raise ValueError("each channel needs one value per knot")
        if any(b <= a for a, b in zip(knots, knots[1:])):
            raise ValueError("knots must be increasing")
        return cls("piecewise-linear", len(values), knots=knots, values=values)

    @property
    def breakpoints(self) -> tuple[float, ...]:
        """Times where the input is not differentiable."""
        return self.knots if self.kind == "piecewise-linear" else ()

    def __call__(self, t: float) -> np.ndarray:
        if self.kind == "zero":
            return np.zeros(self.m)
        if self.kind == "step":
            return np.array(self.levels)
        if self.kind == "polynomial":
            return np.array([np.polynomial.polynomial.polyval(t, c) for c in self.coeffs])
        return np.array([np.interp(t, self.knots, row) for row in self.values])

    def sample(self, times) -> np.ndarray:
        """Values on a grid, shape ``(len(times), m)``."""
        times = np.asarray(times, dtype=float)
        if self.kind == "zero":
            return np.zeros((len(times), self.m))
        if self.kind == "step":
            return np.tile(np.array(self.levels), (len(times), 1))
        if self.kind == "polynomial":
            cols = [np.polynomial.polynomial.polyval(times, c) for c in self.coeffs]
        else:
            cols = [np.interp(times, self.knots, row) for row in self.values]
        return np.array(cols).T.reshape(len(times), self.m)


@dataclass
class Trajectory:
    times: np.ndarray
    states: np.ndarray
    controls: np.ndarray = field(repr=False)


def _rk4_step(A, h, x, g0, gh, g1):
    k1 = A @ x + g0
    k2 = A @ (x + h / 2 * k1) + gh
    k3 = A @ (x + h / 2 * k2) + gh
    k4 = A @ (x + h * k3) + g1
    return x + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)


def simulate(
    sys: ControlSystem,
    x0,
    u: ControlSignal,
    T: float,
    steps: int,
    overflow: float = DEFAULT_OVERFLOW,
) -> Trajectory:
    """Fixed-step classical RK4 for ``x' = A x + B u(t)``."""
    if T <= 0:
        raise ValueError("T must be positive")
    if steps < 1:
        raise ValueError("steps must be at least 1")
    if u.m != sys.m:
        raise ValueError("signal has %d channels, system has %d inputs" % (u.m, sys.m))
    A, B = to_float(sys.A), to_float(sys.B)
    n = sys.n
    h = T / steps
    times = np.linspace(0.0, T, steps + 1)
    us = u.sample(times)
    u_mid = u.sample(times[:-1] + h / 2)
    # one RK4 step is affine in (x, g(t), g(t+h/2), g(t+h)) with g = B u
    eye, zero = np.eye(n), np.zeros((n, n))
    phi = _rk4_step(A, h, eye, zero, zero, zero)
    g0 = _rk4_step(A, h, zero, eye, zero, zero)
    gh = _rk4_step(A, h, zero, zero, eye, zero)
    g1 = _rk4_step(A, h, zero, zero, zero, eye)
    forcing = us[:-1] @ B.T @ g0.T + u_mid @ B.T @ gh.T + us[1:] @ B.T @ g1.T
    xs = np.empty((steps + 1, n))
    x = np.asarray(x0, dtype=float).reshape(n)
    xs[0] = x
    checked = 0
    for i in range(steps):
        x = phi @ x + forcing[i]
        xs[i + 1] = x
        if i + 1 - checked >= _CHECK_EVERY or i + 1 == steps:
            _check_overflow(xs, checked + 1, i + 2, times, overflow)
            checked = i + 1
    return Trajectory(times, xs, us)


# checked in chunks for speed; inf and nan count as past the bound, so the
# reported time is still the first offending sample
_CHECK_EVERY = 64


def _check_overflow(xs, lo, hi, times, overflow):
    chunk = np.abs(xs[lo:hi])
    bad = ~np.isfinite(chunk) | (chunk > overflow)
    if bad.any():
        first = lo + int(np.argmax(bad.any(axis=1)))
        raise NonFinite("state exceeded %g at t=%g" % (overflow, times[first]))


def verify_witness_dynamically(
    sys1: ControlSystem,
    sys2: ControlSystem,
    w: FeedbackWitness,
    u: ControlSignal,
    x0,
    T: float = 2.0,
    steps: int = 2000,
    tol: float = 1e-4,
) -> tuple[float, bool]:
    """Simulate ``sys1`` and test that ``y = O^-1 x``, ``v = Q^-1 (u - L y)`` solve ``sys2``.

    The residual at each interior sample is
    ``|y'_fd - A2 y - B2 v|_inf / max(1, |y'_fd|_inf)`` with ``y'_fd`` a
    central difference; the maximum over samples is returned. Stencils that
    straddle a breakpoint of ``u`` are skipped, since the difference
    quotient is only first-order accurate there.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if (sys1.n, sys1.m) != (w.n, w.m) or (sys2.n, sys2.m) != (w.n, w.m):
        raise ValueError("witness and system dimensions differ")
    traj = simulate(sys1, x0, u, T, steps)
    Oi, Qi, L = to_float(w.O_inv), to_float(w.Q_inv), to_float(w.L)
    A2, B2 = to_float(sys2.A), to_float(sys2.B)
    ys = traj.states @ Oi.T
    vs = (traj.controls - ys @ L.T) @ Qi.T
    h = traj.times[1] - traj.times[0]
    if len(ys) < 3:
        raise ValueError("need at least two steps for central differences")
    dy = (ys[2:] - ys[:-2]) / (2 * h)
    rhs = ys[1:-1] @ A2.T + vs[1:-1] @ B2.T
    err = np.max(np.abs(dy - rhs), axis=1)
    scale = np.maximum(1.0, np.max(np.abs(dy), axis=1))
    ratio = err / scale
    mid = traj.times[1:-1]
    keep = np.ones(len(mid), dtype=bool)
    for b in u.breakpoints:
        keep &= np.abs(mid - b) >= 1.5 * h
    residual = float(np.max(ratio[keep], initial=0.0))
    return residual, residual <= tol


def signal_battery(m: int, seed: int = 0, T: float = 2.0) -> list[ControlSignal]:
    """Five seeded excitations: step, two polynomials, two piecewise-linear."""
    rng = random.Random(seed)

    def val():
        return rng.uniform(-1.0, 1.0)

    knots = [T * i / 6 for i in range(7)]
    return [
        ControlSignal.step([val() for _ in range(m)]),
        ControlSignal.polynomial([[val(), val()] for _ in range(m)]),
        ControlSignal.polynomial([[val(), val(), val(), val()] for _ in range(m)]),
        ControlSignal.piecewise_linear(knots, [[val() for _ in knots] for _ in range(m)]),
        ControlSignal.piecewise_linear(knots[::2], [[val() for _ in knots[::2]] for _ in range(m)]),
    ]


def initial_state(n: int, seed: int = 0) -> np.ndarray:
    rng = random.Random(seed + 7919)
    return np.array([rng.uniform(-1.0, 1.0) for _ in range(n)])
