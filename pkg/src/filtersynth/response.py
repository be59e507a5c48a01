"""Frequency response sampling, closed-form magnitude oracles, square-wave
transient simulation and side-by-side comparison."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np

from .chebyshev import chebyshev_polynomial
from .core import FirstOrder, SecondOrder, TransferFunction, evaluate

Spacing = Literal["log", "linear"]

DEFAULT_GRID = (1.0, 1e4, 512)
MAX_STEP_PER_POLE = 0.02
MIN_STEPS_PER_PERIOD = 50
MIN_PERIODS = 20


class GridMismatch(ValueError):
    pass


class ResolutionError(ValueError):
    """Time step too coarse for the input frequency or the fastest pole."""


@dataclass(frozen=True, eq=False)
class FrequencyGrid:
    points: np.ndarray
    spacing: Spacing = "log"

    def __post_init__(self) -> None:
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 1:
            raise ValueError("grid must be one-dimensional")
        if pts.size and np.any(np.diff(pts) <= 0):
            raise ValueError("grid points must be strictly increasing")
        if self.spacing == "log" and pts.size and pts[0] <= 0:
            raise ValueError("log grid needs positive frequencies")
        if self.spacing == "linear" and pts.size and pts[0] < 0:
            raise ValueError("linear grid needs non-negative frequencies")
        object.__setattr__(self, "points", pts)

    @classmethod
    def log(cls, lo: float, hi: float, n: int) -> "FrequencyGrid":
        return cls(np.logspace(math.log10(lo), math.log10(hi), n), "log")

    @classmethod
    def linear(cls, lo: float, hi: float, n: int) -> "FrequencyGrid":
        return cls(np.linspace(lo, hi, n), "linear")

    @classmethod
    def default(cls) -> "FrequencyGrid":
        return cls.log(*DEFAULT_GRID)

    def __len__(self) -> int:
        return self.points.size

    def same_as(self, other: "FrequencyGrid") -> bool:
        return self.points.shape == other.points.shape and np.array_equal(
            self.points, other.points
        )


@dataclass(frozen=True, eq=False)
class FrequencyResponse:
    grid: FrequencyGrid
    magnitude_db: np.ndarray
    phase_deg: np.ndarray

    def __post_init__(self) -> None:
        if not (len(self.magnitude_db) == len(self.phase_deg) == len(self.grid)):
            raise ValueError("response arrays must match the grid length")
        if not np.all(np.isfinite(self.magnitude_db)):
            raise ValueError("magnitude must be finite at every grid point")

    @property
    def omega(self) -> np.ndarray:
        return self.grid.points

    def relative_to_peak(self) -> "FrequencyResponse":
        if not len(self.grid):
            return self
        return FrequencyResponse(self.grid, self.magnitude_db - self.magnitude_db.max(), self.phase_deg)

    def db_at(self, omega: float) -> float:
        """Magnitude at ``omega`` by linear interpolation in log-frequency."""
        w = self.omega
        if not w[0] <= omega <= w[-1]:
            raise ValueError(f"{omega} outside grid [{w[0]}, {w[-1]}]")
        if self.grid.spacing == "log":
            return float(np.interp(math.log(omega), np.log(w), self.magnitude_db))
        return float(np.interp(omega, w, self.magnitude_db))


def sample_response(tf: TransferFunction, grid: FrequencyGrid) -> FrequencyResponse:
    h = np.asarray(evaluate(tf, grid.points), dtype=complex).reshape(-1)
    mag = 20.0 * np.log10(np.abs(h))
    phase = np.degrees(np.unwrap(np.angle(h))) if h.size else np.array([])
    return FrequencyResponse(grid, mag, phase)


def closed_form_butterworth(n: int, omega_c: float, omega):
    if not omega_c > 0:
        raise ValueError("omega_c must be positive")
    x = np.asarray(omega, dtype=float) / omega_c
    return (1.0 + x ** (2 * n)) ** -0.5


def closed_form_chebyshev(n: int, epsilon: float, omega_p: float, omega):
    if not (omega_p > 0 and epsilon > 0):
        raise ValueError("omega_p and epsilon must be positive")
    cn = chebyshev_polynomial(n, np.asarray(omega, dtype=float) / omega_p)
    return (1.0 + epsilon**2 * cn**2) ** -0.5


# -- transient ---------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class TransientTrace:
    dt: float
    samples_in: np.ndarray
    samples_out: np.ndarray
    state_dim: int

    def __post_init__(self) -> None:
        if not self.dt > 0:
            raise ValueError("dt must be positive")
        if len(self.samples_in) != len(self.samples_out):
            raise ValueError("input and output traces differ in length")

    @property
    def t(self) -> np.ndarray:
        return np.arange(len(self.samples_out)) * self.dt


def state_space(tf: TransferFunction) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Chain each stage's controllable-canonical form into one (A, B, C).

    Stage k is driven by the output of stage k-1; the overall gain is
    folded into C.
    """
    n = tf.order
    A = np.zeros((n, n))
    B = np.zeros(n)
    drive = None  # (row vector selecting the previous stage's output)
    i = 0
    for st in tf.stages:
        if isinstance(st, FirstOrder):
            A[i, i] = -st.w0
            out = np.zeros(n)
            out[i] = st.w0
            inject = i
        elif isinstance(st, SecondOrder):
            A[i, i + 1] = 1.0
            A[i + 1, i] = -st.b
            A[i + 1, i + 1] = -st.a
            out = np.zeros(n)
            out[i] = st.b
            inject = i + 1
        else:
            raise TypeError(f"unknown stage {st!r}")
        if drive is None:
            B[inject] = 1.0
        else:
            A[inject] += drive
        drive = out
        i += st.degree
    C = tf.gain * (drive if drive is not None else np.zeros(n))
    return A, B, C


def simulate(tf: TransferFunction, u_steps: np.ndarray, dt: float) -> np.ndarray:
    """Fixed-step RK4 from zero state, input held constant over each step.

    Returns the output at t = 0, dt, ..., len(u_steps) * dt.
    """
    A, B, C = state_space(tf)
    x = np.zeros(tf.order)
    y = np.empty(len(u_steps) + 1)
    y[0] = C @ x
    for i, u in enumerate(u_steps):
        bu = B * u
        k1 = A @ x + bu
        k2 = A @ (x + 0.5 * dt * k1) + bu
        k3 = A @ (x + 0.5 * dt * k2) + bu
        k4 = A @ (x + dt * k3) + bu
        x = x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        y[i + 1] = C @ x
    return y


def square_wave(t, f_in: float, amplitude: float) -> np.ndarray:
    """+amplitude for the first half of each period, -amplitude after."""
    phase = np.mod(np.asarray(t, dtype=float) * f_in, 1.0)
    return np.where(phase < 0.5, amplitude, -amplitude)


def _square_step_average(t0: np.ndarray, dt: float, f_in: float, amplitude: float) -> np.ndarray:
    """Exact mean of the square wave over each [t0, t0 + dt]."""

    def integral(t):
        # Integral of the unit square wave from 0 to t.
        cycles = np.floor(t * f_in)
        frac = t * f_in - cycles
        return (np.minimum(frac, 0.5) - np.maximum(frac - 0.5, 0.0)) / f_in

    return amplitude * (integral(t0 + dt) - integral(t0)) / dt


def check_resolution(tf: TransferFunction, f_in: float, dt: float) -> None:
    if not dt > 0:
        raise ResolutionError("dt must be positive")
    if f_in > 0 and dt > 1.0 / (MIN_STEPS_PER_PERIOD * f_in):
        raise ResolutionError(
            f"dt={dt:g}s exceeds 1/({MIN_STEPS_PER_PERIOD} f_in) = {1 / (MIN_STEPS_PER_PERIOD * f_in):g}s"
        )
    fastest = max((abs(p) for p in tf.poles()), default=0.0)
    if fastest and dt > MAX_STEP_PER_POLE / fastest:
        raise ResolutionError(
            f"dt={dt:g}s exceeds {MAX_STEP_PER_POLE}/|p|max = {MAX_STEP_PER_POLE / fastest:g}s"
        )


def default_dt(tf: TransferFunction, f_in: float) -> float:
    """Largest guard-satisfying step that divides a half period evenly."""
    fastest = max((abs(p) for p in tf.poles()), default=1.0)
    limit = min(1.0 / (MIN_STEPS_PER_PERIOD * f_in), MAX_STEP_PER_POLE / fastest)
    half = 0.5 / f_in
    return half / math.ceil(half / limit)


def simulate_square_wave(
    tf: TransferFunction,
    f_in: float,
    amplitude: float = 1.0,
    duration: float | None = None,
    dt: float | None = None,
) -> TransientTrace:
    if not f_in > 0:
        raise ValueError("f_in must be positive")
    if duration is None:
        duration = MIN_PERIODS / f_in
    if duration * f_in < MIN_PERIODS * (1 - 1e-9):
        raise ValueError(f"duration must cover at least {MIN_PERIODS} input periods")
    if dt is None:
        dt = default_dt(tf, f_in)
    check_resolution(tf, f_in, dt)
    steps = int(round(duration / dt))
    t = np.arange(steps + 1) * dt
    u = _square_step_average(t[:-1], dt, f_in, amplitude)
    y = simulate(tf, u, dt)
    return TransientTrace(dt, square_wave(t, f_in, amplitude), y, tf.order)


def harmonic_amplitudes(
    trace: TransientTrace,
    f_in: float,
    harmonics: Sequence[int] = (1, 3),
    periods: int = 5,
    fit_up_to: int = 25,
) -> dict[int, float]:
    """Amplitudes of selected output harmonics over the last ``periods`` periods.

    Least-squares fit of DC plus sine/cosine pairs for harmonics
    1..fit_up_to, so windows that are not an exact multiple of dt still
    separate cleanly.
    """
    y = trace.samples_out
    t = trace.t
    start = t[-1] - periods / f_in
    if start < 0:
        raise ValueError("trace shorter than the analysis window")
    sel = t >= start - 1e-12
    ts, ys = t[sel], y[sel]
    cols = [np.ones_like(ts)]
    for h in range(1, fit_up_to + 1):
        w = 2 * math.pi * f_in * h
        cols += [np.cos(w * ts), np.sin(w * ts)]
    M = np.column_stack(cols)
    coef, *_ = np.linalg.lstsq(M, ys, rcond=None)
    out = {}
    for h in harmonics:
        c, s = coef[2 * h - 1], coef[2 * h]
        out[h] = math.hypot(c, s)
    return out


# -- comparison --------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Comparison:
    grid: FrequencyGrid
    diff_db: np.ndarray  # a - b
    slope_a: float  # dB/octave
    slope_b: float
    crossovers: tuple[float, ...]


def rolloff_slope(resp: FrequencyResponse, lo: float, hi: float) -> float:
    """Average slope in dB/octave between ``lo`` and ``hi``."""
    return (resp.db_at(hi) - resp.db_at(lo)) / math.log2(hi / lo)


def compare(
    a: FrequencyResponse,
    b: FrequencyResponse,
    omega_p: float | None = None,
    tol_db: float = 1e-9,
) -> Comparison:
    """Point-wise difference and roll-off between ``omega_p`` and ``2 omega_p``.

    Without ``omega_p`` the slope window is the grid's geometric centre
    octave.
    """
    if not a.grid.same_as(b.grid):
        raise GridMismatch("responses sampled on different grids")
    w = a.omega
    if w.size < 2:
        raise GridMismatch("need at least two grid points")
    if omega_p is None:
        omega_p = math.sqrt(w[0] * w[-1]) / math.sqrt(2.0)
    diff = a.magnitude_db - b.magnitude_db
    crossings = []
    sign = np.where(np.abs(diff) <= tol_db, 0, np.sign(diff))
    last_i = None
    for i, s in enumerate(sign):
        if s == 0:
            continue
        if last_i is not None and s != sign[last_i]:
            d0, d1 = diff[last_i], diff[i]
            if a.grid.spacing == "log":
                x0, x1 = math.log(w[last_i]), math.log(w[i])
                crossings.append(math.exp(x0 + (x1 - x0) * d0 / (d0 - d1)))
            else:
                crossings.append(w[last_i] + (w[i] - w[last_i]) * d0 / (d0 - d1))
        last_i = i
    return Comparison(
        grid=a.grid,
        diff_db=diff,
        slope_a=rolloff_slope(a, omega_p, 2 * omega_p),
        slope_b=rolloff_slope(b, omega_p, 2 * omega_p),
        crossovers=tuple(crossings),
    )
