"""Shared domain types for analog all-pole low-pass design.

Attenuations are stored as positive dB magnitudes (a passband gain of
-0.5 dB is ``Ap = 0.5``). Angles are degrees at the API boundary and
radians internally.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

import numpy as np

PAIRING_RTOL = 1e-9


class SpecError(ValueError):
    """Base class for invalid filter specifications."""


class NonPositiveFrequency(SpecError):
    pass


class EdgesOutOfOrder(SpecError):
    pass


class AttenuationsOutOfOrder(SpecError):
    pass


class PairingError(ValueError):
    """Poles are not closed under complex conjugation."""


@dataclass(frozen=True)
class FilterSpecification:
    """Four-corner low-pass attenuation spec.

    ``Ap`` is the maximum loss (dB) allowed up to ``omega_p`` and ``As``
    the minimum loss (dB) required from ``omega_s`` on. Frequencies are
    in rad/s.
    """

    Ap: float
    omega_p: float
    As: float
    omega_s: float

    def __post_init__(self) -> None:
        for name in ("Ap", "omega_p", "As", "omega_s"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise SpecError(f"{name} must be finite, got {value!r}")
        if self.omega_p <= 0 or self.omega_s <= 0:
            raise NonPositiveFrequency(
                f"band edges must be positive (omega_p={self.omega_p}, omega_s={self.omega_s})"
            )
        if self.omega_s <= self.omega_p:
            raise EdgesOutOfOrder(
                f"stopband edge {self.omega_s} must exceed passband edge {self.omega_p}"
            )
        if self.Ap <= 0 or self.As <= self.Ap:
            raise AttenuationsOutOfOrder(
                f"need 0 < Ap < As, got Ap={self.Ap}, As={self.As}"
            )


def validate_spec(Ap: float, omega_p: float, As: float, omega_s: float) -> FilterSpecification:
    return FilterSpecification(float(Ap), float(omega_p), float(As), float(omega_s))


@dataclass(frozen=True)
class ComplexFrequency:
    """A point in the s-plane, rad/s."""

    re: float
    im: float

    def __complex__(self) -> complex:
        return complex(self.re, self.im)

    @classmethod
    def from_complex(cls, z: complex) -> "ComplexFrequency":
        return cls(float(z.real), float(z.imag))

    @classmethod
    def polar(cls, radius: float, angle_deg: float) -> "ComplexFrequency":
        alpha = math.radians(angle_deg)
        return cls(radius * math.cos(alpha), radius * math.sin(alpha))

    @property
    def magnitude(self) -> float:
        return math.hypot(self.re, self.im)

    @property
    def angle_deg(self) -> float:
        """Angle from the positive real axis in [0, 360)."""
        return math.degrees(math.atan2(self.im, self.re)) % 360.0

    def conjugate(self) -> "ComplexFrequency":
        return ComplexFrequency(self.re, -self.im)


class Family(str, enum.Enum):
    BUTTERWORTH = "butterworth"
    CHEBYSHEV_I = "cheby1"


def _is_real(p: ComplexFrequency) -> bool:
    return abs(p.im) <= PAIRING_RTOL * p.magnitude


def pair_poles(
    poles: Iterable[ComplexFrequency],
) -> tuple[list[tuple[ComplexFrequency, ComplexFrequency]], list[ComplexFrequency]]:
    """Split poles into (upper, lower) conjugate pairs and real poles.

    Raises PairingError when a complex pole has no partner within
    ``1e-9 * |pole|``.
    """
    reals: list[ComplexFrequency] = []
    upper: list[ComplexFrequency] = []
    lower: list[ComplexFrequency] = []
    for p in poles:
        if _is_real(p):
            reals.append(p)
        elif p.im > 0:
            upper.append(p)
        else:
            lower.append(p)
    pairs = []
    remaining = list(lower)
    for p in upper:
        match = None
        for i, q in enumerate(remaining):
            tol = PAIRING_RTOL * max(p.magnitude, q.magnitude)
            if abs(complex(p) - complex(q.conjugate())) <= tol:
                match = i
                break
        if match is None:
            raise PairingError(f"pole {complex(p)} has no conjugate partner")
        pairs.append((p, remaining.pop(match)))
    if remaining:
        raise PairingError(f"unpaired poles: {[complex(q) for q in remaining]}")
    return pairs, reals


@dataclass(frozen=True)
class FilterRealization:
    family: Family
    order: int
    char_freq: float
    poles: tuple[ComplexFrequency, ...]
    epsilon: float | None = None

    def __post_init__(self) -> None:
        if self.order < 1:
            raise ValueError(f"order must be >= 1, got {self.order}")
        if len(self.poles) != self.order:
            raise ValueError(f"{len(self.poles)} poles for order {self.order}")
        if any(not (p.re < 0) for p in self.poles):
            raise ValueError("all poles must lie strictly in the left half-plane")
        _, reals = pair_poles(self.poles)
        if len(reals) != self.order % 2:
            raise ValueError(
                f"order {self.order} needs {self.order % 2} real pole(s), got {len(reals)}"
            )
        if (self.family is Family.CHEBYSHEV_I) != (self.epsilon is not None):
            raise ValueError("epsilon is required for Chebyshev-I and only for it")

    def pole_array(self) -> np.ndarray:
        return np.array([complex(p) for p in self.poles])


@dataclass(frozen=True)
class FirstOrder:
    """w0 / (s + w0)."""

    w0: float

    def __post_init__(self) -> None:
        if not self.w0 > 0:
            raise ValueError(f"w0 must be positive, got {self.w0}")

    degree = 1

    @property
    def q(self) -> float:
        return 0.5

    @property
    def constant(self) -> float:
        return self.w0

    def denominator(self) -> np.ndarray:
        return np.array([1.0, self.w0])

    def poles(self) -> tuple[complex, ...]:
        return (complex(-self.w0, 0.0),)

    def __call__(self, s):
        return self.w0 / (s + self.w0)


@dataclass(frozen=True)
class SecondOrder:
    """b / (s^2 + a s + b)."""

    a: float
    b: float

    def __post_init__(self) -> None:
        if not (self.a > 0 and self.b > 0):
            raise ValueError(f"need a > 0 and b > 0, got a={self.a}, b={self.b}")

    degree = 2

    @property
    def q(self) -> float:
        return math.sqrt(self.b) / self.a

    @property
    def w0(self) -> float:
        return math.sqrt(self.b)

    @property
    def constant(self) -> float:
        return self.b

    def denominator(self) -> np.ndarray:
        return np.array([1.0, self.a, self.b])

    def poles(self) -> tuple[complex, ...]:
        half = -self.a / 2.0
        disc = self.b - half * half
        if disc >= 0:
            w = math.sqrt(disc)
            return (complex(half, w), complex(half, -w))
        r = math.sqrt(-disc)
        return (complex(half + r, 0.0), complex(half - r, 0.0))

    def __call__(self, s):
        return self.b / (s * s + self.a * s + self.b)


CascadeStage = Union[FirstOrder, SecondOrder]


@dataclass(frozen=True)
class TransferFunction:
    """gain * product of unity-DC-gain stages."""

    gain: float
    stages: tuple[CascadeStage, ...] = field(default_factory=tuple)

    @property
    def order(self) -> int:
        return sum(st.degree for st in self.stages)

    @property
    def numerator_constant(self) -> float:
        """Constant numerator of the expanded all-pole form."""
        return self.gain * math.prod(st.constant for st in self.stages)

    def denominator(self) -> np.ndarray:
        """Expanded monic denominator, highest power first."""
        den = np.array([1.0])
        for st in self.stages:
            den = np.polymul(den, st.denominator())
        return den

    def poles(self) -> list[complex]:
        return [p for st in self.stages for p in st.poles()]


def stages_from_poles(realization: FilterRealization) -> TransferFunction:
    """Group a realization's poles into first/second-order sections.

    Each conjugate pair ``re +/- j im`` becomes ``SecondOrder(a=-2 re,
    b=re^2+im^2)`` and a real pole ``-p`` becomes ``FirstOrder(p)``.
    Sections are sorted by ascending Q.
    """
    pairs, reals = pair_poles(realization.poles)
    stages: list[CascadeStage] = [FirstOrder(-p.re) for p in reals]
    for p, _ in pairs:
        stages.append(SecondOrder(-2.0 * p.re, p.re * p.re + p.im * p.im))
    stages.sort(key=lambda st: st.q)
    return TransferFunction(1.0, tuple(stages))


def evaluate(tf: TransferFunction, omega):
    """H(j omega) for scalar or array ``omega`` (rad/s)."""
    s = 1j * np.asarray(omega, dtype=float)
    h = np.full(s.shape, tf.gain, dtype=complex)
    for st in tf.stages:
        h = h * st(s)
    return h[()] if h.ndim == 0 else h


def magnitude_db(h) -> np.ndarray:
    return 20.0 * np.log10(np.abs(h))


def evaluate_expanded(tf: TransferFunction, omega) -> np.ndarray:
    """H(j omega) from the expanded polynomial form; used as a cross-check."""
    s = 1j * np.asarray(omega, dtype=float)
    return tf.numerator_constant / np.polyval(tf.denominator(), s)


def sorted_poles(poles: Sequence[ComplexFrequency]) -> list[ComplexFrequency]:
    return sorted(poles, key=lambda p: (p.re, p.im))
