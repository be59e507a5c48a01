"""Butterworth order, cutoff and pole placement."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

from .core import ComplexFrequency, Family, FilterRealization, FilterSpecification

CEIL_GUARD = 1e-9

Corner = Literal["passband", "stopband"]


def guarded_ceil(x: float) -> int:
    """Ceiling that ignores floating-point dust within 1e-9 of an integer."""
    nearest = round(x)
    if abs(x - nearest) <= CEIL_GUARD:
        return int(nearest)
    return math.ceil(x)


def _excess(att_db: float) -> float:
    return 10.0 ** (att_db / 10.0) - 1.0


@dataclass(frozen=True)
class ButterworthGeometry:
    """Angular layout of the 2n poles on the Butterworth circle (degrees)."""

    order: int

    @property
    def total_poles(self) -> int:
        return 2 * self.order

    @property
    def theta(self) -> float:
        return 360.0 / self.total_poles

    @property
    def first_pole_offset(self) -> float:
        return self.theta / 2.0 if self.order % 2 == 0 else 0.0

    def all_angles(self) -> list[float]:
        return [self.first_pole_offset + i * self.theta for i in range(self.total_poles)]

    @property
    def valid_angles(self) -> list[float]:
        # Angles are multiples of theta/2 so the open-interval test is exact.
        return [a for a in self.all_angles() if 90.0 < a < 270.0]


def minimal_order(spec: FilterSpecification) -> int:
    ratio = _excess(spec.As) / _excess(spec.Ap)
    n = math.log10(ratio) / (2.0 * math.log10(spec.omega_s / spec.omega_p))
    return max(1, guarded_ceil(n))


def cutoff_frequency(
    spec: FilterSpecification, n: int, corner: Corner = "passband"
) -> float:
    """Half-power frequency of the order-n design.

    ``corner="passband"`` meets the passband loss exactly; ``"stopband"``
    meets the stopband loss exactly instead.
    """
    if corner == "passband":
        return spec.omega_p / _excess(spec.Ap) ** (1.0 / (2 * n))
    if corner == "stopband":
        return spec.omega_s / _excess(spec.As) ** (1.0 / (2 * n))
    raise ValueError(f"unknown corner {corner!r}")


def valid_poles(n: int, omega_c: float) -> list[ComplexFrequency]:
    if n < 1:
        raise ValueError(f"order must be >= 1, got {n}")
    if not omega_c > 0:
        raise ValueError(f"cutoff must be positive, got {omega_c}")
    angles = ButterworthGeometry(n).valid_angles
    poles: list[ComplexFrequency | None] = [None] * n
    for i in range(n // 2):
        # Mirror the upper half so the set is conjugate-closed bit for bit.
        p = ComplexFrequency.polar(omega_c, angles[i])
        poles[i] = p
        poles[n - 1 - i] = p.conjugate()
    if n % 2:
        poles[n // 2] = ComplexFrequency(-omega_c, 0.0)
    return poles


def design(spec: FilterSpecification, corner: Corner = "passband") -> FilterRealization:
    n = minimal_order(spec)
    wc = cutoff_frequency(spec, n, corner)
    return FilterRealization(
        family=Family.BUTTERWORTH,
        order=n,
        char_freq=wc,
        poles=tuple(valid_poles(n, wc)),
    )
