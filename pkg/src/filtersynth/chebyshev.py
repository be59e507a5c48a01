"""Chebyshev type-I design by scaling Butterworth poles onto an ellipse.

The Butterworth poles for order n at radius omega_p have their real parts
multiplied by tanh(k) and are then scaled as a whole by cosh(k), with
k = asinh(1/eps) / n. Net effect: ``re * sinh(k) + j * im * cosh(k)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import butterworth
from .core import ComplexFrequency, Family, FilterRealization, FilterSpecification


def ripple_epsilon(Ap: float) -> float:
    if not Ap > 0:
        raise ValueError(f"Ap must be positive, got {Ap}")
    return math.sqrt(10.0 ** (Ap / 10.0) - 1.0)


def chebyshev_polynomial(n: int, x):
    """C_n(x): cos branch on |x| <= 1, cosh branch outside."""
    x = np.asarray(x, dtype=float)
    ax = np.abs(x)
    inside = ax <= 1.0
    out = np.empty_like(x)
    out[inside] = np.cos(n * np.arccos(x[inside]))
    big = ~inside
    # C_n(-x) = (-1)^n C_n(x)
    sign = np.where(x[big] < 0, (-1.0) ** n, 1.0)
    out[big] = sign * np.cosh(n * np.arccosh(ax[big]))
    return out[()] if out.ndim == 0 else out


def minimal_order(spec: FilterSpecification) -> int:
    eps = ripple_epsilon(spec.Ap)
    cn = math.sqrt(10.0 ** (spec.As / 10.0) - 1.0) / eps
    n = math.acosh(max(cn, 1.0)) / math.acosh(spec.omega_s / spec.omega_p)
    return max(1, butterworth.guarded_ceil(n))


@dataclass(frozen=True)
class ChebyshevTransform:
    epsilon: float
    k: float
    tanh_k: float
    cosh_k: float
    sinh_k: float

    def __post_init__(self) -> None:
        if not (self.epsilon > 0 and math.isfinite(self.epsilon)):
            raise ValueError(f"epsilon must be positive and finite, got {self.epsilon}")
        if not self.k > 0:
            raise ValueError(f"degenerate transform: k={self.k} (poles would sit on the jw axis)")


def transform(n: int, epsilon: float) -> ChebyshevTransform:
    if n < 1:
        raise ValueError(f"order must be >= 1, got {n}")
    if not (epsilon > 0 and math.isfinite(epsilon)):
        raise ValueError(f"epsilon must be positive and finite, got {epsilon}")
    k = math.asinh(1.0 / epsilon) / n
    return ChebyshevTransform(epsilon, k, math.tanh(k), math.cosh(k), math.sinh(k))


def chebyshev_poles(n: int, epsilon: float, omega_p: float) -> list[ComplexFrequency]:
    tr = transform(n, epsilon)
    poles = []
    for p in butterworth.valid_poles(n, omega_p):
        normalized_re = p.re * tr.tanh_k
        poles.append(ComplexFrequency(normalized_re * tr.cosh_k, p.im * tr.cosh_k))
    if any(not p.re < 0 for p in poles):
        raise ValueError("transformed poles left the open left half-plane")
    return poles


def design(spec: FilterSpecification) -> FilterRealization:
    n = minimal_order(spec)
    eps = ripple_epsilon(spec.Ap)
    return FilterRealization(
        family=Family.CHEBYSHEV_I,
        order=n,
        char_freq=spec.omega_p,
        poles=tuple(chebyshev_poles(n, eps, spec.omega_p)),
        epsilon=eps,
    )
