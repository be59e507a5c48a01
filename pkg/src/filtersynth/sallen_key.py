"""Equal-R, unity-gain Sallen-Key synthesis of a cascade.

A unity-gain Sallen-Key low-pass with both resistors equal to R, C1 in
the feedback path and C2 to ground has denominator

    s^2 + (2 / (R C1)) s + 1 / (R^2 C1 C2)

so a section s^2 + a s + b needs C1 = 2 / (a R) and C2 = a / (2 R b),
giving C1 / C2 = 4 Q^2. First-order sections are a plain RC with
R = 1 / (w0 C).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Literal, Union

import numpy as np

from . import eseries
from .core import FirstOrder, SecondOrder, TransferFunction, evaluate
from .response import FrequencyGrid

DEFAULT_R = 10e3
DEFAULT_C_FIRST = 0.1e-6

Series = Literal["e24", "e96", "none"]


class StageMismatch(ValueError):
    pass


@dataclass(frozen=True)
class FirstOrderRC:
    R: float
    C: float

    def __post_init__(self) -> None:
        if not (self.R > 0 and self.C > 0):
            raise ValueError(f"component values must be positive: {self}")

    def stage(self) -> FirstOrder:
        return FirstOrder(1.0 / (self.R * self.C))


@dataclass(frozen=True)
class SecondOrderSK:
    R: float
    C1: float
    C2: float

    def __post_init__(self) -> None:
        if not (self.R > 0 and self.C1 > 0 and self.C2 > 0):
            raise ValueError(f"component values must be positive: {self}")

    def stage(self) -> SecondOrder:
        return SecondOrder(2.0 / (self.R * self.C1), 1.0 / (self.R**2 * self.C1 * self.C2))

    @property
    def q(self) -> float:
        return 0.5 * math.sqrt(self.C1 / self.C2)


SallenKeyStage = Union[FirstOrderRC, SecondOrderSK]


@dataclass(frozen=True)
class SallenKeyCascade:
    stages: tuple[SallenKeyStage, ...]
    gain: float = 1.0

    @property
    def realized_tf(self) -> TransferFunction:
        return TransferFunction(self.gain, tuple(st.stage() for st in self.stages))


def synth_first_order(w0: float, C_choice: float = DEFAULT_C_FIRST) -> FirstOrderRC:
    if not (w0 > 0 and C_choice > 0):
        raise ValueError("w0 and C must be positive")
    return FirstOrderRC(R=1.0 / (w0 * C_choice), C=C_choice)


def synth_second_order(a: float, b: float, R_choice: float = DEFAULT_R) -> SecondOrderSK:
    if not (a > 0 and b > 0 and R_choice > 0):
        raise ValueError("a, b and R must be positive")
    return SecondOrderSK(R=R_choice, C1=2.0 / (a * R_choice), C2=a / (2.0 * R_choice * b))


def synth_cascade(
    tf: TransferFunction,
    R_choice: float = DEFAULT_R,
    C_choice_first_order: float = DEFAULT_C_FIRST,
) -> SallenKeyCascade:
    stages: list[SallenKeyStage] = []
    for st in tf.stages:
        if isinstance(st, FirstOrder):
            stages.append(synth_first_order(st.w0, C_choice_first_order))
        else:
            stages.append(synth_second_order(st.a, st.b, R_choice))
    return SallenKeyCascade(tuple(stages), tf.gain)


def round_to_series(cascade: SallenKeyCascade, series: Series | None) -> SallenKeyCascade:
    if series is None or series == "none":
        return cascade

    def snap(v: float) -> float:
        return eseries.nearest(v, series)

    rounded: list[SallenKeyStage] = []
    for st in cascade.stages:
        if isinstance(st, FirstOrderRC):
            rounded.append(FirstOrderRC(snap(st.R), snap(st.C)))
        else:
            rounded.append(SecondOrderSK(snap(st.R), snap(st.C1), snap(st.C2)))
    return replace(cascade, stages=tuple(rounded))


@dataclass(frozen=True)
class RealizationError:
    max_db: float
    rms_db: float
    pole_displacement: tuple[float, ...]  # per stage, relative


def realization_error(
    original: TransferFunction, realized: TransferFunction, grid: FrequencyGrid
) -> RealizationError:
    if len(original.stages) != len(realized.stages) or any(
        type(a) is not type(b) for a, b in zip(original.stages, realized.stages)
    ):
        raise StageMismatch("transfer functions have different stage structure")
    if len(grid):
        dev = 20.0 * np.log10(
            np.abs(evaluate(realized, grid.points)) / np.abs(evaluate(original, grid.points))
        )
        max_db = float(np.max(np.abs(dev)))
        rms_db = float(np.sqrt(np.mean(dev**2)))
    else:
        max_db = rms_db = 0.0
    disp = []
    for a, b in zip(original.stages, realized.stages):
        pa, pb = a.poles()[0], b.poles()[0]
        disp.append(abs(pb - pa) / abs(pa))
    return RealizationError(max_db, rms_db, tuple(disp))
