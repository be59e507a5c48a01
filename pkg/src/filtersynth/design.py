"""Family dispatch and human-readable design notes."""

from __future__ import annotations

from . import butterworth, chebyshev
from .core import Family, FilterRealization, FilterSpecification, TransferFunction, evaluate, magnitude_db


def design(
    spec: FilterSpecification,
    family: Family | str = Family.BUTTERWORTH,
    corner: butterworth.Corner = "passband",
) -> FilterRealization:
    family = Family(family)
    if family is Family.BUTTERWORTH:
        return butterworth.design(spec, corner)
    if corner != "passband":
        raise ValueError("Chebyshev-I designs always place the ripple edge at omega_p")
    return chebyshev.design(spec)


def design_notes(spec: FilterSpecification, realization: FilterRealization, tf: TransferFunction) -> list[str]:
    """Corner losses and gain conventions worth surfacing next to a design."""
    gp, gs = magnitude_db(evaluate(tf, [spec.omega_p, spec.omega_s]))
    peak = 0.0
    if realization.family is Family.CHEBYSHEV_I and realization.order % 2 == 0:
        # Even-order equiripple peaks at +Ap above the unity DC gain.
        peak = spec.Ap
    notes = [
        f"loss at omega_p: {peak - gp:.6f} dB (limit {spec.Ap:g} dB)",
        f"loss at omega_s: {peak - gs:.6f} dB (required {spec.As:g} dB, margin {peak - gs - spec.As:.6f} dB)",
    ]
    if peak:
        notes.append(f"DC gain is unity; passband ripple peaks reach +{spec.Ap:g} dB")
    return notes
