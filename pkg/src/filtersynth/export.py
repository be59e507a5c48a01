"""Text emitters: design reports, SPICE netlists, CSV tables, pole-zero JSON
and SVG Bode plots. Every emitter is deterministic for identical input."""

from __future__ import annotations

import html
import json
import math
from dataclasses import dataclass, field
from typing import Any, Sequence, Union

import numpy as np

from .core import (
    ComplexFrequency,
    Family,
    FilterRealization,
    FilterSpecification,
    FirstOrder,
    TransferFunction,
    sorted_poles,
)
from .response import FrequencyResponse, GridMismatch
from .sallen_key import FirstOrderRC, SallenKeyCascade, SecondOrderSK

SIG_DIGITS = 9
OPAMP_GAIN = 1e6


class EmptyCascade(ValueError):
    pass


def fmt(x: float) -> str:
    return f"{x:.{SIG_DIGITS}g}"


def num(x: float) -> float:
    """Round to the report precision."""
    return float(fmt(x))


# -- design report -------------------------------------------------------------


def _stage_dict(st) -> dict[str, Any]:
    if isinstance(st, FirstOrder):
        return {"type": "first_order", "w0": num(st.w0)}
    return {"type": "second_order", "a": num(st.a), "b": num(st.b), "q": num(st.q)}


def _component_dict(st) -> dict[str, Any]:
    if isinstance(st, FirstOrderRC):
        return {"type": "rc", "R_ohm": num(st.R), "C_farad": num(st.C)}
    return {"type": "sallen_key", "R_ohm": num(st.R), "C1_farad": num(st.C1), "C2_farad": num(st.C2)}


@dataclass
class DesignReport:
    spec: FilterSpecification
    realization: FilterRealization
    tf: TransferFunction
    cascade: SallenKeyCascade | None = None
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict[str, Any]:
        r = self.realization
        out: dict[str, Any] = {
            "spec": {
                "Ap_db": num(self.spec.Ap),
                "omega_p": num(self.spec.omega_p),
                "As_db": num(self.spec.As),
                "omega_s": num(self.spec.omega_s),
            },
            "family": r.family.value,
            "order": r.order,
            "char_freq": num(r.char_freq),
            "epsilon": None if r.epsilon is None else num(r.epsilon),
            "poles": [[num(p.re), num(p.im)] for p in sorted_poles(r.poles)],
            "stages": [_stage_dict(st) for st in self.tf.stages],
            "numerator_constant": num(self.tf.numerator_constant),
            "components": [] if self.cascade is None else [_component_dict(st) for st in self.cascade.stages],
            "notes": list(self.notes),
        }
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def to_text(self) -> str:
        r = self.realization
        lines = [
            f"family        {r.family.value}",
            f"order         {r.order}",
            f"char_freq     {fmt(r.char_freq)} rad/s",
        ]
        if r.epsilon is not None:
            lines.append(f"epsilon       {fmt(r.epsilon)}")
        lines.append("poles")
        for p in sorted_poles(r.poles):
            sign = "+" if p.im >= 0 else "-"
            lines.append(f"  {fmt(p.re)} {sign} {fmt(abs(p.im))}j   (angle {p.angle_deg:.4f} deg)")
        lines.append("stages")
        for st in self.tf.stages:
            if isinstance(st, FirstOrder):
                lines.append(f"  w0/(s + w0)          w0={fmt(st.w0)}")
            else:
                lines.append(f"  b/(s^2 + a s + b)    a={fmt(st.a)} b={fmt(st.b)} Q={fmt(st.q)}")
        lines.append(f"numerator     {fmt(self.tf.numerator_constant)}")
        for note in self.notes:
            lines.append(f"note: {note}")
        return "\n".join(lines) + "\n"


def realization_from_report(doc: str | dict[str, Any]) -> FilterRealization:
    d = json.loads(doc) if isinstance(doc, str) else doc
    return FilterRealization(
        family=Family(d["family"]),
        order=int(d["order"]),
        char_freq=float(d["char_freq"]),
        poles=tuple(ComplexFrequency(float(re), float(im)) for re, im in d["poles"]),
        epsilon=None if d["epsilon"] is None else float(d["epsilon"]),
    )


# -- pole-zero JSON ------------------------------------------------------------


def emit_pole_zero_json(realization: FilterRealization) -> str:
    doc = {
        "family": realization.family.value,
        "order": realization.order,
        "char_freq": num(realization.char_freq),
    }
    if realization.epsilon is not None:
        doc["epsilon"] = num(realization.epsilon)
    doc["poles"] = [[num(p.re), num(p.im)] for p in sorted_poles(realization.poles)]
    doc["zeros"] = []
    return json.dumps(doc, indent=2) + "\n"


# -- CSV -----------------------------------------------------------------------


def emit_response_csv(resp: FrequencyResponse) -> str:
    rows = ["omega_rad_s,magnitude_db,phase_deg"]
    for w, m, p in zip(resp.omega, resp.magnitude_db, resp.phase_deg):
        rows.append(f"{fmt(w)},{fmt(m)},{fmt(p)}")
    return "\n".join(rows) + "\n"


def emit_comparison_csv(a: FrequencyResponse, b: FrequencyResponse, labels: Sequence[str]) -> str:
    if not a.grid.same_as(b.grid):
        raise GridMismatch("responses sampled on different grids")
    la, lb = labels
    rows = [f"omega_rad_s,{la}_db,{lb}_db,diff_db"]
    for w, x, y in zip(a.omega, a.magnitude_db, b.magnitude_db):
        rows.append(f"{fmt(w)},{fmt(x)},{fmt(y)},{fmt(x - y)}")
    return "\n".join(rows) + "\n"


def emit_transient_csv(t: np.ndarray, vin: np.ndarray, vout: np.ndarray) -> str:
    rows = ["t_s,v_in,v_out"]
    for a, b, c in zip(t, vin, vout):
        rows.append(f"{fmt(a)},{fmt(b)},{fmt(c)}")
    return "\n".join(rows) + "\n"


# -- SPICE ---------------------------------------------------------------------


@dataclass(frozen=True)
class AC:
    f_lo: float = 0.1  # Hz
    f_hi: float = 1000.0
    points_per_decade: int = 100


@dataclass(frozen=True)
class Tran:
    f_in: float  # Hz
    duration: float  # s
    amplitude: float = 1.0


Analysis = Union[AC, Tran]


def _node(stage: int, point: str) -> str:
    return f"n_{stage}_{point}"


def emit_netlist(cascade: SallenKeyCascade, analysis: Analysis, title: str = "Sallen-Key low-pass cascade") -> str:
    """ngspice-compatible netlist with ideal op-amps as high-gain VCVS followers."""
    if not cascade.stages:
        raise EmptyCascade("cannot emit a netlist for an empty cascade")
    g = fmt(OPAMP_GAIN)
    lines = [f"* {title}"]
    if isinstance(analysis, AC):
        lines.append("VIN in 0 AC 1")
    else:
        period = 1.0 / analysis.f_in
        edge = period * 1e-4
        amp = analysis.amplitude
        lines.append(
            f"VIN in 0 PULSE({fmt(-amp)} {fmt(amp)} 0 {fmt(edge)} {fmt(edge)} "
            f"{fmt(period / 2 - edge)} {fmt(period)})"
        )
    prev = "in"
    for k, st in enumerate(cascade.stages, start=1):
        a, b, out = _node(k, "a"), _node(k, "b"), _node(k, "out")
        if isinstance(st, FirstOrderRC):
            lines.append(f"* stage {k}: RC, w0={fmt(1 / (st.R * st.C))} rad/s, buffered")
            lines.append(f"R{k}_1 {prev} {a} {fmt(st.R)}")
            lines.append(f"C{k}_1 {a} 0 {fmt(st.C)}")
            lines.append(f"E{k} {out} 0 {a} {out} {g}")
        elif isinstance(st, SecondOrderSK):
            sec = st.stage()
            lines.append(f"* stage {k}: Sallen-Key, w0={fmt(sec.w0)} rad/s, Q={fmt(sec.q)}")
            lines.append(f"R{k}_1 {prev} {a} {fmt(st.R)}")
            lines.append(f"R{k}_2 {a} {b} {fmt(st.R)}")
            lines.append(f"C{k}_1 {a} {out} {fmt(st.C1)}")
            lines.append(f"C{k}_2 {b} 0 {fmt(st.C2)}")
            lines.append(f"E{k} {out} 0 {b} {out} {g}")
        else:
            raise TypeError(f"unknown stage {st!r}")
        prev = out
    lines.append(f"* output node: {prev}")
    if isinstance(analysis, AC):
        lines.append(f".ac dec {analysis.points_per_decade} {fmt(analysis.f_lo)} {fmt(analysis.f_hi)}")
    else:
        period = 1.0 / analysis.f_in
        lines.append(f".tran {fmt(period / 200)} {fmt(analysis.duration)}")
    lines.append(".end")
    return "\n".join(lines) + "\n"


# -- SVG -----------------------------------------------------------------------

_W, _H = 720, 440
_ML, _MR, _MT, _MB = 70, 20, 20, 50
_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd")
_DB_SPAN = 120.0


def emit_bode_svg(responses: Sequence[FrequencyResponse], labels: Sequence[str] | None = None) -> str:
    """Magnitude-only Bode plot on a log-frequency axis."""
    if not responses:
        raise ValueError("need at least one response")
    if any(len(r.grid) < 2 for r in responses):
        raise ValueError("responses need at least two grid points")
    base = responses[0].grid
    if any(not r.grid.same_as(base) for r in responses[1:]):
        raise GridMismatch("overlaid responses must share a grid")
    if labels is None:
        labels = [f"H{i + 1}" for i in range(len(responses))]
    w = base.points
    if w[0] <= 0:
        raise ValueError("log-frequency axis needs positive frequencies")

    x_lo, x_hi = math.log10(w[0]), math.log10(w[-1])
    top = max(float(np.max(r.magnitude_db)) for r in responses)
    bottom = min(float(np.min(r.magnitude_db)) for r in responses)
    y_hi = 10.0 * math.ceil(top / 10.0 + 1e-12)
    y_lo = max(10.0 * math.floor(bottom / 10.0), y_hi - _DB_SPAN)
    if y_hi - y_lo < 10:
        y_lo = y_hi - 10
    pw, ph = _W - _ML - _MR, _H - _MT - _MB

    def px(omega):
        return _ML + (np.log10(omega) - x_lo) / (x_hi - x_lo) * pw

    def py(db):
        return _MT + (y_hi - np.clip(db, y_lo, y_hi)) / (y_hi - y_lo) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" viewBox="0 0 {_W} {_H}">',
        f'<rect x="0" y="0" width="{_W}" height="{_H}" fill="white"/>',
        '<g stroke="#dddddd" stroke-width="1">',
    ]
    labels_svg = []
    for d in range(math.ceil(x_lo - 1e-9), math.floor(x_hi + 1e-9) + 1):
        x = float(px(10.0**d))
        out.append(f'<line x1="{x:.2f}" y1="{_MT}" x2="{x:.2f}" y2="{_MT + ph}"/>')
        labels_svg.append(
            f'<text x="{x:.2f}" y="{_MT + ph + 18}" font-size="12" text-anchor="middle">1e{d}</text>'
        )
    step = 10.0 if y_hi - y_lo <= 60 else 20.0
    level = y_hi
    while level >= y_lo - 1e-9:
        y = float(py(level))
        out.append(f'<line x1="{_ML}" y1="{y:.2f}" x2="{_ML + pw}" y2="{y:.2f}"/>')
        labels_svg.append(
            f'<text x="{_ML - 6}" y="{y + 4:.2f}" font-size="12" text-anchor="end">{level:g}</text>'
        )
        level -= step
    out.append("</g>")
    out.append(f'<rect x="{_ML}" y="{_MT}" width="{pw}" height="{ph}" fill="none" stroke="black"/>')
    out.extend(labels_svg)
    out.append(
        f'<text x="{_ML + pw / 2:.2f}" y="{_H - 8}" font-size="13" text-anchor="middle">omega (rad/s)</text>'
    )
    out.append(
        f'<text x="16" y="{_MT + ph / 2:.2f}" font-size="13" text-anchor="middle" '
        f'transform="rotate(-90 16 {_MT + ph / 2:.2f})">magnitude (dB)</text>'
    )
    for i, (resp, label) in enumerate(zip(responses, labels)):
        color = _COLORS[i % len(_COLORS)]
        xs, ys = px(w), py(resp.magnitude_db)
        pts = " ".join(f"{x:.2f},{y:.2f}" for x, y in zip(xs, ys))
        out.append(
            f'<polyline fill="none" stroke="{color}" stroke-width="1.5" data-label="{html.escape(label)}" points="{pts}"/>'
        )
        ly = _MT + 16 + 18 * i
        lx = _ML + pw - 150
        out.append(f'<line x1="{lx}" y1="{ly}" x2="{lx + 24}" y2="{ly}" stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{lx + 30}" y="{ly + 4}" font-size="12">{html.escape(label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
