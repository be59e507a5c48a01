"""Command-line interface.

Exit codes: 0 success, 2 bad specification or usage, 3 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path
from typing import Any, Sequence

from . import export
from .core import Family, SpecError, evaluate, stages_from_poles, validate_spec
from .design import design, design_notes
from .response import (
    FrequencyGrid,
    ResolutionError,
    compare,
    harmonic_amplitudes,
    sample_response,
    simulate_square_wave,
)
from .sallen_key import realization_error, round_to_series, synth_cascade

EXIT_OK, EXIT_SPEC, EXIT_IO = 0, 2, 3

# Hard defaults; a --config file overrides these and explicit flags override both.
DEFAULTS: dict[str, Any] = {
    "family": "butterworth",
    "corner": "passband",
    "hz": False,
    "grid_lo": 1.0,
    "grid_hi": 1e4,
    "points": 512,
    "fin_hz": 15.91,
    "amp": 1.0,
    "duration": None,
    "dt": None,
    "r_ohms": 10e3,
    "c_first": 0.1e-6,
    "series": "none",
    "analysis": "ac",
    "f_lo": 0.1,
    "f_hi": 1000.0,
}
FLOAT_KEYS = {"ap", "wp", "as_", "ws", "grid_lo", "grid_hi", "fin_hz", "amp", "duration", "dt",
              "r_ohms", "c_first", "f_lo", "f_hi"}
REQUIRED = ("ap", "wp", "as_", "ws")


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_SPEC):
        super().__init__(message)
        self.code = code


def read_config(path: str) -> dict[str, Any]:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CliError(f"cannot read config {path}: {exc}", EXIT_IO) from exc
    cfg: dict[str, Any] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line or line.startswith("["):
            continue
        if "=" not in line:
            raise CliError(f"{path}:{lineno}: expected key = value")
        key, value = (part.strip() for part in line.split("=", 1))
        key = key.replace("-", "_")
        if key == "as":
            key = "as_"
        value = value.strip("\"'")
        if key in FLOAT_KEYS:
            try:
                cfg[key] = float(value)
            except ValueError as exc:
                raise CliError(f"{path}:{lineno}: {key} is not a number") from exc
        elif key == "points":
            cfg[key] = int(value)
        elif key == "hz":
            cfg[key] = value.lower() in ("1", "true", "yes", "on")
        else:
            cfg[key] = value
    return cfg


def _spec_options() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("specification")
    g.add_argument("--family", choices=[f.value for f in Family])
    g.add_argument("--ap", type=float, help="max passband loss, dB (positive)")
    g.add_argument("--wp", type=float, help="passband edge (rad/s, or Hz with --hz)")
    g.add_argument("--as", dest="as_", type=float, help="min stopband loss, dB (positive)")
    g.add_argument("--ws", type=float, help="stopband edge (rad/s, or Hz with --hz)")
    g.add_argument("--corner", choices=["passband", "stopband"],
                   help="Butterworth corner met with equality")
    g.add_argument("--hz", action="store_const", const=True,
                   help="read --wp/--ws/--grid-lo/--grid-hi as Hz")
    g.add_argument("--config", help="key = value file mirroring the flags")
    g.add_argument("-o", "--output", help="write the main output here instead of stdout")
    return p


def _grid_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--grid-lo", type=float)
    p.add_argument("--grid-hi", type=float)
    p.add_argument("--points", type=int)


def _synth_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--r-ohms", type=float, help="resistor for every Sallen-Key stage")
    p.add_argument("--c-first", type=float, help="capacitor for the first-order stage, F")
    p.add_argument("--series", choices=["e24", "e96", "none"])


def build_parser() -> argparse.ArgumentParser:
    common = _spec_options()
    parser = argparse.ArgumentParser(prog="filtersynth", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("design", parents=[common], help="order, cutoff, poles and stages")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="as_json", action="store_true")
    fmt.add_argument("--text", dest="as_json", action="store_false")
    p.add_argument("--pole-zero", action="store_true", help="emit only the pole-zero document")

    p = sub.add_parser("respond", parents=[common], help="frequency response CSV/SVG")
    _grid_options(p)
    p.add_argument("--svg", help="also write a Bode magnitude plot")
    p.add_argument("--relative", action="store_true", help="dB relative to the passband maximum")

    p = sub.add_parser("simulate", parents=[common], help="square-wave transient CSV")
    p.add_argument("--fin-hz", type=float)
    p.add_argument("--amp", type=float)
    p.add_argument("--duration", type=float)
    p.add_argument("--dt", type=float)

    p = sub.add_parser("synth", parents=[common], help="Sallen-Key component values")
    _synth_options(p)
    _grid_options(p)
    p.add_argument("--json", dest="as_json", action="store_true")

    p = sub.add_parser("netlist", parents=[common], help="SPICE netlist of the synthesized cascade")
    _synth_options(p)
    p.add_argument("--analysis", choices=["ac", "tran"])
    p.add_argument("--f-lo", type=float, help="AC sweep start, Hz")
    p.add_argument("--f-hi", type=float, help="AC sweep stop, Hz")
    p.add_argument("--fin-hz", type=float)
    p.add_argument("--amp", type=float)
    p.add_argument("--duration", type=float)

    p = sub.add_parser("compare", parents=[common], help="Butterworth vs Chebyshev-I on one spec")
    _grid_options(p)
    p.add_argument("--csv", help="write the comparison table here")
    p.add_argument("--svg", help="write the overlay plot here")
    return parser


def _resolve(args: argparse.Namespace) -> argparse.Namespace:
    cfg = read_config(args.config) if args.config else {}
    for key, value in cfg.items():
        if getattr(args, key, None) is None:
            setattr(args, key, value)
    for key, value in DEFAULTS.items():
        if getattr(args, key, None) is None:
            setattr(args, key, value)
    missing = [k for k in REQUIRED if getattr(args, k, None) is None]
    if missing:
        flags = ", ".join("--" + k.rstrip("_") for k in missing)
        raise CliError(f"missing required specification: {flags}")
    if args.hz:
        for key in ("wp", "ws", "grid_lo", "grid_hi"):
            setattr(args, key, 2 * math.pi * getattr(args, key))
    return args


def _write(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise CliError(f"cannot write {path}: {exc}", EXIT_IO) from exc


def _grid(args) -> FrequencyGrid:
    return FrequencyGrid.log(args.grid_lo, args.grid_hi, args.points)


def _build(args, family=None):
    spec = validate_spec(args.ap, args.wp, args.as_, args.ws)
    family = Family(family or args.family)
    corner = args.corner if family is Family.BUTTERWORTH else "passband"
    realization = design(spec, family, corner)
    tf = stages_from_poles(realization)
    return spec, realization, tf


def _cmd_design(args) -> None:
    spec, realization, tf = _build(args)
    if args.pole_zero:
        _write(export.emit_pole_zero_json(realization), args.output)
        return
    report = export.DesignReport(spec, realization, tf, synth_cascade(tf), design_notes(spec, realization, tf))
    _write(report.to_json() if args.as_json else report.to_text(), args.output)


def _cmd_respond(args) -> None:
    spec, realization, tf = _build(args)
    resp = sample_response(tf, _grid(args))
    peak = float(resp.magnitude_db.max())
    sys.stderr.write(f"passband maximum {peak:.6f} dB at DC-normalized gain\n")
    out = resp.relative_to_peak() if args.relative else resp
    _write(export.emit_response_csv(out), args.output)
    if args.svg:
        _write(export.emit_bode_svg([out], [realization.family.value]), args.svg)


def _cmd_simulate(args) -> None:
    _, _, tf = _build(args)
    trace = simulate_square_wave(tf, args.fin_hz, args.amp, args.duration, args.dt)
    _write(export.emit_transient_csv(trace.t, trace.samples_in, trace.samples_out), args.output)
    amps = harmonic_amplitudes(trace, args.fin_hz)
    w = 2 * math.pi * args.fin_hz
    for h, a in amps.items():
        expected = 4 * args.amp / (math.pi * h) * abs(evaluate(tf, h * w))
        sys.stderr.write(f"harmonic {h}: measured {a:.6g} V, expected {expected:.6g} V\n")


def _synth(args, tf):
    exact = synth_cascade(tf, args.r_ohms, args.c_first)
    return exact, round_to_series(exact, args.series)


def _cmd_synth(args) -> None:
    spec, realization, tf = _build(args)
    _, cascade = _synth(args, tf)
    err = realization_error(tf, cascade.realized_tf, _grid(args))
    if args.as_json:
        report = export.DesignReport(spec, realization, tf, cascade, design_notes(spec, realization, tf))
        doc = report.to_dict()
        doc["realization_error"] = {
            "max_db": export.num(err.max_db),
            "rms_db": export.num(err.rms_db),
            "pole_displacement": [export.num(d) for d in err.pole_displacement],
        }
        _write(json.dumps(doc, indent=2) + "\n", args.output)
        return
    lines = [f"{'stage':<6}{'type':<12}{'R (ohm)':>14}{'C1 / C (F)':>16}{'C2 (F)':>16}"]
    for k, st in enumerate(cascade.stages, 1):
        if hasattr(st, "C1"):
            lines.append(f"{k:<6}{'sallen-key':<12}{export.fmt(st.R):>14}{export.fmt(st.C1):>16}{export.fmt(st.C2):>16}")
        else:
            lines.append(f"{k:<6}{'rc':<12}{export.fmt(st.R):>14}{export.fmt(st.C):>16}{'':>16}")
    lines.append(f"series: {args.series}")
    lines.append(f"max deviation {err.max_db:.6g} dB, rms {err.rms_db:.6g} dB "
                 f"over [{args.grid_lo:g}, {args.grid_hi:g}] rad/s")
    lines.append("pole displacement: " + ", ".join(f"{d:.3g}" for d in err.pole_displacement))
    _write("\n".join(lines) + "\n", args.output)


def _cmd_netlist(args) -> None:
    _, realization, tf = _build(args)
    _, cascade = _synth(args, tf)
    if args.analysis == "ac":
        analysis: export.Analysis = export.AC(args.f_lo, args.f_hi)
    else:
        duration = args.duration or 20.0 / args.fin_hz
        analysis = export.Tran(args.fin_hz, duration, args.amp)
    title = f"{realization.family.value} order {realization.order} Sallen-Key low-pass"
    _write(export.emit_netlist(cascade, analysis, title), args.output)


def _cmd_compare(args) -> None:
    spec, bw, bw_tf = _build(args, Family.BUTTERWORTH)
    _, ch, ch_tf = _build(args, Family.CHEBYSHEV_I)
    grid = _grid(args)
    a, b = sample_response(bw_tf, grid), sample_response(ch_tf, grid)
    labels = [Family.BUTTERWORTH.value, Family.CHEBYSHEV_I.value]
    lines = [
        f"order: {labels[0]} {bw.order}, {labels[1]} {ch.order}",
    ]
    if ch.order < bw.order:
        lines.append(f"{labels[1]} meets the same specification with {bw.order - ch.order} fewer pole(s)")
    if grid.points[0] <= spec.omega_p and 2 * spec.omega_p <= grid.points[-1]:
        cmp = compare(a, b, spec.omega_p)
        lines.append(
            f"roll-off over [{spec.omega_p:g}, {2 * spec.omega_p:g}] rad/s: "
            f"{labels[0]} {cmp.slope_a:.4f} dB/oct, {labels[1]} {cmp.slope_b:.4f} dB/oct"
        )
        steeper = labels[1] if cmp.slope_b < cmp.slope_a else labels[0]
        lines.append(f"steeper roll-off: {steeper}")
        cross = ", ".join(f"{c:.6g}" for c in cmp.crossovers) or "none"
        lines.append(f"crossover frequencies (rad/s): {cross}")
    _write("\n".join(lines) + "\n", args.output)
    if args.csv:
        _write(export.emit_comparison_csv(a, b, labels), args.csv)
    if args.svg:
        _write(export.emit_bode_svg([a, b], labels), args.svg)


COMMANDS = {
    "design": _cmd_design,
    "respond": _cmd_respond,
    "simulate": _cmd_simulate,
    "synth": _cmd_synth,
    "netlist": _cmd_netlist,
    "compare": _cmd_compare,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _resolve(args)
        COMMANDS[args.command](args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (SpecError, ResolutionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SPEC
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
