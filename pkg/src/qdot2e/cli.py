"""Command-line front end for reproducible tables and curves.

Output is deterministic: floats print with 12 significant digits, CSV uses a
comma separator and Unix newlines, JSON preserves key order.  Exit codes:
0 success, 2 usage error, 3 numerical diagnostic.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import entangle, estimator, ptlimit, spectra
from .errors import DiagnosticError
from .model import Dimension, FieldPoint, ModelParams, load_config
from .mosh import Orbital, cm_to_ip

EXIT_USAGE = 2
EXIT_DIAGNOSTIC = 3


def fmt(x: float) -> str:
    return f"{float(x):.12g}"


def parse_grid(text: str) -> np.ndarray:
    """Parse ``lo:hi:step`` into an inclusive grid, or a scalar into one point."""
    parts = text.split(":")
    if len(parts) == 1:
        return np.array([float(parts[0])])
    if len(parts) != 3:
        raise ValueError(f"grid must be 'lo:hi:step', got {text!r}")
    lo, hi, step = (float(p) for p in parts)
    if step <= 0 or hi < lo:
        raise ValueError(f"bad grid bounds {text!r}")
    count = int(round((hi - lo) / step))
    grid = lo + step * np.arange(count + 1)
    return grid[grid <= hi + 1e-12 * max(1.0, abs(hi))]


def _load_params(args: argparse.Namespace) -> ModelParams:
    config_path = getattr(args, "config", None) or os.environ.get("QDOT_CONFIG")
    if config_path is None and Path("dot.cfg").is_file():
        config_path = "dot.cfg"
    params = load_config(config_path) if config_path else ModelParams()

    updates = {}
    if getattr(args, "lam", None) is not None:
        updates["lam"] = args.lam
    if getattr(args, "wz_ratio", None) is not None:
        updates["wz_ratio"] = args.wz_ratio
    if getattr(args, "g_star", None) is not None:
        updates["g_star"] = args.g_star
    if getattr(args, "mass_ratio", None) is not None:
        updates["mass_ratio"] = args.mass_ratio
    if updates:
        from dataclasses import replace

        params = replace(params, **updates)
    dimension = getattr(args, "dimension", None)
    if dimension is not None:
        declared = Dimension(dimension)
        if declared is not params.dimension:
            raise argparse.ArgumentTypeError(
                f"--dimension {dimension} requires "
                + ("an infinite" if declared is Dimension.TWO_D else "a finite")
                + " --wz-ratio"
            )
    return params


def _emit(args: argparse.Namespace, text: str) -> None:
    out = getattr(args, "out", None)
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _add_common(parser: argparse.ArgumentParser, grids: bool = True) -> None:
    parser.add_argument("--lambda", dest="lam", type=float, help="scaled Coulomb strength")
    parser.add_argument(
        "--wz-ratio", type=float, help="omega_z/omega_0 ('inf' selects the planar model)"
    )
    parser.add_argument("--g-star", type=float, help="effective Lande factor")
    parser.add_argument("--mass-ratio", type=float, help="effective mass m*/m_e")
    parser.add_argument("--dimension", choices=["2d", "3d"], help="declared dimensionality check")
    parser.add_argument("--nmax", type=int, default=8, help="radial truncation")
    parser.add_argument("--nzmax", type=int, default=6, help="vertical truncation (even)")
    parser.add_argument("--config", help="key = value parameter file")
    parser.add_argument("--out", help="write output to a file instead of stdout")


def cmd_spectrum(args: argparse.Namespace) -> int:
    params = _load_params(args)
    rows = ["wl_ratio,m,S,M_S,E_total"]
    m_values = [args.m] if args.m is not None else list(range(args.m_max + 1))
    for wl in parse_grid(args.wl):
        field = FieldPoint(float(wl))
        for m in m_values:
            energy = spectra.lowest_total_energy(
                m, params, field, nmax=args.nmax, nzmax=args.nzmax
            )
            s, m_s = spectra.lowest_state_labels(m)
            rows.append(f"{fmt(wl)},{m},{s},{m_s},{fmt(energy)}")
    _emit(args, "\n".join(rows) + "\n")
    return 0


def cmd_ground_state(args: argparse.Namespace) -> int:
    params = _load_params(args)
    segments = spectra.ground_state_scan(
        parse_grid(args.wl), args.m_max, params, nmax=args.nmax, nzmax=args.nzmax
    )
    rows = ["wl_lo,wl_hi,m,S,M_S"]
    for seg in segments:
        rows.append(f"{fmt(seg.wl_lo)},{fmt(seg.wl_hi)},{seg.m},{seg.s},{seg.m_s}")
    _emit(args, "\n".join(rows) + "\n")
    return 0


def cmd_entangle(args: argparse.Namespace) -> int:
    params = _load_params(args)
    report = entangle.lowest_state_report(
        params,
        FieldPoint(args.wl),
        args.m,
        nmax=args.nmax,
        nzmax=args.nzmax,
        method=entangle.TraceMethod(args.method),
    )
    payload = {
        "m": report.m,
        "S": report.s,
        "M_S": report.m_s,
        "trace_orb": float(fmt(report.trace_orb)),
        "trace_spin": report.trace_spin,
        "measure": float(fmt(report.measure)),
        "method": report.method.value,
        "nmax": report.nmax,
        "nzmax": report.nzmax,
    }
    _emit(args, json.dumps(payload, indent=2) + "\n")
    return 0


def cmd_scan_entangle(args: argparse.Namespace) -> int:
    params = _load_params(args)
    grid = parse_grid(args.wl)
    segments = spectra.ground_state_scan(
        grid, args.m_max, params, nmax=args.nmax, nzmax=args.nzmax
    )
    rows = ["wl_ratio,m,S,M_S,measure"]
    for wl in grid:
        segment = next(
            (s for s in segments if s.wl_lo <= wl <= s.wl_hi), segments[-1]
        )
        report = entangle.lowest_state_report(
            params, FieldPoint(float(wl)), segment.m, nmax=args.nmax, nzmax=args.nzmax
        )
        rows.append(
            f"{fmt(wl)},{segment.m},{segment.s},{segment.m_s},{fmt(report.measure)}"
        )
    _emit(args, "\n".join(rows) + "\n")
    return 0


def cmd_pt_limit(args: argparse.Namespace) -> int:
    blocks = []
    for sign in (1, -1):
        if ptlimit.subspace_dim(args.m_total, sign) == 0:
            continue
        result = ptlimit.solve_pt(args.m_total, sign)
        blocks.append(
            {
                "sign": "+" if sign > 0 else "-",
                "dim": result.space.dim,
                "V": [[float(fmt(v)) for v in row] for row in result.v_matrix],
                "delta_e_per_lambda": [float(fmt(v)) for v in result.delta_e],
                "vectors": [
                    [float(fmt(v)) for v in result.vectors[:, k]]
                    for k in range(result.space.dim)
                ],
            }
        )
    table = [
        {
            "state": f"M={row.total_m} m_cm={row.m_cm} m={row.m_rel} sign="
            + ("+" if row.sign > 0 else "-"),
            "coefficients": [float(fmt(c)) for c in row.coefficients],
            "trace_orb": float(fmt(row.trace_orb)),
            "S": row.s,
            "M_S_options": list(row.ms_options),
            "trace_spin": [float(fmt(t)) for t in row.trace_spin],
            "measures": [float(fmt(e)) for e in row.measures],
        }
        for row in ptlimit.limit_state_table(args.m_total)
    ]
    payload = {"M": args.m_total, "blocks": blocks, "table": table}
    _emit(args, json.dumps(payload, indent=2) + "\n")
    return 0


def cmd_transform(args: argparse.Namespace) -> int:
    if (args.nzcm is None) != (args.nz is None):
        raise argparse.ArgumentTypeError("--nzcm and --nz must be given together")
    cm = Orbital(args.ncm, args.mcm, args.nzcm)
    rel = Orbital(args.n, args.m, args.nz)
    rows = ["n1,m1,nz1,n2,m2,nz2,amplitude"]
    expansion = cm_to_ip(cm, rel)
    for key in sorted(expansion, key=lambda k: (k.a, k.b)):
        a, b = key.a, key.b
        rows.append(
            f"{a.n},{a.m},{a.nz if a.nz is not None else 0},"
            f"{b.n},{b.m},{b.nz if b.nz is not None else 0},{fmt(expansion[key])}"
        )
    _emit(args, "\n".join(rows) + "\n")
    return 0


def cmd_addition_energy(args: argparse.Namespace) -> int:
    params = _load_params(args)
    curve = estimator.simulate_curve(
        parse_grid(args.grid), params, m_max=args.m_max, nmax=args.nmax, nzmax=args.nzmax
    )
    _emit(args, curve.to_csv(fmt))
    return 0


def cmd_estimate(args: argparse.Namespace) -> int:
    params = _load_params(args)
    curve = estimator.AdditionCurve.from_csv(Path(args.input).read_text(encoding="utf-8"))
    results = estimator.estimate_curve(curve, params)
    if not results:
        raise DiagnosticError("no segment long enough to differentiate")
    _emit(args, estimator.estimates_to_csv(results, fmt))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qdot2e",
        description="Two-electron quantum dot spectra, phase structure and entanglement",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="lowest level per m channel over a field grid")
    p.add_argument("--wl", required=True, help="field grid lo:hi:step or a scalar")
    p.add_argument("--m", type=int, help="single relative m (default: all up to --m-max)")
    p.add_argument("--m-max", type=int, default=5)
    _add_common(p)
    p.set_defaults(handler=cmd_spectrum)

    p = sub.add_parser("ground-state", help="(m, S) segments of the ground state")
    p.add_argument("--wl", required=True)
    p.add_argument("--m-max", type=int, default=8)
    _add_common(p)
    p.set_defaults(handler=cmd_ground_state)

    p = sub.add_parser("entangle", help="entanglement of the lowest state in channel m")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--wl", type=float, required=True)
    p.add_argument(
        "--method",
        choices=[m.value for m in entangle.TraceMethod if m is not entangle.TraceMethod.FIRST_ORDER],
        default=entangle.TraceMethod.CM_IJ.value,
    )
    _add_common(p)
    p.set_defaults(handler=cmd_entangle)

    p = sub.add_parser("scan-entangle", help="ground-state entanglement over a field grid")
    p.add_argument("--wl", required=True)
    p.add_argument("--m-max", type=int, default=8)
    _add_common(p)
    p.set_defaults(handler=cmd_scan_entangle)

    p = sub.add_parser("pt-limit", help="degenerate perturbation theory on the lowest shell")
    p.add_argument("--M", dest="m_total", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(handler=cmd_pt_limit)

    p = sub.add_parser("transform", help="CM x relative state over individual products")
    p.add_argument("--ncm", type=int, required=True)
    p.add_argument("--mcm", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--nzcm", type=int)
    p.add_argument("--nz", type=int)
    p.add_argument("--out")
    p.set_defaults(handler=cmd_transform)

    p = sub.add_parser("addition-energy", help="simulated addition-energy curve")
    p.add_argument("--grid", required=True, help="field grid lo:hi:step")
    p.add_argument("--m-max", type=int, default=8)
    _add_common(p)
    p.set_defaults(handler=cmd_addition_energy)

    p = sub.add_parser("estimate", help="entanglement estimates from an E_a table")
    p.add_argument("--input", required=True, help="CSV with header wl_ratio,E_a,m,M_S")
    _add_common(p)
    p.set_defaults(handler=cmd_estimate)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except argparse.ArgumentTypeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.handler(args)
    except argparse.ArgumentTypeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DiagnosticError as exc:
        print(f"diagnostic: {exc}", file=sys.stderr)
        return EXIT_DIAGNOSTIC


if __name__ == "__main__":
    sys.exit(main())
