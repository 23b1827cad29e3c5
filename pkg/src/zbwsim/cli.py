"""Command-line front end: quantum/classical runs, root tables, sweeps, plots.

Subcommands
    quantum    expectation-value trajectory -> CSV (t,x,y,z) or SVG orbit
    classical  spinning-particle integration -> CSV (tau,x,y,z,vx,vy,vz,S12) or SVG
    roots      characteristic-cubic roots -> JSON
    landau     relativistic Landau energy -> JSON
    compare    quantum-vs-classical shift report -> JSON or SVG bar chart
    sweep      shift tables over an epsilon list -> CSV, fanned out to workers

Exit codes: 0 success, 2 configuration error, 3 numerical failure.  Failures
print one JSON object ({"error": ..., "detail": ...}) to stderr.
"""
from __future__ import annotations

import argparse
import json
import os
import re
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import bz, svgplot
from .expectation import extract_frequency, quantum_trajectory
from .fitting import FitFailureError
from .packet import ImaginaryEnergyError, LandauLevel, landau_energy
from .symmetry import cp_check, discrepancy_report, shift_table, table_as_dict
from .units import DimensionlessParams, epsilon_from_tesla

EXIT_CONFIG = 2
EXIT_NUMERICAL = 3

# accept scientific notation like -1e-3 as a positional value, which stock
# argparse (< 3.12) would otherwise read as an unknown option
_NEGATIVE_NUMBER = re.compile(r"^-\d+$|^-\d*\.\d+$|^-\d+\.?\d*[eE][-+]?\d+$")

_NUMERICAL_ERRORS = (
    FitFailureError,
    bz.IntegrationUnstableError,
    bz.ComplexRootsError,
    ImaginaryEnergyError,
    np.linalg.LinAlgError,
)


def _add_params(p: argparse.ArgumentParser, spin_charge: bool = True) -> None:
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--epsilon", type=float, help="dimensionless field parameter (<= 0)")
    g.add_argument("--tesla", type=float, help="flux density in tesla, converted to epsilon")
    if spin_charge:
        p.add_argument("--spin", choices=("up", "down"), default="up")
        p.add_argument("--charge", choices=("electron", "positron"), default="electron")


def _params_from(args: argparse.Namespace, **extra) -> DimensionlessParams:
    eps = args.epsilon if args.epsilon is not None else epsilon_from_tesla(args.tesla)
    kw = dict(
        spin=getattr(args, "spin", "up"),
        charge=getattr(args, "charge", "electron"),
    )
    kw.update(extra)
    return DimensionlessParams(epsilon=eps, **kw)


def _write(path: str, text: str) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(text)


def _csv(header: list[str], rows) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(f"{v:.12g}" if isinstance(v, float) else str(v) for v in row))
    return "\n".join(lines) + "\n"


def _cmd_quantum(args: argparse.Namespace) -> int:
    params = _params_from(args, r0_over_lambda=args.r0, phi0=args.phi0)
    traj = quantum_trajectory(params, t_max=args.t_max, dt=args.dt)
    if args.out.endswith(".svg"):
        _write(args.out, svgplot.planar_orbit_svg(
            traj.positions[:, 0], traj.positions[:, 1],
            f"packet center orbit, epsilon={params.epsilon:g}, {params.charge} {params.spin}"))
    else:
        _write(args.out, _csv(
            ["t", "x", "y", "z"],
            ((float(t), *map(float, r)) for t, r in zip(traj.times, traj.positions)),
        ))
    if args.fit:
        fit = extract_frequency(traj)
        print(json.dumps({"omega": fit.omega, "amplitude": fit.amplitude,
                          "residual_rms": fit.residual_rms}, sort_keys=True))
    return 0


def _cmd_classical(args: argparse.Namespace) -> int:
    params = _params_from(args)
    field, e = bz.field_and_charge(params)
    traj = bz.integrate(bz.make_initial_state(params), field, e, args.tau_max, args.dt)
    if args.out.endswith(".svg"):
        _write(args.out, svgplot.trajectory_svg(
            traj.tau, traj.v[:, 1],
            f"v_x(tau), epsilon={params.epsilon:g}, spin {params.spin}", "tau", "v_x"))
    else:
        _write(args.out, _csv(
            ["tau", "x", "y", "z", "vx", "vy", "vz", "S12"],
            ((float(traj.tau[i]), *map(float, traj.x[i, 1:4]),
              *map(float, traj.v[i, 1:4]), float(traj.S[i, 1, 2]))
             for i in range(len(traj.tau))),
        ))
    return 0


def _cmd_roots(args: argparse.Namespace) -> int:
    params = _params_from(args)
    cubic = bz.characteristic_cubic(params)
    if args.method == "exact":
        roots = bz.solve_cubic_exact(cubic)
    else:
        roots = bz.perturbative_roots(params, args.method)
    payload = {
        "epsilon": params.epsilon,
        "spin": params.spin,
        "method": roots.method,
        "coefficients": {"c1": cubic.c1, "c0": cubic.c0},
        "roots": {"omega1": roots.omega1, "omega2": roots.omega2, "omega3": roots.omega3},
    }
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if args.out:
        _write(args.out, text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_landau(args: argparse.Namespace) -> int:
    level = LandauLevel(n=args.n, l=args.l, p_z=args.pz, s_z=args.sz, ceb=args.ceb)
    payload = {"n": args.n, "l": args.l, "p_z": args.pz, "s_z": args.sz,
               "ceb": args.ceb, "energy": landau_energy(level)}
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if args.out:
        _write(args.out, text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_compare(args: argparse.Namespace) -> int:
    params = _params_from(args)
    if args.out.endswith(".svg"):
        quantum = shift_table("quantum", params)
        classical = shift_table("classical_accurate", params)
        labels = [f"{c.charge[0]}-{c.spin}" for c in quantum.cells]
        _write(args.out, svgplot.shift_bars_svg(
            labels,
            [c.delta_omega for c in quantum.cells],
            [c.delta_omega for c in classical.cells],
            f"frequency shifts, epsilon={params.epsilon:g}"))
        return 0
    report = discrepancy_report(params, include_trajectories=args.fit)
    _write(args.out, json.dumps(report, indent=2, sort_keys=True) + "\n")
    return 0


def _sweep_cell(job: tuple[float, str]) -> list[tuple]:
    eps, approach = job
    table = shift_table(approach, DimensionlessParams(epsilon=eps))
    verdict = cp_check(table).verdict
    return [
        (eps, c.charge, c.spin, approach, c.delta_omega, verdict) for c in table.cells
    ]


def _cmd_sweep(args: argparse.Namespace) -> int:
    jobs_n = args.jobs or int(os.environ.get("ZBW_JOBS", "1"))
    work = [(eps, ap) for eps in args.epsilons
            for ap in ("quantum", "classical_accurate", "classical_rough")]
    if jobs_n > 1:
        with ProcessPoolExecutor(max_workers=jobs_n) as pool:
            chunks = list(pool.map(_sweep_cell, work))
    else:
        chunks = [_sweep_cell(j) for j in work]
    rows = [r for chunk in chunks for r in chunk]
    rows.sort(key=lambda r: (r[0], r[3], r[1], r[2]))
    _write(args.out, _csv(
        ["epsilon", "charge", "spin", "approach", "delta_omega", "cp_verdict"], rows))
    return 0


def _parser(*args, **kwargs) -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(*args, **kwargs)
    p._negative_number_matcher = _NEGATIVE_NUMBER
    return p


def build_parser() -> argparse.ArgumentParser:
    ap = _parser(prog="zbw", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_parser)

    q = sub.add_parser("quantum", help="expectation-value trajectory")
    _add_params(q)
    q.add_argument("--r0", type=float, default=100.0, help="packet width / Compton wavelength")
    q.add_argument("--phi0", type=float, default=0.0)
    q.add_argument("--t-max", type=float, default=None)
    q.add_argument("--dt", type=float, default=None)
    q.add_argument("--fit", action="store_true", help="print fitted frequency as JSON")
    q.add_argument("--out", required=True)
    q.set_defaults(func=_cmd_quantum)

    c = sub.add_parser("classical", help="spinning-particle integration")
    _add_params(c)
    c.add_argument("--tau-max", type=float, default=100.0)
    c.add_argument("--dt", type=float, default=0.01)
    c.add_argument("--out", required=True)
    c.set_defaults(func=_cmd_classical)

    r = sub.add_parser("roots", help="characteristic-cubic roots")
    _add_params(r)
    r.add_argument("--method", choices=("exact", "rough", "accurate"), default="exact")
    r.add_argument("--format", choices=("json",), default="json")
    r.add_argument("--out", default=None)
    r.set_defaults(func=_cmd_roots)

    ll = sub.add_parser("landau", help="relativistic Landau energy")
    ll.add_argument("--n", type=int, required=True)
    ll.add_argument("--l", type=int, required=True)
    ll.add_argument("--pz", type=float, default=0.0)
    ll.add_argument("--sz", type=float, default=0.5)
    ll.add_argument("--ceb", type=float, required=True, help="product c*e*B, natural units")
    ll.add_argument("--out", default=None)
    ll.set_defaults(func=_cmd_landau)

    cp = sub.add_parser("compare", help="quantum-vs-classical shift report")
    _add_params(cp, spin_charge=False)
    cp.add_argument("--fit", action="store_true",
                    help="also rerun both pipelines end to end (slow)")
    cp.add_argument("--out", required=True)
    cp.set_defaults(func=_cmd_compare)

    sw = sub.add_parser("sweep", help="shift tables over an epsilon list")
    sw.add_argument("--epsilons", type=float, nargs="+", required=True)
    sw.add_argument("--jobs", type=int, default=None,
                    help="worker count (default: ZBW_JOBS env var, then 1)")
    sw.add_argument("--out", required=True)
    sw.set_defaults(func=_cmd_sweep)
    return ap


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad flags already; normalize other codes
        return EXIT_CONFIG if exc.code else 0
    try:
        return args.func(args)
    except ValueError as exc:
        print(json.dumps({"error": "config", "detail": str(exc)}), file=sys.stderr)
        return EXIT_CONFIG
    except _NUMERICAL_ERRORS as exc:
        print(json.dumps({"error": "numerical", "detail": str(exc)}), file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    raise SystemExit(main())
