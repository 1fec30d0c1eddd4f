"""Command-line interface: simulate scenarios, inspect spread parameters,
and sample indicatrix curves.

Exit codes: 0 success, 2 input/validation failure, 3 runtime model
violation (partial outputs are still written and flagged in the report).
"""

from __future__ import annotations

import argparse
import math
import os
import sys

from ._version import __version__
from .errors import FireModelError, ModelValidityError, ScenarioValidationError
from .output import (
    write_fronts_csv,
    write_rays_csv,
    write_report_json,
    write_svg,
)
from .propagation import run_scenario
from .rothermel import Environment, FuelBed, spread_chain
from .scenario import _field_value, load_scenario
from .units import SPEED_UNITS, convert_speed

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_RUNTIME = 3

# printed in chain order by cmd_spread_params
_CHAIN_KEYS = (
    "rho_b", "beta", "beta_op", "A", "Gamma_max", "Gamma", "w_n", "r_M",
    "eta_M", "eta_s", "I_R", "xi", "epsilon", "Q_ig", "R0", "C", "B", "E",
    "phi_w", "phi_s", "R_H", "z", "e", "R_B", "a", "b", "c", "theta_hat", "U",
)


def _err(message):
    print(f"error: {message}", file=sys.stderr)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="firefront",
        description="Wildfire front propagation with direction-dependent "
                    "spread metrics.",
    )
    parser.add_argument("--version", action="version",
                        version=f"firefront {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run a scenario file")
    sim.add_argument("--scenario", required=True, help="scenario YAML path")
    sim.add_argument("--format", choices=["csv"], default="csv",
                     help="data output format")
    sim.add_argument("--out-dir", default=".", help="output directory")
    sim.add_argument("--seed", type=int, default=0,
                     help="reserved; the pipeline is deterministic")
    sim.add_argument("--standard-rothermel", action="store_true",
                     help="use the heat-sink variant of the spread chain")
    sim.add_argument("--no-untangle", action="store_true",
                     help="keep self-intersecting fronts in all stages")
    sim.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("spread-params",
                        help="print the spread-parameter chain for a fuel bed")
    sp.add_argument("--sigma", type=float, required=True,
                    help="surface-area-to-volume ratio (1/ft)")
    sp.add_argument("--w_o", type=float, required=True,
                    help="oven-dry fuel load (lb/ft^2)")
    sp.add_argument("--delta", type=float, required=True,
                    help="fuel bed depth (ft)")
    sp.add_argument("--M_x", type=float, required=True,
                    help="moisture of extinction (fraction)")
    sp.add_argument("--M_f", type=float, required=True,
                    help="fuel moisture content (fraction)")
    sp.add_argument("--h", type=float, default=8000.0,
                    help="heat content (Btu/lb)")
    sp.add_argument("--S_T", type=float, default=0.0555,
                    help="total mineral content (fraction)")
    sp.add_argument("--S_e", type=float, default=0.010,
                    help="effective mineral content (fraction)")
    sp.add_argument("--rho_p", type=float, default=32.0,
                    help="particle density (lb/ft^3)")
    sp.add_argument("--U", type=float, default=0.0, help="wind speed")
    sp.add_argument("--U-unit", choices=sorted(SPEED_UNITS), default="ft/min",
                    help="unit of --U")
    sp.add_argument("--tan-phi", type=float, default=0.0,
                    help="slope steepness tan(phi)")
    sp.add_argument("--theta-hat-deg", type=float, default=0.0,
                    help="wind direction (degrees from +x)")
    sp.add_argument("--standard-rothermel", action="store_true",
                    help="use the heat-sink variant of the spread chain")
    sp.add_argument("--format", choices=["text", "csv"], default="text")
    sp.set_defaults(func=cmd_spread_params)

    ind = sub.add_parser("indicatrix",
                         help="sample a model's unit-time front polar curve")
    ind.add_argument("--R0", help="slope family: no-wind rate "
                                  "(number or expression in x, y)")
    ind.add_argument("--phi-s", default="0", help="slope family: slope factor")
    ind.add_argument("--a", type=float, help="wind family: flank parameter")
    ind.add_argument("--b", type=float, help="wind family: ellipse semi-axis")
    ind.add_argument("--c", type=float, help="wind family: drift term")
    ind.add_argument("--theta-hat-deg", type=float, default=0.0,
                     help="wind direction (degrees from +x)")
    ind.add_argument("--U", type=float, default=None,
                     help="wind speed (ft/min), enables the head-rate bound")
    ind.add_argument("--point", type=float, nargs=2, default=(0.0, 0.0),
                     metavar=("X", "Y"), help="evaluation point")
    ind.add_argument("-T", type=float, default=1.0, help="front time")
    ind.add_argument("-n", type=int, default=64, help="sample count (>= 4)")
    ind.add_argument("--out", help="output CSV path (default stdout)")
    ind.set_defaults(func=cmd_indicatrix)

    return parser


def cmd_simulate(args):
    try:
        scenario, outputs = load_scenario(args.scenario,
                                          standard=args.standard_rothermel)
    except ScenarioValidationError as exc:
        _err(str(exc))
        return EXIT_VALIDATION

    override = False if args.no_untangle else None
    result = run_scenario(scenario, untangle_override=override)

    os.makedirs(args.out_dir, exist_ok=True)
    files = []
    if outputs.get("fronts_csv"):
        write_fronts_csv(os.path.join(args.out_dir, "fronts.csv"), result)
        files.append("fronts.csv")
    if outputs.get("rays_csv"):
        write_rays_csv(os.path.join(args.out_dir, "rays.csv"), result)
        files.append("rays.csv")
    if outputs.get("svg"):
        write_svg(os.path.join(args.out_dir, "fronts.svg"), result)
        files.append("fronts.svg")
    if outputs.get("report"):
        files.append("report.json")
        write_report_json(os.path.join(args.out_dir, "report.json"), result,
                          files=files)

    if result.status != "ok":
        _err(result.report.get("error", "run aborted"))
        return EXIT_RUNTIME
    return EXIT_OK


def cmd_spread_params(args):
    try:
        fuel = FuelBed(sigma=args.sigma, w_o=args.w_o, delta=args.delta,
                       M_x=args.M_x, M_f=args.M_f, h=args.h, S_T=args.S_T,
                       S_e=args.S_e, rho_p=args.rho_p)
        U = convert_speed(args.U, args.U_unit, "ft/min")
        env = Environment(U=U, tan_phi=args.tan_phi,
                          theta_hat=math.radians(args.theta_hat_deg))
        chain = spread_chain(fuel, env, standard=args.standard_rothermel)
    except FireModelError as exc:
        _err(str(exc))
        return EXIT_VALIDATION

    if args.format == "csv":
        print("name,value")
        for key in _CHAIN_KEYS:
            print(f"{key},{chain[key]!r}")
    else:
        width = max(len(k) for k in _CHAIN_KEYS)
        for key in _CHAIN_KEYS:
            print(f"{key:<{width}}  {chain[key]:.10g}")
    return EXIT_OK


def cmd_indicatrix(args):
    import numpy as np

    from .metrics import SlopeMetric, WindMetric

    if args.n < 4:
        _err(f"n must be at least 4, got {args.n}")
        return EXIT_VALIDATION
    if args.T <= 0:
        _err(f"T must be positive, got {args.T}")
        return EXIT_VALIDATION
    wind_given = any(v is not None for v in (args.a, args.b, args.c))
    if wind_given == (args.R0 is not None):
        _err("give either --R0 [--phi-s] (slope family) or --a --b --c "
             "(wind family)")
        return EXIT_VALIDATION
    try:
        if wind_given:
            if None in (args.a, args.b, args.c):
                _err("wind family needs all of --a, --b, --c")
                return EXIT_VALIDATION
            model = WindMetric(args.a, args.b, args.c,
                               theta_hat=math.radians(args.theta_hat_deg),
                               U=args.U)
        else:
            model = SlopeMetric(_field_value(args.R0, "--R0"),
                                _field_value(args.phi_s, "--phi-s"))
        x0, y0 = args.point
        theta = np.arange(args.n) * (2.0 * math.pi / args.n)
        W = model.speed(np.full(args.n, float(x0)), np.full(args.n, float(y0)),
                        theta)
    except ModelValidityError as exc:
        _err(str(exc))
        return EXIT_VALIDATION
    except FireModelError as exc:
        _err(str(exc))
        return EXIT_VALIDATION

    lines = ["theta,x,y"]
    for i in range(args.n):
        x = x0 + args.T * W[i] * math.cos(theta[i])
        y = y0 + args.T * W[i] * math.sin(theta[i])
        lines.append(f"{float(theta[i])!r},{float(x)!r},{float(y)!r}")
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
