"""Command-line entry point: ``uncertainty-lab {sweep,bounds,cv-check,haar-audit}``.

Exit codes: 0 on success, 1 on validation errors, 2 on I/O errors.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from dataclasses import asdict

import numpy as np

from . import harness
from .errors import UncertaintyLabError
from .io import csv_text, dumps_json, key_value_csv, read_operator_file, read_state_file

log = logging.getLogger("uncertainty_lab")

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_IO = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_VALIDATION, f"{self.prog}: error: {message}\n")


def _seed(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="uncertainty-lab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, fmt_default):
        p.add_argument("--out", help="output file (default: stdout)")
        p.add_argument("--format", choices=["csv", "json"], default=fmt_default)

    p = sub.add_parser("sweep", help="theta sweep of the spin-1 state family")
    p.add_argument("--seed", type=_seed, default=42)
    p.add_argument("--theta-min", type=float, default=0.0)
    p.add_argument("--theta-max", type=float, default=2 * np.pi)
    p.add_argument("--steps", type=int, default=200)
    p.add_argument("--perp-samples", type=int, default=30)
    p.add_argument("--j", default="1", help="spin quantum number, e.g. 1 or 3/2")
    p.add_argument("--hbar", type=float, default=1.0)
    p.add_argument("--observables", default="z,y", help="pair of spin components, e.g. z,y")
    p.add_argument("--plot-script", help="path of the generated plot script "
                   "(default: <out stem>_plot.py next to --out)")
    common(p, "csv")

    p = sub.add_parser("bounds", help="evaluate all relations for a state and observable pair")
    p.add_argument("--state", required=True, help="JSON file with 'state' (and optional 'psi_perp')")
    p.add_argument("--operators", help="JSON file with 'A' and 'B' (default: the state file)")
    p.add_argument("--perp", choices=["random", "saturating", "file"], default="saturating")
    p.add_argument("--seed", type=_seed, default=0)
    common(p, "json")

    p = sub.add_parser("cv-check", help="position-momentum Gaussian checks on a grid")
    p.add_argument("--hbar", type=float, default=1.0)
    p.add_argument("--a-mean", type=float, default=1.0)
    p.add_argument("--b-mean", type=float, default=0.5)
    p.add_argument("--grid-n", type=int, default=4001)
    p.add_argument("--grid-halfwidth", type=float, default=12.0)
    p.add_argument("--fock-dim", type=int, default=40,
                   help="Fock truncation of the vacuum used as a cross-check")
    p.add_argument("--m-override", type=float, default=None,
                   help="use this m (and m') in the residuals instead of the Riccati value")
    common(p, "json")

    p = sub.add_parser("haar-audit", help="moment audit of the Haar unitary sampler")
    p.add_argument("--dim", type=int, default=3)
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=_seed, default=0)
    common(p, "json")
    return parser


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    with open(out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _render(obj, fmt: str) -> str:
    return dumps_json(obj) if fmt == "json" else key_value_csv(obj)


def cmd_sweep(args) -> None:
    config = harness.RunConfig(
        seed=args.seed, theta_min=args.theta_min, theta_max=args.theta_max, steps=args.steps,
        perp_samples=args.perp_samples, j=args.j, hbar=args.hbar, observables=args.observables,
    )
    records = harness.run_sweep(config)
    for r in records:
        bad = r.violations()
        if bad:
            log.warning("theta=%.17g violates %s", r.theta, ", ".join(bad))
    if args.format == "csv":
        text = harness.sweep_csv(records)
    else:
        text = dumps_json({"config": asdict(config), "records": [asdict(r) for r in records]})
    _emit(text, args.out)
    script = args.plot_script
    if script is None and args.out is not None:
        stem, _ = os.path.splitext(args.out)
        script = stem + "_plot.py"
    if script is not None and args.format == "csv":
        csv_name = os.path.basename(args.out) if args.out else "sweep.csv"
        _emit(harness.plot_script(config, csv_name, os.path.basename(script)), script)


def cmd_bounds(args) -> None:
    st = read_state_file(args.state)
    a, b = read_operator_file(args.operators or args.state)
    report = harness.bounds_report(st["state"], a, b, args.perp, args.seed, st["psi_perp"])
    if args.format == "json":
        text = dumps_json(report)
    else:
        fields = ["relation", "lhs", "rhs", "gap", "sign_choice", "term_commutator",
                  "term_perp", "perp_orthogonal"]
        text = csv_text(fields, ([report[k][f] for f in fields] for k in ("product", "mp_sum", "weak_sum")))
    _emit(text, args.out)


def cmd_cv_check(args) -> None:
    report = harness.cv_check(args.hbar, args.a_mean, args.b_mean, args.grid_n,
                              args.grid_halfwidth, args.m_override, args.fock_dim)
    _emit(_render(report, args.format), args.out)


def cmd_haar_audit(args) -> None:
    report = harness.haar_audit(args.dim, args.samples, args.seed)
    _emit(_render(report, args.format), args.out)


COMMANDS = {
    "sweep": cmd_sweep,
    "bounds": cmd_bounds,
    "cv-check": cmd_cv_check,
    "haar-audit": cmd_haar_audit,
}


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        COMMANDS[args.command](args)
    except UncertaintyLabError as exc:
        log.error("%s", exc)
        return EXIT_VALIDATION
    except OSError as exc:
        log.error("%s", exc)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
