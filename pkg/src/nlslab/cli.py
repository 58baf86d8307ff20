"""Command-line entry points.

    nlslab ground-state          --config cfg --out dir
    nlslab exponents             --config cfg --out dir
    nlslab simulate              --config cfg --out dir
    nlslab exp almost-conservation --config cfg --out dir
    nlslab exp stability         --config cfg --out dir
    nlslab exp growth            --config cfg --out dir
    nlslab exp rescaling         --config cfg --out dir [--alpha A]

The config file format is documented in nlslab.experiments.config.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import exponents as exp_mod
from .experiments import (
    parse_config_file,
    run_almost_conservation,
    run_growth,
    run_rescaling_report,
    run_simulation,
    run_stability,
)
from .ground_state import save_profile, shoot


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", required=True, help="path to a key = value config file")
    parser.add_argument("--out", required=True, help="output directory")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nlslab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    _add_common(sub.add_parser("ground-state", help="compute and store a ground-state profile"))
    _add_common(sub.add_parser("exponents", help="solve and verify the Strichartz exponent system"))
    _add_common(sub.add_parser("simulate", help="guarded evolution with diagnostics CSV"))

    exp = sub.add_parser("exp", help="experiment sweeps")
    exp_kind = exp.add_subparsers(dest="kind", required=True)
    for kind in ("almost-conservation", "stability", "growth"):
        _add_common(exp_kind.add_parser(kind))
    rescaling = exp_kind.add_parser("rescaling")
    _add_common(rescaling)
    rescaling.add_argument(
        "--alpha",
        type=float,
        default=1.0,
        help="fitted drift decay exponent used by the parameter selection",
    )
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    config = parse_config_file(args.config)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    if args.command == "ground-state":
        profile = shoot(config.params)
        path = out / f"ground_state_n{config.params.dim}_p{config.params.power:g}.csv"
        save_profile(profile, path)
        print(f"center value {profile.center_value!r}, residual {profile.residual:.3e}")
        print(f"wrote {path}")
        return 0

    if args.command == "exponents":
        result = exp_mod.solve_exponents(config.params.dim, Fraction(str(config.params.power)))
        text = exp_mod.report(result)
        path = out / "exponents.txt"
        path.write_text(text)
        sys.stdout.write(text)
        print(f"wrote {path}")
        return 0

    if args.command == "simulate":
        summary = run_simulation(config, out)
        print(f"wrote {out / 'simulate.csv'} ({summary['records']} samples)")
        return 0

    if args.command == "exp":
        if args.kind == "almost-conservation":
            summary = run_almost_conservation(config, out)
            fit = summary.get("fit_hamiltonian")
            if fit:
                print(
                    f"drift slope {fit['slope']:.3f} (r^2 = {fit['r_squared']:.3f}), "
                    f"decay exponent {fit['decay_exponent']:.3f}"
                )
        elif args.kind == "stability":
            summary = run_stability(config, out)
            for entry in summary["entries"]:
                if entry.get("kind") == "exit":
                    print(f"sigma {entry['sigma']:g}: exit time {entry['exit_time']}")
            if summary.get("fit"):
                print(
                    f"exit-time slope {summary['fit']['slope']:.3f} "
                    f"(r^2 = {summary['fit']['r_squared']:.3f})"
                )
        elif args.kind == "growth":
            summary = run_growth(config, out)
            if summary.get("fit"):
                print(f"running-max slope {summary['fit']['slope']:.4f}")
        elif args.kind == "rescaling":
            summary = run_rescaling_report(config, out, decay_exponent=args.alpha)
            for entry in summary["entries"]:
                print(entry)
        print(f"wrote summaries under {out}")
        return 0

    raise AssertionError(f"unhandled command {args.command!r}")


if __name__ == "__main__":
    sys.exit(main())
