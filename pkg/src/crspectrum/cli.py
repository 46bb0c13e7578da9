"""Command-line entry point.

    crspectrum run scenario.json [--out results.csv]
    crspectrum fig5 --seed 42 --out fig5.csv
    crspectrum fig8 --grid-step 0.01 --subchannels 5

Exit status: 0 on success, 1 on invalid input, 2 on I/O failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .montecarlo import TrialConfig
from .scenario import LAMBDA_HIGH, LAMBDA_LOW, LAMBDA_MODERATE, baseline, load_scenario
from .sweeps import emit_csv, format_csv, sweep_p, sweep_subchannels
from .traffic_models import ValidationError

log = logging.getLogger("crspectrum")

FIGURES = {
    "fig5": ("subchannels", LAMBDA_LOW),
    "fig6": ("subchannels", LAMBDA_HIGH),
    "fig7": ("subchannels", LAMBDA_MODERATE),
    "fig8": ("p", LAMBDA_LOW),
    "fig9": ("p", LAMBDA_HIGH),
}


def _u64(text: str) -> int:
    v = int(text, 0)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError(f"seed must be an unsigned 64-bit integer: {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--trials", type=int, default=100_000, help="Monte-Carlo trials per point (default 100000)")
    common.add_argument("--seed", type=_u64, default=42, help="master seed (default 42)")
    common.add_argument("--out", type=Path, help="CSV output path (default: stdout)")
    common.add_argument("--subchannels", type=int, help="link size S for p-sweeps")
    common.add_argument("--grid-step", type=float, default=0.005, help="p grid step (default 0.005)")
    common.add_argument("--workers", type=int, default=1, help="threads for Monte-Carlo chunks")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="crspectrum", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", parents=[common], help="sweep S for a scenario file using its own primary rates")
    run.add_argument("scenario", type=Path)
    for name, (kind, _) in FIGURES.items():
        fig = sub.add_parser(name, parents=[common], help=f"{kind} sweep preset")
        fig.add_argument("--scenario", type=Path, help="override the bundled baseline scenario")
    return parser


def _execute(args) -> int:
    if args.trials < 1:
        raise ValidationError("trials", f"--trials must be >= 1, got {args.trials}")
    cfg = TrialConfig(args.trials, args.seed)
    path = getattr(args, "scenario", None)
    scenario = load_scenario(path) if path is not None else baseline()

    if args.command == "run":
        result = sweep_subchannels(scenario, cfg=cfg, workers=args.workers)
    else:
        kind, lambdas = FIGURES[args.command]
        if kind == "subchannels":
            result = sweep_subchannels(scenario, lambdas, cfg=cfg, workers=args.workers)
        else:
            result = sweep_p(
                scenario, lambda_vector=lambdas, S=args.subchannels, cfg=cfg, grid_step=args.grid_step, workers=args.workers
            )
    result.meta["command"] = args.command

    if args.out is not None:
        emit_csv(result, args.out)
        log.info("wrote %d rows to %s", len(result.rows), args.out)
    else:
        sys.stdout.write(format_csv(result))
    for line in result.summary():
        print(line, file=sys.stderr)
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return _execute(args)
    except (ValidationError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
