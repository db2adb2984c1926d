# main.py - VALUE-SENSITIVE REJECTION TOOLKIT
#
# SUBCOMMANDS:
#   calibrate  fit a temperature on raw logits, report NLL and ECE
#   curve      total value V(tau) over the threshold grid (+ optimum, SVG)
#   threshold  theoretical and break-even thresholds of a value model
#   compare    rank models by V(tau_O) next to plain accuracy
#   survey     scenario values, reliability and validity from survey answers
#   sample     representative documents per corpus stratum
#
# EXIT CODES: 0 success, 1 I/O failure, 2 validation or domain error

import argparse
import logging
import sys
from typing import List, Optional

from pydantic import ValidationError

from config import DEFAULT_GRID_STEP, DEFAULT_SEED, ECE_BINS, LOG_LEVEL, OUTPUT_DIR
from pipeline.commands import COMMANDS, run
from pipeline.run_config import RunConfig
from utils.errors import ValueRejectError

EXIT_OK = 0
EXIT_IO = 1
EXIT_DOMAIN = 2


def _shared_flags() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--predictions", nargs="+", default=[], help="prediction file(s), CSV or JSON")
    shared.add_argument("--values", help="value model JSON")
    shared.add_argument("--survey", help="survey responses CSV")
    shared.add_argument("--corpus", help="corpus CSV (doc_id, text, stratum columns)")
    shared.add_argument("--plan", help="strata plan JSON")
    shared.add_argument("--calibration", help="held-out predictions used to fit a temperature first")
    shared.add_argument("--grid-step", type=float, default=DEFAULT_GRID_STEP)
    shared.add_argument("--per-class", action="store_true", help="also sweep separate tau_pos and tau_neg")
    shared.add_argument("--scale", choices=["me", "s100"], help="restrict the survey to one scale")
    shared.add_argument("--validity", action="store_true", help="require the ME vs S100 validity report")
    shared.add_argument("--zero-correct", action="store_true", help="set v_tp = v_tn = 0")
    shared.add_argument("--bins", type=int, default=ECE_BINS, help="ECE bins")
    shared.add_argument("--rank", type=int, help="LSA rank (default min(100, terms, docs - 1))")
    shared.add_argument("--exclude-pattern", help="regex; matching documents are dropped before clustering")
    shared.add_argument("--out", default=OUTPUT_DIR, help="output directory")
    shared.add_argument("--seed", type=int, default=DEFAULT_SEED)
    shared.add_argument("-v", "--verbose", action="store_true")
    return shared


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="valuereject",
        description="Value-sensitive rejection thresholds for binary classifiers.",
    )
    subcommands = parser.add_subparsers(dest="command", required=True)
    shared = _shared_flags()
    for name in COMMANDS:
        subcommands.add_parser(name, parents=[shared])
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=args.command,
        predictions=args.predictions,
        values=args.values,
        survey=args.survey,
        corpus=args.corpus,
        plan=args.plan,
        calibration=args.calibration,
        grid_step=args.grid_step,
        per_class=args.per_class,
        scale=args.scale,
        validity=args.validity,
        zero_correct=args.zero_correct,
        bins=args.bins,
        rank=args.rank,
        exclude_pattern=args.exclude_pattern,
        out=args.out,
        seed=args.seed,
    )


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else LOG_LEVEL,
        format="%(message)s",
        stream=sys.stderr,
    )

    try:
        config = _config_from_args(args)
        written = run(config)
    except ValidationError as e:
        print(f"❌ ValidationError: {e}", file=sys.stderr)
        return EXIT_DOMAIN
    except ValueRejectError as e:
        print(f"❌ {type(e).__name__}: {e}", file=sys.stderr)
        return e.exit_code
    except OSError as e:
        print(f"❌ {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_IO

    for path in written:
        print(f"✅ Wrote {path}", file=sys.stderr)
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
