"""Command line entry point: ``generate``, ``run`` and ``eval`` subcommands."""
from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import asdict, fields

from .data import MackeyGlassParams, generate_mackey_glass, read_csv, write_csv
from .harness import ExperimentConfig, evaluate, run_experiment


def _load_params(spec: str | None) -> MackeyGlassParams:
    if spec is None:
        return MackeyGlassParams()
    try:
        with open(spec) as fh:
            d = json.load(fh)
    except FileNotFoundError:
        d = json.loads(spec)  # inline JSON
    allowed = {f.name for f in fields(MackeyGlassParams)}
    unknown = set(d) - allowed
    if unknown:
        raise ValueError(f"unknown Mackey-Glass parameters: {sorted(unknown)}")
    return MackeyGlassParams(**d)


def cmd_generate(args) -> int:
    params = _load_params(args.params)
    series = generate_mackey_glass(params, args.count)
    write_csv(args.out, {"x": series})
    print(f"wrote {len(series)} samples to {args.out} ({json.dumps(asdict(params))})")
    return 0


def cmd_run(args) -> int:
    config = ExperimentConfig.load(args.config) if args.config else ExperimentConfig.from_dict()
    if args.freeze_centers:
        config = ExperimentConfig.from_dict({**config.to_dict(), "freeze_centers": True})
    series = read_csv(args.data) if args.data else None
    result = run_experiment(config, series, args.out_dir)
    print(json.dumps({k: v for k, v in result.summary().items() if k != "config"}, indent=2))
    return 0


def cmd_eval(args) -> int:
    actual = read_csv(args.actual, args.actual_column)
    predicted = read_csv(args.predicted, args.predicted_column)
    print(json.dumps(evaluate(actual, predicted).metrics(), indent=2))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="evofuzzy", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="integrate the Mackey-Glass equation to CSV")
    g.add_argument("--params", help="JSON file or inline JSON with MackeyGlassParams fields")
    g.add_argument("--count", type=int, default=1600)
    g.add_argument("--out", required=True)
    g.set_defaults(func=cmd_generate)

    r = sub.add_parser("run", help="train online, evaluate and forecast")
    r.add_argument("--config", help="flat JSON experiment config")
    r.add_argument("--data", help="single-column CSV series; Mackey-Glass from config if omitted")
    r.add_argument("--out-dir", required=True)
    r.add_argument("--freeze-centers", action="store_true", help="disable center self-learning")
    r.set_defaults(func=cmd_run)

    e = sub.add_parser("eval", help="error metrics between two CSV columns")
    e.add_argument("--actual", required=True)
    e.add_argument("--predicted", required=True)
    e.add_argument("--actual-column")
    e.add_argument("--predicted-column")
    e.set_defaults(func=cmd_eval)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except Exception as exc:  # one-line diagnostic, nonzero exit
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
