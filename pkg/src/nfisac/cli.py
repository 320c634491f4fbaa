"""Command-line entry point: one subcommand per experiment plus `validate`.

Exit codes: 0 success, 2 configuration error, 3 I/O error, 4 numerical
failure.  Configs come from --config PATH or a built-in --preset; the
optional --seed flag overrides the config's seed.
"""

import argparse
import sys

from .config import ConfigError, Experiment, load_config, validate_text
from .presets import PRESETS
from .runner import NumericalFailure, run

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_IO = 3
EXIT_NUMERICAL = 4


def _add_source_args(parser, with_out=True):
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--config", metavar="PATH", help="configuration file")
    group.add_argument("--preset", metavar="NAME", choices=sorted(PRESETS),
                       help="built-in configuration (%s)" % ", ".join(sorted(PRESETS)))
    if with_out:
        parser.add_argument("--out", metavar="DIR", default=None,
                            help="output directory (default runs/<experiment>)")
        parser.add_argument("--seed", metavar="N", type=int, default=None,
                            help="override the config seed")


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="nfisac",
        description="Near-field wideband sensing experiments with CSV outputs.")
    sub = parser.add_subparsers(dest="command", required=True)
    for experiment in Experiment:
        p = sub.add_parser(experiment.value,
                           help=f"run the {experiment.value} experiment")
        _add_source_args(p)
    v = sub.add_parser("validate", help="check a configuration and list all violations")
    _add_source_args(v, with_out=False)
    return parser


def _read_config_text(args) -> str:
    if args.preset:
        return PRESETS[args.preset]
    with open(args.config, "r", encoding="utf-8") as fh:
        return fh.read()


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        text = _read_config_text(args)
    except OSError as exc:
        print(f"error: cannot read configuration: {exc}", file=sys.stderr)
        return EXIT_IO

    if args.command == "validate":
        diagnostics = validate_text(text)
        for diag in diagnostics:
            print(diag)
        if diagnostics:
            print(f"{len(diagnostics)} problem(s) found", file=sys.stderr)
            return EXIT_CONFIG
        print("configuration is valid")
        return EXIT_OK

    try:
        config = load_config(text)
    except ConfigError as exc:
        for diag in exc.diagnostics:
            print(diag, file=sys.stderr)
        return EXIT_CONFIG
    if config.experiment.value != args.command:
        print(f"error: configuration declares experiment "
              f"'{config.experiment.value}', not '{args.command}'", file=sys.stderr)
        return EXIT_CONFIG

    out_dir = args.out or f"runs/{config.experiment.value}"
    try:
        manifest = run(config, out_dir, seed=args.seed)
    except OSError as exc:
        print(f"error: cannot write outputs: {exc}", file=sys.stderr)
        return EXIT_IO
    except NumericalFailure as exc:
        print(f"error: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    for name, digest in manifest.outputs:
        print(f"wrote {out_dir}/{name} sha256={digest[:12]}")
    print(f"wrote {out_dir}/manifest.json ({manifest.duration_s:.2f} s)")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
