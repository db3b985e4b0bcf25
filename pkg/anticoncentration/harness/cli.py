"""
Command line
============

    anticoncentration-lab <experiment> --config <path> [--seed S] [--workers W] [--out DIR] [--verbose]
    anticoncentration-lab validate --config <path>
    anticoncentration-lab list

Exit codes: 0 success, 2 configuration error, 3 capacity error, 4 numerical failure.
"""
import argparse
import logging
import sys

from anticoncentration.exceptions import CapacityExceeded, ConfigError, NumericalFailure
from anticoncentration.harness.experiment_config import EXPERIMENTS, ExperimentConfig, validate_config
from anticoncentration.harness.experiments import ExperimentFactory, run_experiment


logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_CAPACITY = 3
EXIT_NUMERICAL = 4


def build_parser():
    parser = argparse.ArgumentParser(prog="anticoncentration-lab",
                                     description="Anticoncentration experiments on random circuits and states.")
    commands = parser.add_subparsers(dest="command", required=True)

    for name in EXPERIMENTS:
        command = commands.add_parser(name, help=f"run the {name} experiment")
        command.add_argument("--config", required=True, help="JSON configuration file")
        command.add_argument("--seed", type=int, default=None, help="overrides the configuration seed")
        command.add_argument("--workers", type=int, default=None, help="overrides the worker count")
        command.add_argument("--out", default=None, help="overrides the output directory")
        command.add_argument("--verbose", action="store_true", help="log at DEBUG level")

    validate = commands.add_parser("validate", help="check a configuration without running it")
    validate.add_argument("--config", required=True, help="JSON configuration file")
    validate.add_argument("--verbose", action="store_true", help="log at DEBUG level")

    listing = commands.add_parser("list", help="list the available experiments")
    listing.add_argument("--verbose", action="store_true", help="log at DEBUG level")
    return parser


def _report(diagnostics):
    for line in diagnostics:
        print(f"  {line}", file=sys.stderr)


def _run(args):
    config = ExperimentConfig.from_file(args.config)

    if config.experiment != args.command:
        raise ConfigError(f"{args.config} configures '{config.experiment}', not '{args.command}'",
                          [f"experiment: expected '{args.command}', got '{config.experiment}'"])

    config = config.with_overrides(seed=args.seed, workers=args.workers, out=args.out)
    manifest = run_experiment(config)

    for name, content_hash in manifest.outputs.items():
        print(f"{content_hash}  {config.out / name}")


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO,
                        format="%(asctime)s %(levelname)s %(name)s: %(message)s")

    if args.command == "list":
        for name in EXPERIMENTS:
            print(f"{name:14s}{ExperimentFactory.EXPERIMENT_MAP[name].__name__}")
        return EXIT_OK

    if args.command == "validate":
        diagnostics = validate_config(args.config)
        if diagnostics:
            print(f"{args.config}: {len(diagnostics)} violation(s)", file=sys.stderr)
            _report(diagnostics)
            return EXIT_CONFIG
        print(f"{args.config}: valid")
        return EXIT_OK

    try:
        _run(args)
    except ConfigError as e:
        print(f"Configuration error: {e}", file=sys.stderr)
        _report(e.diagnostics)
        return EXIT_CONFIG
    except CapacityExceeded as e:
        print(f"Capacity exceeded (bound {e.bound}): {e}", file=sys.stderr)
        return EXIT_CAPACITY
    except NumericalFailure as e:
        print(f"Numerical failure: {e}", file=sys.stderr)
        _report(f"{key}: {value}" for key, value in e.diagnostics.items())
        return EXIT_NUMERICAL

    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
