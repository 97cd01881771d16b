"""
Command-line interface: run a configuration, render the report of a results
bundle or validate a configuration without running it
"""
import sys
import logging
import argparse
from schrolab.__about__ import __version__
from schrolab.exceptions import (
    SchrolabUsageError, SchrolabConfigError, SchrolabInputError)
from schrolab.experiment import load_config, run_config, report

logger = logging.getLogger('schrolab')


EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


def _install_handler(verbosity):
    handler = logging.StreamHandler()
    handler.setFormatter(logging.Formatter("%(levelname)s - %(message)s"))
    logger.addHandler(handler)
    logger.setLevel({0: logging.WARNING, 1: logging.INFO}.get(
        verbosity, logging.DEBUG))
    return handler


def build_parser():
    parser = argparse.ArgumentParser(
        prog='schrolab',
        description="Numerical verification of the generation, spectral "
        "and kernel properties of (1 + |x|^alpha) Lap - |x|^beta")
    parser.add_argument('--version', action='version',
                        version='%(prog)s ' + __version__)
    parser.add_argument('-v', '--verbose', action='count', default=0,
                        help="INFO logging, DEBUG when given twice")
    subparsers = parser.add_subparsers(dest='command')
    run = subparsers.add_parser(
        'run', help="Run the suites of a configuration file")
    run.add_argument('config', help="Path to the INI configuration")
    run.add_argument('--seed', type=int, default=None,
                     help="Seed of the sampled families")
    run.add_argument('--out', default=None,
                     help="Directory of the results bundle")
    run.add_argument('--jobs', type=int, default=None,
                     help="Worker threads")
    show = subparsers.add_parser(
        'report', help="Render the claim report of a results bundle")
    show.add_argument('bundle', help="Path to the results bundle")
    validate = subparsers.add_parser(
        'validate', help="Parse and validate a configuration file")
    validate.add_argument('config', help="Path to the INI configuration")
    return parser


def main(argv=None):
    """
    Entry point of the 'schrolab' command

    Returns
    -------
    status : int
        0 when every claim passed (or is a bounded surrogate), 1 when any
        claim failed or was skipped and 2 on usage or configuration errors
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    handler = _install_handler(args.verbose)
    try:
        if args.command == 'validate':
            config = load_config(args.config)
            print("{} is valid: {}".format(args.config, config))
            return EXIT_OK
        if args.command == 'run':
            config = load_config(args.config).with_overrides(
                seed=args.seed, output_dir=args.out, jobs=args.jobs)
            result = run_config(config)
        else:
            result = report(args.bundle)
    except (SchrolabConfigError, SchrolabUsageError,
            SchrolabInputError) as e:
        logger.error("%s", e)
        return EXIT_USAGE
    finally:
        logger.removeHandler(handler)
    sys.stdout.write(result.render())
    return result.exit_code


if __name__ == '__main__':
    sys.exit(main())
