"""``octo-stokes`` command line entry point.

Exit codes: 0 pass, 1 verification failure, 2 configuration error,
3 I/O or field-file error.
"""
import argparse
import dataclasses
import sys

from .campaign import (
    COMMANDS,
    FORMATS,
    ConfigError,
    RunConfig,
    classify_report,
    fano_report,
    render,
    run_verify,
    table_report,
    trial_fields,
)
from .lattice import FieldFormatError, read_field, write_field

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_CONFIG = 2
EXIT_IO = 3


def build_parser():
    p = argparse.ArgumentParser(prog="octo-stokes", description="Octonion table, Fano lines and discrete Stokes checks.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--radius", type=int, default=1)
    p.add_argument("--coeff-bound", type=int, default=3)
    p.add_argument("--max-points", type=int, default=None, help="sample this many points of the support box")
    p.add_argument("--h", type=float, default=1.0)
    p.add_argument("--mode", choices=("exact", "float"), default="exact")
    p.add_argument("--tol", type=float, default=None, help="relative residual tolerance (float mode)")
    p.add_argument("--format", choices=FORMATS, default="text")
    p.add_argument("--field-g", default=None, help="line-delimited JSON field for g")
    p.add_argument("--field-f", default=None, help="line-delimited JSON field for f")
    p.add_argument("--field-out", default=None, help="write trial 0 fields to PREFIX.g.jsonl / PREFIX.f.jsonl")
    p.add_argument("--out", default=None, help="write the report here instead of stdout")
    p.add_argument("--list", dest="list_triples", action="store_true", help="classify: list all 512 triples")
    return p


def _config_from_args(args):
    h = args.h
    if args.mode == "exact" and h == 1.0:
        h = 1
    return RunConfig(
        command=args.command,
        seed=args.seed,
        trials=args.trials,
        radius=args.radius,
        coeff_bound=args.coeff_bound,
        h=h,
        mode=args.mode,
        tol=args.tol,
        format=args.format,
        max_points=args.max_points,
        field_g=args.field_g,
        field_f=args.field_f,
        field_out=args.field_out,
        out=args.out,
        list_triples=args.list_triples,
    )


def execute(config):
    """Run one configured command. Returns ``(report, exit_code)``."""
    config.validate()
    if config.command == "table":
        return table_report(), EXIT_PASS
    if config.command == "classify":
        report = classify_report(config.list_triples)
        return report, EXIT_PASS if report["census"]["match"] else EXIT_FAIL
    if config.command == "fano":
        report = fano_report()
        return report, EXIT_PASS if report["verdict"] == "pass" else EXIT_FAIL

    pairs = None
    if config.field_g is not None:
        g = read_field(config.field_g)
        f = read_field(config.field_f)
        config = dataclasses.replace(config, h=g.h, mode=g.mode.value, trials=1)
        pairs = [(g, f)]
    report = run_verify(config, pairs)
    if config.field_out:
        g, f = pairs[0] if pairs else trial_fields(config, 0)
        write_field(f"{config.field_out}.g.jsonl", g)
        write_field(f"{config.field_out}.f.jsonl", f)
    return report, EXIT_PASS if report["verdict"] == "pass" else EXIT_FAIL


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        config = _config_from_args(args)
        report, code = execute(config)
        text = render(report, config.format)
        if config.out:
            with open(config.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    except (ConfigError, ValueError) as exc:
        if isinstance(exc, FieldFormatError):
            print(f"octo-stokes: field file error: {exc}", file=sys.stderr)
            return EXIT_IO
        print(f"octo-stokes: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"octo-stokes: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return code


if __name__ == "__main__":
    sys.exit(main())
