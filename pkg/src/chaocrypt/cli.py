"""Command-line front end.

Exit codes: 0 success, 2 usage or input error, 3 internal numerical error.
Ciphertext files are raw bytes, exactly as long as the plaintext; all secret
material travels in the key file.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
from pathlib import Path

from . import analysis, ga
from .chaos import MapParams, MapState, derive_initial_state
from .cipher import KeyRecord, encrypt
from .cipher import decrypt as cipher_decrypt
from .errors import FormatError, InvalidInput, InvalidState, NumericalError
from .keyfile import read_key_file, write_key_file


def _fmt(v: float) -> str:
    return format(v, ".17g")


def _write_csv(path, header, rows, comment: str | None = None) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        if comment:
            fh.write(f"# {comment}\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def _parse_range(text: str, parts: int):
    pieces = text.split(":")
    if len(pieces) != parts:
        raise InvalidInput(f"expected {parts} colon-separated numbers, got {text!r}")
    try:
        return tuple(float(p) for p in pieces)
    except ValueError:
        raise InvalidInput(f"malformed range {text!r}") from None


def _read_bytes(path) -> bytes:
    return Path(path).read_bytes()


def _ga_config(args) -> ga.GaConfig:
    return ga.GaConfig(
        population_size=args.population,
        elite_fraction=args.elite_fraction,
        mutation_probability=args.mutation_prob,
        mutation_step=args.mutation_step,
        fitness_threshold=args.threshold,
        quorum_fraction=args.quorum,
        max_generations=args.max_generations,
        rng_seed=args.seed,
    )


def _add_ga_flags(parser) -> None:
    parser.add_argument("--population", type=int, default=20)
    parser.add_argument("--elite-fraction", type=float, default=0.2)
    parser.add_argument("--mutation-prob", type=float, default=0.1)
    parser.add_argument("--mutation-step", type=float, default=0.05)
    parser.add_argument("--threshold", type=float, default=95.0)
    parser.add_argument("--quorum", type=float, default=0.5)
    parser.add_argument("--max-generations", type=int, default=500)
    parser.add_argument("--seed", type=int, default=0)


def cmd_encrypt(args) -> int:
    plaintext = _read_bytes(args.plaintext)
    if len(plaintext) == 0:
        raise InvalidInput(f"plaintext file is empty: {args.plaintext}")

    if args.skip_ga:
        if args.a is None or args.b is None:
            raise InvalidInput("--skip-ga requires --a and --b")
        params = MapParams(args.a, args.b)
        ciphertext, record = encrypt(plaintext, params)
        score = ga.FitnessEvaluator(plaintext).score(params)
        print(f"a: {_fmt(params.a)}")
        print(f"b: {_fmt(params.b)}")
        print(f"fitness: {score:.4f}")
    else:
        config = _ga_config(args)
        report = ga.evolve(plaintext, config)
        params = report.best_genome.params
        ciphertext, record = encrypt(plaintext, params)
        print(f"generations: {report.generations_run}")
        print(f"best fitness: {report.best_genome.fitness:.4f}")
        print(f"terminated by: {report.terminated_by}")
        if args.report:
            rows = [
                (rec.generation, i, _fmt(a), _fmt(b), _fmt(f))
                for rec in report.history
                for i, (a, b, f) in enumerate(rec.population)
            ]
            _write_csv(args.report, ("generation", "genome", "a", "b", "fitness"), rows)

    Path(args.out).write_bytes(ciphertext)
    write_key_file(record, args.key_out)
    return 0


def cmd_decrypt(args) -> int:
    key = read_key_file(args.key)
    ciphertext = _read_bytes(args.ciphertext)
    if len(ciphertext) == 0:
        raise InvalidInput(f"ciphertext file is empty: {args.ciphertext}")
    Path(args.out).write_bytes(cipher_decrypt(ciphertext, key))
    return 0


def cmd_analyze_bifurcation(args) -> int:
    low, high = _parse_range(args.range, 2)
    spec = analysis.SweepSpec(
        swept_parameter=args.param,
        fixed_value=args.fixed,
        range_low=low,
        range_high=high,
        steps=args.steps,
        iterations=args.iters,
        transient=args.transient,
        initial_state=MapState(args.x0, args.y0),
    )
    table = analysis.bifurcation_sweep(spec)
    m = spec.iterations - spec.transient
    coverages = [
        analysis.bin_coverage(table[i * m : (i + 1) * m, 1]) for i in range(spec.steps)
    ]
    comment = (
        f"swept={spec.swept_parameter} fixed={_fmt(spec.fixed_value)} "
        f"x0={_fmt(spec.initial_state.x)} y0={_fmt(spec.initial_state.y)} "
        f"iterations={spec.iterations} transient={spec.transient}"
    )
    _write_csv(
        args.out,
        (spec.swept_parameter, "x"),
        ((_fmt(p), _fmt(x)) for p, x in table),
        comment=comment,
    )
    print(f"rows: {table.shape[0]}")
    print(f"min bin coverage: {min(coverages):.2f}")
    print(f"mean bin coverage: {sum(coverages) / len(coverages):.4f}")
    return 0


def cmd_analyze_lyapunov(args) -> int:
    result = analysis.lyapunov_spectrum(
        MapParams(args.a, args.b),
        MapState(args.x0, args.y0),
        iterations=args.iters,
        transient=args.transient,
    )
    print(f"exponent_1: {_fmt(result.exponent_1)}")
    print(f"exponent_2: {_fmt(result.exponent_2)}")
    if args.out:
        _write_csv(
            args.out,
            ("a", "b", "x0", "y0", "iterations", "transient", "exponent_1", "exponent_2"),
            [
                (
                    _fmt(args.a),
                    _fmt(args.b),
                    _fmt(args.x0),
                    _fmt(args.y0),
                    result.iterations,
                    result.transient,
                    _fmt(result.exponent_1),
                    _fmt(result.exponent_2),
                )
            ],
        )
    return 0


def cmd_analyze_landscape(args) -> int:
    plaintext = _read_bytes(args.plaintext)
    a_range = _parse_range(args.a_range, 2)
    b_range = _parse_range(args.b_range, 2)
    table = analysis.fitness_landscape(plaintext, a_range, b_range, args.grid_a, args.grid_b)
    _write_csv(args.out, ("a", "b", "fitness"), ((_fmt(a), _fmt(b), _fmt(f)) for a, b, f in table))
    best = table[:, 2].max()
    near = int((table[:, 2] >= best - 0.5).sum())
    print(f"rows: {table.shape[0]}")
    print(f"max fitness: {best:.4f}")
    print(f"cells within 0.5 of max: {near}")
    return 0


def cmd_analyze_lengths(args) -> int:
    lengths = [int(p) for p in args.lengths.split(",") if p]
    if not lengths:
        raise InvalidInput("no lengths given")
    config = _ga_config(args)
    results = analysis.length_experiment(lengths, config, trials=args.trials)
    if args.trials == 1:
        header = ("length", "generations", "max_fitness")
        rows = [(r.length, r.generations, _fmt(r.max_fitness)) for r in results]
    else:
        header = ("length", "trial", "generations", "max_fitness")
        rows = [(r.length, r.trial, r.generations, _fmt(r.max_fitness)) for r in results]
    _write_csv(args.out, header, rows)
    for length, best, mean, gens in analysis.summarize_lengths(results):
        print(f"length {length}: max fitness {best:.4f}, mean fitness {mean:.4f}, mean generations {gens:.1f}")
    return 0


def cmd_analyze_sensitivity(args) -> int:
    plaintext = _read_bytes(args.plaintext)
    if args.key:
        key = read_key_file(args.key)
    else:
        if args.a is None or args.b is None:
            raise InvalidInput("provide either --key or both --a and --b")
        initial = derive_initial_state(plaintext)
        key = KeyRecord(a=args.a, b=args.b, x0=initial.x, y0=initial.y)
    fraction = analysis.sensitivity_probe(plaintext, key, args.component, args.epsilon)
    print(f"fraction changed: {fraction:.4f}")
    if args.out:
        _write_csv(
            args.out,
            ("component", "epsilon", "fraction_changed"),
            [(args.component, _fmt(args.epsilon), _fmt(fraction))],
        )
    return 0


def cmd_keyspace(args) -> int:
    if args.range:
        ranges = [_parse_range(r, 3) for r in args.range]
    else:
        ranges = list(analysis.DEFAULT_KEYSPACE_RANGES)
    size = analysis.keyspace_size(ranges)
    print(f"key space size: {size:.6g}")
    print(f"ratio to 2^128: {size / math.pow(2.0, 128):.6g}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chaocrypt",
        description="Chaotic-map text encryption with a genetic-algorithm key optimizer.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("encrypt", help="optimize a key and encrypt a file")
    p.add_argument("plaintext", help="input file")
    p.add_argument("--out", required=True, help="ciphertext output path")
    p.add_argument("--key-out", required=True, help="key file output path")
    p.add_argument("--report", help="optional per-generation CSV report")
    p.add_argument("--skip-ga", action="store_true", help="encrypt directly with --a/--b")
    p.add_argument("--a", type=float, help="map parameter a (with --skip-ga)")
    p.add_argument("--b", type=float, help="map parameter b (with --skip-ga)")
    _add_ga_flags(p)
    p.set_defaults(func=cmd_encrypt)

    p = sub.add_parser("decrypt", help="decrypt a file with a key file")
    p.add_argument("ciphertext", help="input file")
    p.add_argument("--key", required=True, help="key file path")
    p.add_argument("--out", required=True, help="plaintext output path")
    p.set_defaults(func=cmd_decrypt)

    an = sub.add_parser("analyze", help="chaos diagnostics and experiments")
    ansub = an.add_subparsers(dest="subcommand", required=True)

    p = ansub.add_parser("bifurcation", help="parameter sweep of asymptotic x-values")
    p.add_argument("--param", choices=("a", "b"), required=True)
    p.add_argument("--fixed", type=float, required=True, help="value of the other parameter")
    p.add_argument("--range", required=True, help="LOW:HIGH for the swept parameter")
    p.add_argument("--steps", type=int, default=100)
    p.add_argument("--iters", type=int, default=600)
    p.add_argument("--transient", type=int, default=500)
    p.add_argument("--x0", type=float, default=analysis.DEFAULT_SWEEP_STATE.x)
    p.add_argument("--y0", type=float, default=analysis.DEFAULT_SWEEP_STATE.y)
    p.add_argument("--out", required=True, help="CSV output path")
    p.set_defaults(func=cmd_analyze_bifurcation)

    p = ansub.add_parser("lyapunov", help="two-exponent Lyapunov spectrum")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--x0", type=float, default=analysis.DEFAULT_SWEEP_STATE.x)
    p.add_argument("--y0", type=float, default=analysis.DEFAULT_SWEEP_STATE.y)
    p.add_argument("--iters", type=int, default=2500)
    p.add_argument("--transient", type=int, default=500)
    p.add_argument("--out", help="optional CSV output path")
    p.set_defaults(func=cmd_analyze_lyapunov)

    p = ansub.add_parser("landscape", help="fitness over an (a, b) grid")
    p.add_argument("--plaintext", required=True)
    p.add_argument("--a-range", default="1:4")
    p.add_argument("--b-range", default="0.1:4")
    p.add_argument("--grid-a", type=int, default=50)
    p.add_argument("--grid-b", type=int, default=50)
    p.add_argument("--out", required=True, help="CSV output path")
    p.set_defaults(func=cmd_analyze_landscape)

    p = ansub.add_parser("lengths", help="plaintext-length experiment")
    p.add_argument("--lengths", default="10,50,100,300,700,1000", help="comma-separated")
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--out", required=True, help="CSV output path")
    _add_ga_flags(p)
    p.set_defaults(func=cmd_analyze_lengths)

    p = ansub.add_parser("sensitivity", help="key perturbation probe")
    p.add_argument("--plaintext", required=True)
    p.add_argument("--key", help="key file (otherwise give --a/--b)")
    p.add_argument("--a", type=float)
    p.add_argument("--b", type=float)
    p.add_argument("--component", choices=analysis.KEY_COMPONENTS, required=True)
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--out", help="optional CSV output path")
    p.set_defaults(func=cmd_analyze_sensitivity)

    p = sub.add_parser("keyspace", help="key space size arithmetic")
    p.add_argument(
        "--range",
        action="append",
        help="LOW:HIGH:PRECISION, repeatable; defaults to the key component ranges",
    )
    p.set_defaults(func=cmd_keyspace)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except (InvalidInput, InvalidState, FormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
