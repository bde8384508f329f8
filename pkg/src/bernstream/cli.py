"""Command-line interface.

Subcommands: keygen, keystream, encrypt, decrypt, test, bifurcate, cycle.
Exit codes: 0 success, 1 usage error or failed randomness tests,
2 degenerate/weak key, 3 I/O error. Binary data goes to stdout only when
explicitly requested with `-`; diagnostics always go to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from contextlib import contextmanager

from .analysis import (DEFAULT_MAX_STEPS, DEFAULT_SAMPLES, DEFAULT_TRANSIENT,
                       bifurcation_scan, cycle_length, write_bifurcation_csv)
from .cipher import (DegenerateKeyError, KeyFormatError, encrypt_stream,
                     generate_key, parse_key)
from .keystream import KeystreamGenerator
from .stats import DEFAULT_BLOCK_SIZE, run_suite

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_BAD_KEY = 2
EXIT_IO = 3

_CHUNK = 64 * 1024


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _int_arg(text: str) -> int:
    try:
        return int(text, 0)  # accepts decimal or 0x-prefixed hex
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")


@contextmanager
def _binary_in(path: str):
    if path == "-":
        yield sys.stdin.buffer
    else:
        with open(path, "rb") as f:
            yield f


@contextmanager
def _binary_out(path: str):
    if path == "-":
        yield sys.stdout.buffer
        sys.stdout.buffer.flush()
    else:
        with open(path, "wb") as f:
            yield f


@contextmanager
def _text_out(path: str):
    if path == "-":
        yield sys.stdout
        sys.stdout.flush()
    else:
        with open(path, "w") as f:
            yield f


def _add_key_args(sub):
    group = sub.add_mutually_exclusive_group(required=True)
    group.add_argument("--key", metavar="HEX",
                       help="20-hex-character key")
    group.add_argument("--key-file", metavar="PATH",
                       help="file holding the key as a single hex line")
    sub.add_argument("--allow-weak-mu", action="store_true",
                     help="lift the mu >= 129 strength guard (research use)")


def _load_key(args):
    if args.key is not None:
        text = args.key
    else:
        with open(args.key_file) as f:
            text = f.read()
    return parse_key(text, allow_weak_mu=args.allow_weak_mu)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bernstream",
                     description="Chaotic stream cipher and analysis tools")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("keygen", help="print a fresh random key")
    p.set_defaults(func=cmd_keygen)

    p = sub.add_parser("keystream", help="write raw keystream bytes")
    _add_key_args(p)
    p.add_argument("--bytes", type=_int_arg, required=True, metavar="N",
                   help="number of keystream bytes to emit")
    p.add_argument("--out", default="-", metavar="PATH|-",
                   help="output file (default: stdout)")
    p.set_defaults(func=cmd_keystream)

    for name, help_text in (("encrypt", "encrypt a byte stream"),
                            ("decrypt", "decrypt a byte stream")):
        p = sub.add_parser(name, help=help_text)
        _add_key_args(p)
        p.add_argument("--in", dest="infile", default="-", metavar="PATH|-",
                       help="input file (default: stdin)")
        p.add_argument("--out", default="-", metavar="PATH|-",
                       help="output file (default: stdout)")
        p.set_defaults(func=cmd_encrypt)

    p = sub.add_parser("test", help="run the six randomness tests")
    p.add_argument("--in", dest="infile", default="-", metavar="PATH|-",
                   help="input file (default: stdin)")
    p.add_argument("--report", choices=("text", "json"), default="text",
                   help="report format (default: text)")
    p.add_argument("--block-size", type=_int_arg, default=DEFAULT_BLOCK_SIZE,
                   metavar="M", help=f"block frequency block size "
                   f"(default: {DEFAULT_BLOCK_SIZE})")
    p.set_defaults(func=cmd_test)

    p = sub.add_parser("bifurcate", help="emit bifurcation-diagram CSV data")
    p.add_argument("--mu-min", type=_int_arg, default=0, metavar="MU")
    p.add_argument("--mu-max", type=_int_arg, default=255, metavar="MU")
    p.add_argument("--seed", type=_int_arg, default=0xAAAAAAAA, metavar="X0",
                   help="orbit start value (default: 2863311530)")
    p.add_argument("--section", type=_int_arg, default=1, choices=(1, 2, 3, 4),
                   help="byte section to record, 1 = most significant")
    p.add_argument("--transient", type=_int_arg, default=DEFAULT_TRANSIENT,
                   metavar="N", help=f"outputs discarded per mu "
                   f"(default: {DEFAULT_TRANSIENT})")
    p.add_argument("--samples", type=_int_arg, default=DEFAULT_SAMPLES,
                   metavar="N", help=f"outputs recorded per mu "
                   f"(default: {DEFAULT_SAMPLES})")
    p.add_argument("--out", default="-", metavar="PATH|-",
                   help="CSV output (default: stdout)")
    p.set_defaults(func=cmd_bifurcate)

    p = sub.add_parser("cycle", help="measure orbit tail and period")
    p.add_argument("--seed", type=_int_arg, required=True, metavar="X0")
    p.add_argument("--mu", type=_int_arg, required=True, metavar="MU")
    p.add_argument("--max-steps", type=_int_arg, default=DEFAULT_MAX_STEPS,
                   metavar="N", help=f"step budget (default: {DEFAULT_MAX_STEPS})")
    p.add_argument("--report", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_cycle)

    return parser


def cmd_keygen(args) -> int:
    print(generate_key().to_hex())
    return EXIT_OK


def cmd_keystream(args) -> int:
    if args.bytes < 0:
        raise ValueError("--bytes must be >= 0")
    key = _load_key(args)
    gen = KeystreamGenerator.from_key(key, allow_weak_mu=args.allow_weak_mu)
    with _binary_out(args.out) as dst:
        remaining = args.bytes
        while remaining > 0:
            chunk = gen.read(min(_CHUNK, remaining))
            dst.write(chunk)
            remaining -= len(chunk)
    return EXIT_OK


def cmd_encrypt(args) -> int:
    key = _load_key(args)
    with _binary_in(args.infile) as src, _binary_out(args.out) as dst:
        encrypt_stream(key, src, dst, allow_weak_mu=args.allow_weak_mu)
    return EXIT_OK


def cmd_test(args) -> int:
    with _binary_in(args.infile) as src:
        data = src.read()
    reports = run_suite(data, block_size=args.block_size)
    if args.report == "json":
        print(json.dumps([r.to_json_dict() for r in reports], indent=2))
    else:
        for r in reports:
            status = "PASS" if r.passed else "FAIL"
            print(f"{r.test:<26} P={r.p_value:<12.6g} {status}")
        n_pass = sum(r.passed for r in reports)
        print(f"overall: {n_pass}/{len(reports)} passed")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_USAGE


def cmd_bifurcate(args) -> int:
    records = bifurcation_scan(args.mu_min, args.mu_max, args.seed,
                               transient=args.transient,
                               samples=args.samples,
                               section=args.section)
    with _text_out(args.out) as dst:
        write_bifurcation_csv(records, dst)
    return EXIT_OK


def cmd_cycle(args) -> int:
    result = cycle_length(args.seed, args.mu, max_steps=args.max_steps)
    if args.report == "json":
        print(json.dumps({"found": result.found, "tail": result.tail,
                          "period": result.period,
                          "steps_examined": result.steps_examined}))
    elif result.found:
        print(f"tail={result.tail} period={result.period} "
              f"steps_examined={result.steps_examined}")
    else:
        print(f"cycle not found within budget; "
              f"steps_examined={result.steps_examined}")
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"bernstream: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except KeyFormatError as exc:
        print(f"bernstream: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DegenerateKeyError as exc:
        print(f"bernstream: error: {exc}", file=sys.stderr)
        return EXIT_BAD_KEY
    except ValueError as exc:
        print(f"bernstream: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BrokenPipeError:
        # keep the interpreter's shutdown flush off the dead pipe
        devnull = os.open(os.devnull, os.O_WRONLY)
        os.dup2(devnull, sys.stdout.fileno())
        return EXIT_IO
    except OSError as exc:
        print(f"bernstream: error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
