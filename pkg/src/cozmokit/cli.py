"""Command-line front end: ``cozmokit gen|crypt|test|verify``.

Exit codes: 0 success, 1 battery failure, 2 usage error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import sys
from typing import Callable, Optional, Sequence

import numpy as np

from . import a51, cozmo, trivium
from .bitseq import BitSequence, as_bits
from .errors import CozmoError
from .sts import BatteryConfig, run_battery
from .verify import run_all

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_IO = 3

CIPHERS = ("trivium", "a51-raw", "a51-standard", "cozmo")
FORMATS = ("raw", "ascii", "hex")


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _read_hex_arg(value: Optional[str], path: Optional[str], what: str) -> Optional[str]:
    if path is not None:
        if value is not None:
            raise CliError(f"give either --{what} or --{what}-file, not both", EXIT_USAGE)
        try:
            with open(path, encoding="ascii") as fh:
                return fh.read().strip()
        except OSError as exc:
            raise CliError(f"cannot read {what} file: {exc}", EXIT_IO) from exc
    return value


def keystream_source(args) -> Callable[[int], BitSequence]:
    """Validate cipher arguments and return ``n -> keystream``."""
    key = _read_hex_arg(args.key, args.key_file, "key")
    iv = _read_hex_arg(args.iv, args.iv_file, "iv")
    if key is None:
        raise CliError("a key is required (--key or --key-file)", EXIT_USAGE)
    try:
        if args.cipher in ("trivium", "cozmo"):
            if iv is None:
                raise CliError(f"{args.cipher} needs an 80-bit --iv", EXIT_USAGE)
            if args.frame is not None:
                raise CliError("--frame only applies to a51-standard", EXIT_USAGE)
            k = as_bits(key, trivium.KEY_BITS, "key")
            v = as_bits(iv, trivium.IV_BITS, "IV")
            if args.cipher == "trivium":
                return lambda n: trivium.trivium_keystream(k, v, n)
            return lambda n: cozmo.cozmo_keystream(k, v, n, args.warmup)
        if iv is not None:
            raise CliError(f"{args.cipher} takes no IV", EXIT_USAGE)
        if args.cipher == "a51-raw":
            if args.frame is not None:
                raise CliError("--frame only applies to a51-standard", EXIT_USAGE)
            state = a51.a51_load_raw(key)
        else:
            state = a51.a51_load_standard(key, args.frame or 0)
        return lambda n: a51.a51_keystream(state, n)
    except CozmoError as exc:
        raise CliError(str(exc), EXIT_USAGE) from exc
    except ValueError as exc:
        raise CliError(str(exc), EXIT_USAGE) from exc


def encode(seq: BitSequence, fmt: str) -> bytes:
    """Serialise bits; raw and hex zero-pad a final partial byte."""
    if fmt == "ascii":
        return seq.to_ascii().encode("ascii")
    if fmt == "hex":
        return seq.to_bytes_padded().hex().encode("ascii")
    return seq.to_bytes_padded()


def decode(data: bytes, fmt: str) -> BitSequence:
    if fmt == "raw":
        return BitSequence.from_bytes(data)
    text = data.decode("ascii", errors="replace")
    if fmt == "ascii":
        return BitSequence.from_ascii(text)
    return BitSequence.from_hex("".join(text.split()))


def _write(path: str, data: bytes) -> None:
    try:
        if path == "-":
            sys.stdout.buffer.write(data)
            sys.stdout.buffer.flush()
        else:
            with open(path, "wb") as fh:
                fh.write(data)
    except OSError as exc:
        raise CliError(f"cannot write {path}: {exc}", EXIT_IO) from exc


def _read(path: str) -> bytes:
    try:
        if path == "-":
            return sys.stdin.buffer.read()
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}", EXIT_IO) from exc


def cmd_gen(args) -> int:
    if args.n < 0:
        raise CliError("-n must be non-negative", EXIT_USAGE)
    source = keystream_source(args)
    _write(args.out, encode(source(args.n), args.format))
    return EXIT_OK


def cmd_crypt(args) -> int:
    source = keystream_source(args)
    data = _read(args.input)
    stream = source(8 * len(data)).to_bytes()
    out = (np.frombuffer(data, np.uint8) ^ np.frombuffer(stream, np.uint8)).tobytes()
    _write(args.out, out)
    return EXIT_OK


def cmd_test(args) -> int:
    if (args.input is None) == (args.cipher is None):
        raise CliError("give exactly one of --input or --cipher", EXIT_USAGE)
    if args.input is not None:
        try:
            seq = decode(_read(args.input), args.format)
        except CozmoError as exc:
            raise CliError(f"cannot parse {args.input}: {exc}", EXIT_USAGE) from exc
    else:
        if args.n is None:
            raise CliError("-n is required with --cipher", EXIT_USAGE)
        seq = keystream_source(args)(args.n)
    try:
        config = BatteryConfig(args.alpha, None, args.m_serial, args.m_apen, args.M_lincomp)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_USAGE) from exc
    report = run_battery(seq, config, jobs=args.jobs)
    print(report.to_json() if args.json else report.render_text())
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_verify(args) -> int:
    results = run_all(seed=args.seed, states=args.states, steps=args.steps)
    width = max(len(r.name) for r in results)
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'}  {r.name:<{width}}  {r.detail}")
    failed = sum(not r.passed for r in results)
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return EXIT_OK if failed == 0 else EXIT_FAIL


def _add_cipher_args(p: argparse.ArgumentParser, required: bool = True) -> None:
    p.add_argument("--cipher", choices=CIPHERS, required=required)
    p.add_argument("--key", help="key as hex (20 digits for trivium/cozmo, 16 for a51)")
    p.add_argument("--key-file", help="file holding the key as hex")
    p.add_argument("--iv", help="80-bit IV as 20 hex digits (trivium/cozmo)")
    p.add_argument("--iv-file", help="file holding the IV as hex")
    p.add_argument("--frame", type=int, help="22-bit GSM frame number (a51-standard)")
    p.add_argument(
        "--warmup", choices=cozmo.WARMUP_MODES, default="step", help="cozmo register-bank warm-up (default: step)"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cozmokit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write keystream bits")
    _add_cipher_args(p)
    p.add_argument("-n", type=int, required=True, help="number of bits")
    p.add_argument("--format", choices=FORMATS, default="raw")
    p.add_argument("--out", default="-", help="output path ('-' for stdout)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("crypt", help="XOR a file with the keystream (encrypts and decrypts)")
    _add_cipher_args(p)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_crypt)

    p = sub.add_parser("test", help="run the seven-test battery")
    p.add_argument("--input", help="bit file to test")
    p.add_argument("--format", choices=FORMATS, default="ascii", help="format of --input")
    _add_cipher_args(p, required=False)
    p.add_argument("-n", type=int, help="bits to generate with --cipher")
    p.add_argument("--alpha", type=float, default=0.01)
    p.add_argument("--m-serial", type=int, default=16)
    p.add_argument("--m-apen", type=int, default=10)
    p.add_argument("--M-lincomp", dest="M_lincomp", type=int, default=500)
    p.add_argument("--json", action="store_true", help="print the report as JSON")
    p.add_argument("--jobs", type=int, default=1, help="run rows on this many threads")
    p.set_defaults(func=cmd_test)

    p = sub.add_parser("verify", help="run the built-in cross-checks")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--states", type=int, default=100)
    p.add_argument("--steps", type=int, default=10_000)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"cozmokit {args.command}: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
