"""Command line entry point: encode, corrupt, decode, ber, timing."""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from . import bench, formats, hwmodel
from .channel import ChannelParams, awgn, sigma_from_ebn0
from .decoder import Decision, turbo_decode, write_trace_csv
from .interleaver import PermutationError
from .siso import Backend
from .tx import bpsk_map, random_packet, turbo_encode

OUT_DIR_ENV = "CDMATURBO_OUT_DIR"


def _out_path(name: str | None) -> Path | None:
    """Relative output paths are placed under $CDMATURBO_OUT_DIR when it is set."""
    if name is None or name == "-":
        return None
    path = Path(name)
    base = os.environ.get(OUT_DIR_ENV)
    if base and not path.is_absolute():
        path = Path(base) / path
    return path


def _write(text: str, name: str | None) -> None:
    path = _out_path(name)
    if path is None:
        sys.stdout.write(text)
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def _read(name: str) -> str:
    if name == "-":
        return sys.stdin.read()
    return Path(name).read_text()


def _perm(args):
    return bench.resolve_permutation(args.perm if args.perm is not None else args.perm_seed)


def _add_perm(p):
    p.add_argument("--perm", help="interleaver table file (one 0-based index per line)")
    p.add_argument("--perm-seed", type=int, default=0, help="seed of the default interleaver (default 0)")


def cmd_encode(args) -> int:
    if args.hex is not None or args.input is not None:
        info = formats.read_bits(args.input, args.hex)
    else:
        info = random_packet(np.random.default_rng(args.seed))
    frame = turbo_encode(info, _perm(args))
    _write(formats.format_txframe(frame), args.out)
    return 0


def cmd_corrupt(args) -> int:
    frame = formats.parse_txframe(_read(args.input))
    p = _perm(args)
    sigma = args.sigma if args.sigma is not None else sigma_from_ebn0(args.ebn0, args.rate)
    params = ChannelParams(sigma, args.seed, ebn0_db=args.ebn0 if args.sigma is None else None,
                           noiseless=args.noiseless)
    rx = awgn(bpsk_map(frame), params, p)
    extra = {"sigma": repr(sigma), "seed": args.seed}
    _write(formats.format_rxframe(rx, extra), args.out)
    return 0


def cmd_decode(args) -> int:
    rx = formats.parse_rxframe(_read(args.input))
    result = turbo_decode(rx, _perm(args), args.iters, args.backend, args.decision, trace=args.trace is not None)
    if args.trace is not None:
        path = _out_path(args.trace)
        path.parent.mkdir(parents=True, exist_ok=True)
        write_trace_csv(result, path)
    text = f"# saturations {result.saturations}\n{formats.bits_to_hex(result.bits)}\n"
    text += "".join(map(str, result.bits.tolist())) + "\n"
    _write(text, args.out)
    return 0


def cmd_ber(args) -> int:
    spec = bench.RunSpec(
        snr_points=args.snr, iters=args.iters, packets=args.packets, seed=args.seed,
        backend=args.backend, perm=args.perm if args.perm is not None else args.perm_seed,
        decision=args.decision, noiseless=args.noiseless,
    )
    records = bench.run_trials(spec, workers=args.workers)
    path = _out_path(args.out)
    if path is None:
        bench.write_csv(records, sys.stdout)
    else:
        bench.emit_csv(records, path)
    return 0


def cmd_timing(args) -> int:
    lanes = args.lanes or [1, hwmodel.LANES_PARALLEL]
    iters = args.iters or [1, 4]
    reports = [hwmodel.timing(hwmodel.HwConfig.for_lanes(l, n)) for l in lanes for n in iters]
    _write(hwmodel.format_table(reports, args.format), args.out)
    return 0


def _snr_list(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad SNR list {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cdmaturbo", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("encode", help="turbo-encode one 250-bit packet")
    p.add_argument("--hex", help="information bits as hex, MSB first")
    p.add_argument("--input", help="packed binary file of information bits")
    p.add_argument("--seed", type=int, default=0, help="seed for a random packet when no bits are given")
    _add_perm(p)
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("corrupt", help="pass an encoded frame through the AWGN channel")
    p.add_argument("input", help="txframe file, or - for stdin")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--ebn0", type=float, default=1.35, help="Eb/N0 in dB (default 1.35)")
    g.add_argument("--sigma", type=float, help="noise standard deviation")
    p.add_argument("--rate", type=float, default=0.5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--noiseless", action="store_true", help="skip noise; Lc still follows sigma")
    _add_perm(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_corrupt)

    p = sub.add_parser("decode", help="turbo-decode an rxframe file")
    p.add_argument("input", help="rxframe file, or - for stdin")
    p.add_argument("--iters", type=int, default=4)
    p.add_argument("--backend", type=Backend, choices=list(Backend), default=Backend.FXP)
    p.add_argument("--decision", type=Decision, choices=list(Decision), default=Decision.POSTERIORI)
    _add_perm(p)
    p.add_argument("--trace", help="write per-iteration LLRs to this CSV")
    p.add_argument("--out")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("ber", help="Monte-Carlo BER sweep, CSV output")
    p.add_argument("--snr", type=_snr_list, default=[0.35, 1.35, 2.35], help="comma-separated Eb/N0 dB values")
    p.add_argument("--packets", type=int, default=1000)
    p.add_argument("--iters", type=int, default=7)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--backend", type=Backend, choices=list(Backend), default=Backend.FXP)
    p.add_argument("--decision", type=Decision, choices=list(Decision), default=Decision.POSTERIORI)
    p.add_argument("--noiseless", action="store_true")
    p.add_argument("--workers", type=int, default=1)
    _add_perm(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_ber)

    p = sub.add_parser("timing", help="cycle and throughput model")
    p.add_argument("--lanes", type=int, choices=[1, hwmodel.LANES_PARALLEL], action="append")
    p.add_argument("--iters", type=int, action="append")
    p.add_argument("--format", choices=["text", "csv"], default="text")
    p.add_argument("--out")
    p.set_defaults(func=cmd_timing)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (OSError, ValueError, PermutationError, formats.FormatError) as exc:
        print(f"cdmaturbo: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
