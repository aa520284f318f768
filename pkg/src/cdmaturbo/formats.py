"""Plain-text file formats for frames exchanged between CLI stages.

Header lines start with ``#`` and carry ``key value`` metadata.

TxFrame: 256 lines ``X Y origin`` (bits, origin P0 or P1).
RxFrame: 253 lines ``cs cs_int cp0 cp1 origin``; values are 5-digit Fxp20 hex,
origin is the parity source of the stage (``P0``, ``P1``, or ``T`` on tail stages).
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .channel import N_STAGES, RxFrame
from .fxp import from_hex, to_hex
from .interleaver import N_TURBO
from .tx import N_PAIRS, Origin, TxFrame


class FormatError(ValueError):
    pass


def _split(text: str):
    meta, rows = {}, []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            key, _, value = line[1:].strip().partition(" ")
            meta[key] = value.strip()
        else:
            rows.append((lineno, line.split()))
    return meta, rows


def format_txframe(frame: TxFrame) -> str:
    lines = ["# kind txframe", f"# perm {frame.perm_digest}"]
    lines += [f"{x} {y} {o.name}" for x, y, o in zip(frame.x.tolist(), frame.y.tolist(), frame.origin)]
    return "\n".join(lines) + "\n"


def parse_txframe(text: str) -> TxFrame:
    meta, rows = _split(text)
    if meta.get("kind") != "txframe":
        raise FormatError("not a txframe file")
    if len(rows) != N_PAIRS:
        raise FormatError(f"expected {N_PAIRS} pairs, got {len(rows)}")
    x, y, origin = [], [], []
    for lineno, fields in rows:
        if len(fields) != 3 or fields[0] not in "01" or fields[1] not in "01" or fields[2] not in ("P0", "P1"):
            raise FormatError(f"line {lineno}: expected 'X Y P0|P1'")
        x.append(int(fields[0]))
        y.append(int(fields[1]))
        origin.append(Origin[fields[2]])
    return TxFrame(np.array(x, dtype=np.uint8), np.array(y, dtype=np.uint8), tuple(origin), meta.get("perm", ""))


def format_rxframe(rx: RxFrame, extra: dict | None = None) -> str:
    lines = ["# kind rxframe", f"# perm {rx.perm_digest}", f"# lc {to_hex(rx.lc)}"]
    for k, v in (extra or {}).items():
        lines.append(f"# {k} {v}")
    for k in range(N_STAGES):
        tag = rx.origin[k].name if k < N_TURBO else "T"
        lines.append(f"{to_hex(rx.cs[k])} {to_hex(rx.cs_int[k])} {to_hex(rx.cp0[k])} {to_hex(rx.cp1[k])} {tag}")
    return "\n".join(lines) + "\n"


def parse_rxframe(text: str) -> RxFrame:
    meta, rows = _split(text)
    if meta.get("kind") != "rxframe":
        raise FormatError("not an rxframe file")
    if len(rows) != N_STAGES:
        raise FormatError(f"expected {N_STAGES} stages, got {len(rows)}")
    cols = [[], [], [], []]
    origin = []
    try:
        for lineno, fields in rows:
            if len(fields) != 5:
                raise FormatError(f"line {lineno}: expected 5 fields")
            for c, f in zip(cols, fields[:4]):
                c.append(from_hex(f))
            origin.append(fields[4])
        lc = from_hex(meta["lc"])
    except (KeyError, ValueError) as exc:
        raise FormatError(str(exc)) from None
    data_origin = tuple(Origin[o] for o in origin[:N_TURBO])
    full_origin = data_origin + (Origin.P0,) * 3 + (Origin.P1,) * 3
    arrays = [np.array(c, dtype=np.int64) for c in cols]
    return RxFrame(*arrays, lc, full_origin, meta.get("perm", ""))


def read_bits(source: str | None = None, hex_string: str | None = None, n: int = N_TURBO) -> np.ndarray:
    """Information bits from a hex string or a packed binary file, MSB first."""
    if hex_string is not None:
        digits = hex_string.strip().removeprefix("0x").replace("_", "")
        raw = bytes.fromhex(digits if len(digits) % 2 == 0 else digits + "0")
    elif source is not None:
        raw = Path(source).read_bytes()
    else:
        raise FormatError("no input bits given")
    bits = np.unpackbits(np.frombuffer(raw, dtype=np.uint8))
    if len(bits) < n:
        raise FormatError(f"need {n} bits, got {len(bits)}")
    return bits[:n].astype(np.uint8)


def bits_to_hex(bits) -> str:
    return np.packbits(np.asarray(bits, dtype=np.uint8)).tobytes().hex().upper()
