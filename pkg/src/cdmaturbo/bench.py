"""Monte-Carlo BER harness: encode, corrupt, decode, count errors per iteration."""

from __future__ import annotations

import csv
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .channel import ChannelParams, awgn, frame_seed
from .decoder import Decision, turbo_decode
from .interleaver import N_TURBO, Permutation, default_permutation, load_permutation
from .siso import Backend
from .tx import bpsk_map, random_packet, turbo_encode

CSV_HEADER = ["snr_db", "iteration", "bit_errors", "bits_total", "packet_errors", "packets_total", "ber"]


@dataclass(frozen=True)
class RunSpec:
    snr_points: tuple = (0.35, 1.35, 2.35)
    iters: int = 7
    packets: int = 1000
    seed: int = 0
    backend: Backend = Backend.FXP
    perm: str | int = 0             # table file path, or seed for default_permutation
    decision: Decision = Decision.POSTERIORI
    noiseless: bool = False
    code_rate: float = 0.5

    def __post_init__(self):
        if self.packets < 1:
            raise ValueError("packets must be >= 1")
        if self.iters < 1:
            raise ValueError("iters must be >= 1")
        object.__setattr__(self, "snr_points", tuple(float(s) for s in self.snr_points))
        object.__setattr__(self, "backend", Backend.parse(self.backend))

    def permutation(self) -> Permutation:
        return resolve_permutation(self.perm)


@dataclass(frozen=True)
class BerRecord:
    snr_db: float
    iteration: int
    bit_errors: int
    bits_total: int
    packet_errors: int
    packets_total: int

    @property
    def ber(self) -> float:
        return self.bit_errors / self.bits_total


def resolve_permutation(perm) -> Permutation:
    if isinstance(perm, Permutation):
        return perm
    if isinstance(perm, int) or (isinstance(perm, str) and perm.lstrip("-").isdigit()):
        return default_permutation(int(perm))
    return load_permutation(perm)


def simulate_packet(spec: RunSpec, p: Permutation, snr_index: int, packet: int) -> np.ndarray:
    """Bit errors after each iteration for one packet; shape (iters,).

    Information bits depend only on (seed, packet), so every SNR point sees the
    same packets; noise is keyed on (seed, packet, snr index).
    """
    info = random_packet(np.random.default_rng(frame_seed(spec.seed, packet, 0)))
    params = ChannelParams.from_ebn0(
        spec.snr_points[snr_index], frame_seed(spec.seed, packet, 1, snr_index),
        code_rate=spec.code_rate, noiseless=spec.noiseless,
    )
    rx = awgn(bpsk_map(turbo_encode(info, p)), params, p)
    result = turbo_decode(rx, p, spec.iters, spec.backend, spec.decision, trace=True)
    return (result.bits_per_iteration() != info).sum(axis=1)


def _packet_block(args):
    spec, p, snr_index, start, stop = args
    return np.array([simulate_packet(spec, p, snr_index, i) for i in range(start, stop)])


def run_trials(spec: RunSpec, workers: int = 1, chunk: int = 50) -> list[BerRecord]:
    p = spec.permutation()
    jobs = [
        (spec, p, si, start, min(start + chunk, spec.packets))
        for si in range(len(spec.snr_points))
        for start in range(0, spec.packets, chunk)
    ]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            blocks = list(pool.map(_packet_block, jobs))
    else:
        blocks = [_packet_block(j) for j in jobs]

    per_snr: dict[int, list[np.ndarray]] = {}
    for (_, _, si, _, _), block in zip(jobs, blocks):
        per_snr.setdefault(si, []).append(block)
    records = []
    for si, snr in enumerate(spec.snr_points):
        errors = np.concatenate(per_snr[si])          # (packets, iters)
        for it in range(spec.iters):
            col = errors[:, it]
            records.append(BerRecord(snr, it + 1, int(col.sum()), spec.packets * N_TURBO,
                                     int(np.count_nonzero(col)), spec.packets))
    return sorted(records, key=lambda r: (r.snr_db, r.iteration))


def per_iteration_table(snr_db: float, seed: int = 0, packet: int = 0, iters: int = 7,
                        backend=Backend.FXP, perm=0) -> list[int]:
    """Correctly decoded bits (out of 250) after each iteration, for one packet."""
    spec = RunSpec((snr_db,), iters, packet + 1, seed, backend, perm)
    errors = simulate_packet(spec, spec.permutation(), 0, packet)
    return [N_TURBO - int(e) for e in errors]


def emit_csv(records, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        write_csv(records, fh)
    return path


def write_csv(records, fh) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in sorted(records, key=lambda r: (r.snr_db, r.iteration)):
        w.writerow([repr(r.snr_db), r.iteration, r.bit_errors, r.bits_total,
                    r.packet_errors, r.packets_total, repr(r.ber)])


def read_csv(path) -> list[BerRecord]:
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    return [BerRecord(float(r["snr_db"]), int(r["iteration"]), int(r["bit_errors"]), int(r["bits_total"]),
                      int(r["packet_errors"]), int(r["packets_total"])) for r in rows]


def curves(records) -> dict[int, list[tuple[float, float]]]:
    """Group records into {iteration: [(snr, ber), ...]} sorted by snr."""
    out: dict[int, list] = {}
    for r in sorted(records, key=lambda r: (r.iteration, r.snr_db)):
        out.setdefault(r.iteration, []).append((r.snr_db, r.ber))
    return out
