"""Iterative turbo decoding: two SISO passes per iteration with extrinsic exchange."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .channel import RxFrame
from .fxp import SCALE, saturate_array
from .interleaver import N_TURBO, Permutation, deinterleave, interleave
from .siso import Backend, SisoInput, siso_decode
from .trellis import MEMORY, Trellis, build_trellis


class Decision(Enum):
    """Which LLR vector the final hard decision reads."""

    POSTERIORI = "posteriori"   # decoder 2 a-posteriori, deinterleaved
    APRIORI = "apriori"         # deinterleaved decoder 2 extrinsic (next a-priori of decoder 1)


@dataclass
class PassTrace:
    apriori: np.ndarray
    posteriori: np.ndarray
    extrinsic: np.ndarray
    saturations: int


@dataclass
class IterationTrace:
    iteration: int
    decoder1: PassTrace
    decoder2: PassTrace
    bits: np.ndarray


@dataclass
class DecodeResult:
    bits: np.ndarray
    backend: Backend
    saturations: int = 0
    trace: list[IterationTrace] = field(default_factory=list)

    def bits_per_iteration(self) -> np.ndarray:
        return np.array([t.bits for t in self.trace])


def hard_decision(llr) -> np.ndarray:
    return (np.asarray(llr) >= 0).astype(np.uint8)


def extrinsic(posteriori, apriori, cs, lc, backend: Backend | str = Backend.REFERENCE):
    """posteriori - (apriori + cs * lc); returns (extrinsic, saturations)."""
    backend = Backend.parse(backend)
    if backend is Backend.FXP:
        post = np.asarray(posteriori, dtype=np.int64)
        prior = np.asarray(apriori, dtype=np.int64)
        chan, s1 = saturate_array((np.asarray(cs, dtype=np.int64) * int(lc)) >> 10)
        total, s2 = saturate_array(prior + chan)
        out, s3 = saturate_array(post - total)
        return out, s1 + s2 + s3
    post = np.asarray(posteriori, dtype=np.float64)
    return post - (np.asarray(apriori, dtype=np.float64) + np.asarray(cs, dtype=np.float64) * lc), 0


def _streams(rx: RxFrame, backend: Backend):
    if backend is Backend.FXP:
        return rx.cs, rx.cs_int, rx.cp0, rx.cp1, rx.lc
    return (rx.cs / SCALE, rx.cs_int / SCALE, rx.cp0 / SCALE, rx.cp1 / SCALE, rx.lc / SCALE)


def turbo_decode(
    rx: RxFrame,
    p: Permutation,
    n_iter: int = 4,
    backend: Backend | str = Backend.FXP,
    decision: Decision | str = Decision.POSTERIORI,
    trace: bool = False,
    trellis: Trellis | None = None,
) -> DecodeResult:
    if n_iter < 1:
        raise ValueError("n_iter must be at least 1")
    if rx.perm_digest != p.digest:
        raise ValueError("frame metadata names a different permutation")
    backend = Backend.parse(backend)
    decision = Decision(decision) if not isinstance(decision, Decision) else decision
    trellis = trellis or build_trellis()
    cs, cs_int, cp0, cp1, lc = _streams(rx, backend)
    dtype = np.int64 if backend is Backend.FXP else np.float64
    tail_prior = np.zeros(MEMORY, dtype=dtype)
    data = slice(0, N_TURBO)

    llr2_apriori = np.zeros(N_TURBO, dtype=dtype)
    total_sat = 0
    records = []
    bits = None
    for it in range(1, n_iter + 1):
        out1 = siso_decode(SisoInput(cs, cp0, np.concatenate([llr2_apriori, tail_prior]), lc), trellis, backend)
        post1 = out1.llr_posteriori[data]
        ext1, s1 = extrinsic(post1, llr2_apriori, cs[data], lc, backend)
        llr1_apriori = interleave(ext1, p)

        out2 = siso_decode(SisoInput(cs_int, cp1, np.concatenate([llr1_apriori, tail_prior]), lc), trellis, backend)
        post2 = out2.llr_posteriori[data]
        ext2, s2 = extrinsic(post2, llr1_apriori, cs_int[data], lc, backend)
        prev_apriori = llr2_apriori
        llr2_apriori = deinterleave(ext2, p)

        if decision is Decision.POSTERIORI:
            bits = hard_decision(deinterleave(post2, p))
        else:
            bits = hard_decision(llr2_apriori)
        sat1 = out1.saturations + s1
        sat2 = out2.saturations + s2
        total_sat += sat1 + sat2
        if trace:
            records.append(IterationTrace(
                it,
                PassTrace(prev_apriori, post1, ext1, sat1),
                PassTrace(llr1_apriori, post2, ext2, sat2),
                bits,
            ))
    return DecodeResult(bits, backend, total_sat, records)


def write_trace_csv(result: DecodeResult, path) -> None:
    """One row per (iteration, decoder, position); LLRs in real units."""
    scale = SCALE if result.backend is Backend.FXP else 1.0
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["iteration", "decoder", "k", "apriori", "posteriori", "extrinsic", "bit"])
        for rec in result.trace:
            for dec, pt in ((1, rec.decoder1), (2, rec.decoder2)):
                for k in range(len(pt.posteriori)):
                    bit = int(rec.bits[k]) if dec == 2 else ""
                    w.writerow([
                        rec.iteration, dec, k,
                        repr(float(pt.apriori[k]) / scale),
                        repr(float(pt.posteriori[k]) / scale),
                        repr(float(pt.extrinsic[k]) / scale),
                        bit,
                    ])
