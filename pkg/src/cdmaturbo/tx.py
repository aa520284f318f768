"""Turbo encoder, rate-1/2 puncturing and BPSK mapping."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .fxp import SCALE
from .interleaver import N_TURBO, Permutation, interleave
from .trellis import MEMORY, rsc_step, tail_input

N_TAIL_PAIRS = 2 * MEMORY
N_PAIRS = N_TURBO + N_TAIL_PAIRS


class Origin(Enum):
    """Which constituent encoder produced the transmitted parity of a pair."""

    P0 = 0
    P1 = 1


@dataclass(frozen=True)
class TxFrame:
    x: np.ndarray          # 256 systematic bits
    y: np.ndarray          # 256 parity bits
    origin: tuple          # 256 Origin flags
    perm_digest: str
    final_states: tuple[int, int] = (0, 0)

    def __len__(self) -> int:
        return len(self.x)

    @property
    def pairs(self) -> list[tuple[int, int]]:
        return list(zip(self.x.tolist(), self.y.tolist()))


@dataclass(frozen=True)
class ModFrame:
    """BPSK symbols as Q10 mantissas, each exactly +1024 or -1024."""

    xs: np.ndarray
    yp: np.ndarray
    origin: tuple
    perm_digest: str


def rsc_encode(bits, terminate: bool = True):
    """Run one constituent encoder.

    Returns (parity, tail_systematic, tail_parity, final_state).
    """
    state = 0
    parity = np.empty(len(bits), dtype=np.uint8)
    for k, u in enumerate(bits):
        state, parity[k] = rsc_step(state, int(u))
    tail_x = np.zeros(MEMORY, dtype=np.uint8)
    tail_y = np.zeros(MEMORY, dtype=np.uint8)
    if terminate:
        for k in range(MEMORY):
            u = tail_input(state)
            tail_x[k] = u
            state, tail_y[k] = rsc_step(state, u)
    return parity, tail_x, tail_y, state


def turbo_encode(info, p: Permutation) -> TxFrame:
    info = np.asarray(info, dtype=np.uint8)
    if info.shape != (N_TURBO,):
        raise ValueError(f"packet must hold exactly {N_TURBO} bits, got shape {info.shape}")
    if np.any(info > 1):
        raise ValueError("packet bits must be 0 or 1")
    y0, tx1, ty1, s1 = rsc_encode(info)
    y0p, tx2, ty2, s2 = rsc_encode(interleave(info, p))

    x = np.concatenate([info, tx1, tx2])
    # even data stages carry Y0, odd ones Y'0
    data_y = np.where(np.arange(N_TURBO) % 2 == 0, y0, y0p).astype(np.uint8)
    y = np.concatenate([data_y, ty1, ty2])
    origin = tuple(Origin.P0 if k % 2 == 0 else Origin.P1 for k in range(N_TURBO))
    origin += (Origin.P0,) * MEMORY + (Origin.P1,) * MEMORY
    return TxFrame(x, y, origin, p.digest, (s1, s2))


def bpsk_map(frame: TxFrame) -> ModFrame:
    """Bit 1 maps to +1.0, bit 0 to -1.0."""
    xs = np.where(frame.x == 1, SCALE, -SCALE).astype(np.int64)
    yp = np.where(frame.y == 1, SCALE, -SCALE).astype(np.int64)
    return ModFrame(xs, yp, frame.origin, frame.perm_digest)


def random_packet(rng: np.random.Generator) -> np.ndarray:
    return rng.integers(0, 2, size=N_TURBO, dtype=np.uint8)
