"""AWGN contamination, Q10 quantisation and depuncturing into decoder streams."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fxp import SCALE, Fxp20, quantize, quantize_array
from .interleaver import N_TURBO, Permutation, interleave
from .trellis import MEMORY
from .tx import ModFrame, Origin

N_STAGES = N_TURBO + MEMORY


def sigma_from_ebn0(ebn0_db: float, code_rate: float = 0.5) -> float:
    """Noise standard deviation for unit-energy BPSK at the given Eb/N0."""
    if not 0 < code_rate <= 1:
        raise ValueError(f"code rate must be in (0, 1], got {code_rate}")
    return math.sqrt(1.0 / (2.0 * code_rate * 10.0 ** (ebn0_db / 10.0)))


def frame_seed(run_seed: int, index: int, *extra: int) -> np.random.SeedSequence:
    """Per-frame seed: a SeedSequence keyed on (run seed, frame index, ...)."""
    return np.random.SeedSequence([int(run_seed), int(index), *map(int, extra)])


@dataclass(frozen=True)
class ChannelParams:
    sigma: float
    seed: int | np.random.SeedSequence = 0
    gain_a: float = 1.0
    ebn0_db: float | None = None
    noiseless: bool = False
    variance: float | None = None   # exact sigma**2 when known, so Lc avoids sqrt round-off

    def __post_init__(self):
        if not self.sigma > 0:
            raise ValueError(f"sigma must be positive, got {self.sigma}")
        if self.gain_a != 1.0:
            raise ValueError("channel gain is fixed at 1")

    @classmethod
    def from_ebn0(cls, ebn0_db: float, seed=0, code_rate: float = 0.5, **kw) -> "ChannelParams":
        var = 1.0 / (2.0 * code_rate * 10.0 ** (ebn0_db / 10.0))
        return cls(sigma_from_ebn0(ebn0_db, code_rate), seed, ebn0_db=ebn0_db, variance=var, **kw)

    @classmethod
    def from_variance(cls, variance: float, seed=0, **kw) -> "ChannelParams":
        return cls(math.sqrt(variance), seed, variance=variance, **kw)

    @property
    def noise_var(self) -> float:
        return self.variance if self.variance is not None else self.sigma**2

    def generator(self) -> np.random.Generator:
        """PCG64 bit generator; normals come from numpy's ziggurat sampler."""
        return np.random.Generator(np.random.PCG64(self.seed))


def lc_value(params: ChannelParams) -> Fxp20:
    return quantize(2.0 * params.gain_a / params.noise_var)


@dataclass(frozen=True)
class RxFrame:
    """Decoder input: four 253-entry streams of Q10 mantissas."""

    cs: np.ndarray
    cs_int: np.ndarray
    cp0: np.ndarray
    cp1: np.ndarray
    lc: int
    origin: tuple
    perm_digest: str
    clipped: int = 0

    @property
    def n_values(self) -> int:
        return len(self.cs) + len(self.cp0) + len(self.cp1)

    def observed_p0(self) -> np.ndarray:
        """True where cp0 holds a channel sample (rather than a punctured zero)."""
        flags = np.array([o is Origin.P0 for o in self.origin[:N_TURBO]])
        return np.concatenate([flags, np.ones(MEMORY, dtype=bool)])

    def observed_p1(self) -> np.ndarray:
        flags = np.array([o is Origin.P1 for o in self.origin[:N_TURBO]])
        return np.concatenate([flags, np.ones(MEMORY, dtype=bool)])


def awgn(mod: ModFrame, params: ChannelParams, p: Permutation, noise=None) -> RxFrame:
    """Add noise to every transmitted symbol, quantise, and depuncture.

    The noise matrix is drawn as one (256, 2) standard-normal block scaled by
    sigma: column 0 perturbs the systematic symbols, column 1 the parity
    symbols. Passing ``noise`` (same shape, already scaled) bypasses the
    generator.
    """
    if mod.perm_digest != p.digest:
        raise ValueError("frame was encoded with a different permutation")
    n = len(mod.xs)
    if noise is not None:
        noise = np.asarray(noise, dtype=np.float64).reshape(n, 2)
    elif params.noiseless:
        noise = np.zeros((n, 2))
    else:
        noise = params.generator().standard_normal((n, 2)) * params.sigma
    rx_x, clip_x = quantize_array(mod.xs / SCALE + noise[:, 0])
    rx_y, clip_y = quantize_array(mod.yp / SCALE + noise[:, 1])
    return assemble(rx_x, rx_y, mod.origin, lc_value(params).mantissa, p, clip_x + clip_y)


def assemble(rx_x, rx_y, origin, lc: int, p: Permutation, clipped: int = 0) -> RxFrame:
    """Split 256 received pairs into the decoder streams, zero-filling punctured parity."""
    rx_x = np.asarray(rx_x, dtype=np.int64)
    rx_y = np.asarray(rx_y, dtype=np.int64)
    if len(rx_x) != N_TURBO + 2 * MEMORY or len(rx_y) != len(rx_x):
        raise ValueError(f"expected {N_TURBO + 2 * MEMORY} received pairs")
    data = slice(0, N_TURBO)
    tail1 = slice(N_TURBO, N_STAGES)
    tail2 = slice(N_STAGES, N_STAGES + MEMORY)

    is_p0 = np.array([o is Origin.P0 for o in origin[data]])
    cs = np.concatenate([rx_x[data], rx_x[tail1]])
    cs_int = np.concatenate([interleave(rx_x[data], p), rx_x[tail2]])
    cp0 = np.concatenate([np.where(is_p0, rx_y[data], 0), rx_y[tail1]])
    cp1 = np.concatenate([np.where(is_p0, 0, rx_y[data]), rx_y[tail2]])
    return RxFrame(cs, cs_int, cp0, cp1, int(lc), tuple(origin), p.digest, clipped)
