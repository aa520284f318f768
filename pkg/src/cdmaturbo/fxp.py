"""Q10 fixed-point scalars in a 20-bit two's-complement register.

Values are stored as integer mantissas with an implicit scale of 1024.
Every narrowing step saturates to the 20-bit range and reports whether
it had to clip; nothing wraps around.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

FRAC_BITS = 10
SCALE = 1 << FRAC_BITS
WORD_BITS = 20
MANT_MIN = -(1 << (WORD_BITS - 1))
MANT_MAX = (1 << (WORD_BITS - 1)) - 1
HEX_DIGITS = WORD_BITS // 4
_MASK = (1 << WORD_BITS) - 1


def saturate(m: int) -> tuple[int, bool]:
    """Clamp an integer mantissa to 20 bits; return (value, clipped)."""
    if m > MANT_MAX:
        return MANT_MAX, True
    if m < MANT_MIN:
        return MANT_MIN, True
    return m, False


@dataclass(frozen=True)
class Fxp20:
    """A Q10 number. ``saturated`` is set only by the operation that produced it."""

    mantissa: int
    saturated: bool = False

    def __post_init__(self):
        if not MANT_MIN <= self.mantissa <= MANT_MAX:
            raise ValueError(f"mantissa {self.mantissa} outside 20-bit range")

    @classmethod
    def from_mantissa(cls, m: int) -> "Fxp20":
        v, sat = saturate(int(m))
        return cls(v, sat)

    @classmethod
    def from_hex(cls, text: str) -> "Fxp20":
        raw = int(text, 16)
        if raw >> WORD_BITS:
            raise ValueError(f"{text!r} does not fit in {WORD_BITS} bits")
        if raw & (1 << (WORD_BITS - 1)):
            raw -= 1 << WORD_BITS
        return cls(raw)

    @property
    def value(self) -> float:
        return self.mantissa / SCALE

    def to_hex(self) -> str:
        return to_hex(self.mantissa)

    def __float__(self) -> float:
        return self.value

    def __repr__(self) -> str:
        flag = ", saturated" if self.saturated else ""
        return f"Fxp20({self.mantissa} = {self.to_hex()}{flag})"


def to_hex(mantissa: int) -> str:
    """Render a mantissa as the 5-digit pattern of its 20-bit register."""
    return f"{int(mantissa) & _MASK:0{HEX_DIGITS}X}"


def from_hex(text: str) -> int:
    return Fxp20.from_hex(text).mantissa


def quantize(x: float) -> Fxp20:
    """floor(x * 1024), saturated."""
    if not math.isfinite(x):
        raise ValueError(f"cannot quantize non-finite value {x!r}")
    return Fxp20.from_mantissa(math.floor(x * SCALE))


def add(a: Fxp20, b: Fxp20) -> Fxp20:
    return Fxp20.from_mantissa(a.mantissa + b.mantissa)


def sub(a: Fxp20, b: Fxp20) -> Fxp20:
    return Fxp20.from_mantissa(a.mantissa - b.mantissa)


def neg(a: Fxp20) -> Fxp20:
    # -(-2**19) is the one negation that clips
    return Fxp20.from_mantissa(-a.mantissa)


def mul_q10(a: Fxp20, b: Fxp20) -> Fxp20:
    """Product rescaled by floor division, computed at full width before narrowing."""
    return Fxp20.from_mantissa((a.mantissa * b.mantissa) >> FRAC_BITS)


def half(a: Fxp20) -> Fxp20:
    return Fxp20(a.mantissa >> 1)


def maximum(a: Fxp20, b: Fxp20) -> Fxp20:
    return a if a.mantissa >= b.mantissa else b


ONE = Fxp20(SCALE)
MINUS_ONE = Fxp20(-SCALE)
ZERO = Fxp20(0)


# Array forms used by the decoder kernels. Mantissas live in int64 arrays.

def quantize_array(x) -> tuple[np.ndarray, int]:
    """Vectorised :func:`quantize`; returns (mantissas, number of clipped entries)."""
    x = np.asarray(x, dtype=np.float64)
    if not np.all(np.isfinite(x)):
        raise ValueError("cannot quantize non-finite values")
    m = np.floor(x * SCALE).astype(np.int64)
    clipped = int(np.count_nonzero((m > MANT_MAX) | (m < MANT_MIN)))
    return np.clip(m, MANT_MIN, MANT_MAX), clipped


def saturate_array(m) -> tuple[np.ndarray, int]:
    m = np.asarray(m, dtype=np.int64)
    clipped = int(np.count_nonzero((m > MANT_MAX) | (m < MANT_MIN)))
    return np.clip(m, MANT_MIN, MANT_MAX), clipped


def to_float_array(m) -> np.ndarray:
    return np.asarray(m, dtype=np.int64) / SCALE
