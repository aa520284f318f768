"""Bit-accurate software model of a fixed-point Max-Log-MAP cdma2000 turbo codec."""

from ._kernels import BACKEND_NAME as KERNEL_BACKEND
from .channel import ChannelParams, RxFrame, awgn, lc_value, sigma_from_ebn0
from .decoder import DecodeResult, Decision, extrinsic, turbo_decode
from .fxp import Fxp20, quantize
from .interleaver import Direction, Permutation, default_permutation, load_permutation, permute
from .siso import Backend, SisoInput, siso_decode
from .trellis import build_trellis, rsc_step, tail_input
from .tx import TxFrame, bpsk_map, turbo_encode

__all__ = [
    "KERNEL_BACKEND", "ChannelParams", "RxFrame", "awgn", "lc_value", "sigma_from_ebn0",
    "DecodeResult", "Decision", "extrinsic", "turbo_decode", "Fxp20", "quantize",
    "Direction", "Permutation", "default_permutation", "load_permutation", "permute",
    "Backend", "SisoInput", "siso_decode", "build_trellis", "rsc_step", "tail_input",
    "TxFrame", "bpsk_map", "turbo_encode",
]
