"""Compare the compiled and pure-Python SISO kernels.

    python benchmarks/bench_kernels.py [--repeat N]

Times one 253-stage SISO pass and one 7-iteration turbo decode for each
arithmetic backend, with each kernel implementation, and checks that both
implementations return identical LLRs.
"""

import argparse
import time

import numpy as np

from cdmaturbo import _kernels, _pykernels
from cdmaturbo.channel import ChannelParams, awgn
from cdmaturbo.decoder import turbo_decode
from cdmaturbo.interleaver import default_permutation
from cdmaturbo.siso import Backend, SisoInput, siso_decode
from cdmaturbo.tx import bpsk_map, turbo_encode

try:
    from cdmaturbo import _ckernels
except ImportError:
    _ckernels = None


def _best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    p = default_permutation(0)
    info = np.random.default_rng(0).integers(0, 2, 250, dtype=np.uint8)
    rx = awgn(bpsk_map(turbo_encode(info, p)), ChannelParams.from_ebn0(1.35, 1), p)
    fxp_in = SisoInput(rx.cs, rx.cp0, np.zeros(253, dtype=np.int64), rx.lc)
    ref_in = SisoInput(rx.cs / 1024, rx.cp0 / 1024, np.zeros(253), rx.lc / 1024)

    impls = [("python", _pykernels)] + ([("cython", _ckernels)] if _ckernels else [])
    results = {}
    original = _kernels.impl
    try:
        for name, mod in impls:
            _kernels.impl = mod
            for backend, inp in ((Backend.REFERENCE, ref_in), (Backend.FXP, fxp_in)):
                llr = siso_decode(inp, backend=backend).llr_posteriori
                t_siso = _best_of(lambda: siso_decode(inp, backend=backend), args.repeat)
                t_turbo = _best_of(lambda: turbo_decode(rx, p, 7, backend), args.repeat)
                results[name, backend] = (t_siso, t_turbo, llr)
    finally:
        _kernels.impl = original

    print(f"{'kernel':8} {'backend':5} {'siso pass':>12} {'7-iter decode':>15} {'speedup':>8}")
    for (name, backend), (t_siso, t_turbo, _) in results.items():
        base = results["python", backend][1]
        print(f"{name:8} {backend.value:5} {t_siso * 1e3:9.3f} ms {t_turbo * 1e3:12.2f} ms {base / t_turbo:7.1f}x")
    if _ckernels:
        for backend in Backend:
            a, b = results["python", backend][2], results["cython", backend][2]
            same = np.array_equal(a, b) if backend is Backend.FXP else np.allclose(a, b, atol=1e-9)
            print(f"{backend.value}: python and cython LLRs identical: {same}")
    else:
        print("compiled kernels not built; only the fallback was timed")


if __name__ == "__main__":
    main()
