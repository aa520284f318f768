"""Cycle, latency and throughput model of the FPGA decoder and its control FSM."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterator

from .interleaver import N_TURBO

N_STAGES = 253
LANES_PARALLEL = 11
STATES_PER_STAGE = 6
LOOP_OVERHEAD = 2


@dataclass(frozen=True)
class HwConfig:
    packet_size: int = N_STAGES
    n_iter: int = 1
    clock_mhz: float = 101.97
    lanes: int = 1
    area_aluts: int = 6367          # reported synthesis result, not computed
    info_bits: int = N_TURBO

    def __post_init__(self):
        if self.packet_size < 1:
            raise ValueError("packet_size must be >= 1")
        if self.n_iter < 1:
            raise ValueError("n_iter must be >= 1")
        if self.lanes not in (1, LANES_PARALLEL):
            raise ValueError(f"lanes must be 1 or {LANES_PARALLEL}")
        if not self.clock_mhz > 0:
            raise ValueError("clock_mhz must be positive")

    @classmethod
    def serial(cls, n_iter: int = 1) -> "HwConfig":
        return cls(N_STAGES, n_iter, 101.97, 1, 6367)

    @classmethod
    def parallel(cls, n_iter: int = 1) -> "HwConfig":
        # 253 stages split across 11 lanes -> 23 sequential steps, at 25 MHz
        return cls(-(-N_STAGES // LANES_PARALLEL), n_iter, 25.0, LANES_PARALLEL, 28085)

    @classmethod
    def for_lanes(cls, lanes: int, n_iter: int = 1) -> "HwConfig":
        return cls.parallel(n_iter) if lanes == LANES_PARALLEL else cls.serial(n_iter)


@dataclass(frozen=True)
class TimingReport:
    cycles: int
    time_us: float
    throughput_mbps: float
    area_aluts: int
    config: HwConfig


def cycles(cfg: HwConfig) -> int:
    """Reset + per SISO pass (branch/alpha loop + beta/LLR loop), two passes per iteration."""
    loop = STATES_PER_STAGE * cfg.packet_size + LOOP_OVERHEAD
    return 1 + (loop + loop) * cfg.n_iter * 2


def timing(cfg: HwConfig) -> TimingReport:
    n = cycles(cfg)
    time_us = n / cfg.clock_mhz
    return TimingReport(n, time_us, cfg.info_bits / time_us, cfg.area_aluts, cfg)


def speedup(n_iter: int = 1) -> float:
    return timing(HwConfig.parallel(n_iter)).throughput_mbps / timing(HwConfig.serial(n_iter)).throughput_mbps


# Control FSM. Each SISO pass runs:
#   state1 (alpha init / gamma counter reset), then packet_size x [state1..state6],
#   state6 once more when the gamma counter hits packet_size;
#   packet_size x [state7..state12], then state13 (count) and state14 (test).
# stateReset is visited once per decode.

RESET = "stateReset"
FSM_STATES = [RESET] + [f"state{i}" for i in range(1, 15)]


def iter_fsm(cfg: HwConfig) -> Iterator[tuple[str, int, int]]:
    """Yield (state, gamma_counter, beta_counter) for every clock cycle."""
    yield RESET, 0, 0
    half_iters = 0
    while True:
        gamma = 0
        yield "state1", gamma, 0
        while gamma < cfg.packet_size:
            for s in range(1, 7):
                yield f"state{s}", gamma, 0
            gamma += 1
        yield "state6", gamma, 0
        beta = 0
        while beta < cfg.packet_size:
            for s in range(7, 13):
                yield f"state{s}", gamma, beta
            beta += 1
        half_iters += 1
        yield "state13", gamma, beta
        yield "state14", gamma, beta
        if half_iters == 2 * cfg.n_iter:
            return


@dataclass(frozen=True)
class FsmSchedule:
    total_cycles: int
    visits: dict
    max_gamma_counter: int
    max_beta_counter: int
    sequence_head: tuple


def fsm_schedule(cfg: HwConfig) -> FsmSchedule:
    visits = Counter()
    gmax = bmax = 0
    head = []
    for state, g, b in iter_fsm(cfg):
        visits[state] += 1
        gmax = max(gmax, g)
        bmax = max(bmax, b)
        if len(head) < 16:
            head.append(state)
    return FsmSchedule(sum(visits.values()), dict(visits), gmax, bmax, tuple(head))


def format_table(reports, fmt: str = "text") -> str:
    header = ["lanes", "iters", "packet_size", "clock_mhz", "cycles", "time_us", "throughput_mbps", "area_aluts"]
    rows = [[r.config.lanes, r.config.n_iter, r.config.packet_size, f"{r.config.clock_mhz:g}",
             r.cycles, f"{r.time_us:.3f}", f"{r.throughput_mbps:.3f}", r.area_aluts] for r in reports]
    if fmt == "csv":
        return "\n".join(",".join(map(str, row)) for row in [header] + rows) + "\n"
    widths = [max(len(str(x)) for x in col) for col in zip(header, *rows)]
    lines = ["  ".join(str(x).rjust(w) for x, w in zip(row, widths)) for row in [header] + rows]
    return "\n".join(lines) + "\n"
