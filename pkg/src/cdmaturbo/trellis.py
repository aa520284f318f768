"""The 8-state constituent code of the cdma2000 turbo encoder.

Feedback polynomial 1 + D^2 + D^3, parity polynomial 1 + D + D^3. A state is
packed as ``4*s1 + 2*s2 + s3`` with ``s1`` the most recently shifted bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from functools import lru_cache

import numpy as np

N_STATES = 8
MEMORY = 3


class Group(IntEnum):
    """Which branch metric a state's transitions use: cs + cp or cs - cp."""

    PLUS = 0
    MINUS = 1


@dataclass(frozen=True)
class Transition:
    origin: int
    input: int
    target: int
    parity: int
    group: Group


def _bits(state: int) -> tuple[int, int, int]:
    return (state >> 2) & 1, (state >> 1) & 1, state & 1


def rsc_step(state: int, u: int) -> tuple[int, int]:
    """Clock the encoder once. Returns (next_state, parity)."""
    if not 0 <= state < N_STATES:
        raise ValueError(f"state {state} out of range")
    s1, s2, s3 = _bits(state)
    f = (u & 1) ^ s2 ^ s3
    return (f << 2) | (s1 << 1) | s2, f ^ s1 ^ s3


def tail_input(state: int) -> int:
    """Input bit that zeroes the feedback, so three of them flush the register."""
    _, s2, s3 = _bits(state)
    return s2 ^ s3


@dataclass(frozen=True)
class Trellis:
    transitions: tuple[tuple[Transition, Transition], ...]

    @property
    def ones_pairing(self) -> dict[int, int]:
        return {m: t[1].target for m, t in enumerate(self.transitions)}

    @property
    def zeros_pairing(self) -> dict[int, int]:
        return {m: t[0].target for m, t in enumerate(self.transitions)}

    @property
    def groups(self) -> tuple[Group, ...]:
        return tuple(t[1].group for t in self.transitions)

    def next_state_table(self) -> np.ndarray:
        """int32 array [state, input] -> next state, as consumed by the kernels."""
        return np.array([[t[0].target, t[1].target] for t in self.transitions], dtype=np.int32)

    def parity_table(self) -> np.ndarray:
        return np.array([[t[0].parity, t[1].parity] for t in self.transitions], dtype=np.int32)

    def group_table(self) -> np.ndarray:
        return np.array([int(g) for g in self.groups], dtype=np.int32)

    def predecessors(self, state: int) -> list[Transition]:
        return [t for pair in self.transitions for t in pair if t.target == state]

    def dump(self) -> str:
        lines = ["state input next parity group"]
        for pair in self.transitions:
            for t in pair:
                lines.append(f"{t.origin} {t.input} {t.target} {t.parity} {t.group.name}")
        return "\n".join(lines) + "\n"


@lru_cache(maxsize=None)
def build_trellis() -> Trellis:
    rows = []
    for m in range(N_STATES):
        _, p1 = rsc_step(m, 1)
        group = Group.PLUS if p1 else Group.MINUS
        pair = []
        for u in (0, 1):
            nxt, p = rsc_step(m, u)
            pair.append(Transition(m, u, nxt, p, group))
        rows.append(tuple(pair))
    trellis = Trellis(tuple(rows))
    _check(trellis)
    return trellis


def _check(trellis: Trellis) -> None:
    for u in (0, 1):
        targets = sorted(pair[u].target for pair in trellis.transitions)
        if targets != list(range(N_STATES)):
            raise AssertionError(f"input {u} does not permute the states")
    for pair in trellis.transitions:
        # the zero branch must carry the opposite parity so its metric is the negation
        if pair[0].parity == pair[1].parity:
            raise AssertionError(f"state {pair[0].origin} branches are not antipodal")
