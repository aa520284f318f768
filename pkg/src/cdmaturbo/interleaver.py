"""Turbo interleaver permutation over the 250 information positions."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

import numpy as np

N_TURBO = 250


class Direction(Enum):
    FWD = "fwd"
    INV = "inv"


class PermutationError(ValueError):
    def __init__(self, message: str, position: int | None = None):
        super().__init__(message)
        self.position = position


@dataclass(frozen=True, eq=False)
class Permutation:
    """``forward[i]`` is the source index feeding position ``i`` of the second encoder."""

    forward: np.ndarray
    inverse: np.ndarray = field(repr=False)

    def __len__(self) -> int:
        return len(self.forward)

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and np.array_equal(self.forward, other.forward)

    def __hash__(self) -> int:
        return hash(self.digest)

    @property
    def digest(self) -> str:
        """Order-sensitive identifier: first 16 hex chars of SHA-256 over int32 LE indices."""
        data = np.asarray(self.forward, dtype="<i4").tobytes()
        return hashlib.sha256(data).hexdigest()[:16]

    def save(self, path) -> None:
        Path(path).write_text("".join(f"{i}\n" for i in self.forward))


def load_permutation(source, size: int = N_TURBO) -> Permutation:
    """Validate an address table and build its inverse.

    ``source`` is a sequence of integers or a path to a text file with one
    0-based index per line.
    """
    if isinstance(source, (str, Path)):
        source = _read_table(Path(source))
    table = [int(v) for v in source]
    if len(table) != size:
        raise PermutationError(f"expected {size} indices, got {len(table)}")
    seen = {}
    for pos, idx in enumerate(table):
        if not 0 <= idx < size:
            raise PermutationError(f"index {idx} at position {pos} out of range", pos)
        if idx in seen:
            raise PermutationError(
                f"index {idx} at position {pos} duplicates position {seen[idx]}", pos
            )
        seen[idx] = pos
    forward = np.array(table, dtype=np.int64)
    inverse = np.empty_like(forward)
    inverse[forward] = np.arange(size)
    forward.setflags(write=False)
    inverse.setflags(write=False)
    return Permutation(forward, inverse)


def _read_table(path: Path) -> list[int]:
    out = []
    for lineno, line in enumerate(path.read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            out.append(int(line))
        except ValueError:
            raise PermutationError(f"{path}:{lineno}: not an integer: {line!r}") from None
    return out


def default_permutation(seed: int = 0, size: int = N_TURBO) -> Permutation:
    """Fisher-Yates shuffle driven by numpy's PCG64 generator seeded with ``seed``."""
    rng = np.random.Generator(np.random.PCG64(seed))
    return load_permutation(rng.permutation(size), size)


def identity_permutation(size: int = N_TURBO) -> Permutation:
    return load_permutation(range(size), size)


def permute(values, p: Permutation, direction: Direction = Direction.FWD) -> np.ndarray:
    values = np.asarray(values)
    if values.shape[0] != len(p):
        raise PermutationError(f"length {values.shape[0]} does not match permutation size {len(p)}")
    if direction is Direction.FWD:
        return values[p.forward]
    return values[p.inverse]


def interleave(values, p: Permutation) -> np.ndarray:
    return permute(values, p, Direction.FWD)


def deinterleave(values, p: Permutation) -> np.ndarray:
    return permute(values, p, Direction.INV)
