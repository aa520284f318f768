"""One Max-Log-MAP soft-in/soft-out pass over a terminated block.

Two arithmetic backends share the same recursions. ``REFERENCE`` works in
float64; ``FXP`` works on Q10 mantissas with 20-bit saturation. For FXP every
stream (cs, cp, apriori, lc) is a mantissa; for REFERENCE they are real values.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from . import _kernels
from .fxp import SCALE
from .trellis import N_STATES, Trellis, build_trellis

# -infinity surrogate for unreachable start/end states
NEG_INF_VALUE = -250.0
NEG_INF_MANT = int(NEG_INF_VALUE * SCALE)


class Backend(Enum):
    REFERENCE = "ref"
    FXP = "fxp"

    @classmethod
    def parse(cls, value) -> "Backend":
        if isinstance(value, cls):
            return value
        return cls(str(value).lower())


@dataclass
class SisoInput:
    cs: np.ndarray
    cp: np.ndarray
    apriori: np.ndarray
    lc: float | int

    def __post_init__(self):
        if not len(self.cs) == len(self.cp) == len(self.apriori):
            raise ValueError("cs, cp and apriori must have equal length")

    def __len__(self) -> int:
        return len(self.cs)


@dataclass
class MetricPlane:
    gamma1: np.ndarray
    gamma2: np.ndarray
    alpha: np.ndarray
    beta: np.ndarray
    backend: Backend
    saturations: int = 0

    @property
    def n_stages(self) -> int:
        return len(self.gamma1)


@dataclass
class SisoOutput:
    llr_posteriori: np.ndarray
    saturations: int = 0
    plane: MetricPlane | None = field(default=None, repr=False)


def boundary(backend: Backend) -> np.ndarray:
    """Start (and end) metric vector: 0 for state 0, -250 elsewhere."""
    if backend is Backend.FXP:
        v = np.full(N_STATES, NEG_INF_MANT, dtype=np.int64)
        v[0] = 0
    else:
        v = np.full(N_STATES, NEG_INF_VALUE)
        v[0] = 0.0
    return v


def branch_metrics(inp: SisoInput, backend: Backend = Backend.REFERENCE):
    """(gamma1, gamma2, saturations): the PLUS- and MINUS-group one-branch metrics."""
    backend = Backend.parse(backend)
    if backend is Backend.FXP:
        return _kernels.impl.branch_metrics_fxp(inp.cs, inp.cp, inp.apriori, int(inp.lc))
    g1, g2 = _kernels.impl.branch_metrics_ref(inp.cs, inp.cp, inp.apriori, float(inp.lc))
    return g1, g2, 0


def new_plane(gamma1, gamma2, backend: Backend) -> MetricPlane:
    n = len(gamma1)
    dtype = np.int64 if backend is Backend.FXP else np.float64
    alpha = np.zeros((n + 1, N_STATES), dtype=dtype)
    beta = np.zeros((n + 1, N_STATES), dtype=dtype)
    alpha[0] = boundary(backend)
    beta[n] = boundary(backend)
    return MetricPlane(np.asarray(gamma1, dtype=dtype), np.asarray(gamma2, dtype=dtype), alpha, beta, backend)


def _default_normalize(backend: Backend, normalize: bool | None) -> bool:
    return backend is Backend.FXP if normalize is None else normalize


def forward_pass(plane: MetricPlane, trellis: Trellis | None = None, normalize: bool | None = None) -> np.ndarray:
    """Fill ``plane.alpha[1:]`` from ``plane.alpha[0]``.

    ``normalize`` subtracts the per-stage maximum; it is on by default for the
    fixed-point backend only and never changes the LLRs.
    """
    trellis = trellis or build_trellis()
    fn = _kernels.impl.forward_fxp if plane.backend is Backend.FXP else _kernels.impl.forward_ref
    plane.saturations += fn(
        plane.gamma1, plane.gamma2, trellis.next_state_table(), trellis.group_table(),
        plane.alpha, _default_normalize(plane.backend, normalize),
    )
    return plane.alpha


def backward_pass(plane: MetricPlane, trellis: Trellis | None = None, normalize: bool | None = None) -> np.ndarray:
    trellis = trellis or build_trellis()
    fn = _kernels.impl.backward_fxp if plane.backend is Backend.FXP else _kernels.impl.backward_ref
    plane.saturations += fn(
        plane.gamma1, plane.gamma2, trellis.next_state_table(), trellis.group_table(),
        plane.beta, _default_normalize(plane.backend, normalize),
    )
    return plane.beta


def llr_pass(plane: MetricPlane, trellis: Trellis | None = None) -> SisoOutput:
    trellis = trellis or build_trellis()
    nxt, grp = trellis.next_state_table(), trellis.group_table()
    if plane.backend is Backend.FXP:
        llr, sat = _kernels.impl.llr_fxp(plane.gamma1, plane.gamma2, plane.alpha, plane.beta, nxt, grp)
        plane.saturations += sat
    else:
        llr = _kernels.impl.llr_ref(plane.gamma1, plane.gamma2, plane.alpha, plane.beta, nxt, grp)
    return SisoOutput(llr, plane.saturations, plane)


def siso_decode(
    inp: SisoInput,
    trellis: Trellis | None = None,
    backend: Backend | str = Backend.REFERENCE,
    normalize: bool | None = None,
) -> SisoOutput:
    backend = Backend.parse(backend)
    trellis = trellis or build_trellis()
    g1, g2, sat = branch_metrics(inp, backend)
    plane = new_plane(g1, g2, backend)
    plane.saturations = sat
    forward_pass(plane, trellis, normalize)
    backward_pass(plane, trellis, normalize)
    return llr_pass(plane, trellis)
