"""The compiled and pure-Python kernels must agree exactly."""

import numpy as np
import pytest

from cdmaturbo import _pykernels
from cdmaturbo.siso import Backend, new_plane
from cdmaturbo.trellis import build_trellis

ck = pytest.importorskip("cdmaturbo._ckernels")

T = build_trellis()
NXT, GRP = T.next_state_table(), T.group_table()


def _run(mod, backend, g1, g2, normalize):
    plane = new_plane(g1, g2, backend)
    suffix = "fxp" if backend is Backend.FXP else "ref"
    s1 = getattr(mod, "forward_" + suffix)(plane.gamma1, plane.gamma2, NXT, GRP, plane.alpha, normalize)
    s2 = getattr(mod, "backward_" + suffix)(plane.gamma1, plane.gamma2, NXT, GRP, plane.beta, normalize)
    llr = getattr(mod, "llr_" + suffix)(plane.gamma1, plane.gamma2, plane.alpha, plane.beta, NXT, GRP)
    if backend is Backend.FXP:
        llr, s3 = llr
        return plane.alpha, plane.beta, llr, s1 + s2 + s3
    return plane.alpha, plane.beta, llr, 0


@pytest.mark.parametrize("normalize", [False, True])
def test_reference_kernels_agree(normalize):
    rng = np.random.default_rng(0)
    cs, cp, la = rng.normal(0, 2, (3, 253))
    g_py = _pykernels.branch_metrics_ref(cs, cp, la, 2.7)
    g_c = ck.branch_metrics_ref(cs, cp, la, 2.7)
    np.testing.assert_array_equal(g_py[0], g_c[0])
    a = _run(_pykernels, Backend.REFERENCE, *g_py, normalize)
    b = _run(ck, Backend.REFERENCE, *g_py, normalize)
    for x, y in zip(a[:3], b[:3]):
        np.testing.assert_allclose(x, y, rtol=0, atol=1e-12)


@pytest.mark.parametrize("scale", [3000, 400_000])
@pytest.mark.parametrize("normalize", [False, True])
def test_fxp_kernels_agree_bit_exact(scale, normalize):
    rng = np.random.default_rng(scale)
    cs, cp, la = rng.integers(-scale, scale, (3, 253))
    g_py = _pykernels.branch_metrics_fxp(cs, cp, la, 2500)
    g_c = ck.branch_metrics_fxp(cs, cp, la, 2500)
    assert [x.tolist() for x in g_py[:2]] == [x.tolist() for x in g_c[:2]]
    assert g_py[2] == g_c[2]
    a = _run(_pykernels, Backend.FXP, g_py[0], g_py[1], normalize)
    b = _run(ck, Backend.FXP, g_py[0], g_py[1], normalize)
    for x, y in zip(a[:3], b[:3]):
        assert np.array_equal(x, y)
    assert a[3] == b[3]
    if scale > 100_000:
        assert a[3] > 0
