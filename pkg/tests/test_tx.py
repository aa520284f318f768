import numpy as np

from cdmaturbo.interleaver import identity_permutation, interleave
from cdmaturbo.trellis import rsc_step
from cdmaturbo.tx import Origin, bpsk_map, rsc_encode, turbo_encode


def test_all_zero_packet(perm):
    f = turbo_encode(np.zeros(250, dtype=np.uint8), perm)
    assert len(f) == 256
    assert not f.x.any() and not f.y.any()
    assert f.final_states == (0, 0)


def test_single_one_at_start():
    info = np.zeros(250, dtype=np.uint8)
    info[0] = 1
    f = turbo_encode(info, identity_permutation())
    assert f.pairs[0] == (1, 1)


def test_termination_and_systematic_transparency(perm):
    rng = np.random.default_rng(0)
    for _ in range(1000):
        info = rng.integers(0, 2, 250, dtype=np.uint8)
        f = turbo_encode(info, perm)
        assert f.final_states == (0, 0)
        assert len(f) == 256
        assert np.array_equal(f.x[:250], info)


def test_puncturing_pattern(perm):
    rng = np.random.default_rng(1)
    info = rng.integers(0, 2, 250, dtype=np.uint8)
    f = turbo_encode(info, perm)
    y0, tx1, ty1, _ = rsc_encode(info)
    y0p, tx2, ty2, _ = rsc_encode(interleave(info, perm))
    assert np.array_equal(f.y[0:250:2], y0[0::2])
    assert np.array_equal(f.y[1:250:2], y0p[1::2])
    assert np.array_equal(f.x[250:253], tx1) and np.array_equal(f.y[250:253], ty1)
    assert np.array_equal(f.x[253:256], tx2) and np.array_equal(f.y[253:256], ty2)
    assert [o.name for o in f.origin[:4]] == ["P0", "P1", "P0", "P1"]
    assert f.origin[250:] == (Origin.P0,) * 3 + (Origin.P1,) * 3


def test_tail_drives_state_to_zero():
    rng = np.random.default_rng(2)
    info = rng.integers(0, 2, 250, dtype=np.uint8)
    _, tx, _, final = rsc_encode(info)
    s = 0
    for u in np.concatenate([info, tx]):
        s, _ = rsc_step(s, int(u))
    assert s == final == 0


def test_bpsk(perm):
    info = np.zeros(250, dtype=np.uint8)
    m = bpsk_map(turbo_encode(info, perm))
    assert set(m.xs.tolist()) == {-1024}
    info[3] = 1
    m = bpsk_map(turbo_encode(info, perm))
    assert m.xs[3] == 1024
    assert set(m.xs.tolist()) | set(m.yp.tolist()) <= {1024, -1024}


def test_rejects_bad_packets(perm):
    import pytest
    with pytest.raises(ValueError):
        turbo_encode(np.zeros(249, dtype=np.uint8), perm)
    with pytest.raises(ValueError):
        turbo_encode(np.full(250, 2, dtype=np.uint8), perm)
