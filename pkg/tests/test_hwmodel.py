import pytest

from cdmaturbo.hwmodel import HwConfig, cycles, fsm_schedule, format_table, speedup, timing


def test_cycle_examples():
    assert cycles(HwConfig(253, 1)) == 6081
    assert cycles(HwConfig(23, 1)) == 561
    assert cycles(HwConfig(253, 4)) == 24321
    assert timing(HwConfig.serial(4)).time_us == pytest.approx(238.516, rel=1e-3)


@pytest.mark.parametrize("make", [HwConfig.serial, HwConfig.parallel])
def test_cycles_linear_in_iterations(make):
    c = [cycles(make(n)) for n in range(1, 8)]
    slope = 2 * 2 * (6 * make(1).packet_size + 2)
    assert all(b - a == slope for a, b in zip(c, c[1:]))


@pytest.mark.parametrize("make", [HwConfig.serial, HwConfig.parallel])
@pytest.mark.parametrize("n_iter", range(1, 8))
def test_fsm_matches_closed_form(make, n_iter):
    cfg = make(n_iter)
    sched = fsm_schedule(cfg)
    assert sched.total_cycles == cycles(cfg)
    assert sched.visits["stateReset"] == 1
    assert sched.max_gamma_counter == cfg.packet_size
    assert sched.max_beta_counter == cfg.packet_size
    assert sched.visits["state13"] == sched.visits["state14"] == 2 * n_iter
    assert len(sched.visits) == 15


def test_loop_counter_reaches_253():
    sched = fsm_schedule(HwConfig.serial(1))
    assert sched.max_gamma_counter == 253
    assert sched.visits["state7"] == 2 * 253


def test_timing_reproduces_reported_figures():
    s1, s4 = timing(HwConfig.serial(1)), timing(HwConfig.serial(4))
    p1, p4 = timing(HwConfig.parallel(1)), timing(HwConfig.parallel(4))
    assert s1.time_us == pytest.approx(59.636, rel=5e-3)
    assert s1.throughput_mbps == pytest.approx(4.19, rel=5e-3)
    assert s4.throughput_mbps == pytest.approx(1.048, rel=5e-3)
    assert p1.time_us == pytest.approx(22.44, rel=5e-3)
    assert p1.throughput_mbps == pytest.approx(11.14, rel=5e-3)
    assert p4.throughput_mbps == pytest.approx(2.78, rel=5e-3)
    assert (s1.area_aluts, p1.area_aluts) == (6367, 28085)


def test_speedup():
    assert speedup(1) == pytest.approx(2.66, rel=0.03)
    assert speedup(4) == pytest.approx(2.66, rel=0.03)


def test_config_validation():
    with pytest.raises(ValueError):
        HwConfig(0)
    with pytest.raises(ValueError):
        HwConfig(lanes=4)
    with pytest.raises(ValueError):
        HwConfig(clock_mhz=0)


def test_table_formats():
    reports = [timing(HwConfig.serial(1))]
    csv = format_table(reports, "csv").splitlines()
    assert csv[0].startswith("lanes,iters")
    assert csv[1].split(",")[4] == "6081"
    assert "6081" in format_table(reports)
