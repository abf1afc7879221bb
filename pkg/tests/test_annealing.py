import math

import mpmath as mp
import numpy as np
import pytest

from coanneal.annealing import (AH_TYPE, COMBINED_MIN, KALAI_VEMPALA,
                                AnnealerConfig, TemperatureSchedule,
                                anneal_heuristic, anneal_kv,
                                heuristic_params, heuristic_phase_count,
                                next_temperature, theoretical_params,
                                theoretical_walk_length)
from coanneal.oracles import ball_oracle, cube_oracle


def test_schedule_validation():
    TemperatureSchedule(KALAI_VEMPALA, n=5, vartheta=5)
    with pytest.raises(ValueError):
        TemperatureSchedule("other", n=5, vartheta=5)
    with pytest.raises(ValueError):
        TemperatureSchedule(AH_TYPE, n=5, vartheta=4.0, alpha=1.4)
    # alpha barely above the threshold is accepted
    TemperatureSchedule(AH_TYPE, n=5, vartheta=4.0, alpha=1.51)


def test_next_temperature_values():
    kv = TemperatureSchedule(KALAI_VEMPALA, n=21, vartheta=21, T0=1.0)
    assert next_temperature(kv, 1) == pytest.approx(1.0)
    assert next_temperature(kv, 2) == pytest.approx(1.0 - 1.0 / math.sqrt(21))
    ah = TemperatureSchedule(AH_TYPE, n=21, vartheta=21, alpha=4.0)
    assert next_temperature(ah, 2) == pytest.approx(
        1.0 - 1.0 / (4.0 * math.sqrt(21)))
    both = TemperatureSchedule(COMBINED_MIN, n=21, vartheta=21, alpha=4.0)
    # the dimension branch cools faster here, so the minimum follows it
    assert next_temperature(both, 3) == pytest.approx(
        (1.0 - 1.0 / math.sqrt(21)) ** 2)
    with pytest.raises(ValueError):
        next_temperature(kv, 0)


def test_theoretical_phase_and_sample_counts():
    tp = theoretical_params(n=21, R=1.0, r=0.1, eps_bar=1e-3, p=0.1,
                            alpha=4.0, vartheta=21.0)
    assert tp.m == 232
    assert tp.N == 1_023_120_000
    # the mixing budget is far too small for practical runs
    assert 0 < tp.q < mp.mpf("1e-250")
    assert tp.ell > 10**30


def test_theoretical_params_independent_evaluation():
    # re-derive every quantity from scratch in extended precision
    n, R, r, eps_bar, p, alpha, vt = 15, 1.0, 0.05, 1e-3, 0.1, 4.0, 15.0
    tp = theoretical_params(n, R, r, eps_bar, p, alpha, vt)
    with mp.workdps(260):
        rt = mp.sqrt(vt)
        m = int(mp.ceil((alpha * rt - mp.mpf("0.5"))
                        * mp.log(2 * n * R / (p * eps_bar)) + 1))
        N = int(mp.ceil(mp.mpf(1000) * n**2 * m / p))
        q = (mp.mpf(p) / (102000 * m * n**2 * R**4)) / 4096 \
            * (mp.mpf(r) / (n + 1))**4 \
            * (mp.mpf(p) * eps_bar / (8 * R * n))**(8 * rt + 4)
        dt = rt / (alpha * rt - 1)
        eps = mp.mpf(1)
        front = 16384 * mp.e**2 * mp.mpf(10)**30 * n**3 * (1 + eps)**2 \
            / ((1 - dt)**4 * mp.exp(4 * dt))
        la = 256 * mp.exp(-2 * dt) * n * mp.sqrt(n) * (1 + eps) \
            / ((1 - dt)**4 * mp.exp(2 * dt) * q**2)
        lb = 2 * mp.exp(-2 * dt) / ((1 - dt)**2 * q**2)
        ell = int(mp.ceil(front * mp.log(la)**2 * mp.log(lb)**3))
        assert tp.m == m
        assert tp.N == N
        assert mp.almosteq(mp.mpf(tp.q), q, rel_eps=mp.mpf(10)**-80)
        assert tp.ell == ell


def test_theoretical_walk_length_monotone_in_q():
    big = theoretical_walk_length(10, 1.0, mp.mpf("1e-6"), 4.0, 10.0)
    small = theoretical_walk_length(10, 1.0, mp.mpf("1e-12"), 4.0, 10.0)
    assert small > big > 10**30
    with pytest.raises(ValueError):
        theoretical_walk_length(10, 1.0, 1.5, 4.0, 10.0)


def test_heuristic_params():
    assert heuristic_params(21) == (97, 97)
    assert heuristic_params(15) == (59, 59)
    assert heuristic_params(1) == (1, 1)


def test_heuristic_phase_count_matches_run():
    sched = TemperatureSchedule(COMBINED_MIN, n=3, vartheta=3.0, alpha=4.0)
    count = heuristic_phase_count(sched, 3, 0.2, 0.5)
    o = cube_oracle(3)
    c = np.array([1.0, 0.0, 0.0])
    cfg = AnnealerConfig(c=c, oracle=o, schedule=sched, epsilon_bar=0.2,
                         p=0.5, seed=1)
    report = anneal_heuristic(cfg)
    assert len(report.phases) == count
    # temperatures follow the schedule and decrease strictly
    temps = [r.temperature for r in report.phases]
    assert temps == sorted(temps, reverse=True)
    assert temps[0] == pytest.approx(1.0)


def test_config_validation():
    o = cube_oracle(3)
    sched = TemperatureSchedule(COMBINED_MIN, n=3, vartheta=3.0)
    with pytest.raises(ValueError):
        AnnealerConfig(c=np.array([1.0, 1.0, 0.0]), oracle=o, schedule=sched)
    with pytest.raises(ValueError):
        AnnealerConfig(c=np.array([1.0, 0.0]), oracle=o, schedule=sched)
    with pytest.raises(ValueError):
        AnnealerConfig(c=np.array([1.0, 0.0, 0.0]), oracle=o, schedule=sched,
                       p=1.5)
    cfg = AnnealerConfig(c=np.array([1.0, 0.0, 0.0]), oracle=o,
                         schedule=sched)
    assert (cfg.N, cfg.ell) == heuristic_params(3)
    assert cfg.burn_in_steps == 30


def test_anneal_heuristic_minimizes_on_cube():
    o = cube_oracle(4)
    c = np.full(4, 0.5)
    sched = TemperatureSchedule(COMBINED_MIN, n=4, vartheta=4.0)
    cfg = AnnealerConfig(c=c, oracle=o, schedule=sched, epsilon_bar=0.05,
                         p=0.5, N=20, ell=25, seed=3)
    report = anneal_heuristic(cfg)
    # minimum of <c, x> over the cube is 0 at the origin
    assert report.final_objective < 0.25
    assert o.contains(report.final_point)
    assert report.total_oracle_calls > 0
    assert report.algorithm == "anneal_heuristic"


def test_anneal_heuristic_deterministic():
    o = cube_oracle(3)
    c = np.array([0.0, 1.0, 0.0])
    sched = TemperatureSchedule(COMBINED_MIN, n=3, vartheta=3.0)
    runs = [anneal_heuristic(AnnealerConfig(c=c, oracle=cube_oracle(3),
                                            schedule=sched, epsilon_bar=0.2,
                                            p=0.5, seed=9))
            for _ in range(2)]
    assert np.array_equal(runs[0].final_point, runs[1].final_point)
    assert runs[0].phase_rows() == runs[1].phase_rows()


def test_anneal_kv_minimizes_on_ball():
    n = 3
    o = ball_oracle(n, 1.0)
    c = np.array([1.0, 0.0, 0.0])
    sched = TemperatureSchedule(AH_TYPE, n=n, vartheta=float(n), alpha=4.0)
    cfg = AnnealerConfig(c=c, oracle=o, schedule=sched, epsilon_bar=0.1,
                         p=0.3, N=30, ell=40, seed=7, phases=25)
    report = anneal_kv(cfg)
    assert report.algorithm == "anneal_kv"
    assert len(report.phases) == 25
    assert report.final_objective < -0.3
    assert o.contains(report.final_point)
    assert report.phases[0].direction_mode in ("factored", "empirical")
    # mean objective trends down as the temperature drops
    assert report.phases[-1].mean_objective < report.phases[0].mean_objective


def test_anneal_kv_deterministic():
    n = 3
    c = np.array([0.0, 0.0, 1.0])
    sched = TemperatureSchedule(AH_TYPE, n=n, vartheta=float(n), alpha=4.0)
    runs = []
    for _ in range(2):
        cfg = AnnealerConfig(c=c, oracle=ball_oracle(n), schedule=sched,
                             epsilon_bar=0.1, p=0.3, N=15, ell=20, seed=5,
                             phases=6)
        runs.append(anneal_kv(cfg))
    assert np.array_equal(runs[0].final_point, runs[1].final_point)
    assert runs[0].total_oracle_calls == runs[1].total_oracle_calls


def test_run_report_json_round_trip():
    import json
    o = cube_oracle(2)
    sched = TemperatureSchedule(COMBINED_MIN, n=2, vartheta=2.0)
    cfg = AnnealerConfig(c=np.array([1.0, 0.0]), oracle=o, schedule=sched,
                         epsilon_bar=0.5, p=0.5, N=6, ell=8, seed=0)
    report = anneal_heuristic(cfg)
    data = json.loads(report.to_json())
    assert data["algorithm"] == "anneal_heuristic"
    assert len(data["phases"]) == len(report.phases)
    assert data["final_objective"] == report.final_objective


def test_theoretical_summary_attached_when_inner_radius_given():
    o = cube_oracle(3)
    sched = TemperatureSchedule(COMBINED_MIN, n=3, vartheta=3.0, alpha=4.0)
    cfg = AnnealerConfig(c=np.array([1.0, 0.0, 0.0]), oracle=o,
                         schedule=sched, epsilon_bar=0.3, p=0.5, N=5, ell=5,
                         seed=0, inner_radius=0.4)
    report = anneal_heuristic(cfg)
    assert report.theoretical is not None
    assert report.theoretical["m"] > 0
    assert report.theoretical["ell_digits"] > 30
