import math

import pytest

import casplit


def test_flat_run_summary_and_trace():
    cfg = casplit.flat_scenario(2)
    cfg.max_slots = 100
    r = casplit.run(cfg, casplit.RunMode.ca, seed=1)
    assert r["slots"] == 100
    tr = r["trace"]
    assert len(tr["t"]) == 100
    assert sum(tr["delivered"]) == r["total_delivered"]
    # stage 1 fills both sides
    assert all(tr["A_P"][t] == 1 and tr["A_s"][t] == 1 for t in range(17))
    assert all(tr["A_P"][t] + tr["A_s"][t] == 1 for t in range(17, 100))


def test_forced_modes():
    cfg = casplit.flat_scenario(1)
    cfg.max_slots = 30
    pcc = casplit.run(cfg, casplit.RunMode.pcc)
    assert set(pcc["trace"]["A_P"]) == {1}
    assert pcc["policy"] == "pcc_only"


def test_eta_static_short():
    cfg = casplit.static_scenario(2)
    cfg.packets = 600
    e = casplit.eta(cfg, seed=3)
    assert e["defined"]
    assert 0.0 <= e["eta"] <= 1.0
    assert e["window"] == e["ca"]["slots"]


def test_eta_arithmetic():
    assert casplit.utilization_ratio(1350, 500, 1000)["eta"] == pytest.approx(0.9)
    assert casplit.utilization_ratio(0, 0, 0)["eta"] is None


def test_oracle():
    t, w = casplit.brute_force_min_T(2, [[1], [1]])
    assert t == 2
    assert len(w) == 2
    t, w = casplit.brute_force_min_T(3, [[0], [0]], max_slots=8)
    assert t is None and w == []


def test_identity():
    r = casplit.verify_nstep_identity(2, 2, 1, 6, pcc=4, scc=1)
    assert r["regime"] == "case1"
    assert r["throughput"] == r["packets"] - abs(r["delta_h"])


def test_controller_primitives():
    assert casplit.pid_increment((0.5, 0.2, 0.1), (6, 4, 2)) == pytest.approx(2.2)
    assert casplit.compute_k([(1, 1)] * 8, 2) == 2
    assert casplit.schedule_action(9, 12, 2, 3) == (1, 0)
    db, de = casplit.fuzzify(0, 0, 40)
    assert db == 1.0 and de == 1.0
    f = casplit.FuzzyPidController(horizon=8, n_scc=2)
    assert f.decide(0, 50) == (1, 1)
    assert f.stage == "I"


def test_sweep_correlation_negative():
    pts = casplit.k_sweep(2, [1, 2, 3, 4, 6], 400)
    r = casplit.pearson([p["mean_abs_b"] for p in pts], [p["mean_throughput"] for p in pts])
    assert r is not None and r < -0.5


def test_config_errors_are_value_errors():
    with pytest.raises(ValueError, match="carriers.scc"):
        casplit.parse_config("[channel]\nn_scc = 1\n[carriers.pcc]\nrho = 2\n")
    with pytest.raises(casplit.ConfigError):
        casplit.load_config("/nonexistent.ini")


def test_round_trip():
    cfg = casplit.mobile_scenario(3)
    cfg.policy = casplit.Policy.ltr
    back = casplit.parse_config(cfg.to_ini())
    assert back.policy == casplit.Policy.ltr
    assert back.to_ini() == cfg.to_ini()


def test_convergence_series():
    c = casplit.convergence(2)
    assert c["from"] == 17
    assert all(math.isfinite(x) for x in c["ratio"][40:])
