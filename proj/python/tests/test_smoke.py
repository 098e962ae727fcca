import math
import os
from pathlib import Path

import pytest

import robust_oco as ro

ROOT = Path(__file__).resolve().parents[2]


def test_clip():
    assert ro.clip([3.0, 4.0], 10.0) == [3.0, 4.0]
    out = ro.clip([3.0, 4.0], 1.0)
    assert math.hypot(*out) <= 1.0
    assert out == pytest.approx([0.6, 0.8])
    assert ro.clip(out, 1.0) == out
    with pytest.raises(ValueError):
        ro.clip([1.0], 0.0)


def test_random_seq():
    assert ro.random_seq_expectation(4) == 1.5
    with pytest.raises(ValueError):
        ro.random_seq_expectation(21)


def test_protocol_round_and_decomposition():
    cfg = ro.ProtocolConfig()
    cfg.dim = 2
    cfg.k = 3
    cfg.G = 1.0
    cfg.T = 100
    resolved = ro.resolve_preset(cfg)
    assert resolved.c == 3.0
    p = ro.Protocol(cfg)
    assert p.predict() == [0.0, 0.0]
    info = p.round([50.0, 0.0], [0.5, 0.0])
    assert info["clipped"]
    assert math.hypot(*info["g_clipped"]) == pytest.approx(1.0)
    for t in range(99):
        p.round([math.sin(t), math.cos(t)])
    assert p.t == 100
    d = p.decomposition([1.0, -1.0])
    assert d.identity_residual() < 1e-9
    assert d.reconstructed() == pytest.approx(p.true_regret([1.0, -1.0]))
    with pytest.raises(ValueError):
        p.round([1.0])


def test_unknown_g_drops_g():
    cfg = ro.ProtocolConfig()
    cfg.mode = ro.ProtocolMode.unknown_G_case2
    cfg.k = 4
    cfg.G = 123.0
    assert ro.resolve_preset(cfg).G is None


def test_kt_bettor():
    kt = ro.KTBettor(1.0)
    assert kt.predict() == [0.0]
    kt.observe([-1.0])
    assert kt.predict() == [0.5]
    assert kt.wealth == 1.0
    kt.observe([-1.0])
    assert kt.wealth == 1.5


def test_projection_and_batch():
    w, y = ro.weighted_project([2.0], 0.0, 1.0, 1.0)
    assert y >= w[0] ** 2
    assert 2 * w[0] ** 3 + w[0] - 2 == pytest.approx(0.0, abs=1e-12)
    assert ro.online_to_batch([[0.0], [1.0], [2.0]]) == [1.0]


def test_simulate_deterministic():
    text = (ROOT / "tests" / "golden" / "golden.ini").read_text()
    a = ro.simulate(text, 4)
    b = ro.simulate(text, 4)
    assert a == b
    assert len(a["w"]) == 60
    assert a["final_true_regret"] == a["true_regret"][-1]
    assert a["identity_residual"] < 1e-9


def test_run_writes_files(tmp_path):
    out = tmp_path / "run"
    ro.run(str(ROOT / "tests" / "golden" / "golden.ini"), str(out))
    assert (out / "trace.csv").read_text() == (ROOT / "tests" / "golden" / "trace.csv").read_text()
    assert (out / "summary.csv").exists()


def test_checks():
    names = ro.list_checks()
    assert "filter_lemma" in names
    ok, report = ro.verify("random_seq")
    assert ok
    with pytest.raises(KeyError):
        ro.verify("nope")
