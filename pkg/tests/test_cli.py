import json
import subprocess
import sys

import pytest

from czlab.cli import _parse_seeds, run
from czlab.errors import ConfigError


@pytest.fixture(autouse=True)
def one_worker(monkeypatch):
    monkeypatch.setenv("CZLAB_THREADS", "1")


def test_decay_writes_csv_and_summary(tmp_path):
    out = tmp_path / "o"
    assert run(["decay", "--pair", "hilbert", "--seed", "1", "--level", "12", "--outdir", str(out)]) == 0
    lines = (out / "hilbert_1_L12.csv").read_text().splitlines()
    assert lines[0] == "t,phi" and len(lines) == 65
    doc = json.loads((out / "summary.json").read_text())
    assert doc["schema"] == "czlab-summary-1"
    (e,) = doc["entries"]
    assert e["pair"] == "hilbert" and e["seed"] == 1 and e["L"] == 12
    assert e["best_beta"] == 1.0 and e["predicted_beta"] == 1.0
    assert set(e["fits"]) == {"0.5", "1", "2"}
    assert e["control_a1"] >= 1.0


def test_decay_is_byte_deterministic(tmp_path):
    for d in ("a", "b"):
        assert run(["decay", "--pair", "veccz", "--seed", "3", "--level", "9",
                    "--outdir", str(tmp_path / d)]) == 0
    a = (tmp_path / "a" / "veccz_3_L9.csv").read_bytes()
    assert a == (tmp_path / "b" / "veccz_3_L9.csv").read_bytes()
    assert (tmp_path / "a" / "summary.json").read_bytes() == (tmp_path / "b" / "summary.json").read_bytes()


def test_summary_merges_by_key(tmp_path):
    args = ["decay", "--pair", "square", "--level", "8", "--outdir", str(tmp_path)]
    assert run(args + ["--seed", "0:2"]) == 0
    assert run(args + ["--seed", "1"]) == 0
    doc = json.loads((tmp_path / "summary.json").read_text())
    assert sorted(e["seed"] for e in doc["entries"]) == [0, 1]


def test_bad_pair_and_missing_pair(tmp_path, capsys):
    assert run(["decay", "--pair", "unknown", "--outdir", str(tmp_path)]) == 2
    assert "unknown pair" in capsys.readouterr().err
    assert run(["decay", "--outdir", str(tmp_path)]) == 2


def test_config_file_and_flag_precedence(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"pair": "hilbert", "seed": 2, "level": 8, "outdir": str(tmp_path)}))
    assert run(["decay", "--config", str(cfg), "--seed", "3"]) == 0
    assert (tmp_path / "hilbert_3_L8.csv").exists()
    assert not (tmp_path / "hilbert_2_L8.csv").exists()


def test_unknown_config_key(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"pair": "hilbert", "colour": "red"}))
    assert run(["decay", "--config", str(cfg)]) == 2
    cfg.write_text("[1, 2]")
    assert run(["decay", "--config", str(cfg)]) == 2
    assert run(["decay", "--config", str(tmp_path / "missing.json")]) == 2


def test_unknown_flag_is_config_error():
    assert run(["decay", "--bogus", "1"]) == 2
    assert run([]) == 2


def test_lerner_verify(tmp_path):
    assert run(["lerner", "--seed", "1", "--level", "10", "--verify"]) == 0
    assert run(["lerner", "--seed", "0:3", "--level", "8", "--verify", "--outdir", str(tmp_path)]) == 0
    fam = json.loads((tmp_path / "lerner_2_L8.json").read_text())
    assert fam["root"] == [0, 0] and fam["resolution"] == 8


def test_suite(capsys):
    assert run(["suite", "smoke"]) == 0
    out = capsys.readouterr().out
    assert out.count("[PASS]") == 9
    assert run(["suite", "bogus"]) == 2
    assert run(["suite"]) == 2


def test_weights_command(capsys):
    assert run(["weights", "--weight", "power:0.5", "--level", "8", "--p", "2", "--rubio", "2"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["ap"] > 1 and rep["rubio"]["majorizes"]
    assert run(["weights", "--weight", "power", "--level", "8"]) == 2
    assert run(["weights", "--p", "1"]) == 2
    assert run(["weights", "--scope", "nope"]) == 2


def test_cf_command(tmp_path, capsys):
    assert run(["cf", "--operator", "commutator", "--level", "8", "--outdir", str(tmp_path)]) == 0
    doc = json.loads((tmp_path / "summary.json").read_text())
    assert len(doc["entries"]) == 4
    assert run(["cf", "--operator", "tstar", "--level", "8", "--max-spread", "1.0"]) == 1
    assert "spread" in capsys.readouterr().err
    assert run(["cf", "--operator", "nope"]) == 2


def test_dominate_command(tmp_path):
    assert run(["dominate", "--id", "311", "--seed", "0:2", "--levels", "6,8",
                "--outdir", str(tmp_path)]) == 0
    doc = json.loads((tmp_path / "summary.json").read_text())
    assert doc["entries"][0]["id"] == "311"
    assert run(["dominate", "--id", "999"]) == 2
    assert run(["dominate", "--id", "311", "--levels", "a,b"]) == 2


def test_goodlambda_command(tmp_path):
    assert run(["goodlambda", "--seed", "0", "--level", "10", "--outdir", str(tmp_path)]) == 0
    lines = (tmp_path / "goodlambda_0_L10.csv").read_text().splitlines()
    assert lines[0] == "gamma,fraction"
    assert run(["goodlambda", "--lambda", "-1", "--outdir", str(tmp_path)]) == 2


def test_threads_env(monkeypatch, tmp_path):
    monkeypatch.setenv("CZLAB_THREADS", "two")
    assert run(["decay", "--pair", "hilbert", "--level", "8", "--outdir", str(tmp_path)]) == 2


def test_pool_matches_inline(monkeypatch, tmp_path):
    monkeypatch.setenv("CZLAB_THREADS", "2")
    assert run(["dominate", "--id", "39", "--seed", "0:2", "--levels", "6,7",
                "--outdir", str(tmp_path / "p")]) == 0
    monkeypatch.setenv("CZLAB_THREADS", "1")
    assert run(["dominate", "--id", "39", "--seed", "0:2", "--levels", "6,7",
                "--outdir", str(tmp_path / "s")]) == 0
    assert (tmp_path / "p" / "summary.json").read_bytes() == (tmp_path / "s" / "summary.json").read_bytes()


def test_parse_seeds():
    assert _parse_seeds("7") == [7]
    assert _parse_seeds("1,3") == [1, 3]
    assert _parse_seeds("2:5") == [2, 3, 4]
    assert _parse_seeds(4) == [4]
    with pytest.raises(ConfigError):
        _parse_seeds("x")
    with pytest.raises(ConfigError):
        _parse_seeds("3:3")


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "czlab.cli", "suite", "nope"], capture_output=True, text=True)
    assert r.returncode == 2
    assert "suite name" in r.stderr
