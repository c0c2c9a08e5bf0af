import json
import subprocess
import sys
from fractions import Fraction

import pytest

from psiclass.cache import CacheMismatchError, ResultCache, hurwitz_key, parse_key, tau_key
from psiclass.cli import main
from psiclass.config import ENV_BRUTE_MAX_DEGREE, load_config

# small sizes and loose thresholds: this exercises plumbing, not the limit laws
TINY = {
    "trees": {
        "m": 2000, "valence_samples": 20000, "borel_trees": 3000, "edge_tree_samples": 500,
        "edge_factor_samples": 100000, "tv_threshold": 0.1, "ks_threshold": 0.2,
        "edge_factor_points": [[1.0, 1.0]],
    }
}


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def tiny_config(tmp_path):
    path = tmp_path / "tiny.json"
    path.write_text(json.dumps(TINY))
    return str(path)


def test_tau(capsys):
    code, out, _ = run(capsys, "tau", "--g", "1", "--n", "1")
    assert code == 0 and out.strip() == "⟨τ_1⟩_1 = 1/24"
    code, out, _ = run(capsys, "tau", "--g", "0", "--n", "4", "--json")
    assert json.loads(out)["values"] == {"⟨τ_1τ_0τ_0τ_0⟩_0": "1/1"}


def test_hurwitz(capsys):
    assert run(capsys, "hurwitz", "--g", "0", "--mu", "2")[1] == "1/2\n"
    outs = {run(capsys, "hurwitz", "--g", "1", "--mu", "2,1", "--method", m)[1] for m in ("brute", "characters", "auto")}
    assert len(outs) == 1


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["tau", "--g", "1", "--n", "1", "--bogus"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["nonsense"])
    assert exc.value.code == 2
    assert run(capsys, "hurwitz", "--g", "0", "--mu", "0")[0] == 2
    assert run(capsys, "tau", "--g", "0", "--n", "2")[0] == 2


def test_output_is_deterministic(capsys):
    a = run(capsys, "maps", "--g", "0", "--n", "3", "--list", "--json")[1]
    b = run(capsys, "maps", "--g", "0", "--n", "3", "--list", "--json")[1]
    assert a == b
    assert json.loads(a)["classes"] == 4


def test_branching_histogram(capsys):
    code, out, _ = run(capsys, "branching", "--g", "1", "--mu", "4", "--histogram", "--json")
    data = json.loads(out)
    assert code == 0 and data["perimeter_failures"] == 0
    assert sum(data["histogram"].values()) == data["factorizations"] == 640


def test_elsv_fit_hodge(capsys):
    code, out, _ = run(capsys, "elsv-fit", "--g", "1", "--n", "1", "--hodge")
    assert code == 0
    assert "P_{1,1}(mu) = 1/24*mu1 - 1/24" in out
    assert "⟨λ_1τ_0⟩_1 = 1/24" in out


def test_trees_report(capsys):
    code, out, _ = run(capsys, "trees", "--op", "edge-factor", "--s1", "2", "--s2", "2", "--samples", "100000")
    rep = json.loads(out)
    assert code == 0 and {"statistic", "expected", "tolerance", "pass"} <= set(rep)
    code, out, _ = run(capsys, "trees", "--op", "assembly")
    assert code == 0 and json.loads(out)["pass"]


def test_cache_round_trip(tmp_path):
    cache = ResultCache(tmp_path / "c.jsonl")
    cache.put(tau_key(1, [1]), Fraction(1, 24), "test")
    cache.put(hurwitz_key(0, [3, 1]), Fraction(123456789123456789, 7), "test")
    fresh = ResultCache(tmp_path / "c.jsonl")
    assert fresh.get(tau_key(1, [1])) == Fraction(1, 24)
    assert fresh.get(hurwitz_key(0, [1, 3])) == Fraction(123456789123456789, 7)
    cache.put(tau_key(1, [1]), Fraction(1, 24), "again")  # same value is a no-op
    assert len((tmp_path / "c.jsonl").read_text().splitlines()) == 2
    with pytest.raises(CacheMismatchError):
        cache.put(tau_key(1, [1]), Fraction(1, 12), "test")
    assert parse_key(tau_key(0, [0, 1, 0, 0])) == ("tau", {"g": 0, "k": [1, 0, 0, 0]})


def test_cache_written_by_commands(tmp_path, capsys):
    path = tmp_path / "c.jsonl"
    assert run(capsys, "tau", "--g", "0", "--n", "4", "--cache", str(path))[0] == 0
    assert run(capsys, "elsv-fit", "--g", "0", "--n", "4", "--cache", str(path))[0] == 0
    assert run(capsys, "hurwitz", "--g", "0", "--mu", "3", "--cache", str(path))[0] == 0
    entries = ResultCache(path).entries()
    assert set(entries) == {tau_key(0, [1, 0, 0, 0]), hurwitz_key(0, [3])}
    assert {e.method for e in entries.values()} == {"kontsevich", "brute"}


def test_tampered_cache_fails_verification(tmp_path, capsys, tiny_config):
    path = tmp_path / "c.jsonl"
    run(capsys, "tau", "--g", "1", "--n", "1", "--cache", str(path))
    run(capsys, "hurwitz", "--g", "1", "--mu", "2", "--cache", str(path))
    code, first, _ = run(capsys, "verify", "--suite", "asymptotic", "--config", tiny_config, "--cache", str(path))
    assert code == 0
    code, second, _ = run(capsys, "verify", "--suite", "asymptotic", "--config", tiny_config, "--cache", str(path))
    assert first == second
    path.write_text(path.read_text().replace('"1/24"', '"1/25"'))
    code, out, err = run(capsys, "verify", "--suite", "asymptotic", "--config", tiny_config, "--cache", str(path))
    assert code == 1
    assert "[FAIL] cache tau;g=1;k=[1]: expected 1/25, got 1/24" in out


def test_config_sources(tmp_path, monkeypatch):
    assert load_config().hurwitz.brute_max_degree == 5
    monkeypatch.setenv(ENV_BRUTE_MAX_DEGREE, "3")
    assert load_config().hurwitz.brute_max_degree == 3
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"trees": {"nope": 1}}))
    with pytest.raises(ValueError):
        load_config(bad)
    assert main(["tau", "--g", "1", "--n", "1", "--config", str(bad)]) == 2


@pytest.mark.slow
def test_verify_core_suite():
    proc = subprocess.run([sys.executable, "-m", "psiclass.cli", "verify", "--suite", "core"],
                          capture_output=True, text=True)
    assert proc.returncode == 0, proc.stdout + proc.stderr
    assert "FAIL" not in proc.stdout
