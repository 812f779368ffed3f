import json

import pytest
from click.testing import CliRunner

from syzygy import corpus
from syzygy.cli import main

A2 = str(corpus.BUNDLED_DIR / "a2.json")
DUAL = str(corpus.BUNDLED_DIR / "dual_numbers.json")
MUTANT = str(corpus.BUNDLED_DIR / "mutant_broken_trivext.json")


@pytest.fixture
def runner():
    return CliRunner()


def test_algebra_validate_ok(runner):
    r = runner.invoke(main, ["algebra", "validate", A2])
    assert r.exit_code == 0
    out = json.loads(r.output)
    assert out["ok"] and out["dim"] == 3


def test_algebra_validate_mutant_fails(runner):
    r = runner.invoke(main, ["algebra", "validate", MUTANT])
    assert r.exit_code == 1
    out = json.loads(r.output)
    assert not out["ok"] and out["violations"]


def test_algebra_build_construction(runner):
    r = runner.invoke(main, ["algebra", "build", A2, "--construction", "cover"])
    assert r.exit_code == 0
    out = json.loads(r.output)
    assert out["construction"] == "cover"
    assert out["dim"] == 9  # T(Sigma) + A + Sigma = 4 + 3 + 2


def test_parse_error_exit_2_with_position(runner, tmp_path):
    f = tmp_path / "bad.json"
    f.write_text('{"id": "bad",\n "quiver": }')
    r = runner.invoke(main, ["algebra", "validate", str(f)])
    assert r.exit_code == 2
    assert "line 2" in r.output and "column" in r.output


def test_del_bounds_named_simple(runner):
    r = runner.invoke(main, ["del", "bounds", A2, "--simple", "S1",
                             "--horizon", "8"])
    assert r.exit_code == 0
    assert "[1, 1]" in r.output and "exact" in r.output
    assert "witness=" in r.output


def test_del_bounds_aggregate(runner):
    r = runner.invoke(main, ["del", "bounds", DUAL])
    assert r.exit_code == 0
    assert "[0, 0]" in r.output


def test_del_bounds_unknown_simple(runner):
    r = runner.invoke(main, ["del", "bounds", A2, "--simple", "S9"])
    assert r.exit_code == 2
    assert "unknown simple" in r.output


def test_pd_finite_and_infinite(runner):
    r = runner.invoke(main, ["pd", A2, "--module", "S1"])
    assert r.exit_code == 0
    assert "pd(S1) = 1" in r.output
    r = runner.invoke(main, ["pd", DUAL, "--module", "S1"])
    assert r.exit_code == 0
    assert "infinite" in r.output and "cycle" in r.output
    r = runner.invoke(main, ["pd", A2, "--module", "regular"])
    assert "= 0" in r.output


def test_paper_verify_single_entry_and_report(runner, tmp_path):
    out = tmp_path / "report.json"
    r = runner.invoke(main, ["paper", "verify", "--algebra", "dual_numbers",
                             "--seed", "7", "--report", str(out)])
    assert r.exit_code == 0, r.output
    assert "PASS" in r.output
    doc = json.loads(out.read_text())
    assert doc["config"]["seed"] == 7
    assert all(c["verdict"] == "PASS" for c in doc["checks"])


def test_paper_verify_mutant_expected_failure_exits_zero(runner):
    r = runner.invoke(main, ["paper", "verify",
                             "--algebra", "mutant_broken_trivext", "--seed", "3"])
    assert r.exit_code == 0, r.output
    assert "FAIL" in r.output


def test_report_roundtrip_and_reverify(runner, tmp_path):
    out = tmp_path / "report.json"
    r = runner.invoke(main, ["paper", "verify", "--algebra", "a2",
                             "--check", "lemma2_cover_del_zero",
                             "--seed", "5", "--report", str(out)])
    assert r.exit_code == 0
    r = runner.invoke(main, ["report", str(out), "--format", "json"])
    assert r.exit_code == 0
    assert json.loads(r.output)["config"]["seed"] == 5
    r = runner.invoke(main, ["report", str(out), "--reverify"])
    assert r.exit_code == 0
    assert "certificates ok" in r.output


def test_report_missing_file_exit_2(runner, tmp_path):
    r = runner.invoke(main, ["report", str(tmp_path / "nope.json")])
    assert r.exit_code == 2


def test_seed_env_var(runner, tmp_path):
    out1 = tmp_path / "r1.json"
    out2 = tmp_path / "r2.json"
    args = ["paper", "verify", "--algebra", "point", "--report"]
    r = runner.invoke(main, args + [str(out1)], env={"SYZYGY_SEED": "9"})
    assert r.exit_code == 0
    assert json.loads(out1.read_text())["config"]["seed"] == 9
    # flag overrides the environment
    r = runner.invoke(main, args + [str(out2), "--seed", "4"],
                      env={"SYZYGY_SEED": "9"})
    assert json.loads(out2.read_text())["config"]["seed"] == 4


def test_prime_env_var(runner):
    r = runner.invoke(main, ["algebra", "validate", A2],
                      env={"SYZYGY_PRIME": "101"})
    assert r.exit_code == 0
    assert json.loads(r.output)["p"] == 101


def test_prime_guard_exit_3(runner):
    # modulus above the supported bound trips the resource guard
    r = runner.invoke(main, ["algebra", "validate", A2,
                             "--prime", str((1 << 20) + 7)])
    assert r.exit_code == 3
