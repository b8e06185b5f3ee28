import json

import pytest
from click.testing import CliRunner

from app.pipeline.controller import EXIT_FAIL, EXIT_PASS, EXIT_USAGE, hookdual
from app.pipeline.steps import cache_path, load_cached_report, run
from src.models.schemas import RunRequest
from src.series.level import level_scalar
from src.utils import config
from src.utils.errors import CacheCorruptionError, HookdualError
from src.utils.file_io import request_hash


@pytest.fixture
def cli():
    return CliRunner()


def invoke(cli, *args):
    return cli.invoke(hookdual, list(args), catch_exceptions=False)


def test_duality_levels_prints_the_exact_level(cli, tmp_path):
    out = tmp_path / "levels.json"
    result = invoke(cli, "duality-levels", "--X", "O", "--n", "1", "--m", "1", "--json", str(out))
    assert result.exit_code == EXIT_PASS, result.output
    report = json.loads(out.read_text(encoding="utf-8"))
    assert report["status"] == "pass"
    assert level_scalar(report["results"]["level"]) == level_scalar("1/(4*(k+5/2)) - 3/2")
    assert report["results"]["r"] == "4"


def test_duality_subgroup_matches_alias(cli):
    result = invoke(cli, "duality", "levels", "--X", "a", "--n", "2", "--m", "1")
    assert result.exit_code == EXIT_PASS, result.output
    assert "STATUS: pass" in result.output


def test_conjectural_pair_exits_zero(cli, tmp_path):
    out = tmp_path / "b12.json"
    result = invoke(cli, "duality-levels", "--X", "B", "--n", "1", "--m", "2", "--json", str(out))
    assert result.exit_code == EXIT_PASS, result.output
    assert json.loads(out.read_text(encoding="utf-8"))["status"] == "conjectural-structure"


def test_algebra_info(cli, tmp_path):
    out = tmp_path / "sl2.json"
    result = invoke(cli, "algebra-info", "--algebra", "sl2", "--json", str(out))
    assert result.exit_code == EXIT_PASS, result.output
    assert json.loads(out.read_text(encoding="utf-8"))["status"] == "pass"


def test_char_of_osp12(cli, tmp_path):
    out = tmp_path / "char.json"
    result = invoke(cli, "char", "--algebra", "osp12", "--lambda", "1", "--mu", "1", "--json", str(out))
    assert result.exit_code == EXIT_PASS, result.output
    results = json.loads(out.read_text(encoding="utf-8"))["results"]
    assert results["trivial_multiplicity"] == 1


def test_ep_check_command(cli):
    result = invoke(cli, "ep-check", "--algebra", "sl2", "--lambda", "1", "--mu", "1", "--maxweight", "3")
    assert result.exit_code == EXIT_PASS, result.output


def test_duality_verify_A(cli):
    result = invoke(cli, "duality-verify", "--X", "A", "--n", "1", "--m", "1", "--order", "1")
    assert result.exit_code == EXIT_PASS, result.output


@pytest.mark.slow
def test_duality_verify_C_to_q3(cli):
    result = invoke(cli, "duality-verify", "--X", "C", "--n", "1", "--m", "1", "--order", "3")
    assert result.exit_code == EXIT_PASS, result.output


def test_perturbed_r_exits_one(cli):
    result = invoke(cli, "duality-verify", "--X", "A", "--n", "1", "--m", "1", "--order", "1", "--r", "2")
    assert result.exit_code == EXIT_FAIL, result.output


@pytest.mark.parametrize("args", [
    ("semicoh", "--algebra", "sl2", "--maxweight", "9"),
    ("char", "--algebra", "sl2", "--lambda=-1"),
    ("char", "--algebra", "e8"),
    ("duality-levels", "--X", "A", "--n", "0", "--m", "1"),
    ("duality-verify", "--X", "A", "--n", "1", "--m", "1", "--order", "1/3"),
    ("semicoh", "--algebra", "sl3"),
])
def test_usage_errors_exit_two(cli, args):
    result = cli.invoke(hookdual, list(args))
    assert result.exit_code == EXIT_USAGE, result.output


def test_corrupted_tables_exit_one(cli, tmp_path):
    data = json.loads(config.HOOK_TABLES_FILE.read_text(encoding="utf-8"))
    label = data["hook_rows"][0]["label"]
    data["hook_rows"][0]["ambient"]["even"] = "((n"
    broken = tmp_path / "tables.json"
    broken.write_text(json.dumps(data), encoding="utf-8")
    out = tmp_path / "report.json"
    result = invoke(cli, "tables", "--tables", str(broken), "--json", str(out))
    assert result.exit_code == EXIT_FAIL, result.output
    report = json.loads(out.read_text(encoding="utf-8"))
    assert f"hook_rows[{label}].ambient.even" in report["checks"][0]["detail"]


def test_passing_report_is_cached():
    request = RunRequest(command="duality-levels", params={"X": "C", "n": 1, "m": 1})
    first = run(request)
    key = request_hash({"command": "duality-levels", "params": {"X": "C", "n": 1, "m": 1}})
    assert first.request_hash == key
    assert cache_path(key).exists()
    second = run(request)
    assert second == first
    assert load_cached_report(key) == first


def test_failed_report_is_not_cached():
    report = run(RunRequest(command="duality-verify", params={"X": "A", "n": 1, "m": 1, "order": "1", "r": "2"}))
    assert report.status == "fail"
    assert not cache_path(report.request_hash).exists()


def test_reports_are_deterministic_without_cache():
    request = RunRequest(command="char", params={"algebra": "sl3", "lambda": "1,0", "mu": "0,1"}, use_cache=False)
    first, second = run(request), run(request)
    assert first.model_dump(exclude={"elapsed_seconds"}) == second.model_dump(exclude={"elapsed_seconds"})


def test_cache_corruption_is_an_error(cli):
    request = RunRequest(command="duality-levels", params={"X": "D", "n": 1, "m": 1})
    report = run(request)
    path = cache_path(report.request_hash)
    entry = json.loads(path.read_text(encoding="utf-8"))
    entry["request"]["params"]["n"] = 2
    path.write_text(json.dumps(entry), encoding="utf-8")
    with pytest.raises(CacheCorruptionError):
        run(request)
    result = invoke(cli, "duality-levels", "--X", "D", "--n", "1", "--m", "1")
    assert result.exit_code == EXIT_USAGE
    assert invoke(cli, "duality-levels", "--X", "D", "--n", "1", "--m", "1", "--no-cache").exit_code == EXIT_PASS


def test_unknown_request_command():
    with pytest.raises(HookdualError):
        run(RunRequest(command="teleport"))


def test_suite_writes_its_report(cli, monkeypatch, tmp_path):
    from src.checks import validator
    tiny = dict(validator.PROFILES["fast"], pair_ns=[1], pair_ms=[1], kernel_ms=[1], kernel_ns=[1],
                heisenberg=[[1, 1]], random_algebras=2, pairing_algebras=["sl2"], semicoh_algebras=["gl1"],
                semicoh_coords=[0])
    monkeypatch.setitem(validator.PROFILES, "fast", tiny)
    result = invoke(cli, "suite", "--profile", "fast")
    assert result.exit_code == EXIT_PASS, result.output
    written = list((tmp_path / "output").rglob("suite_report.json"))
    assert len(written) == 1
    assert json.loads(written[0].read_text(encoding="utf-8"))["results"]["summary"]["status"] == "pass"
