import json

import pytest
from sympy import QQ

from src.algebra.ids import AlgebraId
from src.checks import FAST, FULL, PROFILES, IdentityValidator, add_result, record_check
from src.checks.rules import EngineRules, MainTheoremRules, SemicohRules, TableIdentityRules
from src.models.schemas import CheckResult
from src.reps.weights import Weight
from src.utils import config
from src.utils.errors import HookdualError, IdentityError
from src.utils.logger import DetailedLogger
from src.walgebra.duality import CONJECTURAL, FAIL, PASS


def statuses(results):
    return {r.name: r.status for r in results}


def test_record_check_turns_errors_into_failures():
    results = []

    def broken():
        raise IdentityError("cell x is off by 1/2")

    assert record_check(results, "broken", broken) is None
    assert record_check(results, "fine", lambda: {"value": 1}) == {"value": 1}
    assert record_check(results, "scalar", lambda: 3, conjectural=True) == 3
    assert [r.status for r in results] == [FAIL, PASS, CONJECTURAL]
    assert results[0].detail == "cell x is off by 1/2"
    assert results[2].data == {"value": 3}


def test_record_check_lets_other_errors_through():
    with pytest.raises(ZeroDivisionError):
        record_check([], "bug", lambda: 1 / 0)


@pytest.mark.parametrize("found,expected", [
    ([PASS, PASS], PASS),
    ([PASS, CONJECTURAL], CONJECTURAL),
    ([CONJECTURAL, FAIL, PASS], FAIL),
    ([], PASS),
])
def test_summarize(found, expected):
    results = [CheckResult(name=f"c{i}", status=s) for i, s in enumerate(found)]
    summary = IdentityValidator.summarize(results)
    assert summary["status"] == expected
    assert summary["total"] == len(found)


def test_unknown_profile():
    with pytest.raises(HookdualError):
        IdentityValidator("medium")


def test_profiles_are_plain_data():
    assert set(PROFILES) == {FAST, FULL}
    json.dumps(PROFILES)


def test_fast_table_battery_passes():
    results = IdentityValidator(FAST).validate_tables()
    failures = [r for r in results if r.status == FAIL]
    assert not failures, failures[:3]
    # B and O pairs with m > 1 only hold as conjectural structure.
    assert any(r.status == CONJECTURAL for r in results)


def test_corrupted_fixture_stops_the_battery(tmp_path):
    data = json.loads(config.HOOK_TABLES_FILE.read_text(encoding="utf-8"))
    label = data["hook_rows"][1]["label"]
    data["hook_rows"][1]["k_b"] = "k +"
    broken = tmp_path / "tables.json"
    broken.write_text(json.dumps(data), encoding="utf-8")
    results = IdentityValidator(FAST, broken).validate_all()
    assert len(results) == 1
    assert results[0].status == FAIL
    assert f"hook_rows[{label}].k_b" in results[0].detail


def test_engine_rules():
    results = []
    EngineRules.check_ope_lemma(results)
    EngineRules.check_heisenberg_rotation([(1, 1), (2, 1)], results)
    EngineRules.check_random_square_zero(3, 11, 2, results)
    assert results
    assert all(r.status == PASS for r in results), [r for r in results if r.status != PASS]


def test_semicoh_case_rules():
    sl2 = AlgebraId.parse("sl2")
    lam = Weight(sl2, (1,))
    results = []
    SemicohRules.check_case(lam, lam, 1, results)
    SemicohRules.check_case(lam, Weight.zero(sl2), 1, results)
    assert results
    assert all(r.status == PASS for r in results), [r for r in results if r.status != PASS]


def test_main_theorem_rules_fast_profile():
    results = []
    MainTheoremRules.check_characters([("A", 1, 1)], 2, results)
    MainTheoremRules.check_falsification("A", 2, results)
    assert [r.status for r in results] == [PASS, PASS]


def test_add_result_serializes_exact_values():
    results = []
    add_result(results, "exact", PASS, data={"value": QQ(3, 4)})
    assert results[0].data == {"value": "3/4"}


def test_table_file_rule_on_missing_file(tmp_path):
    results = []
    TableIdentityRules.check_tables_file(tmp_path / "missing.json", results)
    assert results[-1].status == FAIL


def test_run_log_is_one_json_object_per_line():
    logger = DetailedLogger("suite", "unit")
    logger.log("CHECK_PASS", {"summary": "first"})
    logger.log("CHECK_FAIL", {"summary": "second", "detail": {"q": QQ(1, 2)}})
    logger.log("CHECK_PASS", {"summary": "third"})
    path = config.LOG_DIR / "suite" / "unit" / "run_main.jsonl"
    entries = [json.loads(line) for line in path.read_text(encoding="utf-8").splitlines()]
    assert [e["type"] for e in entries] == ["CHECK_PASS", "CHECK_FAIL", "CHECK_PASS"]
    assert entries[1]["data"]["detail"]["q"] == "1/2"
    assert logger.tally() == "CHECK_FAIL=1 CHECK_PASS=2"
