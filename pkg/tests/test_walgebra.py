import json
import re

import pytest
from sympy import QQ

from src.models.tables import load_hook_tables
from src.series.level import k, level_scalar
from src.utils import config
from src.utils.errors import IdentityError, UnsupportedAlgebraError
from src.walgebra.branching import check_reconstruction, extract_branching, vacuum_leading_terms
from src.walgebra.duality import (CONJECTURAL, FAIL, PASS, heisenberg_rotation_check, pair_identity_report,
                                  verify_main_theorem_char)
from src.walgebra.levels import (MINUS_TO_PLUS, DualityPair, _heisenberg_level, alpha_levels, duality_relation_residual,
                                 level_map, substitute_level)
from src.walgebra.spectrum import generator_spectrum, vacuum_char
from src.walgebra.tables import HOOK_TYPES, MINUS, PLUS, HookLabel, check_delta_rho_column, check_dual_coxeter_column

SIZES = [(1, 1), (1, 2), (2, 1), (2, 3)]


def test_level_map_for_O():
    assert level_map(DualityPair("O", 1, 1)) == level_scalar("1/(4*(k+5/2)) - 3/2")


@pytest.mark.parametrize("n,m", SIZES)
def test_level_map_for_A(n, m):
    assert level_map(DualityPair("A", n, m)) == 1 / (k + n + m) - n


@pytest.mark.parametrize("X,r", [("A", 1), ("C", 2), ("O", 4)])
def test_pair_constants(X, r):
    assert DualityPair(X, 1, 1).r == QQ(r)


@pytest.mark.parametrize("X", HOOK_TYPES)
@pytest.mark.parametrize("n,m", SIZES)
def test_level_relation_and_round_trip(X, n, m):
    pair = DualityPair(X, n, m)
    assert not duality_relation_residual(pair)
    ell = level_map(pair)
    assert substitute_level(level_map(pair, MINUS_TO_PLUS), ell) == k


@pytest.mark.parametrize("X", HOOK_TYPES)
@pytest.mark.parametrize("n,m", SIZES)
def test_pair_identities(X, n, m):
    report = pair_identity_report(DualityPair(X, n, m))
    assert report["pair"].startswith(f"{X}+/")


def test_alpha_for_A():
    alpha_plus, _ = alpha_levels(DualityPair("A", 2, 3))
    assert alpha_plus == -(k + 5) + 1 - 3


@pytest.mark.parametrize("X", HOOK_TYPES)
@pytest.mark.parametrize("sign", ["+", "-"])
@pytest.mark.parametrize("n,m", SIZES)
def test_table_columns(X, sign, n, m):
    label = HookLabel(X, sign, n, m)
    check_dual_coxeter_column(label)
    check_delta_rho_column(label)
    generator_spectrum(label).check_counts()


def test_hook_labels_need_positive_sizes():
    with pytest.raises(UnsupportedAlgebraError):
        HookLabel("A", "+", 1, 0)


def test_O_plus_primary_block():
    spectrum = generator_spectrum(HookLabel("O", "+", 2, 1))
    primaries = spectrum.primary_block
    assert len(primaries) == 3
    assert {g.delta for g in primaries} == {QQ(5, 2)}


def test_conjectural_structure_label():
    assert DualityPair("B", 1, 2).conjectural
    assert DualityPair("O", 2, 3).conjectural
    assert not DualityPair("B", 1, 1).conjectural
    assert not DualityPair("C", 3, 3).conjectural


def test_branching_reconstructs_the_vacuum_character():
    label = HookLabel("A", "+", 1, 1)
    w_char = vacuum_char(label, 4)
    branching = extract_branching(w_char, label.b_algebra)
    assert check_reconstruction(w_char, branching)["passed"]
    assert vacuum_leading_terms(branching)[0] == 1


def test_main_theorem_A11():
    report = verify_main_theorem_char(DualityPair("A", 1, 1), 2)
    assert report.status == PASS, report.reason


@pytest.mark.parametrize("n,m", [(1, 1), (2, 1)])
def test_perturbed_r_is_detected(n, m):
    pair = DualityPair("A", n, m)
    report = verify_main_theorem_char(DualityPair("A", n, m, r_override=pair.r + 1), 2)
    assert report.status == FAIL
    assert report.mismatch is not None


@pytest.mark.parametrize("n,m", [(1, 1), (2, 1), (1, 2)])
def test_minus_heisenberg_level_follows_the_level_map(n, m):
    K = k + n + m
    pair = DualityPair("A", n, m)
    assert _heisenberg_level(pair, MINUS) == level_scalar(m) * (n * K - n - m) / (n * K)
    perturbed = DualityPair("A", n, m, r_override=pair.r + 1)
    assert _heisenberg_level(perturbed, MINUS) != _heisenberg_level(pair, MINUS)
    assert _heisenberg_level(perturbed, PLUS) == _heisenberg_level(pair, PLUS)


@pytest.mark.slow
def test_main_theorem_C11_to_q3():
    assert verify_main_theorem_char(DualityPair("C", 1, 1), 6).status == PASS


@pytest.mark.slow
def test_perturbed_C_fails():
    report = verify_main_theorem_char(DualityPair("C", 1, 1, r_override=1), 6)
    assert report.status == FAIL


@pytest.mark.slow
def test_B12_is_conjectural():
    assert verify_main_theorem_char(DualityPair("B", 1, 2), 4).status == CONJECTURAL


@pytest.mark.parametrize("n,m", [(1, 1), (2, 1), (1, 2)])
def test_heisenberg_rotation(n, m):
    assert heisenberg_rotation_check(n, m)["passed"]


def test_heisenberg_rotation_rejects_m_zero():
    with pytest.raises(UnsupportedAlgebraError):
        heisenberg_rotation_check(1, 0)


def test_corrupted_table_names_the_cell(tmp_path):
    data = json.loads(config.HOOK_TABLES_FILE.read_text(encoding="utf-8"))
    label = data["hook_rows"][0]["label"]
    data["hook_rows"][0]["h_vee"] = "n +* m"
    broken = tmp_path / "broken_tables.json"
    broken.write_text(json.dumps(data), encoding="utf-8")
    with pytest.raises(IdentityError, match=re.escape(f"hook_rows[{label}].h_vee")):
        load_hook_tables(broken)


def test_bundled_tables_load():
    tables = load_hook_tables()
    assert {row.label for row in tables.hook_rows} >= {f"{X}{s}" for X in HOOK_TYPES for s in "+-"}
