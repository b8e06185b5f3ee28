import random
from pathlib import Path
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from sympy import QQ

from src.affine.free_fields import FreeField, invariant_gram_check, ope_leading_check
from src.affine.kernel import KernelSpec, check_delta_K, check_kernel_relation
from src.algebra.ids import AlgebraId
from src.algebra.random_algebras import random_superalgebra
from src.models.schemas import CheckResult
from src.models.tables import load_hook_tables
from src.reps.characters import character
from src.reps.weights import Weight
from src.semicoh.ce import CHAIN, COCHAIN, LieData, build_ce, free_module_homology, trivial_module
from src.semicoh.euler import ep_check, wedge_supercharacter_check
from src.semicoh.filtration import F, G, filtration_split_check
from src.semicoh.loop import (cohomology_of_loop_plus, free_tensor_homology, homology_of_loop_minus,
                              homology_of_tensor)
from src.semicoh.pairing import build_witness, pairing_check, weyl_form_check
from src.semicoh.affine_modules import small_algebra
from src.semicoh.relative import relative_semicoh
from src.series.level import format_level
from src.utils.errors import HookdualError
from src.utils.exact import to_jsonable
from src.walgebra.duality import CONJECTURAL, FAIL, PASS, heisenberg_rotation_check, pair_identity_report, \
    verify_main_theorem_char
from src.walgebra.levels import DualityPair
from src.walgebra.tables import HOOK_TYPES, MINUS, PLUS, HookLabel, check_delta_rho_column, check_dual_coxeter_column

# --- Helper Functions ---

def add_result(results: List[CheckResult], name: str, status: str,
               detail: Optional[str] = None, data: Optional[Dict] = None):
    """
    Appends one check result; data is converted to its exact JSON codec.
    """
    results.append(CheckResult(name=name, status=status, detail=detail, data=to_jsonable(data or {})))


def record_check(results: List[CheckResult], name: str, check: Callable[..., Any], *args,
                 conjectural: bool = False, **kwargs) -> Optional[Any]:
    """
    Runs a check that raises on failure. A HookdualError becomes a failed
    result carrying the error message; anything else propagates.
    """
    try:
        data = check(*args, **kwargs)
    except HookdualError as e:
        add_result(results, name, FAIL, detail=str(e))
        return None
    add_result(results, name, CONJECTURAL if conjectural else PASS,
               data=data if isinstance(data, dict) else {"value": data})
    return data


def _as_int(value) -> int:
    return int(QQ.convert(value).numerator)


def _status(passed: bool) -> str:
    return PASS if passed else FAIL


def pair_b_algebras(ms: Iterable[int]) -> List[AlgebraId]:
    """The b subalgebras of both sides of every pair, deduplicated in table order."""
    seen: List[AlgebraId] = []
    for X in HOOK_TYPES:
        for m in ms:
            pair = DualityPair(X, 1, m)
            for algebra in (pair.b_plus, pair.b_minus):
                if algebra not in seen:
                    seen.append(algebra)
    return seen


class TableIdentityRules:
    """
    Symbolic identities of the hook tables, exact in k.
    """

    @staticmethod
    def check_tables_file(path: Optional[Path], results: List[CheckResult]):
        def load():
            tables = load_hook_tables(path)
            return {"hook_rows": len(tables.hook_rows), "kernels": len(tables.kernels), "pairs": len(tables.pairs)}

        record_check(results, f"tables: {path or 'default'} loads", load)

    @staticmethod
    def check_pair_identities(ns: Sequence[int], ms: Sequence[int], results: List[CheckResult]):
        for X in HOOK_TYPES:
            for n in ns:
                for m in ms:
                    pair = DualityPair(X, n, m)
                    record_check(results, f"pair identities {pair}", pair_identity_report, pair,
                                 conjectural=pair.conjectural)

    @staticmethod
    def check_table_columns(ns: Sequence[int], ms: Sequence[int], results: List[CheckResult]):
        for X in HOOK_TYPES:
            for sign in (PLUS, MINUS):
                for n in ns:
                    for m in ms:
                        label = HookLabel(X, sign, n, m)
                        record_check(results, f"h_vee column {label}", check_dual_coxeter_column, label)
                        record_check(results, f"delta_rho column {label}", check_delta_rho_column, label)

    @staticmethod
    def check_kernel_rows(algebras: Sequence[AlgebraId], ns: Sequence[int], results: List[CheckResult]):
        for algebra in algebras:
            for n in ns:
                try:
                    spec = KernelSpec(algebra, n)
                except HookdualError as e:
                    add_result(results, f"kernel row {algebra.label} n={n}", FAIL, detail=str(e))
                    continue
                record_check(results, f"Delta_K {algebra.label} n={n}", check_delta_K, spec)
                record_check(results, f"kernel relation {algebra.label} n={n}", check_kernel_relation, spec)


class EngineRules:
    """
    Free-field lemmas and the exactness of the (co)chain engines.
    """

    @staticmethod
    def check_ope_lemma(results: List[CheckResult]):
        for pa in (0, 1):
            for pb in (0, 1):
                fields = (FreeField("a1", pa), FreeField("b1", pb), FreeField("a2", pa), FreeField("b2", pb))
                record_check(results, f"OPE leading term parities ({pa},{pb})",
                             lambda: {"coefficient": format_level(ope_leading_check(*fields, alpha=2, beta=3))})

    @staticmethod
    def check_invariant_grams(algebras: Sequence[AlgebraId], results: List[CheckResult]):
        for algebra in algebras:
            for flip in (0, 1):
                data = record_check(results, f"invariant Gram {algebra.label} flip={flip}",
                                    invariant_gram_check, algebra, 2, flip)
                if data is not None and not data["passed"]:
                    results[-1].status = FAIL
                    results[-1].detail = f"rank {data['rank']} of {data['dimension']}, failures {data['invariance_failures']}"

    @staticmethod
    def check_heisenberg_rotation(cases: Sequence[Tuple[int, int]], results: List[CheckResult]):
        for n, m in cases:
            record_check(results, f"Heisenberg rotation n={n} m={m}", heisenberg_rotation_check, n, m)

    @staticmethod
    def check_random_square_zero(count: int, seed: int, max_degree: int, results: List[CheckResult]):
        """build_ce raises on d^2 != 0 in either direction."""
        rng = random.Random(seed)
        for index in range(count):
            basis = random_superalgebra(rng)

            def both_directions(basis=basis):
                lie = LieData.from_basis(basis)
                for direction in (COCHAIN, CHAIN):
                    build_ce(lie, trivial_module(), direction, max_degree)
                return {"dimension": basis.dim, "odd": sum(basis.parities)}

            record_check(results, f"d^2 = 0 on random superalgebra #{index}", both_directions)

    @staticmethod
    def check_free_module(algebras: Sequence[AlgebraId], filtration: int, results: List[CheckResult]):
        for algebra in algebras:
            basis = small_algebra(algebra)
            homology = record_check(results, f"free U({algebra.label}) homology", free_module_homology, basis, filtration)
            if homology is not None and {n: d for n, d in homology.items() if d} != {0: 1}:
                results[-1].status = FAIL
                results[-1].detail = f"homology {homology}, expected C in degree 0"

    @staticmethod
    def check_pairing(weights: Sequence[Weight], max_degree: int, results: List[CheckResult]):
        for weight in weights:
            name = f"pairing {weight.algebra.label} L_{list(weight.coords)}"
            try:
                report = pairing_check(build_witness(weight), max_degree)
            except HookdualError as e:
                add_result(results, name, FAIL, detail=str(e))
                continue
            add_result(results, name, _status(report.passed), data=report.to_json())

    @staticmethod
    def check_weyl_forms(weights: Sequence[Weight], depth: int, results: List[CheckResult]):
        for weight in weights:
            data = record_check(results, f"Weyl form {weight.algebra.label} V_{list(weight.coords)}",
                                weyl_form_check, weight.algebra, weight, depth=depth)
            if data is not None and not data["nondegenerate"]:
                results[-1].status = FAIL
                results[-1].detail = f"degenerate form, ranks {data['ranks']}"


class SemicohRules:
    """
    Formality of the relative complex and everything read off the same slices.
    """

    @staticmethod
    def check_case(lam: Weight, mu: Weight, max_weight: int, results: List[CheckResult]):
        algebra = lam.algebra
        tag = f"{algebra.label} lambda={list(lam.coords)} mu={list(mu.coords)}"
        try:
            report = relative_semicoh(algebra, lam, mu, max_weight=max_weight)
        except HookdualError as e:
            add_result(results, f"formality {tag}", FAIL, detail=str(e))
            return
        detail = None if report.passed else f"H^0 total {report.total(0)}, expected {report.expected}"
        add_result(results, f"formality {tag}", _status(report.passed), detail=detail,
                   data={"expected": report.expected,
                         "cohomology": {s.weight: s.cohomology for s in report.slices},
                         "witness": report.witness})

        euler = record_check(results, f"Euler-Poincare {tag}",
                             lambda: ep_check(lam, mu, order=2 * max_weight, report=report).to_json())
        if euler is not None and not euler["passed"]:
            results[-1].status = FAIL
            results[-1].detail = f"rows {euler['rows']}"

        for slice_ in report.slices:
            for which in (F, G):
                name = f"filtration {which} {tag} weight {slice_.weight}"
                filtration = record_check(results, name, lambda s=slice_, w=which: filtration_split_check(s, w).to_json())
                if filtration is not None and not filtration["passed"]:
                    results[-1].status = FAIL
                    results[-1].detail = f"E1 {filtration['first_page']} against H {filtration['cohomology']}"

    @staticmethod
    def check_vanishing(weights: Sequence[Weight], depth: int, results: List[CheckResult]):
        """Only L_lambda at weight 0 in degree 0, for L^- homology and L^+ cohomology."""
        for weight in weights:
            dim = _as_int(character(weight).dimension())
            expected = {0: {0: dim}}
            tag = f"{weight.algebra.label} V_{list(weight.coords)}"
            for name, compute in (
                (f"homology of L^- {tag}", lambda w=weight: homology_of_loop_minus(w.algebra, w, depth=depth)),
                (f"cohomology of L^+ {tag}", lambda w=weight: cohomology_of_loop_plus(w.algebra, w, depth=min(depth, 2))),
            ):
                data = record_check(results, name, lambda c=compute: {"by_weight": c()})
                if data is not None and data["by_weight"] != expected:
                    results[-1].status = FAIL
                    results[-1].detail = f"got {data['by_weight']}, expected {expected}"

    @staticmethod
    def check_tensor_homology(pairs: Sequence[Tuple[Weight, Weight]], results: List[CheckResult]):
        """Free over U(L^- g): nothing above degree 0, and H_0 is L_lambda (x) V_mu weight by weight."""
        for lam, mu in pairs:
            tag = f"{lam.algebra.label} lambda={list(lam.coords)} mu={list(mu.coords)}"
            data = record_check(results, f"homology of L^- on V (x) V {tag}",
                                lambda a=lam, b=mu: {"by_weight": homology_of_tensor(a.algebra, a, b),
                                                     "expected": free_tensor_homology(a.algebra, a, b)})
            if data is not None and data["by_weight"] != data["expected"]:
                results[-1].status = FAIL
                results[-1].detail = f"got {data['by_weight']}, expected {data['expected']}"

    @staticmethod
    def check_wedge(algebras: Sequence[AlgebraId], depth: int, results: List[CheckResult]):
        for algebra in algebras:
            record_check(results, f"relative wedge of {algebra.label} is Pi^2", wedge_supercharacter_check, algebra, depth)


class MainTheoremRules:
    """
    The duality at the level of characters, with a falsification control.
    """

    @staticmethod
    def check_characters(cases: Sequence[Tuple[str, int, int]], order: int, results: List[CheckResult]):
        for X, n, m in cases:
            pair = DualityPair(X, n, m)
            name = f"main theorem characters {pair} to q^({order}/2)"
            try:
                report = verify_main_theorem_char(pair, order)
            except HookdualError as e:
                add_result(results, name, FAIL, detail=str(e))
                continue
            add_result(results, name, report.status, detail=report.reason or None, data=report.to_json())

    @staticmethod
    def check_falsification(X: str, order: int, results: List[CheckResult]):
        """With r shifted by one the characters must disagree."""
        pair = DualityPair(X, 1, 1)
        perturbed = DualityPair(X, 1, 1, r_override=pair.r + 1)
        name = f"falsification control {pair} with r = {perturbed.r}"
        try:
            report = verify_main_theorem_char(perturbed, order)
            caught = not report.passed
            reason = report.reason
        except HookdualError as e:
            caught, reason = True, str(e)
        add_result(results, name, _status(caught),
                   detail=None if caught else "perturbed pair still verifies",
                   data={"caught_by": reason})
