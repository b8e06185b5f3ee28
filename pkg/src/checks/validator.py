from collections import Counter
from pathlib import Path
from typing import Dict, List, Optional

from src.algebra.ids import AlgebraId
from src.models.schemas import CheckResult
from src.reps.weights import Weight
from src.utils.errors import HookdualError
from src.walgebra.duality import CONJECTURAL, FAIL, PASS
from .rules import EngineRules, MainTheoremRules, SemicohRules, TableIdentityRules, pair_b_algebras

FAST, FULL = "fast", "full"

# --- Profile Parameters ---
# Every entry is a plain value so the profile can be echoed into the report.
PROFILES: Dict[str, Dict] = {
    FAST: {
        "pair_ns": [1, 2, 3],
        "pair_ms": [1, 2, 3],
        "kernel_ms": [1, 2],
        "kernel_ns": [-2, -1, 1, 2],
        "heisenberg": [[1, 1], [2, 1], [1, 2]],
        "random_algebras": 20,
        "random_seed": 2024,
        "random_degree": 2,
        "pairing_algebras": ["sl2"],
        "pairing_degree": 1,
        "semicoh_algebras": ["gl1", "sl2"],
        "semicoh_coords": [0, 1],
        "semicoh_weight": 1,
        "vanishing_depth": 2,
        "main_cases": [["A", 1, 1]],
        "main_order": 2,
    },
    FULL: {
        "pair_ns": [1, 2, 3],
        "pair_ms": [1, 2, 3],
        "kernel_ms": [1, 2, 3],
        "kernel_ns": [-2, -1, 1, 2],
        "heisenberg": [[1, 1], [2, 1], [1, 2]],
        "random_algebras": 20,
        "random_seed": 2024,
        "random_degree": 3,
        "pairing_algebras": ["sl2", "osp12"],
        "pairing_degree": 2,
        "semicoh_algebras": ["gl1", "sl2", "osp12"],
        "semicoh_coords": [0, 1, 2],
        "semicoh_weight": 3,
        "vanishing_depth": 3,
        "main_cases": [["A", 1, 1], ["A", 2, 1], ["C", 1, 1], ["D", 1, 1], ["B", 1, 1], ["O", 1, 1], ["B", 1, 2]],
        "main_order": 6,
    },
}


def _weights(algebra: AlgebraId, coords: List[int]) -> List[Weight]:
    """Dominant weights with every coordinate in ``coords``; gl1 also takes the negatives."""
    values = sorted(set(coords) | ({-c for c in coords} if algebra.is_abelian else set()))
    out = []
    for c in values:
        weight = Weight(algebra, tuple(c for _ in range(algebra.rank)))
        if weight.is_dominant():
            out.append(weight)
    return out


class IdentityValidator:
    def __init__(self, profile: str = FAST, tables_file: Optional[Path] = None):
        """
        Initialize with the profile parameters once.
        """
        if profile not in PROFILES:
            raise HookdualError(f"Unknown suite profile '{profile}', expected one of {sorted(PROFILES)}")
        self.profile = profile
        self.params = PROFILES[profile]
        self.tables_file = tables_file

    def validate_tables(self) -> List[CheckResult]:
        """
        Runs the symbolic table battery.
        Returns: list of check results, failures naming the offending cell.
        """
        results: List[CheckResult] = []
        p = self.params
        TableIdentityRules.check_tables_file(self.tables_file, results)
        if results[-1].status == FAIL:
            # Nothing below can be trusted on a corrupted fixture.
            return results
        TableIdentityRules.check_pair_identities(p["pair_ns"], p["pair_ms"], results)
        TableIdentityRules.check_table_columns(p["pair_ns"], p["pair_ms"], results)
        TableIdentityRules.check_kernel_rows(pair_b_algebras(p["kernel_ms"]), p["kernel_ns"], results)
        return results

    def validate_engine(self) -> List[CheckResult]:
        results: List[CheckResult] = []
        p = self.params
        EngineRules.check_ope_lemma(results)
        EngineRules.check_invariant_grams([AlgebraId.parse("sl2"), AlgebraId.parse("osp12")], results)
        EngineRules.check_heisenberg_rotation([tuple(c) for c in p["heisenberg"]], results)
        EngineRules.check_random_square_zero(p["random_algebras"], p["random_seed"], p["random_degree"], results)
        algebras = [AlgebraId.parse(a) for a in p["pairing_algebras"]]
        EngineRules.check_free_module(algebras, p["pairing_degree"] + 1, results)
        weights = [w for a in algebras for w in _weights(a, [0, 1])]
        EngineRules.check_pairing(weights, p["pairing_degree"], results)
        EngineRules.check_weyl_forms(weights, p["vanishing_depth"] - 1, results)
        return results

    def validate_semicoh(self) -> List[CheckResult]:
        results: List[CheckResult] = []
        p = self.params
        for label in p["semicoh_algebras"]:
            algebra = AlgebraId.parse(label)
            weights = _weights(algebra, p["semicoh_coords"])
            for lam in weights:
                for mu in weights:
                    SemicohRules.check_case(lam, mu, p["semicoh_weight"], results)
            SemicohRules.check_vanishing(weights, p["vanishing_depth"], results)
            SemicohRules.check_tensor_homology([(lam, lam) for lam in weights[:2]], results)
            SemicohRules.check_wedge([algebra], p["vanishing_depth"], results)
        return results

    def validate_main_theorem(self) -> List[CheckResult]:
        results: List[CheckResult] = []
        p = self.params
        MainTheoremRules.check_characters([tuple(c) for c in p["main_cases"]], p["main_order"], results)
        MainTheoremRules.check_falsification("A", p["main_order"], results)
        return results

    def validate_all(self) -> List[CheckResult]:
        results = self.validate_tables()
        if any(r.status == FAIL for r in results[:1]):
            return results
        for step in (self.validate_engine, self.validate_semicoh, self.validate_main_theorem):
            results.extend(step())
        return results

    @staticmethod
    def summarize(results: List[CheckResult]) -> Dict:
        """
        Aggregate status: fail on any failure, conjectural-structure when some
        check only holds under that label, pass otherwise.
        """
        counts = Counter(r.status for r in results)
        if counts[FAIL]:
            status = FAIL
        elif counts[CONJECTURAL]:
            status = CONJECTURAL
        else:
            status = PASS
        return {"status": status, "counts": dict(sorted(counts.items())), "total": len(results)}
