import time
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple

from src.affine.conformal import delta_lowest, weyl_module_char
from src.affine.kernel import KernelSpec, check_delta_K, check_kernel_relation, kernel_char
from src.algebra.ids import AlgebraId, descriptor_from_text, dual_coxeter
from src.algebra.structure import build_algebra
from src.algebra.transpose import anti_homomorphism_residuals, chevalley_transpose, form_residuals, \
    transpose_is_involutive
from src.checks import IdentityValidator, add_result, record_check
from src.models.schemas import CheckResult, Report, RunRequest
from src.models.tables import load_hook_tables
from src.reps.characters import character, is_weyl_invariant, tensor_decompose, trivial_multiplicity, weyl_dimension
from src.reps.weights import Weight, bo_inverse, bo_map, dual_weight, in_R, parse_weight
from src.semicoh.ce import CHAIN, COCHAIN, LieData, build_ce, simple_module_data
from src.semicoh.euler import ep_check, wedge_supercharacter_check
from src.semicoh.filtration import F, G, filtration_split_check
from src.semicoh.loop import homology_of_loop_minus
from src.semicoh.pairing import build_witness, pairing_check
from src.semicoh.relative import relative_semicoh
from src.series.level import format_level, k, level_scalar
from src.utils import config
from src.utils.errors import CacheCorruptionError, ComplexError, HookdualError, IdentityError, \
    NegativeMultiplicityError, NonInvariantError, TruncationError, UnsupportedAlgebraError
from src.utils.exact import format_half, format_rational, parse_half, parse_rational, to_jsonable
from src.utils.file_io import load_json_file, request_hash, save_json_file
from src.utils.logger import DetailedLogger
from src.walgebra.branching import check_reconstruction, extract_branching, vacuum_leading_terms
from src.walgebra.duality import CONJECTURAL, FAIL, PASS, pair_identity_report, verify_main_theorem_char
from src.walgebra.levels import MINUS_TO_PLUS, DualityPair, alpha_levels, level_map
from src.walgebra.spectrum import generator_spectrum, vacuum_char
from src.walgebra.tables import HOOK_TYPES, MINUS, PLUS, HookLabel, check_delta_rho_column, \
    check_dual_coxeter_column

StepResult = Tuple[List[CheckResult], Dict[str, Any]]

FAILURE_ERRORS = (ComplexError, IdentityError, NonInvariantError, NegativeMultiplicityError)


# --- Parameter helpers ---

def _require(params: Dict, name: str) -> Any:
    value = params.get(name)
    if value is None or value == "":
        raise HookdualError(f"Missing parameter '{name}'")
    return value


def _order(params: Dict, name: str = "order") -> int:
    """Truncation in q units ('3', '5/2') as a doubled exponent within MAX_SERIES_ORDER."""
    doubled = parse_half(str(_require(params, name)))
    if doubled < 0 or doubled > 2 * config.MAX_SERIES_ORDER:
        raise TruncationError(f"{name} must lie in [0, {config.MAX_SERIES_ORDER}], got {params[name]}")
    return doubled


def _max_weight(params: Dict) -> int:
    value = int(_require(params, "maxweight"))
    if value < 0 or value > config.MAX_SEMICOH_WEIGHT:
        raise TruncationError(f"maxweight must lie in [0, {config.MAX_SEMICOH_WEIGHT}], got {value}")
    return value


def _weight(algebra: AlgebraId, params: Dict, name: str) -> Weight:
    return parse_weight(algebra, str(params.get(name) or "")).require_dominant()


def _level(params: Dict):
    """Symbolic k unless a level expression such as '-1/3' or 'k+2' is given."""
    return level_scalar(params.get("level") or k)


def _pair(params: Dict) -> DualityPair:
    X = str(_require(params, "X")).upper()
    if X not in HOOK_TYPES:
        raise UnsupportedAlgebraError(f"X must be one of {', '.join(HOOK_TYPES)}, got '{X}'")
    n, m = int(_require(params, "n")), int(_require(params, "m"))
    if n < 1 or m < 1:
        raise UnsupportedAlgebraError(f"Duality pairs need n, m >= 1, got n={n}, m={m}")
    r = params.get("r")
    return DualityPair(X, n, m, r_override=parse_rational(str(r)) if r not in (None, "") else None)


# --- Steps, one per command ---

def run_algebra_info(params: Dict) -> StepResult:
    print("\n--- Step: Algebra Info ---")
    text = str(_require(params, "algebra"))
    checks: List[CheckResult] = []
    try:
        algebra = AlgebraId.parse(text)
    except UnsupportedAlgebraError:
        # Ambient superalgebras of the hook table are descriptors only.
        descriptor = descriptor_from_text(text)
        forms = {}
        for form in ("str", "-str", "1/2str", "tr"):
            try:
                forms[form] = format_rational(descriptor.dual_coxeter(form))
            except UnsupportedAlgebraError:
                continue
        return checks, {"algebra": descriptor.label, "realized": False,
                        "superdimension": list(descriptor.superdimension), "dual_coxeter": forms}

    basis, rd = build_algebra(algebra, params.get("form") or "kappa0")

    def transpose_identities():
        image = chevalley_transpose(basis)
        bad = anti_homomorphism_residuals(basis, image)
        if bad:
            raise IdentityError(f"t[x, y] != [ty, tx] on {[(basis.labels[i], basis.labels[j]) for i, j in bad[:3]]}")
        bad = form_residuals(basis, image)
        if bad:
            raise IdentityError(f"(tx|ty) != (y|x) on {[(basis.labels[i], basis.labels[j]) for i, j in bad[:3]]}")
        return {"involutive": transpose_is_involutive(basis, image)}

    record_check(checks, f"Chevalley transpose of {algebra.label}", transpose_identities)
    results = {
        "algebra": algebra.label,
        "realized": True,
        "dimension": [basis.dim - sum(basis.parities), sum(basis.parities)],
        "rank": algebra.rank,
        "form": basis.form_normalization,
        "dual_coxeter": format_rational(dual_coxeter(algebra)),
        "basis": [{"label": lab, "parity": p} for lab, p in zip(basis.labels, basis.parities)],
        "positive_roots": [{"eps": list(v), "parity": p} for v, p in rd.reduced_positive_roots],
    }
    return checks, to_jsonable(results)


def run_char(params: Dict) -> StepResult:
    print("\n--- Step: Characters ---")
    algebra = AlgebraId.parse(str(_require(params, "algebra")))
    lam = _weight(algebra, params, "lambda")
    checks: List[CheckResult] = []
    char = character(lam)
    results: Dict[str, Any] = {
        "algebra": algebra.label,
        "lambda": list(lam.coords),
        "dimension": char.dimension(),
        "superdimension": char.superdimension(),
        "character": char.to_json(),
        "dual": list(dual_weight(lam).coords),
        "in_R": in_R(lam),
    }
    add_result(checks, f"Weyl invariance of ch L_{list(lam.coords)}", PASS if is_weyl_invariant(char) else FAIL)
    if not algebra.is_super:
        record_check(checks, "Weyl dimension formula", lambda: _compare("dimension", char.dimension(), weyl_dimension(lam)))
    if algebra.family.value in ("OSP_1_2M", "SO_ODD") and in_R(lam):
        partner = bo_map(lam) if algebra.is_super else bo_inverse(lam)
        results["bo_partner"] = {"algebra": partner.algebra.label, "lambda": list(partner.coords)}
        record_check(checks, "character dictionary between so(2m+1) and osp(1|2m)",
                     lambda: _compare("dimension", character(partner).dimension(), char.dimension()))

    if params.get("mu") not in (None, ""):
        mu = _weight(algebra, params, "mu")
        multiplicity, str_class = trivial_multiplicity(lam, mu)
        results["mu"] = list(mu.coords)
        results["tensor"] = [{"nu": list(nu.coords), "multiplicity": c}
                             for nu, c in sorted(tensor_decompose(lam, mu).items())]
        results["trivial_multiplicity"] = multiplicity
        results["str_class"] = None if str_class is None else list(str_class.weight.coords)
        expected = 1 if dual_weight(mu) == lam else 0
        record_check(checks, "trivial multiplicity is delta_{lambda, mu dagger}",
                     lambda: _compare("trivial multiplicity", multiplicity, expected))

    if params.get("order") not in (None, ""):
        order = _order(params)
        series = weyl_module_char(lam, _level(params), order)
        results["weyl_module"] = series.to_json()
        results["delta_lowest"] = delta_lowest(lam, _level(params)).to_json()
    return checks, to_jsonable(results)


def _compare(what: str, actual, expected) -> Dict:
    if actual != expected:
        raise IdentityError(f"{what} is {actual}, expected {expected}")
    return {what: to_jsonable(actual)}


def run_kernel(params: Dict) -> StepResult:
    print("\n--- Step: Kernel ---")
    algebra = AlgebraId.parse(str(_require(params, "algebra")))
    n = int(_require(params, "n"))
    spec = KernelSpec(algebra, n)
    checks: List[CheckResult] = []
    record_check(checks, f"Delta_K of {algebra.label} n={n}", check_delta_K, spec, conjectural=spec.conjectural)
    record_check(checks, f"kernel relation of {algebra.label} n={n}", check_kernel_relation, spec)
    a, b, c = spec.abc
    results: Dict[str, Any] = {
        "algebra": algebra.label,
        "second": spec.second.label,
        "n": n,
        "abc": [a, b, c],
        "delta_K": spec.delta_K,
        "dual_level": format_level(spec.derived_level()),
        "conjectural_structure": spec.conjectural,
    }
    if params.get("order") not in (None, ""):
        order = _order(params)
        character_ = kernel_char(spec, order, int(params.get("weight_bound") or 0))
        results["character"] = character_.to_json()
    return checks, to_jsonable(results)


def run_duality_levels(params: Dict) -> StepResult:
    print("\n--- Step: Duality Levels ---")
    pair = _pair(params)
    checks: List[CheckResult] = []
    identities = record_check(checks, f"identities of {pair}", pair_identity_report, pair, conjectural=pair.conjectural)
    results: Dict[str, Any] = {
        "pair": str(pair),
        "r": format_rational(pair.r),
        "level": format_level(level_map(pair)),
        "inverse_level": format_level(level_map(pair, MINUS_TO_PLUS)),
        "k_b_plus": format_level(pair.plus.k_b()),
        "l_b_minus": format_level(pair.minus.k_b(level_map(pair))),
        "conjectural_structure": pair.conjectural,
    }
    if identities is not None:
        results["alpha_plus"] = identities["alpha_plus"]
        results["alpha_minus"] = identities["alpha_minus"]
    return checks, results


def run_duality_verify(params: Dict) -> StepResult:
    print("\n--- Step: Duality Verify ---")
    pair = _pair(params)
    order = _order(params)
    checks: List[CheckResult] = []
    if params.get("r") is None:
        record_check(checks, f"identities of {pair}", pair_identity_report, pair, conjectural=pair.conjectural)
    for label in (pair.plus, pair.minus):
        record_check(checks, f"generator spectrum of {label}", lambda l=label: generator_spectrum(l).check_counts())

    w_char = vacuum_char(pair.plus, order)
    try:
        branching = extract_branching(w_char, pair.b_plus)
    except HookdualError as e:
        add_result(checks, f"branching of {pair.plus}", FAIL, detail=str(e))
        return checks, {"pair": str(pair), "order": format_half(order)}
    reconstruction = check_reconstruction(w_char, branching)
    add_result(checks, f"branching reconstruction of {pair.plus}", PASS if reconstruction["passed"] else FAIL,
               data=reconstruction)
    if generator_spectrum(pair.plus).has_conformal_coset and order >= 4:
        leading = vacuum_leading_terms(branching, 4)
        add_result(checks, "vacuum branching starts 1 + 0 q + ...",
                   PASS if leading[0] == 1 and leading[2] == 0 else FAIL, data={"leading": leading})

    report = verify_main_theorem_char(pair, order)
    add_result(checks, f"main theorem characters {pair}", report.status, detail=report.reason or None)
    results = report.to_json()
    results["branching"] = branching.to_json()
    return checks, to_jsonable(results)


def run_semicoh(params: Dict) -> StepResult:
    print("\n--- Step: Relative Semi-infinite Cohomology ---")
    algebra = AlgebraId.parse(str(_require(params, "algebra")))
    lam, mu = _weight(algebra, params, "lambda"), _weight(algebra, params, "mu")
    max_weight = _max_weight(params)
    checks: List[CheckResult] = []
    report = relative_semicoh(algebra, lam, mu, level=_level(params), max_weight=max_weight)
    add_result(checks, "cohomology concentrated in degree 0", PASS if report.formal else FAIL,
               detail=None if report.formal else f"H^0 total {report.total(0)}, expected {report.expected}")
    if report.expected:
        add_result(checks, "class C[str_mu] closed and not exact", PASS if report.witness else FAIL)
    if params.get("filtrations"):
        for slice_ in report.slices:
            for which in (F, G):
                data = record_check(checks, f"filtration {which} at weight {slice_.weight}",
                                    lambda s=slice_, w=which: filtration_split_check(s, w).to_json())
                if data is not None and not data["passed"]:
                    checks[-1].status = FAIL
    return checks, to_jsonable(report.to_json())


def run_ce_verify(params: Dict) -> StepResult:
    print("\n--- Step: Chevalley-Eilenberg Verify ---")
    algebra = AlgebraId.parse(str(_require(params, "algebra")))
    lam = _weight(algebra, params, "lambda")
    max_degree = int(params.get("max_degree") or 2)
    if max_degree < 0 or max_degree > config.MAX_CE_DEGREE:
        raise TruncationError(f"max_degree must lie in [0, {config.MAX_CE_DEGREE}], got {max_degree}")
    checks: List[CheckResult] = []
    witness = build_witness(lam)
    lie, module = LieData.from_basis(witness.basis), simple_module_data(witness.module)
    for direction in (COCHAIN, CHAIN):
        record_check(checks, f"{direction} differential squares to zero",
                     lambda d=direction: {"dimensions": {n: len(s) for n, s in
                                                         build_ce(lie, module, d, max_degree).spaces.items()}})
    results: Dict[str, Any] = {"algebra": algebra.label, "lambda": list(lam.coords), "max_degree": max_degree}
    pairing = record_check(checks, "pairing compatible with the differentials",
                           lambda: pairing_check(witness, max_degree).to_json())
    if pairing is not None:
        results["pairing"] = pairing
        if not pairing["passed"]:
            checks[-1].status = FAIL
    depth = int(params.get("depth") or 0)
    if depth:
        dim = character(lam).dimension()
        homology = record_check(checks, "homology of L^- g is L_lambda in degree 0",
                                lambda: {"by_weight": homology_of_loop_minus(algebra, lam, depth=depth)})
        if homology is not None and homology["by_weight"] != {0: {0: dim}}:
            checks[-1].status = FAIL
    return checks, to_jsonable(results)


def run_ep_check(params: Dict) -> StepResult:
    print("\n--- Step: Euler-Poincare Check ---")
    algebra = AlgebraId.parse(str(_require(params, "algebra")))
    lam, mu = _weight(algebra, params, "lambda"), _weight(algebra, params, "mu")
    max_weight = _max_weight(params)
    checks: List[CheckResult] = []
    record_check(checks, f"relative wedge of {algebra.label} is Pi^2", wedge_supercharacter_check, algebra, max_weight)
    report = None
    if params.get("cohomology"):
        report = relative_semicoh(algebra, lam, mu, max_weight=max_weight)
    euler = ep_check(lam, mu, order=2 * max_weight, report=report)
    add_result(checks, "Euler-Poincare character", PASS if euler.passed else FAIL, data={"rows": euler.rows})
    return checks, to_jsonable(euler.to_json())


def run_tables(params: Dict) -> StepResult:
    print("\n--- Step: Tables ---")
    n, m = int(params.get("n") or 1), int(params.get("m") or 1)
    checks: List[CheckResult] = []
    tables_file = params.get("tables_file")
    record_check(checks, "hook tables load", lambda: {"rows": len(load_hook_tables(tables_file).hook_rows)})
    if checks[-1].status == FAIL:
        return checks, {}
    rows = []
    for X in HOOK_TYPES:
        for sign in (PLUS, MINUS):
            label = HookLabel(X, sign, n, m)
            record_check(checks, f"h_vee column {label}", check_dual_coxeter_column, label)
            record_check(checks, f"delta_rho column {label}", check_delta_rho_column, label)
            rows.append({
                "label": str(label),
                "g": label.ambient.label,
                "kappa": label.kappa,
                "h_vee": format_rational(label.h_vee),
                "a": label.a_algebra.label,
                "b": label.b_algebra.label,
                "k_b": format_level(label.k_b()),
                "delta_rho": format_rational(label.delta_rho),
                "primary_odd": label.primary.odd,
            })
    pairs = []
    for X in HOOK_TYPES:
        pair = DualityPair(X, n, m)
        entry = {"pair": str(pair), "r": format_rational(pair.r), "level": format_level(level_map(pair))}
        try:
            alpha_plus, alpha_minus = alpha_levels(pair)
            entry.update(alpha_plus=format_level(alpha_plus), alpha_minus=format_level(alpha_minus))
        except HookdualError as e:
            add_result(checks, f"alpha levels of {pair}", FAIL, detail=str(e))
        pairs.append(entry)
    return checks, {"n": n, "m": m, "hook_rows": rows, "pairs": pairs}


def run_suite(params: Dict) -> StepResult:
    print("\n--- Step: Suite ---")
    tables_file = params.get("tables_file")
    validator = IdentityValidator(params.get("profile") or "fast", Path(tables_file) if tables_file else None)
    checks = validator.validate_all()
    return checks, {"profile": validator.profile, "parameters": validator.params,
                    "summary": IdentityValidator.summarize(checks)}


STEPS: Dict[str, Callable[[Dict], StepResult]] = {
    "algebra-info": run_algebra_info,
    "char": run_char,
    "kernel": run_kernel,
    "duality-levels": run_duality_levels,
    "duality-verify": run_duality_verify,
    "semicoh": run_semicoh,
    "ce-verify": run_ce_verify,
    "ep-check": run_ep_check,
    "tables": run_tables,
    "suite": run_suite,
}


# --- Result cache ---

def _request_payload(request: RunRequest) -> Dict:
    return {"command": request.command, "params": request.params}


def cache_path(key: str) -> Path:
    return Path(config.CACHE_DIR) / f"{key}.json"


def load_cached_report(key: str) -> Optional[Report]:
    """The cached report for a request hash; None on a miss, CacheCorruptionError on a hash mismatch."""
    path = cache_path(key)
    if not path.exists():
        return None
    data = load_json_file(path, "cached report")
    if not isinstance(data, dict) or "request" not in data or "report" not in data:
        raise CacheCorruptionError(f"Cache entry {path} is unreadable")
    stored = request_hash(data["request"])
    if stored != key or data.get("request_hash") != key or data["report"].get("request_hash") != key:
        raise CacheCorruptionError(f"Cache entry {path} does not match its request hash {key}")
    return Report.model_validate(data["report"])


def store_report(request: RunRequest, report: Report) -> bool:
    return save_json_file(cache_path(report.request_hash), {
        "request": _request_payload(request),
        "request_hash": report.request_hash,
        "report": report.model_dump(),
    }, "cached report")


def overall_status(checks: List[CheckResult]) -> str:
    return IdentityValidator.summarize(checks)["status"]


def run(request: RunRequest) -> Report:
    """Dispatches one request; passing reports are cached by request hash."""
    step = STEPS.get(request.command)
    if step is None:
        raise HookdualError(f"Unknown command '{request.command}', expected one of {', '.join(STEPS)}")
    key = request_hash(_request_payload(request))
    logger = DetailedLogger(request.command, key[:12])
    logger.log("INFO", {"summary": f"request {key[:12]}", "request": _request_payload(request)})

    if request.use_cache:
        cached = load_cached_report(key)
        if cached is not None:
            logger.log("CACHE_HIT", {"summary": f"{cached.status} from {cache_path(key).name}"})
            return cached

    start = time.perf_counter()
    try:
        checks, results = step(request.params)
    except FAILURE_ERRORS as e:
        # A broken identity inside an engine is a failed run, not a usage error.
        logger.log("ERROR", {"summary": str(e), "error": type(e).__name__})
        checks, results = [CheckResult(name=request.command, status=FAIL, detail=str(e))], {}
    except HookdualError as e:
        logger.log("ERROR", {"summary": str(e), "error": type(e).__name__})
        raise
    report = Report(
        command=request.command,
        request_hash=key,
        status=overall_status(checks),
        checks=checks,
        results=to_jsonable(results),
        elapsed_seconds=round(time.perf_counter() - start, 3),
    )
    for check in checks:
        kind = "CHECK_FAIL" if check.status == FAIL else "CHECK_PASS"
        suffix = f" ({check.status})" if check.status == CONJECTURAL else ""
        logger.log(kind, {"summary": f"{check.name}{suffix}", "detail": check.detail})

    if report.status != FAIL and store_report(request, report):
        logger.log("CACHE_WRITE", {"summary": f"{report.status} to {cache_path(key).name}"})
    logger.log("INFO", {"summary": f"{report.status} in {report.elapsed_seconds}s; {logger.tally()}"})
    return report
