from .tables import HOOK_TYPES, MINUS, PLUS, HookLabel, check_delta_rho_column, check_dual_coxeter_column, pair_record
from .levels import (
    MINUS_TO_PLUS,
    PLUS_TO_MINUS,
    DualityPair,
    alpha_levels,
    level_map,
    sector_shift,
)
from .spectrum import GeneratorSpectrum, generator_spectrum, shifted_exponents, vacuum_char
from .branching import Branching, BranchingFunction, check_reconstruction, extract_branching, reconstruct
from .duality import MainTheoremReport, heisenberg_rotation_check, pair_identity_report, verify_main_theorem_char
