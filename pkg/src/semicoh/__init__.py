from .ce import CHAIN, COCHAIN, CEComplex, LieData, ModuleData, build_ce, free_module_homology, simple_module_data, trivial_module
from .affine_modules import LoopAlgebra, TensorModule, WeylModule, complement_level, ghost_level, small_algebra
from .fock import GhostFock
from .relative import RelativeComplex, SemiComplexSlice, SemicohReport, relative_semicoh
from .euler import EulerCheck, ep_check, euler_poincare_char, wedge_supercharacter_check
from .filtration import F, G, FiltrationReport, filtration_split_check
from .pairing import PairingReport, PairingWitness, WeylForm, build_witness, pairing_check, weyl_form_check
from .loop import cohomology_of_loop_plus, free_tensor_homology, homology_of_loop_minus, homology_of_tensor
