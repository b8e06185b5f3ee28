from .conformal import casimir, delta_lowest, finite_char_series, weyl_module_char
from .kernel import KernelCharacter, KernelSpec, check_delta_K, check_kernel_relation, kernel_char, kernel_spec
from .free_fields import FreeField, FreeFieldAlgebra, invariant_gram_check, ope_leading_check, ope_leading_coefficient
