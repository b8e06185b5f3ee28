from .weights import Weight, bo_inverse, bo_map, dual_weight, in_R, natural_weight, parse_weight, root_datum
from .characters import (
    FiniteChar,
    StrClass,
    character,
    decompose,
    tensor_decompose,
    trivial_multiplicity,
    weyl_dimension,
)
from .modules import SimpleModule
