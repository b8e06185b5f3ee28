from .ids import AlgebraId, Family, SuperDescriptor, descriptor_from_text, dual_coxeter
from .structure import SuperBasis, build_algebra, basis_from_matrices
from .roots import RootDatum
from .transpose import chevalley_transpose
from .pbw import PBWModule
