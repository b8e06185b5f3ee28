from .level import LEVEL_FIELD, ExponentShift, k, level_from_table, level_scalar, substitute_level
from .graded import GradedSeries, first_difference, series_mul
from .products import eta_like_product, free_field_factor, heisenberg_series, loop_minus_series, pbw_series
from .invariants import invariant_part
