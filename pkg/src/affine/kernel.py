"""Kernel modules A^n[b, k] = sum_{lambda in R} V^k_lambda (x) V^l_{lambda'} and their characters."""
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, List, Optional, Tuple

from joblib import Parallel, delayed
from sympy import QQ
from sympy.polys.fields import FracElement

from src.algebra.ids import AlgebraId, Family
from src.models.schemas import KernelRow
from src.reps.characters import character
from src.reps.weights import Weight, bo_inverse, bo_map, dual_weight, in_R, natural_weight
from src.series.graded import GradedSeries
from src.series.level import ExponentShift, constant_value, k, level_from_table, level_scalar
from src.series.products import loop_minus_series
from src.utils import config
from src.utils.exact import format_half
from src.utils.errors import IdentityError, LevelDependenceError, TruncationError, UnsupportedAlgebraError
from src.models.tables import kernel_row
from .conformal import casimir, center_charge, delta_lowest, finite_char_series

MAX_WEIGHT_BOUND = 64


def _row_constant(row: KernelRow, name: str, n: int, m: int):
    return constant_value(level_from_table(getattr(row, name), n, m))


@dataclass(frozen=True)
class KernelSpec:
    """Kernel data of one b with the gluing constants of its kernel row.

    ``n`` may be negative for the table checks; characters need n >= 1.
    """
    algebra: AlgebraId
    n: int
    row: KernelRow = field(compare=False, repr=False, default=None)

    def __post_init__(self):
        if self.n == 0:
            raise UnsupportedAlgebraError("Kernel algebras need a nonzero n")
        if self.row is None:
            object.__setattr__(self, "row", kernel_row(self.algebra.family))

    @property
    def second(self) -> AlgebraId:
        return AlgebraId(Family(self.row.second), self.algebra.m)

    @property
    def abc(self) -> Tuple:
        m = self.algebra.m
        return tuple(_row_constant(self.row, name, self.n, m) for name in ("a", "b", "c"))

    @property
    def delta_K(self):
        return _row_constant(self.row, "delta_K", self.n, self.algebra.m)

    @property
    def conjectural(self) -> bool:
        return self.algebra.family in (Family.SO_ODD, Family.OSP_1_2M) and self.algebra.m > 1

    def derived_level(self, level=k) -> FracElement:
        """l solving 1/(a(k+h1)) + 1/(b(l+h2)) = c n."""
        a, b, c = self.abc
        kk = level_scalar(level)
        h1, h2 = level_scalar(self.algebra.dual_coxeter), level_scalar(self.second.dual_coxeter)
        rest = level_scalar(c * self.n) - 1 / (level_scalar(a) * (kk + h1))
        return 1 / (level_scalar(b) * rest) - h2

    def gluing_residual(self, level=k, other_level: Optional[FracElement] = None) -> FracElement:
        a, b, c = self.abc
        kk = level_scalar(level)
        ll = self.derived_level(kk) if other_level is None else level_scalar(other_level)
        h1, h2 = level_scalar(self.algebra.dual_coxeter), level_scalar(self.second.dual_coxeter)
        return 1 / (level_scalar(a) * (kk + h1)) + 1 / (level_scalar(b) * (ll + h2)) - level_scalar(c * self.n)

    def partner(self, weight: Weight) -> Weight:
        """The weight of the second factor paired with ``weight``."""
        fam = self.algebra.family
        if fam == Family.SO_ODD:
            return bo_inverse(weight)
        if fam == Family.OSP_1_2M:
            return bo_map(weight)
        if fam == Family.SP:
            return weight
        return dual_weight(weight)

    def boxes(self, weight: Weight) -> int:
        if self.algebra.family == Family.SL:
            return sum((i + 1) * c for i, c in enumerate(weight.coords))
        total = sum(weight.eps, QQ.zero)
        if total.denominator != 1:
            raise IdentityError(f"Weight {weight} of {self.algebra.label} has a non-integral box count")
        return int(total.numerator)

    def sector_parity(self, weight: Weight) -> int:
        factor = self.n if self.row.parity_rule == "n_boxes" else 1
        return (factor * self.boxes(weight)) % 2

    def sector_shift(self, weight: Weight, level=k) -> ExponentShift:
        """Delta^k_lambda + Delta^l_lambda'; must be level free."""
        kk = level_scalar(level)
        ll = self.derived_level(kk)
        other = self.partner(weight)
        if self.row.lattice:
            h = level_scalar(self.algebra.dual_coxeter)
            a = center_charge(weight)
            value = level_scalar(casimir(weight)) / (2 * (kk + h)) \
                + level_scalar(casimir(other)) / (2 * (ll + h)) \
                + level_scalar(self.n * a * a / QQ(2 * self.algebra.m))
            shift = ExponentShift(value)
        else:
            shift = delta_lowest(weight, kk) + delta_lowest(other, ll)
        if not shift.is_level_free():
            raise LevelDependenceError(
                f"Sector {weight} of the {self.algebra.label} kernel (n={self.n}) has a level-dependent shift {shift}")
        return shift

    def shift_bound(self, weight: Weight):
        """a c n Casimir(lambda) / 2 (plus the lattice term): the sector shift, defined off R as well."""
        a, _, c = self.abc
        value = a * c * self.n * casimir(weight) / 2
        if self.row.lattice:
            center = center_charge(weight)
            value += self.n * center * center / QQ(2 * self.algebra.m)
        return value

    @property
    def alphabet(self) -> Tuple:
        return (self.algebra.alphabet_block, self.second.alphabet_block)


def kernel_spec(algebra: AlgebraId, n: int) -> KernelSpec:
    return KernelSpec(algebra, n)


def check_delta_K(spec: KernelSpec) -> Dict:
    """The natural sector's combined shift against the kernel row."""
    lam = natural_weight(spec.algebra)
    shift = spec.sector_shift(lam)
    if shift.rational_part != spec.delta_K:
        raise IdentityError(
            f"{spec.algebra.label} kernel, n={spec.n}: natural sector has weight {shift.rational_part}, "
            f"kernel row gives {spec.delta_K}")
    return {"algebra": spec.algebra.label, "n": spec.n, "delta_K": str(spec.delta_K)}


def check_kernel_relation(spec: KernelSpec) -> Dict:
    """For same-family rows: a = b and a c equals r N of the lattice R."""
    if spec.second.family != spec.algebra.family:
        return {"algebra": spec.algebra.label, "skipped": "second factor is a different family"}
    a, b, c = spec.abc
    r_vee, lattice_level = {
        Family.GL: (1, 1), Family.SL: (1, spec.algebra.m), Family.SO_EVEN: (1, 1), Family.SP: (2, 1),
    }[spec.algebra.family]
    expected = QQ(r_vee * lattice_level)
    if a != b or a * c != expected:
        raise IdentityError(f"{spec.algebra.label} kernel row (a,b,c)=({a},{b},{c}) does not match r N = {expected}")
    return {"algebra": spec.algebra.label, "a": str(a), "c": str(c), "derived": spec.row.derived}


# --- Characters ---

def _box(algebra: AlgebraId, bound: int) -> List[Weight]:
    template = Weight.zero(algebra)
    ranges = []
    constrained = len(template.constrained_coords())
    for i in range(len(template.coords)):
        ranges.append(range(0, bound + 1) if i < constrained else range(-bound, bound + 1))
    return [Weight(algebra, coords) for coords in product(*ranges)]


def _boundary(algebra: AlgebraId, bound: int) -> List[Weight]:
    """Weights just outside the box; every omitted weight dominates one of them in Casimir."""
    zero = Weight.zero(algebra)
    width = len(zero.coords)
    constrained = len(zero.constrained_coords())
    out = []
    for i in range(width):
        for value in ((bound + 1,) if i < constrained else (bound + 1, -(bound + 1))):
            out.append(Weight(algebra, tuple(value if j == i else 0 for j in range(width))))
    return out


def certified_sectors(spec: KernelSpec, order: int, weight_bound: int) -> Tuple[List[Tuple[Weight, int]], int]:
    """Sectors in R with doubled shift <= order, after enlarging the bound until the boundary is certified."""
    bound = max(0, weight_bound)
    while any(2 * spec.shift_bound(w) <= order for w in _boundary(spec.algebra, bound)):
        bound += 1
        if bound > MAX_WEIGHT_BOUND:
            raise TruncationError(f"No weight bound up to {MAX_WEIGHT_BOUND} certifies order {order}/2")
    sectors = []
    for lam in _box(spec.algebra, bound):
        if not in_R(lam):
            continue
        d = spec.sector_shift(lam).doubled()
        if d <= order:
            sectors.append((lam, d))
    return sectors, bound


def _sector_series(spec: KernelSpec, lam: Weight, d: int, order: int, loop: GradedSeries) -> GradedSeries:
    alphabet = spec.alphabet
    other = spec.partner(lam)
    base = finite_char_series(character(lam), order - d, alphabet, 0) \
        * finite_char_series(character(other), order - d, alphabet, 1) * loop.truncated(order - d)
    flip = spec.sector_parity(lam)
    if flip:
        base = base.map_keys(lambda w, p: (w, p ^ 1))
    return base.shifted(d)


@dataclass
class KernelCharacter:
    spec: KernelSpec
    series: GradedSeries
    sectors: List[Tuple[Weight, int]]
    weight_bound: int

    def to_json(self) -> Dict:
        return {
            "family": self.spec.algebra.family.value,
            "algebra": self.spec.algebra.label,
            "n": self.spec.n,
            "truncation": self.series.order,
            "weight_bound": self.weight_bound,
            "conjectural_structure": self.spec.conjectural,
            "sectors": [{"lambda": list(lam.coords), "shift": format_half(d)} for lam, d in self.sectors],
            "series": self.series.to_json(),
        }


def kernel_char(spec: KernelSpec, order: int, weight_bound: int = 0) -> KernelCharacter:
    """Character of the kernel module in two alphabets, truncated at q^(order/2)."""
    if spec.n < 1:
        raise UnsupportedAlgebraError(f"kernel_char needs n >= 1, got {spec.n}")
    sectors, bound = certified_sectors(spec, order, weight_bound)
    alphabet = spec.alphabet
    loop = loop_minus_series(spec.algebra, order, alphabet, 0) * loop_minus_series(spec.second, order, alphabet, 1)
    parts = Parallel(n_jobs=config.HOOKDUAL_THREADS, prefer="threads")(
        delayed(_sector_series)(spec, lam, d, order, loop) for lam, d in sectors
    )
    total = GradedSeries.zero(alphabet, order)
    for part in parts:
        total = total + part
    return KernelCharacter(spec, total, sectors, bound)


def swap_factors(series: GradedSeries) -> GradedSeries:
    """Exchanges the two alphabet blocks of a kernel character."""
    (first, w1), (second, w2) = series.alphabet
    return series.map_keys(lambda w, p: (w[w1:] + w[:w1], p), ((second, w2), (first, w1)))
