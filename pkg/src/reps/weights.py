"""Integral weights in fundamental coordinates, the dual weight and the lattice R."""
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence, Tuple

from src.algebra.ids import AlgebraId, Family
from src.algebra.roots import RootDatum, vscale
from src.utils.errors import WeightError


@lru_cache(maxsize=None)
def root_datum(algebra: AlgebraId) -> RootDatum:
    return RootDatum(algebra)


@dataclass(frozen=True, order=True)
class Weight:
    algebra: AlgebraId
    coords: Tuple[int, ...]

    def __post_init__(self):
        coords = tuple(int(c) for c in self.coords)
        object.__setattr__(self, "coords", coords)
        expected = len(root_datum(self.algebra).fundamental_weights)
        if len(coords) != expected:
            raise WeightError(f"{self.algebra.label} weights have {expected} coordinates, got {list(coords)}")

    @classmethod
    def zero(cls, algebra: AlgebraId) -> "Weight":
        return cls(algebra, tuple(0 for _ in root_datum(algebra).fundamental_weights))

    @classmethod
    def fundamental(cls, algebra: AlgebraId, i: int) -> "Weight":
        """The i-th fundamental weight, 1-based."""
        n = len(root_datum(algebra).fundamental_weights)
        if not 1 <= i <= n:
            raise WeightError(f"{algebra.label} has fundamental weights 1..{n}, got {i}")
        return cls(algebra, tuple(1 if j == i - 1 else 0 for j in range(n)))

    @classmethod
    def from_eps(cls, algebra: AlgebraId, v: Sequence) -> "Weight":
        return cls(algebra, root_datum(algebra).from_eps(tuple(v)))

    @property
    def eps(self) -> Tuple:
        return root_datum(self.algebra).to_eps(self.coords)

    def constrained_coords(self) -> Tuple[int, ...]:
        """Coordinates that must be >= 0 for dominance."""
        fam = self.algebra.family
        if fam == Family.GL:
            return self.coords[:-1]
        if fam == Family.SO_EVEN and self.algebra.m == 1:
            return ()
        return self.coords

    def is_dominant(self) -> bool:
        return all(c >= 0 for c in self.constrained_coords())

    def require_dominant(self) -> "Weight":
        if not self.is_dominant():
            raise WeightError(f"Weight {list(self.coords)} of {self.algebra.label} is not dominant")
        return self

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(self.algebra, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Weight":
        return Weight(self.algebra, tuple(-a for a in self.coords))

    def __str__(self) -> str:
        terms = [f"{c}w{i + 1}" if c != 1 else f"w{i + 1}" for i, c in enumerate(self.coords) if c]
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"


def parse_weight(algebra: AlgebraId, text: str) -> Weight:
    """'1,0,2' -> Weight(algebra, (1, 0, 2)); an empty string is the zero weight."""
    text = text.strip().strip("()[]")
    if not text:
        return Weight.zero(algebra)
    try:
        coords = tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise WeightError(f"Cannot parse weight '{text}': {exc}") from exc
    return Weight(algebra, coords)


def dual_weight(weight: Weight) -> Weight:
    """lambda^dagger = -w0(lambda)."""
    weight.require_dominant()
    rd = root_datum(weight.algebra)
    return Weight.from_eps(weight.algebra, vscale(rd.longest(weight.eps), -1))


def in_R(weight: Weight) -> bool:
    """Membership in the lattice of weights occurring in tensor powers of the natural module."""
    fam, m, c = weight.algebra.family, weight.algebra.m, weight.coords
    if fam == Family.GL:
        return (c[-1] - sum((i + 1) * x for i, x in enumerate(c[:-1]))) % m == 0
    if fam == Family.SO_ODD:
        return c[-1] % 2 == 0
    if fam == Family.SO_EVEN:
        return c[-1] % 2 == 0 if m == 1 else (c[-2] + c[-1]) % 2 == 0
    return True


def bo_map(weight: Weight) -> Weight:
    """osp(1|2m) -> so(2m+1): doubles the last coordinate; the identity for every other family."""
    algebra = weight.algebra
    if algebra.family != Family.OSP_1_2M:
        return weight
    target = AlgebraId(Family.SO_ODD, algebra.m)
    return Weight(target, weight.coords[:-1] + (2 * weight.coords[-1],))


def bo_inverse(weight: Weight) -> Weight:
    """so(2m+1) -> osp(1|2m), defined on R(so(2m+1))."""
    algebra = weight.algebra
    if algebra.family != Family.SO_ODD:
        return weight
    if not in_R(weight):
        raise WeightError(f"Weight {list(weight.coords)} of {algebra.label} is not in R")
    target = AlgebraId(Family.OSP_1_2M, algebra.m)
    return Weight(target, weight.coords[:-1] + (weight.coords[-1] // 2,))


def bo_partner(algebra: AlgebraId) -> AlgebraId:
    """The algebra whose weights bo_map lands in."""
    if algebra.family == Family.OSP_1_2M:
        return AlgebraId(Family.SO_ODD, algebra.m)
    if algebra.family == Family.SO_ODD:
        return AlgebraId(Family.OSP_1_2M, algebra.m)
    return algebra


def natural_weight(algebra: AlgebraId) -> Weight:
    """Highest weight of the natural module C^m, C^{2m+1}, C^{2m} or C^{1|2m}."""
    v = tuple(1 if i == 0 else 0 for i in range(algebra.m))
    if algebra.family == Family.SO_EVEN and algebra.m == 1:
        v = (1,)
    return Weight.from_eps(algebra, v)
