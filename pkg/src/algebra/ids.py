import re
from dataclasses import dataclass
from enum import Enum
from typing import Tuple

from sympy import QQ

from src.utils.errors import UnsupportedAlgebraError


class Family(str, Enum):
    GL = "GL"
    SL = "SL"
    SO_ODD = "SO_ODD"
    SO_EVEN = "SO_EVEN"
    SP = "SP"
    OSP_1_2M = "OSP_1_2M"


@dataclass(frozen=True, order=True)
class AlgebraId:
    """A finite-dimensional (super)algebra of the supported families.

    ``rank_param`` is the m of gl_m, sl_m, so_{2m+1}, so_{2m}, sp_{2m} and
    osp(1|2m).
    """
    family: Family
    rank_param: int

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        if not isinstance(self.rank_param, int) or self.rank_param < 1:
            raise UnsupportedAlgebraError(f"rank parameter must be a positive integer, got {self.rank_param!r}")

    # --- pure invariants ---
    @property
    def m(self) -> int:
        return self.rank_param

    @property
    def label(self) -> str:
        m = self.m
        return {
            Family.GL: f"gl{m}",
            Family.SL: f"sl{m}",
            Family.SO_ODD: f"so{2 * m + 1}",
            Family.SO_EVEN: f"so{2 * m}",
            Family.SP: f"sp{2 * m}",
            Family.OSP_1_2M: f"osp(1|{2 * m})",
        }[self.family]

    @property
    def matrix_size(self) -> int:
        m = self.m
        return {
            Family.GL: m, Family.SL: m, Family.SO_ODD: 2 * m + 1,
            Family.SO_EVEN: 2 * m, Family.SP: 2 * m, Family.OSP_1_2M: 2 * m + 1,
        }[self.family]

    @property
    def rank(self) -> int:
        return self.m - 1 if self.family == Family.SL else self.m

    @property
    def dimension(self) -> int:
        m = self.m
        return {
            Family.GL: m * m,
            Family.SL: m * m - 1,
            Family.SO_ODD: m * (2 * m + 1),
            Family.SO_EVEN: m * (2 * m - 1),
            Family.SP: m * (2 * m + 1),
            Family.OSP_1_2M: m * (2 * m + 1) + 2 * m,
        }[self.family]

    @property
    def odd_dimension(self) -> int:
        return 2 * self.m if self.family == Family.OSP_1_2M else 0

    @property
    def is_super(self) -> bool:
        return self.family == Family.OSP_1_2M

    @property
    def is_abelian(self) -> bool:
        return (self.family == Family.GL and self.m == 1) or (self.family == Family.SO_EVEN and self.m == 1)

    @property
    def dual_coxeter(self):
        """h^vee with respect to the normalized form kappa_0."""
        m = self.m
        return {
            Family.GL: QQ(m),
            Family.SL: QQ(m),
            Family.SO_ODD: QQ(2 * m - 1),
            Family.SO_EVEN: QQ(2 * m - 2),
            Family.SP: QQ(m + 1),
            Family.OSP_1_2M: QQ(2 * m + 1, 2),
        }[self.family]

    @property
    def lacing(self) -> int:
        """Ratio of the longest to the shortest squared root length."""
        if self.family == Family.OSP_1_2M:
            return 4
        if self.family in (Family.SO_ODD, Family.SP) and self.m >= 2:
            return 2
        return 1

    @property
    def even_part(self) -> "AlgebraId":
        if self.family == Family.OSP_1_2M:
            return AlgebraId(Family.SP, self.m)
        return self

    @property
    def alphabet_block(self) -> Tuple[str, int]:
        """Label and width of the z-alphabet of this algebra's weight lattice."""
        return (self.label, self.rank)

    def __str__(self) -> str:
        return self.label

    @classmethod
    def parse(cls, text: str) -> "AlgebraId":
        """Parses labels such as 'sl2', 'gl1', 'so5', 'so4', 'sp4', 'osp12', 'osp(1|4)'."""
        t = text.strip().lower().replace(" ", "")
        match = re.fullmatch(r"osp\(?1\|?(\d+)\)?", t)
        if match:
            size = int(match.group(1))
            if size % 2 or size == 0:
                raise UnsupportedAlgebraError(f"osp(1|2m) needs an even positive 2m, got '{text}'")
            return cls(Family.OSP_1_2M, size // 2)
        match = re.fullmatch(r"(gl|sl|so|sp)(\d+)", t)
        if not match:
            raise UnsupportedAlgebraError(f"Unknown algebra label '{text}'")
        kind, size = match.group(1), int(match.group(2))
        if kind == "gl":
            return cls(Family.GL, size)
        if kind == "sl":
            return cls(Family.SL, size)
        if kind == "sp":
            if size % 2:
                raise UnsupportedAlgebraError(f"sp needs an even size, got '{text}'")
            return cls(Family.SP, size // 2)
        if size < 2:
            raise UnsupportedAlgebraError(f"so needs size >= 2, got '{text}'")
        return cls(Family.SO_ODD, (size - 1) // 2) if size % 2 else cls(Family.SO_EVEN, size // 2)


def dual_coxeter(algebra: AlgebraId):
    return algebra.dual_coxeter


# --- Super descriptors of the ambient algebras of the hook table ---
# Only dimensions and dual Coxeter numbers are needed; these algebras are not realized.

@dataclass(frozen=True)
class SuperDescriptor:
    kind: str   # "sl" or "osp"
    even: int   # M of sl_{M|N} or osp_{M|2N}
    odd: int    # N of sl_{M|N} or osp_{M|2N}

    @property
    def label(self) -> str:
        if self.kind == "sl":
            return f"sl({self.even}|{self.odd})" if self.odd else f"sl{self.even}"
        return f"osp({self.even}|{2 * self.odd})" if self.odd else f"so{self.even}"

    @property
    def superdimension(self) -> Tuple[int, int]:
        M, N = self.even, self.odd
        if self.kind == "sl":
            return (M * M + N * N - 1, 2 * M * N)
        return (M * (M - 1) // 2 + N * (2 * N + 1), 2 * M * N)

    def dual_coxeter(self, form: str):
        """h^vee for the forms str, -str, 1/2 str (tr for purely even cases)."""
        M, N = self.even, self.odd
        if self.kind == "sl":
            if form not in ("str", "tr"):
                raise UnsupportedAlgebraError(f"sl descriptors use str, got '{form}'")
            return QQ(M - N)
        if form in ("-str",):
            return QQ(N) - QQ(M, 2) + 1
        if form in ("1/2str", "1/2tr"):
            return QQ(M - 2 * N - 2)
        if form == "tr" and M == 0:
            return QQ(N + 1)
        raise UnsupportedAlgebraError(f"Unsupported form '{form}' for {self.label}")


def descriptor_from_text(text: str) -> SuperDescriptor:
    """Parses 'sl(M|N)', 'osp(M|2N)', 'slM', 'soM', 'spM' as used in the hook tables."""
    t = text.strip().replace(" ", "")
    match = re.fullmatch(r"(sl|osp)\((\d+)\|(\d+)\)", t)
    if match:
        kind, a, b = match.group(1), int(match.group(2)), int(match.group(3))
        if kind == "osp":
            return SuperDescriptor("osp", a, b // 2)
        return SuperDescriptor("sl", a, b)
    match = re.fullmatch(r"(sl|so|sp)(\d+)", t)
    if not match:
        raise UnsupportedAlgebraError(f"Unknown descriptor '{text}'")
    kind, a = match.group(1), int(match.group(2))
    if kind == "sl":
        return SuperDescriptor("sl", a, 0)
    if kind == "so":
        return SuperDescriptor("osp", a, 0)
    return SuperDescriptor("osp", 0, a // 2)
