from typing import Any, Dict, List, Optional
from pydantic import BaseModel, Field

# 1. Hook table cells

class AlgebraCell(BaseModel):
    family: str = Field(description="Family tag of a realized algebra: GL, SL, SO_ODD, SO_EVEN, SP or OSP_1_2M")
    rank: str = Field(description="Rank parameter as an expression in n and m (e.g., 'n+m')")

class AmbientCell(BaseModel):
    kind: str = Field(description="'sl' for sl(M|N), 'osp' for osp(M|2N)")
    even: str = Field(description="M as an expression in n and m")
    odd: str = Field(description="N as an expression in n and m")

# 2. Table rows

class CongruenceRow(BaseModel):
    family: str = Field(description="Family tag")
    condition: str = Field(description="The printed condition for membership in R")
    rule: str = Field(description="Machine tag of the condition: none, gl_congruence, last_even, last_pair_even")

class KernelRow(BaseModel):
    family: str = Field(description="Family of the first kernel factor")
    second: str = Field(description="Family of the second kernel factor")
    a: str = Field(description="Coefficient a of the gluing relation")
    b: str = Field(description="Coefficient b of the gluing relation")
    c: str = Field(description="Coefficient c of the gluing relation (times n)")
    parity: str = Field(description="Printed parity of the natural sector")
    parity_rule: str = Field(description="'n_boxes' when the sector of lambda is flipped n*|lambda| times, 'boxes' when |lambda| times")
    delta_K: str = Field(description="Conformal weight of the natural sector as an expression in n and m")
    lattice: bool = Field(default=False, description="Whether the gl lattice variant applies")
    derived: bool = Field(default=False, description="Row obtained from another row rather than printed, e.g. sl from gl")

class HookRow(BaseModel):
    label: str = Field(description="Hook label such as 'A+' or 'O-'")
    ambient: AmbientCell = Field(description="The ambient superalgebra g")
    kappa: str = Field(description="Form normalization: tr, 1/2tr, str, -str or 1/2str")
    h_vee: str = Field(description="Dual Coxeter number of g for kappa, in n and m")
    a: AlgebraCell = Field(description="The subalgebra a")
    b: AlgebraCell = Field(description="The subalgebra b")
    k_b: str = Field(description="Level of the affine b subalgebra in k, n and m")

class PrimaryRow(BaseModel):
    label: str = Field(description="Hook label")
    parity: str = Field(description="Printed parity cell of the primary block")
    odd: bool = Field(description="Whether the primary block carries the parity shift Pi")
    delta_rho: str = Field(description="Conformal weight of the primary block in n and m")
    with_dual: bool = Field(description="Whether the block is rho_b + rho_b^dagger (type A)")

class PairTableRow(BaseModel):
    X: str = Field(description="Type of the plus side")
    Y: str = Field(description="Type of the minus side")
    r: str = Field(description="Constant r_X of the level relation")

class AlphaCoefficientRow(BaseModel):
    column: str = Field(description="Type letter; plus entries are read for X, minus entries for Y")
    p_plus: str = Field(description="p_+")
    q_plus: str = Field(description="q_+")
    p_minus: str = Field(description="p_-")
    q_minus: str = Field(description="q_-")

class HookTables(BaseModel):
    congruences: List[CongruenceRow]
    kernels: List[KernelRow]
    hook_rows: List[HookRow]
    primaries: List[PrimaryRow]
    pairs: List[PairTableRow]
    alpha_coefficients: List[AlphaCoefficientRow]

# 3. Runs and reports

class RunRequest(BaseModel):
    command: str = Field(description="Sub-command name (e.g., 'duality-verify')")
    params: Dict[str, Any] = Field(default_factory=dict, description="Normalized command parameters")
    use_cache: bool = Field(default=True, description="Whether a cached passing report may be reused")

class CheckResult(BaseModel):
    name: str = Field(description="Name of the identity or comparison")
    status: str = Field(description="'pass', 'fail' or 'conjectural-structure'")
    detail: Optional[str] = Field(default=None, description="Human readable detail, e.g. the first mismatching cell")
    data: Dict[str, Any] = Field(default_factory=dict, description="Exact values backing the check, serialized")

class Report(BaseModel):
    command: str = Field(description="Sub-command that produced the report")
    request_hash: str = Field(description="SHA-256 of the canonical request JSON")
    status: str = Field(description="Overall status: 'pass', 'fail' or 'conjectural-structure'")
    checks: List[CheckResult] = Field(default_factory=list)
    results: Dict[str, Any] = Field(default_factory=dict, description="Command specific payload")
    elapsed_seconds: Optional[float] = Field(default=None, description="Wall clock time; excluded from the hash")
