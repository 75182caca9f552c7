"""
超空间 V 与具体矩阵模型：有序基、超对称双线性型 J、osp(V) 与嵌入的 gl(m|n)。

基的全序为 0 < 1̄ < … < m̄ < 1 < … < m < (m+1)‾ < … < (m+n)‾ < m+1 < … < m+n
（0 仅在奇数情形出现）。|v_i| = 1 当且仅当 ||i|| > m。

型的约定：⟨v_ī, v_i⟩ = ⟨v_i, v_ī⟩ = 1（||i|| ≤ m），
费米部分 ⟨v_ā, v_a⟩ = 1、⟨v_a, v_ā⟩ = −1（||a|| > m），⟨v_0, v_0⟩ = 1。
"""

from __future__ import annotations

import functools
import logging
import re
from dataclasses import dataclass, field
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from .scalars import ONE, ZERO, Scalar, SparseMatrix, sign, solve_in_span

logger = logging.getLogger("ospbrauer")

MODES = ("even", "odd")

UP, DOWN, CIRCLE = "^", "v", "o"


class BasisIndex(NamedTuple):
    """基指标：value 为绝对值 ||i||（0 表示 v_0），barred 表示带横线的 ī。"""

    value: int
    barred: bool = False

    @property
    def symbol(self) -> str:
        """所属求和项的定向符号：∧ 为无横线，∨ 为带横线，∘ 为 0。"""
        if self.value == 0:
            return CIRCLE
        return DOWN if self.barred else UP

    @property
    def partner(self) -> "BasisIndex":
        """J 中的配对指标（同绝对值、横线相反）。"""
        if self.value == 0:
            return self
        return BasisIndex(self.value, not self.barred)

    def __str__(self) -> str:
        return format_index(self)


def format_index(i: BasisIndex) -> str:
    return f"{i.value}~" if i.barred else str(i.value)


_INDEX_RE = re.compile(r"^\s*(\d+)\s*(~?)\s*$")


def parse_index(text: str) -> BasisIndex:
    """``"3~"`` 表示 3̄，``"0"`` 表示 v_0。"""
    match = _INDEX_RE.match(text)
    if not match:
        raise ValueError(f"无法解析基指标 {text!r}（应为 3 或 3~）")
    value, barred = int(match.group(1)), match.group(2) == "~"
    if value == 0 and barred:
        raise ValueError("v_0 没有带横线的形式")
    return BasisIndex(value, barred)


@dataclass(frozen=True)
class Params:
    """
    参数 (m, n, 奇偶模式)。

    dim V = 2m+2n（even）或 2m+1+2n（odd），超迹 δ_V = 2m−2n 或 2m+1−2n。
    """

    m: int
    n: int
    mode: str = "even"
    _positions: Dict[BasisIndex, int] = field(
        default=None, init=False, repr=False, compare=False, hash=False  # type: ignore[assignment]
    )

    def __post_init__(self) -> None:
        if self.m < 0 or self.n < 0:
            raise ValueError(f"m, n 必须非负: m={self.m}, n={self.n}")
        if self.mode not in MODES:
            raise ValueError(f"模式必须为 even 或 odd，实际 {self.mode!r}")
        object.__setattr__(self, "_positions", {i: k for k, i in enumerate(basis_indices(self))})

    @property
    def is_odd(self) -> bool:
        return self.mode == "odd"

    @property
    def dim(self) -> int:
        return 2 * self.m + 2 * self.n + (1 if self.is_odd else 0)

    @property
    def supertrace(self) -> int:
        return 2 * self.m - 2 * self.n + (1 if self.is_odd else 0)

    @property
    def circle(self) -> int:
        """定向 Brauer 范畴中闭圈的取值 m−n。"""
        return self.m - self.n

    @property
    def basis(self) -> Tuple[BasisIndex, ...]:
        return basis_indices(self)

    def position(self, i: BasisIndex) -> int:
        try:
            return self._positions[i]
        except KeyError:
            raise ValueError(f"基指标 {format_index(i)} 不属于 {self}") from None

    def parity(self, i: BasisIndex) -> int:
        return 1 if i.value > self.m else 0

    def parity_at(self, position: int) -> int:
        return self.parity(self.basis[position])

    def __str__(self) -> str:
        return f"(m={self.m}, n={self.n}, {self.mode})"


@functools.lru_cache(maxsize=None)
def _basis_cached(m: int, n: int, odd: bool) -> Tuple[BasisIndex, ...]:
    order: List[BasisIndex] = [BasisIndex(0)] if odd else []
    order += [BasisIndex(k, True) for k in range(1, m + 1)]
    order += [BasisIndex(k) for k in range(1, m + 1)]
    order += [BasisIndex(k, True) for k in range(m + 1, m + n + 1)]
    order += [BasisIndex(k) for k in range(m + 1, m + n + 1)]
    return tuple(order)


def basis_indices(p: Params) -> Tuple[BasisIndex, ...]:
    return _basis_cached(p.m, p.n, p.mode == "odd")


def supertrace(p: Params) -> int:
    return p.supertrace


# ────────────────────────── 双线性型 ──────────────────────────


def form_value(i: BasisIndex, j: BasisIndex, p: Params) -> Scalar:
    """⟨v_i, v_j⟩。"""
    if i.partner != j:
        return ZERO
    if i.value == 0 or i.value <= p.m:
        return ONE
    # 费米块 [[0, −1], [1, 0]]（行列顺序 ā, a）
    return -ONE if i.barred else ONE


def gram_matrix(p: Params) -> SparseMatrix:
    """J[i, j] = ⟨v_i, v_j⟩（按固定基序）。"""
    entries = []
    for i in p.basis:
        j = i.partner
        entries.append(((p.position(i), p.position(j)), form_value(i, j, p)))
    return SparseMatrix.from_entries((p.dim, p.dim), entries)


def right_dual(i: BasisIndex, p: Params) -> Tuple[BasisIndex, Scalar]:
    """
    右对偶基 v_i^* = ε·v_j，满足 ⟨v_i, v_i^*⟩ = 1。

    玻色: v_ī^* = v_i, v_i^* = v_ī；费米: v_ā^* = −v_a, v_a^* = v_ā；v_0^* = v_0。
    """
    p.position(i)
    j = i.partner
    return j, ONE / form_value(i, j, p)


def dual_basis_vector(k: int, p: Params) -> Tuple[BasisIndex, Scalar]:
    """
    W_∨ 的基 w_k = ε·v_k̄：玻色 ε = 1，费米（k > m）ε = −1。

    在此基下 ι(E_ij)·w_k = −δ_ik (−1)^{(|i|+|j|)|i|} w_j。
    """
    if not 1 <= k <= p.m + p.n:
        raise ValueError(f"w_{k} 不存在：下标应在 1..{p.m + p.n}")
    return BasisIndex(k, True), (-ONE if k > p.m else ONE)


# ────────────────────────── Lie 超代数元素 ──────────────────────────


@dataclass(frozen=True)
class LieElement:
    """固定有序基上的齐次方阵，parity 为 |X|。"""

    matrix: SparseMatrix
    parity: int
    label: str = ""

    def __repr__(self) -> str:
        return f"LieElement({self.label or '?'}, parity={self.parity}, nnz={self.matrix.nnz})"


def matrix_parity(M: SparseMatrix, p: Params) -> Optional[int]:
    """齐次矩阵的奇偶性；零矩阵返回 0，非齐次返回 None。"""
    parities = {(p.parity_at(r) + p.parity_at(c)) % 2 for r, c, _ in M.entries()}
    if not parities:
        return 0
    if len(parities) > 1:
        return None
    return parities.pop()


def lie_element(M: SparseMatrix, p: Params, label: str = "") -> LieElement:
    """
    由矩阵构造 LieElement，自动推断奇偶性。

    Raises:
        ValueError: 矩阵不齐次或形状不符
    """
    if M.shape != (p.dim, p.dim):
        raise ValueError(f"矩阵形状 {M.shape} 与 dim V = {p.dim} 不符")
    parity = matrix_parity(M, p)
    if parity is None:
        raise ValueError(f"矩阵 {label or M!r} 不是齐次元素")
    return LieElement(M, parity, label)


def check_homogeneous(X: LieElement, p: Params) -> None:
    parity = matrix_parity(X.matrix, p)
    if parity is None or (not X.matrix.is_zero() and parity != X.parity):
        raise ValueError(f"{X!r} 不是奇偶性为 {X.parity} 的齐次元素")


def check_form_invariance(X: LieElement, p: Params) -> bool:
    """⟨Xv, w⟩ + (−1)^{|X||v|} ⟨v, Xw⟩ = 0 对所有基向量 v, w 成立。"""
    check_homogeneous(X, p)
    J = gram_matrix(p)
    left = X.matrix.transpose() @ J  # [a, b] = ⟨X v_a, v_b⟩
    right = J @ X.matrix  # [a, b] = ⟨v_a, X v_b⟩
    keys = {(r, c) for r, c, _ in left.entries()} | {(r, c) for r, c, _ in right.entries()}
    for a, b in keys:
        if left.get(a, b) + sign(X.parity * p.parity_at(a)) * right.get(a, b):
            return False
    return True


def _companion(p: Params, r: BasisIndex, c: BasisIndex) -> Tuple[BasisIndex, BasisIndex, Scalar]:
    """
    E_rc 在 osp 中的伴随项：X = E_rc + κ·E_{c*, r*}，
    κ = −(−1)^{|X||c|}·J[r, r*] / J[c, c*]。
    """
    parity = (p.parity(r) + p.parity(c)) % 2
    kappa = -sign(parity * p.parity(c)) * form_value(r, r.partner, p) / form_value(c, c.partner, p)
    return c.partner, r.partner, kappa


def _osp_generator(p: Params, r: BasisIndex, c: BasisIndex) -> Optional[LieElement]:
    r2, c2, kappa = _companion(p, r, c)
    label = f"X[{format_index(r)},{format_index(c)}]"
    if (r2, c2) == (r, c):
        # 自配对：仅反对称（费米）情形非零
        if kappa + ONE == ZERO:
            return None
        entries = [((p.position(r), p.position(c)), ONE)]
    else:
        entries = [
            ((p.position(r), p.position(c)), ONE),
            ((p.position(r2), p.position(c2)), kappa),
        ]
    M = SparseMatrix.from_entries((p.dim, p.dim), entries)
    return LieElement(M, (p.parity(r) + p.parity(c)) % 2, label)


def osp_basis(p: Params) -> List[LieElement]:
    """
    osp(V) 的齐次基：每个自由参数取一个初等/对称化矩阵。

    元素个数为 m(2m+1)+n(2n+1)+2n(2m+1)（odd）或 m(2m−1)+n(2n+1)+4mn（even）。
    """
    elements = []
    order = p.basis
    for r in order:
        for c in order:
            mirror = (p.position(c.partner), p.position(r.partner))
            if mirror < (p.position(r), p.position(c)):
                continue
            X = _osp_generator(p, r, c)
            if X is not None:
                elements.append(X)
    logger.debug("osp 基 %s: %d 个元素", p, len(elements))
    return elements


def expected_osp_dim(p: Params) -> int:
    m, n = p.m, p.n
    if p.is_odd:
        return m * (2 * m + 1) + n * (2 * n + 1) + 2 * n * (2 * m + 1)
    return m * (2 * m - 1) + n * (2 * n + 1) + 4 * m * n


def gl_embedding(p: Params) -> List[LieElement]:
    """
    嵌入的 gl(m|n)：ι(E_ij) = E_ij + κ·E_{j̄ ī}，i, j ∈ 1..m+n（无横线）。

    W_∧ 上为标准作用；W_∨ 上的对偶作用见 dual_basis_vector。
    """
    elements = []
    for i in range(1, p.m + p.n + 1):
        for j in range(1, p.m + p.n + 1):
            X = _osp_generator(p, BasisIndex(i), BasisIndex(j))
            assert X is not None
            elements.append(LieElement(X.matrix, X.parity, f"ι(E[{i},{j}])"))
    return elements


def superbracket(X: LieElement, Y: LieElement) -> LieElement:
    """[X, Y] = XY − (−1)^{|X||Y|} YX。"""
    M = X.matrix.commutator(Y.matrix, sign(X.parity * Y.parity))
    return LieElement(M, (X.parity + Y.parity) % 2, f"[{X.label},{Y.label}]")


def lie_in_span(X: LieElement, elements: Sequence[LieElement]) -> bool:
    """精确线性求解判断 X 是否在 elements 张成的空间内。"""
    return solve_in_span([Y.matrix.flatten() for Y in elements], X.matrix.flatten()) is not None


def diagonal_elements(elements: Sequence[LieElement]) -> List[LieElement]:
    return [X for X in elements if X.matrix.is_diagonal() and not X.matrix.is_zero()]
