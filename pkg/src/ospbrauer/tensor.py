"""
V^⊗d 上的作用。

- 带符号 Leibniz 规则的 Lie 超代数作用 act_lie / lie_operator
- 算子 σ、τ 与 Brauer 生成元算子 s_i、e_i
- 定向图的相容标号与权重、函子 F、Mat(OB) 的作用 Θ
- 张量因子置换 ψ_σ

张量基按基指标位置的行优先顺序编号；算子以展平后的整数下标稀疏存储。
图的输入在下方（s），输出在上方（t）；x·y（x 在上）对应矩阵乘积 Θ(x)Θ(y)。
"""

from __future__ import annotations

import itertools
import json
import logging
from dataclasses import dataclass
from typing import Any, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from .brauer import GeneratorWord, check_word
from .diagrams import crossing_pairs, parse_diagram
from .oriented import CIRCLE, DOWN, UP, Combination, MatEndo, OrientedMorphism
from .scalars import ONE, ZERO, Scalar, SparseMatrix, sign, to_scalar
from .superalgebra import (
    BasisIndex,
    LieElement,
    Params,
    check_homogeneous,
    form_value,
    format_index,
    parse_index,
    right_dual,
)
from .utils import format_rational

logger = logging.getLogger("ospbrauer")

TensorIndex = Tuple[BasisIndex, ...]
TensorVector = Dict[TensorIndex, Scalar]


# ────────────────────────── 张量基 ──────────────────────────


def tensor_basis(p: Params, d: int) -> List[TensorIndex]:
    return list(itertools.product(p.basis, repeat=d))


def flat_index(p: Params, labels: Sequence[BasisIndex]) -> int:
    k = 0
    for lab in labels:
        k = k * p.dim + p.position(lab)
    return k


def unflatten(p: Params, k: int, d: int) -> TensorIndex:
    digits = []
    for _ in range(d):
        k, r = divmod(k, p.dim)
        digits.append(p.basis[r])
    return tuple(reversed(digits))


def summand(labels: Sequence[BasisIndex]) -> str:
    """张量指标所属求和项 W_s 的定向序列。"""
    return "".join(lab.symbol for lab in labels)


def summand_indices(p: Params, s: str) -> List[int]:
    """W_s 的全部张量基（展平下标）。"""
    per_symbol = {sym: [i for i in p.basis if i.symbol == sym] for sym in (UP, DOWN, CIRCLE)}
    return [flat_index(p, labels) for labels in itertools.product(*(per_symbol[ch] for ch in s))]


def tensor_parity(p: Params, labels: Sequence[BasisIndex]) -> int:
    return sum(p.parity(lab) for lab in labels) % 2


def format_tensor_index(labels: Sequence[BasisIndex]) -> str:
    return ",".join(format_index(lab) for lab in labels)


def parse_tensor_index(text: str) -> TensorIndex:
    """``"1~,0,3"`` -> (1̄, 0, 3)。"""
    if not text.strip():
        return ()
    return tuple(parse_index(tok) for tok in text.split(","))


def parse_vector(data: Dict[str, Any], p: Params, d: int) -> TensorVector:
    """JSON {指标字面量: "p/q"} -> 张量向量。"""
    vec: TensorVector = {}
    for key, value in data.items():
        labels = parse_tensor_index(key)
        if len(labels) != d:
            raise ValueError(f"张量指标 {key!r} 的长度应为 d={d}")
        for lab in labels:
            p.position(lab)
        c = to_scalar(value)
        if c:
            vec[labels] = vec.get(labels, ZERO) + c
    return {k: v for k, v in vec.items() if v}


def format_vector(vec: TensorVector) -> Dict[str, str]:
    return {format_tensor_index(k): format_rational(v) for k, v in sorted(vec.items()) if v}


# ────────────────────────── 稀疏算子 ──────────────────────────


class SparseOperator:
    """
    V^⊗in_degree → V^⊗out_degree 的精确稀疏线性映射。

    matrix 的行为输出张量基、列为输入张量基（展平下标）。
    """

    __slots__ = ("params", "out_degree", "in_degree", "matrix")

    def __init__(
        self,
        params: Params,
        matrix: SparseMatrix,
        out_degree: int,
        in_degree: Optional[int] = None,
    ) -> None:
        in_degree = out_degree if in_degree is None else in_degree
        expected = (params.dim ** out_degree, params.dim ** in_degree)
        if matrix.shape != expected:
            raise ValueError(f"算子矩阵形状 {matrix.shape} 与期望 {expected} 不符")
        self.params = params
        self.out_degree = out_degree
        self.in_degree = in_degree
        self.matrix = matrix

    @classmethod
    def identity(cls, p: Params, d: int) -> "SparseOperator":
        return cls(p, SparseMatrix.identity(p.dim ** d), d)

    @classmethod
    def zero(cls, p: Params, out_degree: int, in_degree: Optional[int] = None) -> "SparseOperator":
        in_degree = out_degree if in_degree is None else in_degree
        return cls(p, SparseMatrix.zeros(p.dim ** out_degree, p.dim ** in_degree), out_degree, in_degree)

    @classmethod
    def from_entries(
        cls,
        p: Params,
        out_degree: int,
        in_degree: int,
        entries: Iterable[Tuple[Sequence[BasisIndex], Sequence[BasisIndex], Any]],
    ) -> "SparseOperator":
        shape = (p.dim ** out_degree, p.dim ** in_degree)
        flat = []
        for out, inp, value in entries:
            if len(out) != out_degree or len(inp) != in_degree:
                raise ValueError(f"张量指标长度与算子次数 ({out_degree}, {in_degree}) 不符")
            flat.append(((flat_index(p, out), flat_index(p, inp)), value))
        return cls(p, SparseMatrix.from_entries(shape, flat), out_degree, in_degree)

    @classmethod
    def projection(cls, p: Params, s: str) -> "SparseOperator":
        """到求和项 W_s 的投影。"""
        idx = summand_indices(p, s)
        return cls(p, SparseMatrix((p.dim ** len(s),) * 2, {k: {k: ONE} for k in idx}), len(s))

    def entry(self, out: Sequence[BasisIndex], inp: Sequence[BasisIndex]) -> Scalar:
        return self.matrix.get(flat_index(self.params, out), flat_index(self.params, inp))

    def entries(self) -> Iterator[Tuple[TensorIndex, TensorIndex, Scalar]]:
        for r, c, v in self.matrix.entries():
            yield unflatten(self.params, r, self.out_degree), unflatten(self.params, c, self.in_degree), v

    def _check(self, other: "SparseOperator") -> None:
        if self.params != other.params:
            raise ValueError(f"参数不一致: {self.params} vs {other.params}")

    def __matmul__(self, other: "SparseOperator") -> "SparseOperator":
        self._check(other)
        if self.in_degree != other.out_degree:
            raise ValueError(f"无法复合: 输入次数 {self.in_degree} ≠ 输出次数 {other.out_degree}")
        return SparseOperator(self.params, self.matrix @ other.matrix, self.out_degree, other.in_degree)

    def __add__(self, other: "SparseOperator") -> "SparseOperator":
        self._check(other)
        return SparseOperator(self.params, self.matrix + other.matrix, self.out_degree, self.in_degree)

    def __sub__(self, other: "SparseOperator") -> "SparseOperator":
        self._check(other)
        return SparseOperator(self.params, self.matrix - other.matrix, self.out_degree, self.in_degree)

    def scale(self, factor: Any) -> "SparseOperator":
        return SparseOperator(self.params, self.matrix.scale(factor), self.out_degree, self.in_degree)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparseOperator):
            return NotImplemented
        return (
            self.params == other.params
            and (self.out_degree, self.in_degree) == (other.out_degree, other.in_degree)
            and self.matrix == other.matrix
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return (
            f"SparseOperator({self.params}, V^⊗{self.in_degree} → V^⊗{self.out_degree}, "
            f"nnz={self.matrix.nnz})"
        )

    def is_zero(self) -> bool:
        return self.matrix.is_zero()

    def apply(self, vec: TensorVector) -> TensorVector:
        flat = {}
        for labels, c in vec.items():
            if len(labels) != self.in_degree:
                raise ValueError(f"向量指标长度 {len(labels)} ≠ 算子输入次数 {self.in_degree}")
            flat[flat_index(self.params, labels)] = c
        out = self.matrix.apply(flat)
        return {unflatten(self.params, k, self.out_degree): v for k, v in out.items()}

    def commutes_with(self, other: "SparseOperator") -> bool:
        """self∘other == other∘self（不带超符号）。"""
        return (self @ other) == (other @ self)

    def to_json(self) -> Dict[str, Any]:
        return {
            "entries": [
                {"out": format_tensor_index(o), "in": format_tensor_index(i), "value": format_rational(v)}
                for o, i, v in self.entries()
            ]
        }

    @classmethod
    def from_json(cls, data: Dict[str, Any], p: Params, d: int) -> "SparseOperator":
        """读取 {"entries": [{"out": "1,1~", "in": "1~,1", "value": "1/2"}, ...]}。"""
        if not isinstance(data, dict) or not isinstance(data.get("entries"), list):
            raise ValueError('算子文件应为 {"entries": [...]} 形式')
        entries = []
        for item in data["entries"]:
            try:
                out, inp = parse_tensor_index(item["out"]), parse_tensor_index(item["in"])
                value = to_scalar(str(item["value"]))
            except (KeyError, TypeError) as e:
                raise ValueError(f"算子条目格式错误: {item!r}") from e
            entries.append((out, inp, value))
        return cls.from_entries(p, d, d, entries)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, ensure_ascii=False)


# ────────────────────────── Lie 作用 ──────────────────────────


def _columns(M: SparseMatrix) -> Dict[int, List[Tuple[int, Scalar]]]:
    cols: Dict[int, List[Tuple[int, Scalar]]] = {}
    for r, c, v in M.entries():
        cols.setdefault(c, []).append((r, v))
    return cols


def act_lie(X: LieElement, vec: TensorVector, p: Params) -> TensorVector:
    """
    X.(w_1⊗…⊗w_d) = Σ_k (−1)^{(|w_1|+…+|w_{k−1}|)|X|} w_1⊗…⊗Xw_k⊗…⊗w_d。
    """
    check_homogeneous(X, p)
    cols = _columns(X.matrix)
    out: TensorVector = {}
    for labels, coeff in vec.items():
        prefix = 0
        for k, lab in enumerate(labels):
            sgn = sign(prefix * X.parity)
            for r, val in cols.get(p.position(lab), ()):
                new = labels[:k] + (p.basis[r],) + labels[k + 1:]
                out[new] = out.get(new, ZERO) + sgn * coeff * val
            prefix += p.parity(lab)
    return {k: v for k, v in out.items() if v}


def lie_operator(X: LieElement, p: Params, d: int) -> SparseOperator:
    """act_lie 在 V^⊗d 上的矩阵。"""
    entries = []
    for labels in tensor_basis(p, d):
        for out, v in act_lie(X, {labels: ONE}, p).items():
            entries.append((out, labels, v))
    return SparseOperator.from_entries(p, d, d, entries)


def parity_operator(p: Params, d: int) -> SparseOperator:
    """V^⊗d 上的分次算子 P = (−1)^{Σ|i_k|}。"""
    rows = {
        k: {k: sign(tensor_parity(p, labels))}
        for k, labels in enumerate(tensor_basis(p, d))
    }
    return SparseOperator(p, SparseMatrix((p.dim ** d,) * 2, rows), d)


# ────────────────────────── σ、τ 与 Brauer 算子 ──────────────────────────

_Local = Dict[Tuple[BasisIndex, BasisIndex], List[Tuple[Tuple[BasisIndex, BasisIndex], Scalar]]]


def _local_sigma(p: Params) -> _Local:
    return {
        (a, b): [((b, a), sign(p.parity(a) * p.parity(b)))]
        for a in p.basis
        for b in p.basis
    }


def _local_tau(p: Params) -> _Local:
    # Σ_l (−1)^{|l|} v_l ⊗ v_l^*
    canonical = []
    for l in p.basis:
        dual, eps = right_dual(l, p)
        canonical.append(((l, dual), sign(p.parity(l)) * eps))
    local: _Local = {}
    for a in p.basis:
        b = a.partner
        pairing = form_value(a, b, p)
        local[(a, b)] = [(pair, pairing * c) for pair, c in canonical]
    return local


def _embed_local(local: _Local, i: int, d: int, p: Params) -> SparseOperator:
    """id^{⊗(i−1)} ⊗ L ⊗ id^{⊗(d−i−1)}（L 为偶算子，不产生额外符号）。"""
    if not 1 <= i <= d - 1:
        raise ValueError(f"位置 {i} 超出范围 1..{d - 1}")
    entries = []
    for labels in tensor_basis(p, d):
        for (x, y), c in local.get((labels[i - 1], labels[i]), ()):
            out = labels[: i - 1] + (x, y) + labels[i + 1:]
            entries.append((out, labels, c))
    return SparseOperator.from_entries(p, d, d, entries)


def sigma_tau(p: Params) -> Tuple[SparseOperator, SparseOperator]:
    """
    σ(v⊗w) = (−1)^{|v||w|} w⊗v，τ(v⊗w) = ⟨v,w⟩ Σ_l (−1)^{|v_l|} v_l⊗v_l^*。
    """
    return _embed_local(_local_sigma(p), 1, 2, p), _embed_local(_local_tau(p), 1, 2, p)


def brauer_operator(kind: str, i: int, d: int, p: Params) -> SparseOperator:
    """s_i = id^{⊗(i−1)} ⊗ σ ⊗ id^{⊗(d−i−1)}，e_i 同理用 τ。"""
    if kind == "s":
        return _embed_local(_local_sigma(p), i, d, p)
    if kind == "e":
        return _embed_local(_local_tau(p), i, d, p)
    raise ValueError(f"未知生成元类型: {kind!r}（应为 s 或 e）")


def operator_from_word(word: GeneratorWord, p: Params, d: int) -> SparseOperator:
    """生成元词对应的算子乘积（词从左到右即矩阵从左到右相乘）。"""
    check_word(word, d)
    result = SparseOperator.identity(p, d)
    cache: Dict[Tuple[str, int], SparseOperator] = {}
    for g in word:
        key = (g.kind, g.index)
        if key not in cache:
            cache[key] = brauer_operator(g.kind, g.index, d, p)
        result = result @ cache[key]
    return result


# ────────────────────────── 权重与函子 F ──────────────────────────


@dataclass(frozen=True)
class LabelledOrientedDiagram:
    """带标号的定向图：bottom_labels ∈ Vect(s)，top_labels ∈ Vect(t)。"""

    morphism: OrientedMorphism
    bottom_labels: TensorIndex
    top_labels: TensorIndex

    def __post_init__(self) -> None:
        f = self.morphism
        if len(self.top_labels) != len(f.top) or len(self.bottom_labels) != len(f.bottom):
            raise ValueError("标号个数与定向序列长度不符")
        for lab, sym in zip(self.top_labels + self.bottom_labels, f.top + f.bottom):
            if lab.symbol != sym:
                raise ValueError(f"标号 {format_index(lab)} 与定向符号 {sym!r} 不符")


@dataclass(frozen=True)
class _WeightData:
    arcs: Tuple[Tuple[int, int], ...]
    crossings: Tuple[Tuple[int, int], ...]
    signed_arcs: Tuple[int, ...]  # 顺时针 cap 与逆时针 cup：大标号时贡献 −1
    down_ends: Tuple[int, ...]  # 每条弧上 ∨ 端点的个数


def _weight_data(f: OrientedMorphism) -> _WeightData:
    b = f.diagram
    labels = f.top + f.bottom
    arcs = tuple(b.arcs())
    signed = []
    for k, (v, w) in enumerate(arcs):
        top_v, top_w = v < b.top_count, w < b.top_count
        if top_v != top_w:
            continue
        left = min((v, w), key=lambda u: b.vertex(u).position)
        if not top_v and labels[left] == UP:
            signed.append(k)
        elif top_v and labels[left] == DOWN:
            signed.append(k)
    down = tuple(sum(1 for u in arc if labels[u] == DOWN) for arc in arcs)
    return _WeightData(arcs, crossing_pairs(b), tuple(signed), down)


def _sign_for(data: _WeightData, large: Sequence[bool], odd: Sequence[bool]) -> Scalar:
    exponent = sum(1 for x, y in data.crossings if odd[x] and odd[y])
    exponent += sum(1 for k in data.signed_arcs if large[k])
    return sign(exponent)


def _basis_change_sign(data: _WeightData, large: Sequence[bool]) -> Scalar:
    # w_ā = −v_ā（a 为大标号），每个 ∨ 端点换一次基
    return sign(sum(data.down_ends[k] for k in range(len(data.arcs)) if large[k]))


def weight(ld: LabelledOrientedDiagram, p: Params) -> Scalar:
    """
    带标号定向图的权重 ∈ {0, 1, −1}。

    标号绝对值在块上不恒定时为 0；否则为每个交叉的 (−1)^{|i||j|}、
    每个大标号顺时针 cap（左端 ∧）与每个大标号逆时针 cup（左端 ∨）的 −1 之积。
    """
    labels = ld.top_labels + ld.bottom_labels
    data = _weight_data(ld.morphism)
    values = []
    for v, w in data.arcs:
        if labels[v].value != labels[w].value:
            return ZERO
        values.append(labels[v].value)
    large = [a > p.m for a in values]
    # 弧的奇偶性与“大标号”一致
    return _sign_for(data, large, large)


def functor_entry(ld: LabelledOrientedDiagram, p: Params) -> Scalar:
    """
    F(b) 在 v 基下的矩阵元 ⟨v_top | F(b) | v_bottom⟩。

    权重是 W_∨ 取 w 基（见 dual_basis_vector）时的矩阵元，两者相差每个大标号 ∨ 端点的 −1。
    """
    wt = weight(ld, p)
    if not wt:
        return wt
    labels = ld.top_labels + ld.bottom_labels
    data = _weight_data(ld.morphism)
    large = [labels[v].value > p.m for v, _ in data.arcs]
    return wt * _basis_change_sign(data, large)


def _functor_entries(f: OrientedMorphism, p: Params) -> Iterator[Tuple[int, int, Scalar]]:
    """F(f) 在 v 基下的非零元 (输出展平下标, 输入展平下标, 值)：只枚举相容标号。"""
    if not p.is_odd and (CIRCLE in f.top or CIRCLE in f.bottom):
        raise ValueError(f"even 模式下不存在含 ∘ 的求和项: {f}")
    b = f.diagram
    labels = f.top + f.bottom
    data = _weight_data(f)
    T, B = b.top_count, b.bottom_count
    out_mult = [p.dim ** (T - 1 - k) for k in range(T)]
    in_mult = [p.dim ** (B - 1 - k) for k in range(B)]
    zero_pos = p.position(BasisIndex(0)) if p.is_odd else 0
    base_out = sum(zero_pos * out_mult[v] for v in range(T) if b.is_singleton(v))
    base_in = sum(zero_pos * in_mult[v - T] for v in range(T, T + B) if b.is_singleton(v))

    def contribution(v: int, a: int) -> Tuple[bool, int]:
        pos = p.position(BasisIndex(a, labels[v] == DOWN))
        return (v < T), pos * (out_mult[v] if v < T else in_mult[v - T])

    values = range(1, p.m + p.n + 1)
    for choice in itertools.product(values, repeat=len(data.arcs)):
        out_k, in_k = base_out, base_in
        for (v, w), a in zip(data.arcs, choice):
            for u in (v, w):
                is_top, amount = contribution(u, a)
                if is_top:
                    out_k += amount
                else:
                    in_k += amount
        large = [a > p.m for a in choice]
        yield out_k, in_k, _sign_for(data, large, large) * _basis_change_sign(data, large)


def functor_F(
    f: Union[OrientedMorphism, Combination],
    p: Params,
) -> SparseOperator:
    """
    F(b)(w_i) = Σ_j wt(b_i^j) w_j（W_∨ 取 w 基），按 v 基输出矩阵，线性扩张到形式组合。

    Raises:
        ValueError: even 模式下出现 ∘，或组合中的态射次数不一致
    """
    combo: Combination = {f: ONE} if isinstance(f, OrientedMorphism) else dict(f)
    if not combo:
        raise ValueError("空组合无法确定算子次数，请直接使用 SparseOperator.zero")
    degrees = {(len(m.top), len(m.bottom)) for m in combo}
    if len(degrees) > 1:
        raise ValueError(f"组合中态射的次数不一致: {sorted(degrees)}")
    out_degree, in_degree = degrees.pop()
    acc: Dict[int, Dict[int, Scalar]] = {}
    for morphism, coeff in combo.items():
        for r, c, w in _functor_entries(morphism, p):
            row = acc.setdefault(r, {})
            row[c] = row.get(c, ZERO) + coeff * w
    shape = (p.dim ** out_degree, p.dim ** in_degree)
    return SparseOperator(p, SparseMatrix(shape, acc), out_degree, in_degree)


def theta(A: MatEndo, p: Params) -> SparseOperator:
    """Θ(A) = Σ_{(t,s)} F(A_{(t,s)})，沿 V^⊗d ≅ ⊕_s W_s 拼装。"""
    if A.parity != p.mode:
        raise ValueError(f"MatEndo 的模式 {A.parity} 与参数 {p} 不符")
    acc: Dict[int, Dict[int, Scalar]] = {}
    for _, combo in A.items():
        for morphism, coeff in combo.items():
            for r, c, w in _functor_entries(morphism, p):
                row = acc.setdefault(r, {})
                row[c] = row.get(c, ZERO) + coeff * w
    size = p.dim ** A.d
    return SparseOperator(p, SparseMatrix((size, size), acc), A.d)


def remark_example_weight(m: int, n: int) -> Scalar:
    """
    四股示例图 (1,2)(3,1*)(4)(2*)(3*,4*)，t = ∨∧∨∘，s = ∨∘∧∨，
    上方标号 (1̄, 1, 2̄, 0)、下方标号 (2̄, 0, 3, 3̄) 的权重。
    """
    if m + n < 3:
        raise ValueError(f"示例需要标号 3，要求 m+n ≥ 3（当前 m={m}, n={n}）")
    p = Params(m, n, "odd")
    f = OrientedMorphism("v^vo", parse_diagram("(1,2)(3,1*)(4)(2*)(3*,4*)", 4, 4), "vo^v")
    ld = LabelledOrientedDiagram(
        f,
        bottom_labels=parse_tensor_index("2~,0,3,3~"),
        top_labels=parse_tensor_index("1~,1,2~,0"),
    )
    return weight(ld, p)


# ────────────────────────── 张量因子置换 ──────────────────────────


def apply_permutation(perm: Sequence[int], vec: TensorVector, p: Params) -> TensorVector:
    """
    第 k 个因子移到位置 perm[k]（1 起算），符号为每个逆序对 (−1)^{|i_k||i_l|} 之积。
    """
    d = len(perm)
    if sorted(perm) != list(range(1, d + 1)):
        raise ValueError(f"{tuple(perm)} 不是 1..{d} 的置换")
    out: TensorVector = {}
    for labels, coeff in vec.items():
        if len(labels) != d:
            raise ValueError(f"向量指标长度 {len(labels)} 与置换长度 {d} 不符")
        moved: List[Optional[BasisIndex]] = [None] * d
        exponent = 0
        for k in range(d):
            moved[perm[k] - 1] = labels[k]
            for l in range(k + 1, d):
                if perm[k] > perm[l]:
                    exponent += p.parity(labels[k]) * p.parity(labels[l])
        key = tuple(moved)  # type: ignore[arg-type]
        out[key] = out.get(key, ZERO) + sign(exponent) * coeff
    return {k: v for k, v in out.items() if v}


def minimal_permutation(s: str, t: str) -> Tuple[int, ...]:
    """
    满足 s_k = t_{σ(k)} 的最短置换：s 中每种符号的第 j 次出现映到 t 中的第 j 次出现。
    """
    if sorted(s) != sorted(t):
        raise ValueError(f"序列 {s!r} 与 {t!r} 的符号个数不同，不存在置换")
    targets: Dict[str, List[int]] = {}
    for pos, ch in enumerate(t, start=1):
        targets.setdefault(ch, []).append(pos)
    used: Dict[str, int] = {}
    perm = []
    for ch in s:
        k = used.get(ch, 0)
        perm.append(targets[ch][k])
        used[ch] = k + 1
    return tuple(perm)


def reduced_word(perm: Sequence[int]) -> List[int]:
    """冒泡排序（总是交换最左边的逆序相邻对）得到的约化词，元素为 s_j 的下标 j。"""
    arr = list(perm)
    word = []
    while True:
        for j in range(len(arr) - 1):
            if arr[j] > arr[j + 1]:
                arr[j], arr[j + 1] = arr[j + 1], arr[j]
                word.append(j + 1)
                break
        else:
            return word


def psi_sigma(s: str, t: str, p: Params) -> SparseOperator:
    """ψ_σ: W_s → W_t，沿最短置换的约化词复合相邻对换算子，并限制在 W_s 上。"""
    if len(s) != len(t):
        raise ValueError(f"序列长度不同: {s!r} vs {t!r}")
    perm = minimal_permutation(s, t)
    d = len(s)
    op = SparseOperator.projection(p, s)
    for j in reduced_word(perm):
        op = brauer_operator("s", j, d, p) @ op
    return op
