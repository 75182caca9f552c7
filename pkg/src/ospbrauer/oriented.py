"""
定向 Brauer 范畴 OB_d(m−n)。

对象是 ``^``（∧）、``v``（∨）、``o``（∘）组成的定向序列；
态射是满足定向条件的三元组 (t, b, s)，其中 t 为上方序列、s 为下方序列。
复合时闭圈各乘因子 m−n（与方向无关），中间的 ∘ 无系数地删去。
Mat 闭包中的自同态 MatEndo 以 (t, s) 为键存放形式线性组合。
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Any, Dict, Iterable, Iterator, List, Optional, Tuple

from .diagrams import (
    GeneralizedDiagram,
    compose,
    format_diagram,
    parse_diagram,
    perfect_matchings,
    subdiagrams,
)
from .scalars import ONE, ZERO, Scalar, power, to_scalar
from .superalgebra import CIRCLE, DOWN, UP
from .utils import format_rational

logger = logging.getLogger("ospbrauer")

SYMBOLS = (UP, DOWN, CIRCLE)
_ALIASES = {"∧": UP, "∨": DOWN, "∘": CIRCLE, "^": UP, "v": DOWN, "o": CIRCLE}

OrientationSeq = str
Combination = Dict["OrientedMorphism", Scalar]


def parse_sequence(text: str) -> OrientationSeq:
    """接受 ``^vo`` 或 ``∧∨∘``，可用逗号/空白分隔。"""
    out = []
    for ch in text:
        if ch in ", \t":
            continue
        if ch not in _ALIASES:
            raise ValueError(f"定向序列 {text!r} 含非法字符 {ch!r}（只允许 ^ v o）")
        out.append(_ALIASES[ch])
    return "".join(out)


def check_sequence(seq: OrientationSeq) -> None:
    bad = set(seq) - set(SYMBOLS)
    if bad:
        raise ValueError(f"定向序列 {seq!r} 含非法字符 {sorted(bad)}")


def sequences(d: int, parity: str) -> List[OrientationSeq]:
    """even 模式的对象为 {^,v}^d，odd 模式为 {^,v,o}^d。"""
    alphabet = (UP, DOWN) if parity == "even" else SYMBOLS
    return ["".join(t) for t in itertools.product(alphabet, repeat=d)]


# ────────────────────────── 定向态射 ──────────────────────────


def validate(t: OrientationSeq, b: GeneralizedDiagram, s: OrientationSeq) -> bool:
    """
    定向条件：上方二元块带 {∧,∨}；下方二元块带 {∧,∨}；
    竖直股两端符号相同（且不为 ∘）；单点恰好带 ∘。

    Raises:
        ValueError: 序列长度与图不符
    """
    check_sequence(t)
    check_sequence(s)
    if len(t) != b.top_count or len(s) != b.bottom_count:
        raise ValueError(
            f"序列长度 ({len(t)}, {len(s)}) 与图的顶点个数 ({b.top_count}, {b.bottom_count}) 不符"
        )
    labels = t + s
    for v, w in enumerate(b.partner):
        if v == w:
            if labels[v] != CIRCLE:
                return False
            continue
        if v > w:
            continue
        top_v, top_w = v < b.top_count, w < b.top_count
        if top_v == top_w:
            if {labels[v], labels[w]} != {UP, DOWN}:
                return False
        elif labels[v] != labels[w] or labels[v] == CIRCLE:
            return False
    return True


@dataclass(frozen=True)
class OrientedMorphism:
    """从 bottom（s）到 top（t）的定向广义 Brauer 图。"""

    top: OrientationSeq
    diagram: GeneralizedDiagram
    bottom: OrientationSeq

    def __post_init__(self) -> None:
        if not validate(self.top, self.diagram, self.bottom):
            raise ValueError(f"不是合法的定向图: {format_morphism(self)}")

    def sort_key(self) -> Tuple:
        return (self.top, self.bottom, self.diagram.sort_key())

    def __str__(self) -> str:
        return format_morphism(self)


def format_morphism(f: OrientedMorphism) -> str:
    return f"{f.top} | {format_diagram(f.diagram)} | {f.bottom}"


def parse_morphism(text: str) -> OrientedMorphism:
    """解析 ``t | diagram | s``。"""
    parts = text.split("|")
    if len(parts) != 3:
        raise ValueError(f"定向态射应为 't | diagram | s' 形式: {text!r}")
    t, s = parse_sequence(parts[0]), parse_sequence(parts[2])
    return OrientedMorphism(t, parse_diagram(parts[1], len(t), len(s)), s)


def identity_morphism(seq: OrientationSeq) -> OrientedMorphism:
    """序列上的恒等：非 ∘ 位置为竖直股，∘ 位置上下均为单点。"""
    d = len(seq)
    partner = list(range(2 * d))
    for k, ch in enumerate(seq):
        if ch != CIRCLE:
            partner[k], partner[d + k] = d + k, k
    return OrientedMorphism(seq, GeneralizedDiagram(d, d, tuple(partner)), seq)


def reduce_sequence(seq: OrientationSeq) -> OrientationSeq:
    return seq.replace(CIRCLE, "")


def reduce_morphism(f: OrientedMorphism) -> OrientedMorphism:
    """删去所有 ∘ 及其单点块，重新编号。"""
    b = f.diagram
    keep = [v for v in range(b.size) if not b.is_singleton(v)]
    new_index = {v: k for k, v in enumerate(keep)}
    top_count = sum(1 for v in keep if v < b.top_count)
    partner = tuple(new_index[b.partner[v]] for v in keep)
    diagram = GeneralizedDiagram(top_count, len(keep) - top_count, partner)
    return OrientedMorphism(reduce_sequence(f.top), diagram, reduce_sequence(f.bottom))


def reduce(x: Any) -> Any:
    """序列或定向态射的约化形式。"""
    if isinstance(x, OrientedMorphism):
        return reduce_morphism(x)
    return reduce_sequence(x)


def compose_oriented(g: OrientedMorphism, f: OrientedMorphism, circle: Any) -> Combination:
    """g∘f（g 在上）：系数为 circle^{闭圈数}。"""
    if g.bottom != f.top:
        raise ValueError(f"无法复合: g 的下方 {g.bottom!r} ≠ f 的上方 {f.top!r}")
    diagram, loops = compose(g.diagram, f.diagram)
    coeff = power(to_scalar(circle), loops)
    if not coeff:
        return {}
    return {OrientedMorphism(g.top, diagram, f.bottom): coeff}


def compose_combinations(g: Combination, f: Combination, circle: Any) -> Combination:
    out: Combination = {}
    for gm, gc in g.items():
        for fm, fc in f.items():
            if gm.bottom != fm.top:
                continue
            for h, c in compose_oriented(gm, fm, circle).items():
                out[h] = out.get(h, ZERO) + gc * fc * c
    return {h: c for h, c in out.items() if c}


# ────────────────────────── Hom 空间 ──────────────────────────


def hom_basis(s: OrientationSeq, t: OrientationSeq) -> List[OrientedMorphism]:
    """Hom(s, t) 的基：全部合法三元组 (t, b, s)，长度可以不同。"""
    check_sequence(s)
    check_sequence(t)
    T, B = len(t), len(s)
    labels = t + s
    active = [v for v in range(T + B) if labels[v] != CIRCLE]

    def compatible(v: int, w: int) -> bool:
        if (v < T) == (w < T):
            return {labels[v], labels[w]} == {UP, DOWN}
        return labels[v] == labels[w]

    result = []
    for matching in perfect_matchings(active, compatible):
        partner = list(range(T + B))
        for v, w in matching:
            partner[v], partner[w] = w, v
        result.append(OrientedMorphism(t, GeneralizedDiagram(T, B, tuple(partner)), s))
    return result


def hom_dim(s: OrientationSeq, t: OrientationSeq) -> int:
    return len(hom_basis(s, t))


def hom_vanishing_predicate(s: OrientationSeq, t: OrientationSeq) -> bool:
    """
    Hom(s, t) 必为零的判据。

    记 a, b 为 s, t 中非 ∘ 符号的个数。非零 Hom 要求 a − b 为偶数且
    #∧(s) − #∧(t) = (a − b)/2。等长时 a − b = −ℓ，ℓ = #∘(s) − #∘(t)，
    即 ℓ 为奇数，或 #∧(s) − #∧(t) ≠ −ℓ/2 时 Hom 为零。
    """
    check_sequence(s)
    check_sequence(t)
    balance = (len(s) - s.count(CIRCLE)) - (len(t) - t.count(CIRCLE))
    if balance % 2:
        return True
    return s.count(UP) - t.count(UP) != balance // 2


# ────────────────────────── Mat 闭包 ──────────────────────────


class MatEndo:
    """
    ⊕_s s 的自同态：entries[(t, s)] 是 Hom(s, t) 中的形式线性组合。

    parity 为 "even"（对象只含 ^ v）或 "odd"（对象含 ^ v o）。
    """

    __slots__ = ("d", "parity", "_entries")

    def __init__(
        self,
        d: int,
        parity: str,
        entries: Optional[Dict[Tuple[str, str], Dict[OrientedMorphism, Any]]] = None,
    ) -> None:
        if parity not in ("even", "odd"):
            raise ValueError(f"模式必须为 even 或 odd，实际 {parity!r}")
        self.d = d
        self.parity = parity
        self._entries: Dict[Tuple[str, str], Combination] = {}
        for (t, s), combo in (entries or {}).items():
            if len(t) != d or len(s) != d:
                raise ValueError(f"({t!r}, {s!r}) 的长度与 d={d} 不符")
            if parity == "even" and (CIRCLE in t or CIRCLE in s):
                raise ValueError(f"even 模式下对象不能含 ∘: ({t!r}, {s!r})")
            clean = {}
            for f, c in combo.items():
                if (f.top, f.bottom) != (t, s):
                    raise ValueError(f"态射 {f} 不属于 Hom({s!r}, {t!r})")
                c = to_scalar(c)
                if c:
                    clean[f] = c
            if clean:
                self._entries[(t, s)] = clean

    @classmethod
    def identity(cls, d: int, parity: str) -> "MatEndo":
        return cls(d, parity, {(s, s): {identity_morphism(s): ONE} for s in sequences(d, parity)})

    def entry(self, t: str, s: str) -> Combination:
        return dict(self._entries.get((t, s), {}))

    def items(self) -> Iterator[Tuple[Tuple[str, str], Combination]]:
        for key in sorted(self._entries):
            yield key, dict(self._entries[key])

    def nonzero_entries(self) -> int:
        return len(self._entries)

    def coefficient_vector(self) -> Dict[OrientedMorphism, Scalar]:
        """按定向态射展平（不同 (t,s) 的态射互不相同）。"""
        out: Dict[OrientedMorphism, Scalar] = {}
        for combo in self._entries.values():
            out.update(combo)
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MatEndo):
            return NotImplemented
        return (self.d, self.parity, self._entries) == (other.d, other.parity, other._entries)

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"MatEndo(d={self.d}, {self.parity}, entries={len(self._entries)})"

    def format(self) -> str:
        lines = []
        for (t, s), combo in self.items():
            for f in sorted(combo, key=OrientedMorphism.sort_key):
                lines.append(f"[{t},{s}] {format_rational(combo[f])} * {format_morphism(f)}")
        return "\n".join(lines) or "0"


def _check_compatible(A: MatEndo, B: MatEndo) -> None:
    if A.parity != B.parity or A.d != B.d:
        raise ValueError(f"MatEndo 不兼容: (d={A.d}, {A.parity}) vs (d={B.d}, {B.parity})")


def mat_compose(A: MatEndo, B: MatEndo, circle: Any) -> MatEndo:
    """矩阵乘法：(AB)_{(t,r)} = Σ_s A_{(t,s)} ∘ B_{(s,r)}。"""
    _check_compatible(A, B)
    by_row: Dict[str, List[Tuple[str, Combination]]] = {}
    for (s, r), combo in B._entries.items():
        by_row.setdefault(s, []).append((r, combo))
    out: Dict[Tuple[str, str], Combination] = {}
    for (t, s), a_combo in A._entries.items():
        for r, b_combo in by_row.get(s, ()):
            product = compose_combinations(a_combo, b_combo, circle)
            cell = out.setdefault((t, r), {})
            for h, c in product.items():
                cell[h] = cell.get(h, ZERO) + c
    return MatEndo(A.d, A.parity, out)


def mat_add(A: MatEndo, B: MatEndo) -> MatEndo:
    _check_compatible(A, B)
    out: Dict[Tuple[str, str], Combination] = {k: dict(v) for k, v in A._entries.items()}
    for key, combo in B._entries.items():
        cell = out.setdefault(key, {})
        for h, c in combo.items():
            cell[h] = cell.get(h, ZERO) + c
    return MatEndo(A.d, A.parity, out)


def mat_scale(A: MatEndo, factor: Any) -> MatEndo:
    factor = to_scalar(factor)
    return MatEndo(
        A.d, A.parity, {k: {h: factor * c for h, c in v.items()} for k, v in A._entries.items()}
    )


# ────────────────────────── 嵌入 Ψ ──────────────────────────


def orientations(b: GeneralizedDiagram) -> Iterator[OrientedMorphism]:
    """
    图 b 的全部定向：竖直股取 ^ 或 v，cap/cup 取 (^,v) 或 (v,^)，单点为 ∘。
    """
    arcs = b.arcs()
    for choice in itertools.product((UP, DOWN), repeat=len(arcs)):
        labels = [CIRCLE] * b.size
        for (v, w), sym in zip(arcs, choice):
            if (v < b.top_count) != (w < b.top_count):
                labels[v] = labels[w] = sym
            else:
                lo, hi = sorted((v, w), key=lambda u: b.vertex(u).position)
                labels[lo] = sym
                labels[hi] = DOWN if sym == UP else UP
        t = "".join(labels[: b.top_count])
        s = "".join(labels[b.top_count:])
        yield OrientedMorphism(t, b, s)


def psi_embed(b: GeneralizedDiagram, d: int, parity: str) -> MatEndo:
    """
    Ψ(b)：对每个 (t, s) 取 b 的唯一可定向子图；
    even 模式只保留不含 ∘ 的序列（即 b 本身的定向）。
    """
    if not b.is_brauer:
        raise ValueError(f"{format_diagram(b)} 含单点，不是 Brauer 图")
    if b.d != d:
        raise ValueError(f"图的股数 {b.d} 与 d={d} 不符")
    candidates = subdiagrams(b) if parity == "odd" else [b]
    entries: Dict[Tuple[str, str], Dict[OrientedMorphism, Any]] = {}
    for sub in candidates:
        for f in orientations(sub):
            entries[(f.top, f.bottom)] = {f: ONE}
    return MatEndo(d, parity, entries)


def psi_element(terms: Iterable[Tuple[GeneralizedDiagram, Any]], d: int, parity: str) -> MatEndo:
    """Ψ 的线性扩张。"""
    result = MatEndo(d, parity)
    for b, c in terms:
        result = mat_add(result, mat_scale(psi_embed(b, d, parity), c))
    return result
