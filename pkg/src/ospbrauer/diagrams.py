"""
Brauer 图与广义 Brauer 图的组合学。

一个广义图把 top_count 个上顶点 1..T 与 bottom_count 个下顶点 1*..B*
划分为大小为 1 或 2 的块。内部用 partner 数组编码：
上顶点 k 的下标为 k−1，下顶点 k* 的下标为 T+k−1；单点块的 partner 是自身。
partner 数组本身就是规范形式，两个图相等当且仅当 partner 相等。

平面绘制约定：顶点按 1*,2*,…,B*,T,…,2,1 排在圆周上，
两块相交当且仅当端点在此循环顺序中交错。
"""

from __future__ import annotations

import functools
import itertools
import logging
import re
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, List, NamedTuple, Optional, Sequence, Set, Tuple

logger = logging.getLogger("ospbrauer")

DEFAULT_MAX_STRANDS = 6


class Vertex(NamedTuple):
    """图的顶点：位置 1..d，bottom=True 表示带星号的下顶点 i*。"""

    position: int
    bottom: bool = False

    def __str__(self) -> str:
        return f"{self.position}*" if self.bottom else str(self.position)


Block = Tuple[Vertex, ...]


class HorizontalArc(NamedTuple):
    """水平弧：cap（两端都在下方）或 cup（两端都在上方），left 为位置较小的端点。"""

    left: Vertex
    right: Vertex


class CompositionResult(NamedTuple):
    diagram: "GeneralizedDiagram"
    loops: int


@dataclass(frozen=True)
class GeneralizedDiagram:
    top_count: int
    bottom_count: int
    partner: Tuple[int, ...]

    def __post_init__(self) -> None:
        size = self.top_count + self.bottom_count
        if self.top_count < 0 or self.bottom_count < 0:
            raise ValueError(f"顶点个数不能为负: ({self.top_count}, {self.bottom_count})")
        if len(self.partner) != size:
            raise ValueError(f"partner 数组长度应为 {size}，实际 {len(self.partner)}")
        for v, w in enumerate(self.partner):
            if not 0 <= w < size or self.partner[w] != v:
                raise ValueError(f"partner 数组不是对合: {self.partner}")

    # ── 构造 ──

    @classmethod
    def from_blocks(
        cls,
        blocks: Iterable[Iterable[Vertex]],
        top_count: int,
        bottom_count: Optional[int] = None,
    ) -> "GeneralizedDiagram":
        """由块列表构造；每个顶点必须恰好出现在一个块中，块大小为 1 或 2。"""
        bottom_count = top_count if bottom_count is None else bottom_count
        size = top_count + bottom_count
        partner: List[Optional[int]] = [None] * size
        for block in blocks:
            vertices = [Vertex(*v) for v in block]
            if len(vertices) not in (1, 2):
                raise ValueError(f"块的大小必须为 1 或 2: {vertices}")
            idx = [_vertex_index(v, top_count, bottom_count) for v in vertices]
            for i in idx:
                if partner[i] is not None:
                    raise ValueError(f"顶点 {_index_vertex(i, top_count)} 出现在多个块中")
            if len(idx) == 2 and idx[0] == idx[1]:
                raise ValueError(f"块中顶点重复: {vertices}")
            partner[idx[0]] = idx[-1]
            partner[idx[-1]] = idx[0]
        missing = [str(_index_vertex(i, top_count)) for i, p in enumerate(partner) if p is None]
        if missing:
            raise ValueError(f"以下顶点不属于任何块: {', '.join(missing)}")
        return cls(top_count, bottom_count, tuple(partner))  # type: ignore[arg-type]

    @classmethod
    def identity(cls, d: int) -> "GeneralizedDiagram":
        return cls.from_blocks(((Vertex(k), Vertex(k, True)) for k in range(1, d + 1)), d)

    @classmethod
    def all_singletons(cls, top_count: int, bottom_count: Optional[int] = None) -> "GeneralizedDiagram":
        bottom_count = top_count if bottom_count is None else bottom_count
        return cls(top_count, bottom_count, tuple(range(top_count + bottom_count)))

    # ── 基本属性 ──

    @property
    def d(self) -> int:
        """股数；仅当上下顶点个数相等时有定义。"""
        if self.top_count != self.bottom_count:
            raise ValueError(f"上下顶点个数不同 ({self.top_count}, {self.bottom_count})，d 无定义")
        return self.top_count

    @property
    def size(self) -> int:
        return self.top_count + self.bottom_count

    def vertex(self, index: int) -> Vertex:
        return _index_vertex(index, self.top_count)

    def index(self, vertex: Vertex) -> int:
        return _vertex_index(vertex, self.top_count, self.bottom_count)

    def is_singleton(self, index: int) -> bool:
        return self.partner[index] == index

    @property
    def is_brauer(self) -> bool:
        """不含单点块且上下顶点数相等。"""
        return self.top_count == self.bottom_count and all(
            p != v for v, p in enumerate(self.partner)
        )

    def boundary_rank(self, index: int) -> int:
        """顶点在循环顺序 1*,…,B*,T,…,1 中的名次。"""
        if index < self.top_count:
            return self.bottom_count + self.top_count - (index + 1)
        return index - self.top_count

    def block_indices(self) -> List[Tuple[int, ...]]:
        """按最小循环名次排序的块（顶点下标形式）。"""
        seen = set()
        blocks = []
        for v in sorted(range(self.size), key=self.boundary_rank):
            if v in seen:
                continue
            w = self.partner[v]
            seen.update((v, w))
            blocks.append((v,) if v == w else (v, w))
        return blocks

    def blocks(self) -> List[Block]:
        """规范块列表。"""
        return [tuple(self.vertex(i) for i in blk) for blk in self.block_indices()]

    def arcs(self) -> List[Tuple[int, int]]:
        """所有大小为 2 的块，按规范顺序。"""
        return [blk for blk in self.block_indices() if len(blk) == 2]  # type: ignore[misc]

    def through_strands(self) -> int:
        """竖直股 {i, j*} 的个数。"""
        return sum(
            1 for v, w in self.arcs() if (v < self.top_count) != (w < self.top_count)
        )

    def sort_key(self) -> Tuple:
        return (self.top_count, self.bottom_count, self.partner)

    def __str__(self) -> str:
        return format_diagram(self)


def _vertex_index(v: Vertex, top_count: int, bottom_count: int) -> int:
    limit = bottom_count if v.bottom else top_count
    if not 1 <= v.position <= limit:
        raise ValueError(f"顶点 {v} 超出范围 1..{limit}")
    return top_count + v.position - 1 if v.bottom else v.position - 1


def _index_vertex(index: int, top_count: int) -> Vertex:
    if index < top_count:
        return Vertex(index + 1, False)
    return Vertex(index - top_count + 1, True)


# ────────────────────────── 生成元 ──────────────────────────


def generator(d: int, kind: str, i: Optional[int] = None) -> GeneralizedDiagram:
    """
    生成元图。

    Args:
        d: 股数
        kind: "identity" | "s" | "e"
        i: s_i / e_i 的下标，1 ≤ i ≤ d−1
    """
    if kind in ("identity", "1", "id"):
        return GeneralizedDiagram.identity(d)
    if kind not in ("s", "e"):
        raise ValueError(f"未知生成元类型: {kind!r}（应为 identity / s / e）")
    if i is None or not 1 <= i <= d - 1:
        raise ValueError(f"生成元 {kind}_{i} 的下标超出范围 1..{d - 1}")
    blocks = [(Vertex(k), Vertex(k, True)) for k in range(1, d + 1) if k not in (i, i + 1)]
    if kind == "s":
        blocks += [(Vertex(i), Vertex(i + 1, True)), (Vertex(i + 1), Vertex(i, True))]
    else:
        blocks += [(Vertex(i), Vertex(i + 1)), (Vertex(i, True), Vertex(i + 1, True))]
    return GeneralizedDiagram.from_blocks(blocks, d)


# ────────────────────────── 复合 ──────────────────────────


def compose(upper: GeneralizedDiagram, lower: GeneralizedDiagram) -> CompositionResult:
    """
    把 upper 的下顶点与 lower 的上顶点粘合。

    沿链追踪中间顶点；闭合的中间圈计入 loops；终止于中间单点（∘）的链
    使外侧顶点成为单点，不产生系数；两端都落在中间单点的链直接丢弃。
    """
    if upper.bottom_count != lower.top_count:
        raise ValueError(
            f"无法复合: 上图有 {upper.bottom_count} 个下顶点，下图有 {lower.top_count} 个上顶点"
        )
    tu, tl = upper.top_count, lower.top_count
    top_count, bottom_count = tu, lower.bottom_count
    middle = upper.bottom_count
    partner = list(range(top_count + bottom_count))
    visited_middle = [False] * middle

    def walk(in_upper: bool, start: int) -> Optional[int]:
        """从外侧顶点出发，返回另一端外侧顶点在结果中的下标；止于单点时返回 None。"""
        on_upper, cur = in_upper, start
        while True:
            diagram = upper if on_upper else lower
            nxt = diagram.partner[cur]
            if nxt == cur:
                return None
            if on_upper and nxt < tu:
                return nxt
            if not on_upper and nxt >= tl:
                return top_count + (nxt - tl)
            k = nxt - tu if on_upper else nxt
            visited_middle[k] = True
            on_upper = not on_upper
            cur = k if not on_upper else tu + k

    for v in range(tu):
        if partner[v] != v:
            continue
        end = walk(True, v)
        if end is not None:
            partner[v], partner[end] = end, v
    for k in range(bottom_count):
        v = top_count + k
        if partner[v] != v:
            continue
        end = walk(False, tl + k)
        if end is not None:
            partner[v], partner[end] = end, v

    loops = 0
    for k in range(middle):
        if visited_middle[k]:
            continue
        component, closed = [k], True
        visited_middle[k] = True
        stack = [k]
        while stack:
            cur = stack.pop()
            for diagram, offset in ((upper, tu), (lower, 0)):
                nxt = diagram.partner[offset + cur]
                if nxt == offset + cur:
                    closed = False
                    continue
                j = nxt - offset
                if not visited_middle[j]:
                    visited_middle[j] = True
                    component.append(j)
                    stack.append(j)
        if closed:
            loops += 1

    return CompositionResult(GeneralizedDiagram(top_count, bottom_count, tuple(partner)), loops)


# ────────────────────────── 子图与平面结构 ──────────────────────────


def subdiagrams(b: GeneralizedDiagram) -> List[GeneralizedDiagram]:
    """所有 b′ ⊲ b：把任意一组二元块拆成两个单点，共 2^(二元块数) 个，含 b 本身。"""
    arcs = b.arcs()
    result = []
    for mask in itertools.product((False, True), repeat=len(arcs)):
        partner = list(b.partner)
        for (v, w), split in zip(arcs, mask):
            if split:
                partner[v], partner[w] = v, w
        result.append(GeneralizedDiagram(b.top_count, b.bottom_count, tuple(partner)))
    return result


def is_subdiagram(smaller: GeneralizedDiagram, b: GeneralizedDiagram) -> bool:
    """smaller ⊲ b：smaller 的每个块要么是 b 的块，要么是单点。"""
    if (smaller.top_count, smaller.bottom_count) != (b.top_count, b.bottom_count):
        return False
    return all(p == v or p == b.partner[v] for v, p in enumerate(smaller.partner))


@functools.lru_cache(maxsize=4096)
def crossing_pairs(b: GeneralizedDiagram) -> Tuple[Tuple[int, int], ...]:
    """相交的二元块对，用 b.arcs() 中的序号表示。"""
    spans = []
    for v, w in b.arcs():
        lo, hi = sorted((b.boundary_rank(v), b.boundary_rank(w)))
        spans.append((lo, hi))
    pairs = []
    for (x, (a1, a2)), (y, (b1, b2)) in itertools.combinations(enumerate(spans), 2):
        if a1 < b1 < a2 < b2 or b1 < a1 < b2 < a2:
            pairs.append((x, y))
    return tuple(pairs)


def crossings(b: GeneralizedDiagram) -> Set[frozenset]:
    """相交的块对集合，每对为 frozenset({块, 块})。"""
    blocks = [tuple(b.vertex(i) for i in arc) for arc in b.arcs()]
    return {frozenset((blocks[x], blocks[y])) for x, y in crossing_pairs(b)}


def caps_and_cups(b: GeneralizedDiagram) -> Tuple[List[HorizontalArc], List[HorizontalArc]]:
    """caps = 块 {i*, j*}，cups = 块 {i, j}；左端点为位置较小者。"""
    caps, cups = [], []
    for v, w in b.arcs():
        x, y = sorted((b.vertex(v), b.vertex(w)), key=lambda u: u.position)
        if x.bottom and y.bottom:
            caps.append(HorizontalArc(x, y))
        elif not x.bottom and not y.bottom:
            cups.append(HorizontalArc(x, y))
    return caps, cups


# ────────────────────────── 枚举 ──────────────────────────


def perfect_matchings(
    items: Sequence[int],
    compatible: Optional[Callable[[int, int], bool]] = None,
) -> Iterator[List[Tuple[int, int]]]:
    """items 上的完美匹配（首元素依次与其余元素配对）；compatible 用于剪枝。"""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for k, other in enumerate(rest):
        if compatible is not None and not compatible(first, other):
            continue
        remaining = rest[:k] + rest[k + 1:]
        for matching in perfect_matchings(remaining, compatible):
            yield [(first, other)] + matching


def enumerate_brauer(d: int, limit: int = DEFAULT_MAX_STRANDS) -> List[GeneralizedDiagram]:
    """
    全部 Brauer 图 B[d]，共 (2d−1)!! 个。

    Raises:
        RuntimeError: d 超过枚举上限
    """
    if d < 0:
        raise ValueError(f"股数不能为负: {d}")
    if d > limit:
        raise RuntimeError(f"d={d} 超过枚举上限 {limit}（可通过 max_strands 配置调整）")
    result = []
    for matching in perfect_matchings(list(range(2 * d))):
        partner = [0] * (2 * d)
        for v, w in matching:
            partner[v], partner[w] = w, v
        result.append(GeneralizedDiagram(d, d, tuple(partner)))
    logger.debug("枚举 B[%d]: %d 个图", d, len(result))
    return result


# ────────────────────────── 文本格式 ──────────────────────────

_BLOCK_RE = re.compile(r"\(([^()]*)\)")
_VERTEX_RE = re.compile(r"^\s*(\d+)\s*(\*?)\s*$")


def format_diagram(b: GeneralizedDiagram) -> str:
    """
    打印为 ``(1,2*)(2,1*)`` 形式：块内上顶点在前，
    块按首个打印顶点排序（上顶点先于下顶点，同侧按位置）。
    """
    def order(v: Vertex) -> Tuple[bool, int]:
        return (v.bottom, v.position)

    printed = []
    for block in b.blocks():
        printed.append(tuple(sorted(block, key=order)))
    printed.sort(key=lambda blk: order(blk[0]))
    return "".join("(" + ",".join(str(v) for v in blk) + ")" for blk in printed)


def parse_diagram(
    text: str,
    top_count: Optional[int] = None,
    bottom_count: Optional[int] = None,
) -> GeneralizedDiagram:
    """
    解析 ``(1,2*)(2,1*)``、``(3)`` 形式的图字面量。

    未给出顶点个数时取出现的最大位置；只给 top_count 时上下同为 top_count。
    外层可带花括号，块之间允许逗号和空白。
    """
    body = text.strip()
    if body.startswith("{") and body.endswith("}"):
        body = body[1:-1]
    leftover = _BLOCK_RE.sub("", body).replace(",", "").strip()
    if leftover:
        raise ValueError(f"无法解析图字面量 {text!r}: 多余字符 {leftover!r}")
    blocks = []
    for inner in _BLOCK_RE.findall(body):
        vertices = []
        for token in inner.split(","):
            match = _VERTEX_RE.match(token)
            if not match:
                raise ValueError(f"无法解析顶点 {token!r}（应为 3 或 3*）")
            vertices.append(Vertex(int(match.group(1)), match.group(2) == "*"))
        blocks.append(vertices)
    tops = [v.position for blk in blocks for v in blk if not v.bottom]
    bottoms = [v.position for blk in blocks for v in blk if v.bottom]
    if top_count is None:
        top_count = max(tops, default=0)
        if bottom_count is None:
            bottom_count = max(bottoms, default=0)
    elif bottom_count is None:
        bottom_count = top_count
    return GeneralizedDiagram.from_blocks(blocks, top_count, bottom_count)
