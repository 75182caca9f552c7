"""
Brauer 代数 Br_d(δ)：以 Brauer 图为基的有理线性组合。

乘法约定：x·y 表示 x 叠在 y 之上（compose(upper=x, lower=y)），
每个被移除的闭圈贡献一个 δ。δ 是每个实例固定的有理数。

关系表 RELATIONS 同时用于 Brauer 代数、Mat(OB) 中的 Ψ 像以及 V^⊗d 上的算子。
"""

from __future__ import annotations

import itertools
import logging
import re
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterator, List, NamedTuple, Optional, Tuple, TypeVar

from .diagrams import (
    DEFAULT_MAX_STRANDS,
    GeneralizedDiagram,
    Vertex,
    compose,
    enumerate_brauer,
    format_diagram,
    generator,
)
from .scalars import ONE, ZERO, Scalar, power, to_scalar
from .utils import format_rational

logger = logging.getLogger("ospbrauer")

MAX_PRESENTATION_STRANDS = 5


class Generator(NamedTuple):
    kind: str  # "s" | "e"
    index: int

    def __str__(self) -> str:
        return f"{self.kind}{self.index}"


GeneratorWord = Tuple[Generator, ...]

_TOKEN_RE = re.compile(r"^([se])_?(\d+)$")


def parse_word(text: str) -> GeneratorWord:
    """解析 ``"s1 e2*e1"``：记号之间用空白或 ``*`` 分隔。"""
    tokens = [tok for tok in re.split(r"[\s*]+", text.strip()) if tok]
    word = []
    for tok in tokens:
        match = _TOKEN_RE.match(tok)
        if not match:
            raise ValueError(f"无法解析生成元 {tok!r}（应为 s<i> 或 e<i>）")
        word.append(Generator(match.group(1), int(match.group(2))))
    return tuple(word)


def format_word(word: GeneratorWord) -> str:
    return " ".join(str(g) for g in word) or "1"


def check_word(word: GeneratorWord, d: int) -> None:
    for g in word:
        if not 1 <= g.index <= d - 1:
            raise ValueError(f"生成元 {g} 的下标超出范围 1..{d - 1}（d={d}）")


# ────────────────────────── 代数元素 ──────────────────────────


class BrauerElement:
    """Br_d(δ) 中的元素 Σ c_b·b；不存零系数，所有图无单点且股数为 d。"""

    __slots__ = ("d", "_terms")

    def __init__(self, d: int, terms: Optional[Dict[GeneralizedDiagram, Any]] = None) -> None:
        self.d = d
        self._terms: Dict[GeneralizedDiagram, Scalar] = {}
        for diagram, coeff in (terms or {}).items():
            if not diagram.is_brauer or diagram.d != d:
                raise ValueError(f"{format_diagram(diagram)} 不是 d={d} 的 Brauer 图")
            coeff = to_scalar(coeff)
            if coeff:
                self._terms[diagram] = coeff

    @classmethod
    def from_diagram(cls, diagram: GeneralizedDiagram, coeff: Any = 1) -> "BrauerElement":
        return cls(diagram.d, {diagram: coeff})

    @classmethod
    def identity(cls, d: int) -> "BrauerElement":
        return cls(d, {GeneralizedDiagram.identity(d): ONE})

    @classmethod
    def zero(cls, d: int) -> "BrauerElement":
        return cls(d)

    @classmethod
    def generator(cls, d: int, g: Generator) -> "BrauerElement":
        return cls(d, {generator(d, g.kind, g.index): ONE})

    def items(self) -> Iterator[Tuple[GeneralizedDiagram, Scalar]]:
        for diagram in sorted(self._terms, key=GeneralizedDiagram.sort_key):
            yield diagram, self._terms[diagram]

    def coefficient(self, diagram: GeneralizedDiagram) -> Scalar:
        return self._terms.get(diagram, ZERO)

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BrauerElement):
            return NotImplemented
        return self.d == other.d and self._terms == other._terms

    __hash__ = None  # type: ignore[assignment]

    def _check_d(self, other: "BrauerElement") -> None:
        if self.d != other.d:
            raise ValueError(f"股数不一致: d={self.d} vs d={other.d}")

    def __add__(self, other: "BrauerElement") -> "BrauerElement":
        self._check_d(other)
        terms = dict(self._terms)
        for diagram, c in other._terms.items():
            terms[diagram] = terms.get(diagram, ZERO) + c
        return BrauerElement(self.d, terms)

    def __sub__(self, other: "BrauerElement") -> "BrauerElement":
        return self + other.scale(-1)

    def scale(self, factor: Any) -> "BrauerElement":
        factor = to_scalar(factor)
        return BrauerElement(self.d, {b: factor * c for b, c in self._terms.items()})

    def __repr__(self) -> str:
        return f"BrauerElement(d={self.d}, {format_element(self)!r})"

    def to_json(self) -> Dict[str, str]:
        """{图字面量: "p/q"}。"""
        return {format_diagram(b): format_rational(c) for b, c in self.items()}


def format_element(x: BrauerElement) -> str:
    """每项一行 ``coeff * (blocks)``，零元素输出 ``0``。"""
    if x.is_zero():
        return "0"
    return "\n".join(f"{format_rational(c)} * {format_diagram(b)}" for b, c in x.items())


def multiply(x: BrauerElement, y: BrauerElement, delta: Any) -> BrauerElement:
    """双线性扩张 b·b′ = δ^{c(b,b′)}·(b∘b′)。"""
    if x.d != y.d:
        raise ValueError(f"股数不一致: d={x.d} vs d={y.d}")
    delta = to_scalar(delta)
    terms: Dict[GeneralizedDiagram, Scalar] = {}
    for a, ca in x._terms.items():
        for b, cb in y._terms.items():
            diagram, loops = compose(a, b)
            terms[diagram] = terms.get(diagram, ZERO) + ca * cb * power(delta, loops)
    return BrauerElement(x.d, terms)


def evaluate_word(word: GeneratorWord, d: int, delta: Any) -> BrauerElement:
    """从左到右把生成元图相乘；空词为单位元。"""
    check_word(word, d)
    result = BrauerElement.identity(d)
    for g in word:
        result = multiply(result, BrauerElement.generator(d, g), delta)
    return result


def basis(d: int, limit: int = DEFAULT_MAX_STRANDS) -> List[BrauerElement]:
    return [BrauerElement.from_diagram(b) for b in enumerate_brauer(d, limit)]


def symmetric_group_elements(d: int) -> List[GeneralizedDiagram]:
    """S_d ⊂ Br_d：置换图 {k, π(k)*}。"""
    result = []
    for perm in itertools.permutations(range(1, d + 1)):
        blocks = [(Vertex(k), Vertex(perm[k - 1], True)) for k in range(1, d + 1)]
        result.append(GeneralizedDiagram.from_blocks(blocks, d))
    return result


# ────────────────────────── 关系表 ──────────────────────────


class Relation(NamedTuple):
    """lhs = δ^delta_power · rhs。"""

    name: str
    lhs: GeneratorWord
    rhs: GeneratorWord
    delta_power: int = 0


def _w(*tokens: Tuple[str, int]) -> GeneratorWord:
    return tuple(Generator(k, i) for k, i in tokens)


def relation_instances(d: int) -> List[Relation]:
    """
    d 股上全部关系实例（Temperley–Lieb 行取 e_i e_{i±1} e_i = e_i）。
    """
    rels: List[Relation] = []
    idx = range(1, d)
    for i in idx:
        s, e = ("s", i), ("e", i)
        rels.append(Relation(f"s{i}s{i}=1", _w(s, s), ()))
        rels.append(Relation(f"e{i}e{i}=δe{i}", _w(e, e), _w(e), 1))
        rels.append(Relation(f"s{i}e{i}=e{i}", _w(s, e), _w(e)))
        rels.append(Relation(f"e{i}s{i}=e{i}", _w(e, s), _w(e)))
        if i + 1 < d:
            s1, e1 = ("s", i + 1), ("e", i + 1)
            rels.append(Relation(f"s{i}s{i+1}s{i}=s{i+1}s{i}s{i+1}", _w(s, s1, s), _w(s1, s, s1)))
            rels.append(Relation(f"e{i}e{i+1}e{i}=e{i}", _w(e, e1, e), _w(e)))
            rels.append(Relation(f"e{i+1}e{i}e{i+1}=e{i+1}", _w(e1, e, e1), _w(e1)))
            rels.append(Relation(f"e{i}s{i+1}e{i}=e{i}", _w(e, s1, e), _w(e)))
            rels.append(Relation(f"e{i+1}s{i}e{i+1}=e{i+1}", _w(e1, s, e1), _w(e1)))
            rels.append(Relation(f"s{i}e{i+1}e{i}=s{i+1}e{i}", _w(s, e1, e), _w(s1, e)))
            rels.append(Relation(f"e{i}e{i+1}s{i}=e{i}s{i+1}", _w(e, e1, s), _w(e, s1)))
            rels.append(Relation(f"s{i+1}e{i}e{i+1}=s{i}e{i+1}", _w(s1, e, e1), _w(s, e1)))
            rels.append(Relation(f"e{i+1}e{i}s{i+1}=e{i+1}s{i}", _w(e1, e, s1), _w(e1, s)))
    for i, j in itertools.permutations(idx, 2):
        if abs(i - j) <= 1:
            continue
        if i < j:
            rels.append(Relation(f"s{i}s{j}=s{j}s{i}", _w(("s", i), ("s", j)), _w(("s", j), ("s", i))))
            rels.append(Relation(f"e{i}e{j}=e{j}e{i}", _w(("e", i), ("e", j)), _w(("e", j), ("e", i))))
        rels.append(Relation(f"s{i}e{j}=e{j}s{i}", _w(("s", i), ("e", j)), _w(("e", j), ("s", i))))
    return rels


T = TypeVar("T")


def failed_relations(
    d: int,
    evaluate: Callable[[GeneratorWord], T],
    delta_scale: Callable[[T, int], T],
) -> Tuple[int, List[str]]:
    """
    对任意实现（图、Mat(OB)、算子）检查关系表。

    Args:
        evaluate: 把生成元词映射为该实现中的元素
        delta_scale: (x, k) -> δ^k·x

    Returns:
        (检查的关系个数, 不成立的关系名列表)
    """
    cache: Dict[GeneratorWord, T] = {}

    def value(word: GeneratorWord) -> T:
        if word not in cache:
            cache[word] = evaluate(word)
        return cache[word]

    failures = []
    rels = relation_instances(d)
    for rel in rels:
        if value(rel.lhs) != delta_scale(value(rel.rhs), rel.delta_power):
            failures.append(rel.name)
    return len(rels), failures


@dataclass
class RelationReport:
    d: int
    delta: Scalar
    checked: int = 0
    failures: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> Dict[str, Any]:
        return {
            "d": self.d,
            "delta": format_rational(self.delta),
            "checked": self.checked,
            "failures": list(self.failures),
            "ok": self.ok,
        }


def verify_presentation(d: int, delta: Any) -> RelationReport:
    """在 d 股 Brauer 图代数中检查全部关系实例（预期无失败）。"""
    if d > MAX_PRESENTATION_STRANDS:
        raise ValueError(f"d={d} 过大，关系检查仅支持 d ≤ {MAX_PRESENTATION_STRANDS}")
    delta = to_scalar(delta)
    checked, failures = failed_relations(
        d,
        lambda w: evaluate_word(w, d, delta),
        lambda x, k: x.scale(power(delta, k)),
    )
    if failures:
        logger.warning("d=%d δ=%s 下有 %d 条关系不成立: %s", d, format_rational(delta), len(failures), failures)
    else:
        logger.info("d=%d δ=%s 下 %d 条关系全部成立", d, format_rational(delta), checked)
    return RelationReport(d, delta, checked, failures)
