"""
精确有理数与稀疏线性代数。

所有标量都是 sympy 的 ``QQ`` 元素（约分后的分数，分母为正），
秩 / 零空间 / 线性方程组通过 ``DomainMatrix`` 在 QQ 或 GF(p) 上精确求解。
核心代码中不出现浮点数。
"""

from __future__ import annotations

import logging
import random
from fractions import Fraction
from typing import Any, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from sympy import GF, QQ, Basic
from sympy.ntheory import nextprime
from sympy.polys.matrices import DomainMatrix

logger = logging.getLogger("ospbrauer")

Scalar = Any  # QQ.dtype，随 gmpy 是否安装而不同
SparseVector = Dict[int, Scalar]

ZERO = QQ(0)
ONE = QQ(1)

_PRIME_LOW = 2 ** 30
_PRIME_HIGH = 2 ** 31


def to_scalar(value: Any) -> Scalar:
    """
    把 int / Fraction / "p/q" 字符串 / sympy 有理数 / QQ 元素转换为 QQ 元素。

    Raises:
        ValueError: 浮点数或无法解析的字符串
    """
    if isinstance(value, QQ.dtype):
        return value
    if isinstance(value, bool):
        return QQ(int(value))
    if isinstance(value, int):
        return QQ(value)
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    if isinstance(value, float):
        raise ValueError(f"不接受浮点数 {value!r}，请使用整数、Fraction 或 \"p/q\" 字符串")
    if isinstance(value, str):
        return _parse_rational(value)
    if isinstance(value, Basic) and value.is_Rational:
        return QQ(int(value.p), int(value.q))
    if hasattr(value, "numerator") and hasattr(value, "denominator"):
        return QQ(int(value.numerator), int(value.denominator))
    raise ValueError(f"无法转换为有理数: {value!r}")


def _parse_rational(text: str) -> Scalar:
    num, slash, den = text.strip().partition("/")
    try:
        numerator = int(num)
        denominator = int(den) if slash else 1
    except ValueError:
        raise ValueError(f"无法解析有理数 {text!r}，格式应为 \"p\" 或 \"p/q\"") from None
    if denominator == 0:
        raise ValueError(f"分母为 0: {text!r}")
    return QQ(numerator, denominator)


def sign(exponent: int) -> Scalar:
    """(−1)^exponent。"""
    return -ONE if exponent % 2 else ONE


def power(base: Scalar, exponent: int) -> Scalar:
    """base^exponent，约定 0^0 = 1。"""
    result = ONE
    for _ in range(exponent):
        result *= base
    return result


# ────────────────────────── 稀疏矩阵 ──────────────────────────


class SparseMatrix:
    """
    行字典形式的稀疏有理矩阵。

    构造后视为不可变：不存零元，形状固定。所有运算返回新矩阵。
    """

    __slots__ = ("shape", "_rows")

    def __init__(
        self,
        shape: Tuple[int, int],
        rows: Optional[Dict[int, Dict[int, Any]]] = None,
    ) -> None:
        nrows, ncols = shape
        if nrows < 0 or ncols < 0:
            raise ValueError(f"矩阵形状非法: {shape}")
        self.shape = (nrows, ncols)
        self._rows: Dict[int, Dict[int, Scalar]] = {}
        for r, row in (rows or {}).items():
            if not 0 <= r < nrows:
                raise ValueError(f"行下标 {r} 超出范围 0..{nrows - 1}")
            clean = {}
            for c, v in row.items():
                if not 0 <= c < ncols:
                    raise ValueError(f"列下标 {c} 超出范围 0..{ncols - 1}")
                v = to_scalar(v)
                if v:
                    clean[c] = v
            if clean:
                self._rows[r] = clean

    @classmethod
    def _trusted(cls, shape: Tuple[int, int], rows: Dict[int, Dict[int, Scalar]]) -> "SparseMatrix":
        """内部构造：rows 已是 QQ 元素且不含零元。"""
        obj = cls.__new__(cls)
        obj.shape = shape
        obj._rows = rows
        return obj

    @classmethod
    def from_entries(
        cls,
        shape: Tuple[int, int],
        entries: Iterable[Tuple[Tuple[int, int], Any]],
    ) -> "SparseMatrix":
        """由 ((行, 列), 值) 序列构造，重复位置累加。"""
        acc: Dict[int, Dict[int, Scalar]] = {}
        for (r, c), v in entries:
            row = acc.setdefault(r, {})
            row[c] = row.get(c, ZERO) + to_scalar(v)
        return cls(shape, acc)

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[Any]]) -> "SparseMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        return cls((nrows, ncols), {r: dict(enumerate(row)) for r, row in enumerate(rows)})

    @classmethod
    def identity(cls, n: int) -> "SparseMatrix":
        return cls._trusted((n, n), {i: {i: ONE} for i in range(n)})

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "SparseMatrix":
        return cls._trusted((nrows, ncols), {})

    # ── 访问 ──

    @property
    def nrows(self) -> int:
        return self.shape[0]

    @property
    def ncols(self) -> int:
        return self.shape[1]

    @property
    def nnz(self) -> int:
        return sum(len(row) for row in self._rows.values())

    def row(self, r: int) -> Dict[int, Scalar]:
        """第 r 行的非零元 {列: 值}（只读视图，勿修改）。"""
        return self._rows.get(r, {})

    def get(self, r: int, c: int) -> Scalar:
        return self._rows.get(r, {}).get(c, ZERO)

    def entries(self) -> Iterator[Tuple[int, int, Scalar]]:
        for r in sorted(self._rows):
            row = self._rows[r]
            for c in sorted(row):
                yield r, c, row[c]

    def is_zero(self) -> bool:
        return not self._rows

    def is_diagonal(self) -> bool:
        return all(set(row) <= {r} for r, row in self._rows.items())

    def to_dense(self) -> List[List[Scalar]]:
        return [[self.get(r, c) for c in range(self.ncols)] for r in range(self.nrows)]

    def flatten(self) -> SparseVector:
        """按行优先展平成稀疏向量 {r·ncols + c: 值}。"""
        return {r * self.ncols + c: v for r, c, v in self.entries()}

    # ── 运算 ──

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"SparseMatrix(shape={self.shape}, nnz={self.nnz})"

    def _combine(self, other: "SparseMatrix", factor: Scalar) -> "SparseMatrix":
        if self.shape != other.shape:
            raise ValueError(f"矩阵形状不一致: {self.shape} vs {other.shape}")
        rows = {r: dict(row) for r, row in self._rows.items()}
        for r, orow in other._rows.items():
            row = rows.setdefault(r, {})
            for c, v in orow.items():
                s = row.get(c, ZERO) + factor * v
                if s:
                    row[c] = s
                else:
                    row.pop(c, None)
            if not row:
                del rows[r]
        return SparseMatrix._trusted(self.shape, rows)

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        return self._combine(other, ONE)

    def __sub__(self, other: "SparseMatrix") -> "SparseMatrix":
        return self._combine(other, -ONE)

    def __neg__(self) -> "SparseMatrix":
        return self.scale(-ONE)

    def scale(self, factor: Any) -> "SparseMatrix":
        factor = to_scalar(factor)
        if not factor:
            return SparseMatrix.zeros(*self.shape)
        rows = {r: {c: factor * v for c, v in row.items()} for r, row in self._rows.items()}
        return SparseMatrix._trusted(self.shape, rows)

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"矩阵乘法维数不匹配: {self.shape} @ {other.shape}")
        rows: Dict[int, Dict[int, Scalar]] = {}
        for r, row in self._rows.items():
            acc: Dict[int, Scalar] = {}
            for k, a in row.items():
                orow = other._rows.get(k)
                if not orow:
                    continue
                for c, b in orow.items():
                    acc[c] = acc.get(c, ZERO) + a * b
            acc = {c: v for c, v in acc.items() if v}
            if acc:
                rows[r] = acc
        return SparseMatrix._trusted((self.nrows, other.ncols), rows)

    def transpose(self) -> "SparseMatrix":
        rows: Dict[int, Dict[int, Scalar]] = {}
        for r, row in self._rows.items():
            for c, v in row.items():
                rows.setdefault(c, {})[r] = v
        return SparseMatrix._trusted((self.ncols, self.nrows), rows)

    def apply(self, vector: SparseVector) -> SparseVector:
        """矩阵作用于稀疏列向量。"""
        out: SparseVector = {}
        for r, row in self._rows.items():
            s = ZERO
            for c, v in row.items():
                x = vector.get(c)
                if x:
                    s += v * x
            if s:
                out[r] = s
        return out

    def commutator(self, other: "SparseMatrix", parity_sign: Any = 1) -> "SparseMatrix":
        """self·other − parity_sign·other·self。"""
        return (self @ other)._combine(other @ self, -to_scalar(parity_sign))

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "SparseMatrix":
        col_pos = {c: k for k, c in enumerate(cols)}
        out: Dict[int, Dict[int, Scalar]] = {}
        for i, r in enumerate(rows):
            picked = {col_pos[c]: v for c, v in self.row(r).items() if c in col_pos}
            if picked:
                out[i] = picked
        return SparseMatrix._trusted((len(rows), len(cols)), out)

    def to_domain_matrix(self) -> DomainMatrix:
        dok = {(r, c): v for r, c, v in self.entries()}
        return DomainMatrix.from_dok(dok, self.shape, QQ)


# ────────────────────────── 秩与零空间 ──────────────────────────


def _column_order(M: SparseMatrix) -> List[int]:
    """按非零元个数升序排列列（Markowitz 式），减少消元填充。"""
    counts = [0] * M.ncols
    for _, c, _ in M.entries():
        counts[c] += 1
    return sorted(range(M.ncols), key=lambda c: (counts[c], c))


def rank(M: SparseMatrix) -> int:
    """QQ 上的秩。"""
    if M.is_zero():
        return 0
    return M.to_domain_matrix().rank()


def nullspace_basis(M: SparseMatrix) -> List[Tuple[Scalar, ...]]:
    """
    {x : Mx = 0} 的一组精确基（稠密元组），基向量个数 = 列数 − 秩。
    """
    nrows, ncols = M.shape
    if ncols == 0:
        return []
    if M.is_zero():
        return [tuple(ONE if k == c else ZERO for k in range(ncols)) for c in range(ncols)]

    order = _column_order(M)
    position = {c: k for k, c in enumerate(order)}
    dok = {(r, position[c]): v for r, c, v in M.entries()}
    dm = DomainMatrix.from_dok(dok, (nrows, ncols), QQ)
    rref, pivots = dm.rref()
    null = rref.nullspace_from_rref(pivots)
    logger.debug("零空间: %d×%d, 秩=%d, 零度=%d", nrows, ncols, len(pivots), null.shape[0])

    basis: List[List[Scalar]] = [[ZERO] * ncols for _ in range(null.shape[0])]
    for (k, j), v in null.to_dok().items():
        if v:
            basis[k][order[j]] = v
    return [tuple(vec) for vec in basis]


def _reduce_mod_p(value: Scalar, p: int) -> int:
    num, den = int(value.numerator), int(value.denominator)
    if den % p == 0:
        raise ValueError(f"元素 {num}/{den} 的分母可被 p={p} 整除，无法模 p 约化")
    return num * pow(den, -1, p) % p


def rank_mod_p(M: SparseMatrix, p: int) -> int:
    """
    M 模素数 p 的秩（≤ 有理秩）。

    Raises:
        ValueError: 某元素的分母可被 p 整除
    """
    K = GF(p)
    dok = {}
    for r, c, v in M.entries():
        residue = _reduce_mod_p(v, p)
        if residue:
            dok[(r, c)] = K(residue)
    if not dok:
        return 0
    return DomainMatrix.from_dok(dok, M.shape, K).rank()


def random_primes(seed: int, count: int = 2) -> List[int]:
    """由种子确定的 count 个互不相同的素数，取自 [2^30, 2^31) 之后的下一个素数。"""
    rng = random.Random(seed)
    primes: List[int] = []
    while len(primes) < count:
        p = int(nextprime(rng.randrange(_PRIME_LOW, _PRIME_HIGH)))
        if p not in primes:
            primes.append(p)
    return primes


def certified_rank(M: SparseMatrix, seed: int = 0) -> Tuple[int, List[int]]:
    """
    用两个随机大素数计算秩；两者一致才视为认证结果（概率性约定）。

    Returns:
        (秩, 使用的素数列表)

    Raises:
        RuntimeError: 两个模秩不一致
    """
    primes = random_primes(seed, 2)
    ranks = [rank_mod_p(M, p) for p in primes]
    logger.info("模秩: %s (素数 %s)", ranks, primes)
    if ranks[0] != ranks[1]:
        raise RuntimeError(
            f"两个素数下的秩不一致: {dict(zip(primes, ranks))}，请改用 --exact 精确计算"
        )
    return ranks[0], primes


def solve_in_span(
    vectors: Sequence[SparseVector],
    target: SparseVector,
) -> Optional[List[Scalar]]:
    """
    求系数 c 使 Σ c_k·vectors[k] = target；不在张成空间内时返回 None。
    """
    support = sorted(set(target).union(*[set(v) for v in vectors]) if vectors else set(target))
    if not support:
        return [ZERO] * len(vectors)
    row_of = {key: i for i, key in enumerate(support)}
    k = len(vectors)
    dok = {}
    for j, vec in enumerate(vectors):
        for key, v in vec.items():
            if v:
                dok[(row_of[key], j)] = to_scalar(v)
    for key, v in target.items():
        if v:
            dok[(row_of[key], k)] = to_scalar(v)
    if not any(c == k for _, c in dok):
        return [ZERO] * k
    aug = DomainMatrix.from_dok(dok, (len(support), k + 1), QQ)
    rref, pivots = aug.rref()
    if k in pivots:
        return None
    solution = [ZERO] * k
    entries = rref.to_dok()
    for i, pc in enumerate(pivots):
        solution[pc] = entries.get((i, k), ZERO)
    return solution


def in_span(vectors: Sequence[SparseVector], target: SparseVector) -> bool:
    return solve_in_span(vectors, target) is not None


def vector_rank(vectors: Sequence[SparseVector]) -> int:
    """一组稀疏向量张成空间的维数。"""
    keys = sorted(set().union(*[set(v) for v in vectors])) if vectors else []
    if not keys:
        return 0
    col_of = {key: i for i, key in enumerate(keys)}
    rows = {i: {col_of[key]: v for key, v in vec.items()} for i, vec in enumerate(vectors)}
    return rank(SparseMatrix((len(vectors), len(keys)), rows))
