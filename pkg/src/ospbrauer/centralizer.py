"""
交换子代数与缠绕映射的暴力计算，以及 Schur–Weyl 对偶的验证。

"End" 取无分次的线性交换子：f·ρ(X) = ρ(X)·f，ρ(X) 为带符号的作用算子，
交换方程中不再附加超符号。交换子的奇偶分解单独报告。

未知数 f[x, y] 先用对角生成元筛掉：对角算子 H 给出 f[x,y]·(h_y − h_x) = 0，
因此只保留所有对角生成元取值相同的 (x, y)。
"""

from __future__ import annotations

import json
import logging
import time
from dataclasses import asdict, dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from .config import Settings
from .diagrams import GeneralizedDiagram, enumerate_brauer, format_diagram
from .oriented import DOWN, UP, OrientedMorphism, psi_embed
from .scalars import (
    ZERO,
    Scalar,
    SparseMatrix,
    SparseVector,
    certified_rank,
    nullspace_basis,
    solve_in_span,
    vector_rank,
)
from .superalgebra import BasisIndex, Params, gl_embedding, osp_basis
from .tensor import (
    LabelledOrientedDiagram,
    SparseOperator,
    functor_entry,
    lie_operator,
    parity_operator,
    summand_indices,
    theta,
)
from .utils import brauer_dimension, format_duration, format_rational

logger = logging.getLogger("ospbrauer")

RATIONAL, MODULAR = "rational", "modular"


# ────────────────────────── 线性方程组 ──────────────────────────


@dataclass
class CommutantBasis:
    """
    缠绕映射空间（特例为交换子）的一组基。

    operators 仅在精确有理计算时给出；模素数方法只得到维数。
    """

    dimension: int
    operators: Optional[List[SparseOperator]] = None
    method: str = RATIONAL
    primes: List[int] = field(default_factory=list)
    unknowns: int = 0
    equations: int = 0

    def __len__(self) -> int:
        return self.dimension


def _diagonal(op: SparseMatrix, k: int) -> Scalar:
    return op.get(k, k)


def _signature(diagonal_ops: Sequence[SparseMatrix], k: int) -> Tuple[Scalar, ...]:
    return tuple(_diagonal(H, k) for H in diagonal_ops)


def _build_system(
    sources: Sequence[SparseMatrix],
    targets: Sequence[SparseMatrix],
    rows: Sequence[int],
    cols: Sequence[int],
) -> Tuple[SparseMatrix, List[Tuple[int, int]]]:
    """
    方程 f·G_in − G_out·f = 0（f: cols → rows）的系数矩阵与未知数列表。

    对角的生成元对直接用于筛选未知数，不再生成方程。
    """
    diag_pairs = [(s, t) for s, t in zip(sources, targets) if s.is_diagonal() and t.is_diagonal()]
    others = [(s, t) for s, t in zip(sources, targets) if not (s.is_diagonal() and t.is_diagonal())]
    in_sig = {y: _signature([s for s, _ in diag_pairs], y) for y in cols}
    out_sig = {x: _signature([t for _, t in diag_pairs], x) for x in rows}

    by_sig: Dict[Tuple[Scalar, ...], List[int]] = {}
    for y in cols:
        by_sig.setdefault(in_sig[y], []).append(y)
    unknowns = [(x, y) for x in rows for y in by_sig.get(out_sig[x], ())]
    column_of = {u: k for k, u in enumerate(unknowns)}
    row_set, col_set = set(rows), set(cols)
    logger.debug("缠绕方程: %d 个未知数（筛选前 %d），%d 个非对角生成元",
                 len(unknowns), len(rows) * len(cols), len(others))

    equations: Dict[Tuple[int, int, int], Dict[int, Scalar]] = {}
    for g, (G_in, G_out) in enumerate(others):
        G_out_t = G_out.transpose()
        for (x, c), u in column_of.items():
            # f[x,c]·G_in[c,y] 进入方程 (x, y)
            for y, v in G_in.row(c).items():
                if y in col_set:
                    eq = equations.setdefault((g, x, y), {})
                    eq[u] = eq.get(u, ZERO) + v
            # −G_out[x',x]·f[x,c] 进入方程 (x', c)
            for x2, v in G_out_t.row(x).items():
                if x2 in row_set:
                    eq = equations.setdefault((g, x2, c), {})
                    eq[u] = eq.get(u, ZERO) - v
    system_rows = [eq for eq in equations.values() if any(eq.values())]
    A = SparseMatrix((len(system_rows), len(unknowns)), dict(enumerate(system_rows)))
    return A, unknowns


def intertwiner(
    sources: Sequence[SparseOperator],
    targets: Sequence[SparseOperator],
    source_space: Optional[Sequence[int]] = None,
    target_space: Optional[Sequence[int]] = None,
    modular: bool = False,
    seed: int = 0,
) -> CommutantBasis:
    """
    {f : source_space → target_space | f·sources[k] = targets[k]·f 对所有 k}。

    sources[k] 与 targets[k] 是同一个生成元在源、目标空间上的作用；
    要求生成元保持 source_space / target_space（例如 gl 保持每个 W_s）。
    """
    if len(sources) != len(targets):
        raise ValueError(f"源与目标的生成元个数不同: {len(sources)} vs {len(targets)}")
    if not sources:
        raise ValueError("生成元列表为空")
    first_src, first_tgt = sources[0], targets[0]
    for S, T in zip(sources, targets):
        if (S.in_degree, S.out_degree) != (first_src.in_degree, first_src.out_degree):
            raise ValueError(f"源算子的维数不一致: {S!r}")
        if (T.in_degree, T.out_degree) != (first_tgt.in_degree, first_tgt.out_degree):
            raise ValueError(f"目标算子的维数不一致: {T!r}")
    p = first_src.params
    cols = list(range(first_src.matrix.ncols)) if source_space is None else list(source_space)
    rows = list(range(first_tgt.matrix.nrows)) if target_space is None else list(target_space)

    A, unknowns = _build_system(
        [S.matrix for S in sources], [T.matrix for T in targets], rows, cols
    )
    shape = (first_tgt.matrix.nrows, first_src.matrix.ncols)
    if modular:
        r, primes = certified_rank(A, seed) if not A.is_zero() else (0, [])
        return CommutantBasis(len(unknowns) - r, None, MODULAR, primes, len(unknowns), A.nrows)

    operators = []
    for vec in nullspace_basis(A):
        entries = [(unknowns[k], v) for k, v in enumerate(vec) if v]
        M = SparseMatrix.from_entries(shape, entries)
        operators.append(SparseOperator(p, M, first_tgt.out_degree, first_src.in_degree))
    return CommutantBasis(len(operators), operators, RATIONAL, [], len(unknowns), A.nrows)


def commutant(generators: Sequence[SparseOperator], dim: Optional[int] = None) -> CommutantBasis:
    """
    {f : f∘G = G∘f 对所有生成元 G} 的精确基。

    Raises:
        ValueError: 生成元不是同维方阵，或与 dim 不符
    """
    if not generators:
        raise ValueError("生成元列表为空")
    size = generators[0].matrix.nrows
    for G in generators:
        if G.matrix.shape != (size, size):
            raise ValueError(f"生成元不是 {size}×{size} 方阵: {G!r}")
    if dim is not None and dim != size:
        raise ValueError(f"生成元维数 {size} 与给定的 dim={dim} 不符")
    return intertwiner(generators, generators)


# ────────────────────────── osp / gl ──────────────────────────


def _check_budget(p: Params, d: int, settings: Settings) -> int:
    size = p.dim ** d
    if size > settings.max_tensor_dim:
        raise RuntimeError(
            f"dim V^⊗d = {p.dim}^{d} = {size} 超过预算 max_tensor_dim={settings.max_tensor_dim}"
        )
    return size


def _use_modular(size: int, exact: bool, settings: Settings) -> bool:
    return not exact and size > settings.modular_threshold


def osp_generator_operators(p: Params, d: int) -> List[SparseOperator]:
    return [lie_operator(X, p, d) for X in osp_basis(p)]


def osp_commutant(
    p: Params,
    d: int,
    exact: bool = False,
    settings: Optional[Settings] = None,
) -> CommutantBasis:
    """End_{osp(V)}(V^⊗d)；D^d 超过阈值且未要求精确时用两素数秩。"""
    settings = settings or Settings()
    size = _check_budget(p, d, settings)
    ops = osp_generator_operators(p, d)
    modular = _use_modular(size, exact, settings)
    result = intertwiner(ops, ops, modular=modular, seed=settings.prime_seed)
    logger.info("osp 交换子 %s d=%d: 维数 %d（%s，%d 个未知数）",
                p, d, result.dimension, result.method, result.unknowns)
    return result


def osp_commutant_dim(
    p: Params,
    d: int,
    exact: bool = False,
    settings: Optional[Settings] = None,
) -> int:
    return osp_commutant(p, d, exact, settings).dimension


def gl_intertwiner_dim(
    s: str,
    t: str,
    p: Params,
    settings: Optional[Settings] = None,
) -> int:
    """dim Hom_{gl(m|n)}(W_s, W_t)，生成元为嵌入的 ι(E_ij)。"""
    settings = settings or Settings()
    if not p.is_odd and ("o" in s or "o" in t):
        raise ValueError(f"even 模式下不存在含 ∘ 的求和项: s={s!r}, t={t!r}")
    _check_budget(p, max(len(s), len(t)), settings)
    gens = gl_embedding(p)
    sources = [lie_operator(X, p, len(s)) for X in gens]
    targets = [lie_operator(X, p, len(t)) for X in gens]
    result = intertwiner(
        sources,
        targets,
        source_space=summand_indices(p, s),
        target_space=summand_indices(p, t),
    )
    logger.debug("Hom_gl(W_%s, W_%s) %s: 维数 %d", s, t, p, result.dimension)
    return result.dimension


# ────────────────────────── Brauer 像 ──────────────────────────


def brauer_image(p: Params, d: int, limit: int = 6) -> List[Tuple[GeneralizedDiagram, SparseOperator]]:
    """[(b, Θ(Ψ(b))) for b ∈ B[d]]。"""
    return [(b, theta(psi_embed(b, d, p.mode), p)) for b in enumerate_brauer(d, limit)]


def _image_rank(
    image: Sequence[Tuple[GeneralizedDiagram, SparseOperator]],
    modular: bool,
    seed: int,
) -> Tuple[int, List[int]]:
    vectors = [op.matrix.flatten() for _, op in image]
    if not modular:
        return vector_rank(vectors), []
    keys = sorted(set().union(*[set(v) for v in vectors])) if vectors else []
    if not keys:
        return 0, []
    col_of = {k: i for i, k in enumerate(keys)}
    M = SparseMatrix((len(vectors), len(keys)), {
        i: {col_of[k]: v for k, v in vec.items()} for i, vec in enumerate(vectors)
    })
    return certified_rank(M, seed)


def brauer_action_rank(
    p: Params,
    d: int,
    exact: bool = False,
    settings: Optional[Settings] = None,
) -> int:
    """span{Θ(Ψ(b)) : b ∈ B[d]} 的秩。"""
    settings = settings or Settings()
    size = _check_budget(p, d, settings)
    image = brauer_image(p, d, settings.max_strands)
    rank, _ = _image_rank(image, _use_modular(size, exact, settings), settings.prime_seed)
    return rank


def commutes_with_all(op: SparseOperator, generators: Sequence[SparseOperator]) -> bool:
    return all(op.commutes_with(G) for G in generators)


def commutant_parity_split(
    basis: CommutantBasis,
    p: Params,
    d: int,
) -> Tuple[Optional[int], Optional[int]]:
    """
    交换子的偶、奇部分维数：f = (f + PfP)/2 + (f − PfP)/2，P 为分次算子。

    模素数结果没有显式基，返回 (None, None)。
    """
    if basis.operators is None:
        return None, None
    P = parity_operator(p, d)
    even_parts: List[SparseVector] = []
    odd_parts: List[SparseVector] = []
    for f in basis.operators:
        conj = P @ f @ P
        even_parts.append((f + conj).matrix.flatten())
        odd_parts.append((f - conj).matrix.flatten())
    return vector_rank(even_parts), vector_rank(odd_parts)


def hypotheses_satisfied(p: Params, d: int) -> bool:
    """
    同构成立的充分条件：sdim V ≠ 2m|0 且 d ≤ m+n，或 sdim V = 2m|0、m > 0 且 d < m。
    """
    if not p.is_odd and p.n == 0:
        return p.m > 0 and d < p.m
    return d <= p.m + p.n


def classical_bound(p: Params, d: int) -> Optional[bool]:
    """奇正交情形（n = 0, odd）的经典界 2m+1 ≥ d；其它情形返回 None。"""
    if p.n == 0 and p.is_odd:
        return 2 * p.m + 1 >= d
    return None


# ────────────────────────── 分解 ──────────────────────────


def _readoff_labels(b: GeneralizedDiagram) -> LabelledOrientedDiagram:
    """
    竖直股取 ∧，cap/cup 从左到右取 (∧, ∨)；第 r 个二元块标绝对值 r+1。
    """
    labels: List[Optional[BasisIndex]] = [None] * b.size
    symbols = [UP] * b.size
    for r, (v, w) in enumerate(b.arcs()):
        if (v < b.top_count) == (w < b.top_count):
            right = max((v, w), key=lambda u: b.vertex(u).position)
            symbols[right] = DOWN
        labels[v] = BasisIndex(r + 1, symbols[v] == DOWN)
        labels[w] = BasisIndex(r + 1, symbols[w] == DOWN)
    t = "".join(symbols[: b.top_count])
    s = "".join(symbols[b.top_count:])
    return LabelledOrientedDiagram(
        OrientedMorphism(t, b, s),
        bottom_labels=tuple(labels[b.top_count:]),  # type: ignore[arg-type]
        top_labels=tuple(labels[: b.top_count]),  # type: ignore[arg-type]
    )


def decompose_in_brauer_basis(
    f: SparseOperator,
    p: Params,
    d: int,
    check: bool = True,
    limit: int = 6,
    image: Optional[Dict[GeneralizedDiagram, SparseOperator]] = None,
) -> Tuple[Dict[GeneralizedDiagram, Scalar], SparseOperator]:
    """
    把 osp 等变的 f 写成 Σ γ_b·Θ(Ψ(b))，按竖直股个数从多到少逐个扣除。

    γ_b 从一个相容标号的矩阵元读出：各二元块的标号绝对值互不相同，
    因此该位置上只有 Θ(Ψ(b)) 非零。

    Returns:
        (系数 {b: γ_b}, 残差 f − Σ γ_b·Θ(Ψ(b)))

    Raises:
        ValueError: f 的形状不符或不是 osp 等变的
        RuntimeError: d > m+n，无法选出互不相同的标号
    """
    if f.params != p or (f.out_degree, f.in_degree) != (d, d):
        raise ValueError(f"算子 {f!r} 与参数 {p}、d={d} 不符")
    if d > p.m + p.n:
        raise RuntimeError(
            f"d={d} > m+n={p.m + p.n}：无法给各股选出互不相同的标号，系数读取有歧义"
        )
    if check:
        bad = [X.label for X in osp_basis(p) if not f.commutes_with(lie_operator(X, p, d))]
        if bad:
            raise ValueError(f"输入算子不是 osp 等变的，与 {len(bad)} 个生成元不交换（如 {bad[0]}）")

    diagrams = sorted(enumerate_brauer(d, limit), key=lambda b: (-b.through_strands(), b.sort_key()))
    residual = f
    coefficients: Dict[GeneralizedDiagram, Scalar] = {}
    for b in diagrams:
        ld = _readoff_labels(b)
        wt = functor_entry(ld, p)
        gamma = residual.entry(ld.top_labels, ld.bottom_labels) / wt
        if not gamma:
            continue
        coefficients[b] = gamma
        op = image[b] if image is not None else theta(psi_embed(b, d, p.mode), p)
        residual = residual - op.scale(gamma)
        logger.debug("γ[%s] = %s", format_diagram(b), format_rational(gamma))
    if not residual.is_zero():
        logger.info("分解残差非零（%d 个非零元），输入不在 Brauer 像中", residual.matrix.nnz)
    return coefficients, residual


# ────────────────────────── 验证报告 ──────────────────────────


@dataclass
class VerificationReport:
    m: int
    n: int
    mode: str
    d: int
    delta: int
    brauer_dim: int
    image_rank: int
    commutant_dim: int
    injective: bool
    surjective: bool
    iso: bool
    hypotheses_satisfied: bool
    commutant_even_dim: Optional[int] = None
    commutant_odd_dim: Optional[int] = None
    method: str = RATIONAL
    primes: List[int] = field(default_factory=list)
    prime_seed: int = 0
    image_equivariant: bool = True
    decomposition_residuals: List[int] = field(default_factory=list)
    classical_bound: Optional[bool] = None
    elapsed: float = 0.0

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "VerificationReport":
        known = {f for f in cls.__dataclass_fields__}
        return cls(**{k: v for k, v in data.items() if k in known})

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False)

    def summary(self) -> str:
        flag = "同构" if self.iso else "非同构"
        return (
            f"(m={self.m}, n={self.n}, {self.mode}) d={self.d}: {flag}，"
            f"Brauer 维数 {self.brauer_dim}，像的秩 {self.image_rank}，交换子维数 {self.commutant_dim}"
        )


def verify_theorem_A(
    p: Params,
    d: int,
    exact: bool = False,
    settings: Optional[Settings] = None,
    on_progress: Optional[Callable[[str, int, str], None]] = None,
) -> VerificationReport:
    """
    比较 Br_d(δ) 经 Θ∘Ψ 的像与 End_{osp(V)}(V^⊗d)。

    Args:
        on_progress: 可选进度回调 (stage, percent, message)，依次报告 Brauer 像、交换子、分解三个阶段

    Raises:
        RuntimeError: D^d 超过预算，或两个素数下的秩不一致
    """
    settings = settings or Settings()

    def _progress(stage: str, pct: int, msg: str) -> None:
        if on_progress:
            on_progress(stage, pct, msg)

    start = time.perf_counter()
    size = _check_budget(p, d, settings)
    modular = _use_modular(size, exact, settings)
    seed = settings.prime_seed

    generators = osp_generator_operators(p, d)
    _progress("Brauer 像", 10, f"计算 {brauer_dimension(d)} 个 Brauer 图的作用...")
    image = brauer_image(p, d, settings.max_strands)
    image_equivariant = all(commutes_with_all(op, generators) for _, op in image)
    if not image_equivariant:
        logger.error("存在不与 osp 交换的 Θ(Ψ(b))，参数 %s d=%d", p, d)

    image_rank, image_primes = _image_rank(image, modular, seed)
    _progress("交换子", 40, f"求解 osp 交换子（{'模秩' if modular else '精确消元'}）...")
    basis = intertwiner(generators, generators, modular=modular, seed=seed)
    brauer_dim = brauer_dimension(d)

    residuals: List[int] = []
    if basis.operators is not None:
        _progress("分解", 70, f"在 Brauer 像中表示 {basis.dimension} 个交换子基向量...")
        vectors = [op.matrix.flatten() for _, op in image]
        surjective = all(
            solve_in_span(vectors, f.matrix.flatten()) is not None for f in basis.operators
        )
        if d <= p.m + p.n:
            for f in basis.operators:
                _, residual = decompose_in_brauer_basis(
                    f, p, d, check=False, limit=settings.max_strands, image=dict(image)
                )
                residuals.append(residual.matrix.nnz)
    else:
        surjective = image_equivariant and image_rank == basis.dimension
    even_dim, odd_dim = commutant_parity_split(basis, p, d)

    injective = image_rank == brauer_dim
    iso = injective and surjective and brauer_dim == basis.dimension
    hypotheses = hypotheses_satisfied(p, d)
    report = VerificationReport(
        m=p.m,
        n=p.n,
        mode=p.mode,
        d=d,
        delta=p.supertrace,
        brauer_dim=brauer_dim,
        image_rank=image_rank,
        commutant_dim=basis.dimension,
        injective=injective,
        surjective=surjective,
        iso=iso,
        hypotheses_satisfied=hypotheses,
        commutant_even_dim=even_dim,
        commutant_odd_dim=odd_dim,
        method=basis.method,
        primes=sorted(set(image_primes) | set(basis.primes)),
        prime_seed=seed,
        image_equivariant=image_equivariant,
        decomposition_residuals=residuals,
        classical_bound=classical_bound(p, d),
        elapsed=round(time.perf_counter() - start, 3),
    )
    if hypotheses and not iso:
        logger.warning("假设成立但未得到同构: %s", report.summary())
    elif not hypotheses:
        logger.warning("参数超出定理假设范围，结果仅供参考: %s", report.summary())
    logger.info("%s（耗时 %s）", report.summary(), format_duration(report.elapsed))
    return report
