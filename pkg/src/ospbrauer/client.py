"""
SchurWeylClient —— ospbrauer 统一入口。

用法:
    from ospbrauer import SchurWeylClient

    client = SchurWeylClient()

    # Brauer 代数乘法
    x = client.multiply("e1 e1", d=2, delta=0)

    # 验证 Br_d(δ) ≅ End_osp(V^⊗d)
    report = client.verify(m=1, n=1, mode="even", d=2)
    print(report.to_json())

    # 渲染图
    client.render("(1,2*)(2,1*)").save("s1.svg")
"""

from __future__ import annotations

import logging
from typing import Any, Callable, Dict, Optional

from .brauer import BrauerElement, RelationReport, evaluate_word, parse_word
from .cache import ReportCache
from .centralizer import VerificationReport, gl_intertwiner_dim
from .config import Settings
from .diagrams import parse_diagram
from .oriented import hom_dim, parse_sequence
from .services.decomposition import DecompositionResult, DecompositionService
from .services.rendering import RenderResult, RenderService
from .services.verification import VerificationService
from .superalgebra import Params
from .tensor import TensorVector, operator_from_word, parse_vector

logger = logging.getLogger("ospbrauer")


class SchurWeylClient:
    """
    ospbrauer 主入口。

    配置优先级：构造参数 > 环境变量 > ~/.ospbrauer/config.json

    Args:
        settings: 已解析的配置（给出时忽略其余配置参数）
        cache_dir: 报告缓存目录，默认 ~/.ospbrauer/cache/
        log_level: 日志级别，默认 INFO。设为 None 不修改日志配置。
        **overrides: 其余 Settings 字段（max_strands、max_tensor_dim 等）
    """

    def __init__(
        self,
        settings: Optional[Settings] = None,
        cache_dir: Optional[str] = None,
        log_level: Optional[int] = logging.INFO,
        **overrides: Any,
    ) -> None:
        if log_level is not None:
            logging.basicConfig(
                level=log_level,
                format="%(asctime)s [%(name)s] %(levelname)s: %(message)s",
                datefmt="%H:%M:%S",
            )

        self.settings = settings or Settings.resolve(cache_dir=cache_dir, **overrides)
        self._cache = ReportCache(self.settings.cache_dir)

        self._verification_svc = VerificationService(self.settings, self._cache)
        self._decomposition_svc = DecompositionService(self.settings)
        self._render_svc = RenderService()

    # ────────────────────────── Brauer 代数 ──────────────────────────

    def multiply(self, word: str, d: int, delta: Any) -> BrauerElement:
        """生成元词在 Br_d(δ) 中的展开。"""
        return evaluate_word(parse_word(word), d, delta)

    def verify_relations(self, d: int, delta: Any) -> RelationReport:
        return self._verification_svc.verify_relations(d, delta)

    # ────────────────────────── 定向 Brauer 范畴 ──────────────────────────

    def hom_dim(self, s: str, t: str) -> int:
        """OB 中 Hom(s, t) 的维数（定向图个数）。"""
        return hom_dim(parse_sequence(s), parse_sequence(t))

    def gl_intertwiner_dim(self, s: str, t: str, m: int, n: int, mode: str = "odd") -> int:
        return gl_intertwiner_dim(
            parse_sequence(s), parse_sequence(t), Params(m, n, mode), settings=self.settings
        )

    # ────────────────────────── 张量空间 ──────────────────────────

    def act(
        self,
        m: int,
        n: int,
        mode: str,
        d: int,
        word: str,
        vector: Dict[str, Any],
    ) -> TensorVector:
        """生成元词对应的算子作用在给定向量上。"""
        p = Params(m, n, mode)
        if p.dim ** d > self.settings.max_tensor_dim:
            raise RuntimeError(
                f"dim V^⊗d = {p.dim ** d} 超过预算 max_tensor_dim={self.settings.max_tensor_dim}"
            )
        op = operator_from_word(parse_word(word), p, d)
        return op.apply(parse_vector(vector, p, d))

    # ────────────────────────── 验证与分解 ──────────────────────────

    def verify(
        self,
        m: int,
        n: int,
        mode: str,
        d: int,
        *,
        exact: bool = False,
        use_cache: bool = True,
        on_progress: Optional[Callable[[str, int, str], None]] = None,
    ) -> VerificationReport:
        """
        验证 Br_d(δ) → End_{osp(V)}(V^⊗d) 的单、满、同构性。

        Returns:
            VerificationReport，可调用 .to_json() 输出
        """
        return self._verification_svc.verify(
            m, n, mode, d, exact=exact, use_cache=use_cache, on_progress=on_progress
        )

    def decompose(self, m: int, n: int, mode: str, d: int, operator_file: str) -> DecompositionResult:
        p = Params(m, n, mode)
        f = self._decomposition_svc.load_operator(operator_file, p, d)
        return self._decomposition_svc.decompose(f, p, d)

    # ────────────────────────── 渲染 ──────────────────────────

    def render(
        self,
        diagram: str,
        top: Optional[str] = None,
        bottom: Optional[str] = None,
    ) -> RenderResult:
        t = parse_sequence(top) if top is not None else None
        s = parse_sequence(bottom) if bottom is not None else None
        b = parse_diagram(
            diagram,
            len(t) if t is not None else None,
            len(s) if s is not None else None,
        )
        return self._render_svc.render(b, t, s)
