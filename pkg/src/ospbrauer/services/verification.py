"""
验证服务：Schur–Weyl 对偶报告（带缓存）与 Brauer 关系检查。
"""

from __future__ import annotations

import logging
from typing import Callable, Optional

from ..brauer import RelationReport, verify_presentation
from ..cache import ReportCache
from ..centralizer import VerificationReport, verify_theorem_A
from ..config import Settings
from ..superalgebra import Params

logger = logging.getLogger("ospbrauer")

ProgressCallback = Callable[[str, int, str], None]


class VerificationService:
    """verify_theorem_A 的调用与缓存。"""

    def __init__(self, settings: Settings, cache: Optional[ReportCache] = None) -> None:
        self._settings = settings
        self._cache = cache

    def verify(
        self,
        m: int,
        n: int,
        mode: str,
        d: int,
        *,
        exact: bool = False,
        use_cache: bool = True,
        on_progress: Optional[ProgressCallback] = None,
    ) -> VerificationReport:
        """
        计算（或从缓存读取）验证报告。

        Args:
            exact: 强制使用有理数精确消元，不走两素数秩
            use_cache: 是否读写报告缓存
            on_progress: 可选进度回调 (stage, percent, message)

        Raises:
            ValueError: 参数非法
            RuntimeError: 超出张量维数预算或模秩不一致
        """
        if d < 0:
            raise ValueError(f"股数不能为负: {d}")
        p = Params(m, n, mode)

        def _progress(stage: str, pct: int, msg: str) -> None:
            if on_progress:
                on_progress(stage, pct, msg)

        key = ReportCache.make_key(m, n, mode, d, exact, self._settings.config_hash())
        if use_cache and self._cache is not None:
            cached = self._cache.get(key)
            if cached:
                logger.info("命中报告缓存 %s d=%d", p, d)
                _progress("完成", 100, "使用缓存结果")
                return VerificationReport.from_dict(cached)

        _progress("准备", 0, f"验证 {p} d={d}...")
        report = verify_theorem_A(p, d, exact=exact, settings=self._settings, on_progress=_progress)
        _progress("完成", 100, report.summary())

        if use_cache and self._cache is not None:
            self._cache.put(key, report.to_dict())
        return report

    def verify_relations(self, d: int, delta: object) -> RelationReport:
        """在 Brauer 图代数中检查全部关系实例。"""
        return verify_presentation(d, delta)
