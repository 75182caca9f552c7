"""
分解服务：把 osp 等变算子写成 Brauer 图像的线性组合。
"""

from __future__ import annotations

import json
import logging
import os
from dataclasses import dataclass, field
from typing import Any, Dict, List, Tuple

from ..centralizer import decompose_in_brauer_basis
from ..config import Settings
from ..diagrams import format_diagram
from ..superalgebra import Params
from ..tensor import SparseOperator
from ..utils import format_rational

logger = logging.getLogger("ospbrauer")


@dataclass
class DecompositionResult:
    """分解结果：系数按图字面量给出，残差为精确稀疏算子。"""

    coefficients: List[Tuple[str, str]] = field(default_factory=list)
    residual: Dict[str, Any] = field(default_factory=dict)
    residual_nnz: int = 0

    @property
    def in_image(self) -> bool:
        return self.residual_nnz == 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "coefficients": {diagram: c for diagram, c in self.coefficients},
            "residual_nnz": self.residual_nnz,
            "in_image": self.in_image,
            "residual": self.residual,
        }

    def save(self, path: str) -> str:
        os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
        with open(path, "w", encoding="utf-8") as f:
            json.dump(self.to_dict(), f, indent=2, ensure_ascii=False)
        logger.info("分解结果已保存到 %s", path)
        return path


class DecompositionService:
    def __init__(self, settings: Settings) -> None:
        self._settings = settings

    def load_operator(self, path: str, p: Params, d: int) -> SparseOperator:
        """
        读取算子文件 {"entries": [{"out": ..., "in": ..., "value": ...}]}。

        Raises:
            FileNotFoundError: 文件不存在
            ValueError: 文件不是合法 JSON 或条目格式错误
        """
        if not os.path.exists(path):
            raise FileNotFoundError(f"算子文件不存在: {path}")
        try:
            with open(path, "r", encoding="utf-8") as f:
                data = json.load(f)
        except json.JSONDecodeError as e:
            raise ValueError(f"算子文件不是合法 JSON: {path} ({e})") from e
        return SparseOperator.from_json(data, p, d)

    def decompose(self, f: SparseOperator, p: Params, d: int) -> DecompositionResult:
        """
        Raises:
            ValueError: f 不是 osp 等变的
            RuntimeError: d > m+n，系数读取有歧义
        """
        size = p.dim ** d
        if size > self._settings.max_tensor_dim:
            raise RuntimeError(
                f"dim V^⊗d = {size} 超过预算 max_tensor_dim={self._settings.max_tensor_dim}"
            )
        coefficients, residual = decompose_in_brauer_basis(
            f, p, d, limit=self._settings.max_strands
        )
        ordered = sorted(coefficients.items(), key=lambda kv: (-kv[0].through_strands(), kv[0].sort_key()))
        return DecompositionResult(
            coefficients=[(format_diagram(b), format_rational(c)) for b, c in ordered],
            residual=residual.to_json(),
            residual_nnz=residual.matrix.nnz,
        )
