"""
运行配置：枚举上限、张量维数预算、模素数秩的阈值与种子、缓存目录。

支持三种来源（优先级从高到低）：
1. 构造参数（Settings.resolve 的关键字参数）
2. 环境变量 OSPBRAUER_MAX_STRANDS / OSPBRAUER_MAX_TENSOR_DIM /
   OSPBRAUER_MODULAR_THRESHOLD / OSPBRAUER_PRIME_SEED / OSPBRAUER_CACHE_DIR
3. 配置文件 ~/.ospbrauer/config.json
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
from dataclasses import asdict, dataclass, fields
from typing import Any, Dict, Optional

logger = logging.getLogger("ospbrauer")

_DEFAULT_CONFIG_DIR = os.path.join(os.path.expanduser("~"), ".ospbrauer")
_DEFAULT_CONFIG_FILE = os.path.join(_DEFAULT_CONFIG_DIR, "config.json")

_ENV_PREFIX = "OSPBRAUER_"


@dataclass(frozen=True)
class Settings:
    max_strands: int = 6
    max_tensor_dim: int = 4096
    modular_threshold: int = 500
    prime_seed: int = 0
    cache_dir: str = os.path.join(_DEFAULT_CONFIG_DIR, "cache")

    def __post_init__(self) -> None:
        for name in ("max_strands", "max_tensor_dim", "modular_threshold"):
            if getattr(self, name) < 0:
                raise ValueError(f"配置项 {name} 不能为负: {getattr(self, name)}")

    @classmethod
    def resolve(cls, config_file: Optional[str] = None, **overrides: Any) -> "Settings":
        """
        按优先级解析配置：参数 > 环境变量 > 配置文件 > 默认值。

        Raises:
            ValueError: 某项取值无法转换为对应类型
        """
        file_values = _read_config_file(config_file or _DEFAULT_CONFIG_FILE)
        values: Dict[str, Any] = {}
        for f in fields(cls):
            if overrides.get(f.name) is not None:
                raw, source = overrides[f.name], "参数"
            elif os.environ.get(_ENV_PREFIX + f.name.upper(), "").strip():
                raw, source = os.environ[_ENV_PREFIX + f.name.upper()].strip(), "环境变量"
            elif f.name in file_values:
                raw, source = file_values[f.name], "配置文件"
            else:
                continue
            values[f.name] = _coerce(f.name, raw, source)
        unknown = set(overrides) - {f.name for f in fields(cls)}
        if unknown:
            raise ValueError(f"未知配置项: {', '.join(sorted(unknown))}")
        settings = cls(**values)
        logger.debug("配置: %s (hash=%s)", settings.to_dict(), settings.config_hash()[:8])
        return settings

    def config_hash(self) -> str:
        """影响计算结果的配置项的 MD5；缓存目录不参与。"""
        payload = {k: v for k, v in self.to_dict().items() if k != "cache_dir"}
        return hashlib.md5(json.dumps(payload, sort_keys=True).encode()).hexdigest()

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def _coerce(name: str, raw: Any, source: str) -> Any:
    if name == "cache_dir":
        return os.path.expanduser(str(raw))
    try:
        return int(raw)
    except (TypeError, ValueError):
        raise ValueError(f"配置项 {name} 必须为整数（来自{source}）: {raw!r}") from None


def _read_config_file(path: str) -> Dict[str, Any]:
    if not os.path.exists(path):
        return {}
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except Exception as e:
        logger.warning("配置文件 %s 读取失败，已忽略: %s", path, e)
        return {}
    if not isinstance(data, dict):
        logger.warning("配置文件 %s 顶层不是 JSON 对象，已忽略", path)
        return {}
    return data
