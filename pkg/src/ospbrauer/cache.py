"""
验证报告缓存。

缓存 key = md5(m, n, mode, d, exact, 配置 hash)
缓存 value = VerificationReport 的字典形式 + created_at

同一组参数与同一份配置下报告是确定的，无需重复求解。
"""

from __future__ import annotations

import json
import logging
import os
import time
from typing import Any, Dict, Optional

from .utils import params_hash

logger = logging.getLogger("ospbrauer")


class ReportCache:
    """实例级报告缓存，持久化到磁盘。"""

    def __init__(self, cache_dir: str) -> None:
        self._cache_file = os.path.join(cache_dir, "reports.json")
        self._cache: Optional[Dict[str, Any]] = None

    @property
    def path(self) -> str:
        return self._cache_file

    def _load(self) -> None:
        if self._cache is not None:
            return
        try:
            if os.path.exists(self._cache_file):
                with open(self._cache_file, "r", encoding="utf-8") as f:
                    self._cache = json.load(f)
            else:
                self._cache = {}
        except Exception as e:
            logger.warning("读取报告缓存失败，已忽略: %s", e)
            self._cache = {}

    def _save(self) -> None:
        try:
            os.makedirs(os.path.dirname(self._cache_file), exist_ok=True)
            with open(self._cache_file, "w", encoding="utf-8") as f:
                json.dump(self._cache, f, indent=2, ensure_ascii=False)
        except Exception as e:
            logger.warning("保存报告缓存失败: %s", e)

    @staticmethod
    def make_key(m: int, n: int, mode: str, d: int, exact: bool, config_hash: str) -> str:
        return params_hash(m=m, n=n, mode=mode, d=d, exact=exact, config=config_hash)

    def get(self, key: str) -> Optional[Dict[str, Any]]:
        """查询缓存，返回报告字典或 None。"""
        self._load()
        assert self._cache is not None
        entry = self._cache.get(key)
        if entry:
            return entry.get("report")
        return None

    def put(self, key: str, report: Dict[str, Any]) -> None:
        self._load()
        assert self._cache is not None
        self._cache[key] = {"report": report, "created_at": time.time()}
        self._save()

    def remove(self, key: str) -> None:
        self._load()
        assert self._cache is not None
        if key in self._cache:
            del self._cache[key]
            self._save()

    def clear(self) -> None:
        self._cache = {}
        self._save()

    def __len__(self) -> int:
        self._load()
        assert self._cache is not None
        return len(self._cache)
