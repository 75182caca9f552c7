"""
工具函数：有理数格式化、双阶乘、参数哈希、耗时格式化等。
"""

from __future__ import annotations

import hashlib
import json
from typing import Any, Optional


def format_rational(value: Any) -> str:
    """有理数格式化为 "p/q"（整数时只输出 "p"）。"""
    num, den = int(value.numerator), int(value.denominator)
    if den == 1:
        return str(num)
    return f"{num}/{den}"


def double_factorial(n: int) -> int:
    """n!! = n·(n−2)·…，约定 (−1)!! = 0!! = 1。"""
    result = 1
    while n > 1:
        result *= n
        n -= 2
    return result


def brauer_dimension(d: int) -> int:
    """Brauer 图的个数 (2d−1)!!。"""
    return double_factorial(2 * d - 1)


def params_hash(**params: Any) -> str:
    """对一组参数（键排序后）计算 MD5，用作缓存 key。"""
    payload = json.dumps(params, sort_keys=True, default=str)
    return hashlib.md5(payload.encode("utf-8")).hexdigest()


def format_duration(seconds: Optional[float]) -> str:
    """格式化耗时（秒 -> 分:秒.毫秒）。"""
    if seconds is None:
        return "未知"
    minutes = int(seconds // 60)
    secs = seconds - minutes * 60
    return f"{minutes}:{secs:06.3f}"

