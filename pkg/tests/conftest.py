from __future__ import annotations

import pytest

from ospbrauer import config
from ospbrauer.config import Settings
from ospbrauer.superalgebra import Params

_ENV_VARS = (
    "OSPBRAUER_MAX_STRANDS",
    "OSPBRAUER_MAX_TENSOR_DIM",
    "OSPBRAUER_MODULAR_THRESHOLD",
    "OSPBRAUER_PRIME_SEED",
    "OSPBRAUER_CACHE_DIR",
)


@pytest.fixture(autouse=True)
def isolated_config(tmp_path, monkeypatch):
    """不读取用户目录下的配置文件与环境变量。"""
    for name in _ENV_VARS:
        monkeypatch.delenv(name, raising=False)
    monkeypatch.setattr(config, "_DEFAULT_CONFIG_FILE", str(tmp_path / "no-config.json"))


@pytest.fixture
def settings(tmp_path) -> Settings:
    return Settings(cache_dir=str(tmp_path / "cache"))


# (m, n) ∈ {0,1,2}² \ {(0,0)}，两种模式
ALL_PARAMS = [
    Params(m, n, mode)
    for m in range(3)
    for n in range(3)
    if (m, n) != (0, 0)
    for mode in ("even", "odd")
]


def delta_of(p: Params) -> int:
    return p.supertrace
