"""
ospbrauer —— Brauer 代数、定向 Brauer 范畴与 osp(m|n) 的 Schur–Weyl 对偶

用法:
    from ospbrauer import SchurWeylClient

    client = SchurWeylClient()
    report = client.verify(m=1, n=1, mode="even", d=2)
"""

from .centralizer import VerificationReport
from .client import SchurWeylClient
from .config import Settings
from .services.decomposition import DecompositionResult
from .services.rendering import RenderResult

__version__ = "1.0.0"
__all__ = [
    "DecompositionResult",
    "RenderResult",
    "SchurWeylClient",
    "Settings",
    "VerificationReport",
    "__version__",
]
