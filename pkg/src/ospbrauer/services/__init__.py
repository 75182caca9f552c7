from .decomposition import DecompositionResult, DecompositionService
from .rendering import RenderResult, RenderService, render_svg
from .verification import VerificationService

__all__ = [
    "DecompositionResult",
    "DecompositionService",
    "RenderResult",
    "RenderService",
    "VerificationService",
    "render_svg",
]
