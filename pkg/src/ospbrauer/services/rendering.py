"""
图的静态 SVG 渲染：规范平面实现（边界顺序 1*,…,B*,T,…,1），
上顶点在 y=0，下顶点在底边，块画成三次 Bézier 曲线，单点画成空心圆。
"""

from __future__ import annotations

import logging
import math
import os
from dataclasses import dataclass
from typing import List, Optional, Tuple

import svg

from ..diagrams import GeneralizedDiagram, format_diagram
from ..oriented import CIRCLE, DOWN, check_sequence, validate

logger = logging.getLogger("ospbrauer")

MARGIN = 12
SPACING = 24
HEIGHT = 60
RISE = 30
LABEL_OFFSET = 10

_MARKERS = {"^": "∧", "v": "∨", "o": "∘"}


@dataclass
class RenderResult:
    """渲染结果。"""

    svg_text: str
    diagram: str

    def save(self, path: str) -> str:
        """写入 SVG 文件。"""
        os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
        with open(path, "w", encoding="utf-8") as f:
            f.write(self.svg_text)
        logger.info("SVG 已保存到 %s", path)
        return path


def _layout(b: GeneralizedDiagram) -> Tuple[float, float]:
    width = 2 * MARGIN + (max(b.top_count, b.bottom_count, 1) - 1) * SPACING
    return width, HEIGHT + 2 * LABEL_OFFSET


def render_svg(
    b: GeneralizedDiagram,
    top: Optional[str] = None,
    bottom: Optional[str] = None,
) -> str:
    """
    画出 b；给出 top/bottom 定向序列时在顶点旁标注 ∧ / ∨ / ∘。

    Raises:
        ValueError: 序列长度不符或不是 b 的合法定向
    """
    if (top is None) != (bottom is None):
        raise ValueError("top 与 bottom 定向序列需要同时给出")
    if top is not None and bottom is not None:
        check_sequence(top)
        check_sequence(bottom)
        if not validate(top, b, bottom):
            raise ValueError(f"{top} | {format_diagram(b)} | {bottom} 不是合法的定向图")

    width, height = _layout(b)
    y_top, y_bottom = LABEL_OFFSET, LABEL_OFFSET + HEIGHT

    def pos(v: int) -> Tuple[float, float]:
        vertex = b.vertex(v)
        count = b.bottom_count if vertex.bottom else b.top_count
        x = width / 2 + (vertex.position - 1 - (count - 1) / 2) * SPACING
        return x, (y_bottom if vertex.bottom else y_top)

    path: List[svg.PathData] = []
    elements: List[svg.Element] = []
    for blk in b.block_indices():
        if len(blk) == 1:
            x, y = pos(blk[0])
            elements.append(svg.Circle(cx=x, cy=y, r=3, stroke="black", stroke_width=1, fill="white"))
            continue
        v, w = blk
        sx, sy = pos(v)
        tx, ty = pos(w)
        if (v < b.top_count) == (w < b.top_count):
            # 同侧弧：控制点高度随跨度平滑增长
            dist = 1 / (1 + math.exp(-abs(b.vertex(v).position - b.vertex(w).position) / 4))
            dy = (RISE if v < b.top_count else -RISE) * dist
            path += [svg.M(sx, sy), svg.C(sx, sy + dy, tx, ty + dy, tx, ty)]
        else:
            dy = RISE if sy < ty else -RISE
            path += [svg.M(sx, sy), svg.C(sx, sy + dy, tx, ty - dy, tx, ty)]

    if top is not None and bottom is not None:
        for v, sym in enumerate(top + bottom):
            x, y = pos(v)
            offset = -LABEL_OFFSET / 2 if v < b.top_count else LABEL_OFFSET
            color = "gray" if sym == CIRCLE else ("blue" if sym == DOWN else "red")
            elements.append(
                svg.Text(x=x + 4, y=y + offset, text=_MARKERS[sym], font_size=9, fill=color)
            )

    return svg.SVG(
        width=width,
        height=height,
        elements=[svg.Path(d=path, stroke="black", stroke_width=1, fill="none"), *elements],
    ).as_str()


class RenderService:
    def render(
        self,
        b: GeneralizedDiagram,
        top: Optional[str] = None,
        bottom: Optional[str] = None,
    ) -> RenderResult:
        text = render_svg(b, top, bottom)
        logger.debug("渲染 %s: %d 字节", format_diagram(b), len(text))
        return RenderResult(svg_text=text, diagram=format_diagram(b))
