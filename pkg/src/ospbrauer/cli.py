"""
命令行入口 ``ospbrauer``。

子命令: mult / verify-relations / hom-dim / act / commutant / decompose / render。
退出码: 参数错误 2，计算错误（超预算、非等变输入等）1，成功 0。
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from typing import Any, Callable, Dict, List, Optional

from .brauer import check_word, evaluate_word, format_element, parse_word
from .client import SchurWeylClient
from .diagrams import parse_diagram
from .oriented import parse_sequence
from .scalars import to_scalar
from .superalgebra import MODES, Params
from .tensor import format_vector

logger = logging.getLogger("ospbrauer")

EXIT_OK, EXIT_COMPUTE, EXIT_USAGE = 0, 1, 2


class UsageError(ValueError):
    """参数校验失败（退出码 2）。"""


def _add_common(parser: argparse.ArgumentParser, default: Any) -> None:
    parser.add_argument("-v", "--verbose", action="store_true", default=default, help="输出 DEBUG 日志")
    parser.add_argument("--json", action="store_true", default=default, help="以 JSON 输出结果")
    parser.add_argument("--no-cache", action="store_true", default=default, help="不读写报告缓存")


def _add_params(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--m", type=int, required=True)
    parser.add_argument("--n", type=int, required=True)
    parser.add_argument("--mode", choices=MODES, required=True)
    parser.add_argument("--d", type=int, required=True)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ospbrauer", description="Brauer 代数与 osp(V) 的 Schur–Weyl 对偶")
    _add_common(parser, False)
    common = argparse.ArgumentParser(add_help=False)
    _add_common(common, argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mult", parents=[common], help="Brauer 代数中生成元词的乘积展开")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--delta", required=True, help="δ，有理数字面量如 -2 或 7/2")
    p.add_argument("word", help='生成元词，如 "s1 e2 e1"')

    p = sub.add_parser("verify-relations", parents=[common], help="检查 Brauer 代数的全部关系实例")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--delta", required=True)

    p = sub.add_parser("hom-dim", parents=[common], help="定向 Brauer 范畴中 Hom(s, t) 的维数")
    p.add_argument("--s", required=True, help="源定向序列（^ v o）")
    p.add_argument("--t", required=True, help="目标定向序列")

    p = sub.add_parser("act", parents=[common], help="生成元词在 V^⊗d 的向量上的作用")
    _add_params(p)
    p.add_argument("--word", required=True)
    p.add_argument("--vector", required=True, help='JSON {"1,1~": "1/2"} 或 @文件路径')

    p = sub.add_parser("commutant", parents=[common], help="交换子维数与同构验证（输出报告 JSON）")
    _add_params(p)
    p.add_argument("--exact", action="store_true", help="强制有理数精确消元")
    p.add_argument("--seed", type=int, default=None, help="随机素数种子")

    p = sub.add_parser("decompose", parents=[common], help="把等变算子分解到 Brauer 基")
    _add_params(p)
    p.add_argument("--operator", required=True, help="算子 JSON 文件")

    p = sub.add_parser("render", parents=[common], help="输出图的静态 SVG")
    p.add_argument("diagram", help="图字面量，如 (1,2*)(2,1*)")
    p.add_argument("--out", default=None, help="输出 .svg 文件；缺省时写到标准输出")
    p.add_argument("--top", default=None, help="上方定向序列")
    p.add_argument("--bottom", default=None, help="下方定向序列")
    return parser


# ────────────────────────── 参数校验 ──────────────────────────


def _validate(args: argparse.Namespace) -> None:
    """在任何计算之前校验参数，失败抛 UsageError。"""
    try:
        if getattr(args, "d", 0) < 0:
            raise ValueError(f"股数不能为负: {args.d}")
        if hasattr(args, "delta"):
            args.delta = to_scalar(args.delta)
        if args.command == "mult":
            args.word = parse_word(args.word)
            check_word(args.word, args.d)
        if args.command == "hom-dim":
            args.s, args.t = parse_sequence(args.s), parse_sequence(args.t)
        if hasattr(args, "mode"):
            Params(args.m, args.n, args.mode)
        if args.command == "act":
            check_word(parse_word(args.word), args.d)
            args.vector = _load_vector(args.vector)
        if args.command == "render":
            top = parse_sequence(args.top) if args.top is not None else None
            bottom = parse_sequence(args.bottom) if args.bottom is not None else None
            if (top is None) != (bottom is None):
                raise ValueError("--top 与 --bottom 需要同时给出")
            parse_diagram(
                args.diagram,
                len(top) if top is not None else None,
                len(bottom) if bottom is not None else None,
            )
    except (ValueError, FileNotFoundError) as e:
        raise UsageError(str(e)) from e


def _load_vector(text: str) -> Dict[str, Any]:
    if text.startswith("@"):
        path = text[1:]
        if not os.path.exists(path):
            raise FileNotFoundError(f"向量文件不存在: {path}")
        with open(path, "r", encoding="utf-8") as f:
            text = f.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ValueError(f"向量不是合法 JSON: {e}") from e
    if not isinstance(data, dict):
        raise ValueError("向量应为 JSON 对象 {指标: 有理数}")
    return data


# ────────────────────────── 子命令 ──────────────────────────


def _emit(args: argparse.Namespace, text: str, payload: Any) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, ensure_ascii=False))
    else:
        print(text)


def _cmd_mult(client: SchurWeylClient, args: argparse.Namespace) -> int:
    x = evaluate_word(args.word, args.d, args.delta)
    _emit(args, format_element(x), x.to_json())
    return EXIT_OK


def _cmd_verify_relations(client: SchurWeylClient, args: argparse.Namespace) -> int:
    report = client.verify_relations(args.d, args.delta)
    text = f"{report.checked} 条关系，{len(report.failures)} 条不成立"
    if report.failures:
        text += ": " + ", ".join(report.failures)
    _emit(args, text, report.to_dict())
    return EXIT_OK if report.ok else EXIT_COMPUTE


def _cmd_hom_dim(client: SchurWeylClient, args: argparse.Namespace) -> int:
    dim = client.hom_dim(args.s, args.t)
    _emit(args, str(dim), {"s": args.s, "t": args.t, "dim": dim})
    return EXIT_OK


def _cmd_act(client: SchurWeylClient, args: argparse.Namespace) -> int:
    result = format_vector(client.act(args.m, args.n, args.mode, args.d, args.word, args.vector))
    text = "\n".join(f"{v} * [{k}]" for k, v in result.items()) or "0"
    _emit(args, text, result)
    return EXIT_OK


def _cmd_commutant(client: SchurWeylClient, args: argparse.Namespace) -> int:
    report = client.verify(args.m, args.n, args.mode, args.d, exact=args.exact, use_cache=not args.no_cache)
    print(report.to_json())
    return EXIT_OK


def _cmd_decompose(client: SchurWeylClient, args: argparse.Namespace) -> int:
    result = client.decompose(args.m, args.n, args.mode, args.d, args.operator)
    lines = [f"{c} * {diagram}" for diagram, c in result.coefficients] or ["0"]
    lines.append(f"残差非零元: {result.residual_nnz}")
    _emit(args, "\n".join(lines), result.to_dict())
    return EXIT_OK


def _cmd_render(client: SchurWeylClient, args: argparse.Namespace) -> int:
    result = client.render(args.diagram, args.top, args.bottom)
    if args.out:
        result.save(args.out)
        _emit(args, args.out, {"diagram": result.diagram, "out": args.out})
    else:
        print(result.svg_text)
    return EXIT_OK


_COMMANDS: Dict[str, Callable[[SchurWeylClient, argparse.Namespace], int]] = {
    "mult": _cmd_mult,
    "verify-relations": _cmd_verify_relations,
    "hom-dim": _cmd_hom_dim,
    "act": _cmd_act,
    "commutant": _cmd_commutant,
    "decompose": _cmd_decompose,
    "render": _cmd_render,
}


def run(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    try:
        _validate(args)
    except UsageError as e:
        print(f"参数错误: {e}", file=sys.stderr)
        return EXIT_USAGE

    overrides = {}
    if getattr(args, "seed", None) is not None:
        overrides["prime_seed"] = args.seed
    try:
        client = SchurWeylClient(log_level=logging.DEBUG if args.verbose else logging.WARNING, **overrides)
        return _COMMANDS[args.command](client, args)
    except (RuntimeError, ValueError, FileNotFoundError) as e:
        logger.debug("计算失败", exc_info=True)
        print(f"计算错误: {e}", file=sys.stderr)
        return EXIT_COMPUTE


def main() -> None:
    sys.exit(run())
