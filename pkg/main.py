"""
monolat - 单变元格值逻辑工具

公式翻译、代数检查、语义后承、证明搜索与插值式提取的命令行入口
"""
import argparse
import os
import sys
from typing import List, Optional

# 添加项目路径
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from pydantic import ValidationError

from monolat.algebra.laws import LAWS
from monolat.config.settings import settings
from monolat.core.exceptions import MonolatError
from monolat.core.workflow import EXIT_INPUT, MonolatWorkflow, error_report, load_theory
from monolat.schemas.models import Calculus, FLeVariant, Report, SearchConfig, TermPolicy
from monolat.utils.json_utils import dumps
from monolat.utils.logger import LEVELS, logger, set_level


class CliParser(argparse.ArgumentParser):
    """用法错误以退出码 3 结束"""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: 错误: {message}\n")


def _indices(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"下标列表格式错误: {text}（例如 0,2）") from None


def _add_search_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--calc", choices=[c.value for c in Calculus], default=Calculus.FLE.value, help="演算（默认: fle）")
    parser.add_argument("--max-depth", type=int, default=None, help=f"搜索深度上限（默认: {settings.SEARCH_DEPTH_CAP}）")
    parser.add_argument(
        "--contractions", type=int, default=None,
        help=f"FLec 每条分支的 (c) 次数（默认: {settings.CONTRACTION_BUDGET}）",
    )
    parser.add_argument(
        "--policy", choices=[p.value for p in TermPolicy], default=TermPolicy.ANY_OCCURRENCE.value,
        help="(∀⇒)/(⇒∃) 的项条件：any 为自由或约束出现，free 只认自由出现",
    )


def _add_battery_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--algebra", action="append", default=[], help="代数文件或目录（可重复）")
    parser.add_argument(
        "--gen", action="append", default=[],
        help="内置电池，如 chains:4、lattices:4、fle:3、flew:3、flec:3、lukasiewicz:4、l3、boolean、diamond、l3-example",
    )


def _search_config(args) -> SearchConfig:
    fields = {"calculus": Calculus(args.calc), "policy": TermPolicy(args.policy)}
    if args.max_depth is not None:
        fields["depth_cap"] = args.max_depth
    if args.contractions is not None:
        fields["contraction_budget"] = args.contractions
    return SearchConfig(**fields)


def build_parser() -> CliParser:
    """构建命令行解析器"""
    parser = CliParser(
        prog="monolat",
        description="monolat - 单变元格值逻辑：翻译、代数语义、证明搜索与插值",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
示例:
  # 一阶公式翻译为模态公式
  python main.py translate --to-modal "A x P0(x)"

  # FLe 中的证明搜索（不可推导，退出码 1）
  python main.py prove --calc fle "P0(x) |- P0(x) * P0(x)"

  # 检查 Ł₃ 的模态扩张并反驳一条等式
  python main.py check-algebra data/l3_example.json --m-axioms --equation "dia p0 * dia p0 = dia (p0*p0)"

  # 一阶后承的反模型搜索
  python main.py countermodel --mode fo --gen boolean "A x P0(x) = P0(x)"

退出码: 0 成立/成功，1 被反驳，2 预算耗尽，3 输入错误
        """,
    )
    parser.add_argument("--json", action="store_true", help="输出 JSON 而不是文本")
    parser.add_argument("--seed", type=int, default=None, help=f"随机种子（默认: {settings.RANDOM_SEED}）")
    parser.add_argument("--jobs", type=int, default=None, help="电池并行评估的工作线程数")
    parser.add_argument("--log-level", choices=LEVELS, default=None, help=f"日志级别（默认: {settings.LOG_LEVEL}）")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=CliParser)

    p = sub.add_parser("translate", help="∗ / ∘ 翻译")
    direction = p.add_mutually_exclusive_group(required=True)
    direction.add_argument("--to-modal", action="store_true", help="一阶 → 模态（∗）")
    direction.add_argument("--to-fo", action="store_true", help="模态 → 一阶（∘）")
    p.add_argument("formula")

    p = sub.add_parser("prove", help="相继式证明搜索")
    p.add_argument("sequent", help='例如 "P0(x), P1(x) |- P0(x) * P1(x)"')
    _add_search_options(p)
    p.add_argument("--out", default=None, help="把推导写入 JSON 文件")

    p = sub.add_parser("interpolate", help="证明并提取插值式")
    p.add_argument("sequent")
    p.add_argument("--gamma", type=_indices, default=[], help="划到 Γ 侧的前件下标（输入顺序，例如 0,2）")
    _add_search_options(p)

    p = sub.add_parser("check-proof", help="检查 JSON 推导")
    p.add_argument("file")
    p.add_argument("--calc", choices=[c.value for c in Calculus], default=Calculus.FLE.value)
    p.add_argument("--policy", choices=[t.value for t in TermPolicy], default=TermPolicy.ANY_OCCURRENCE.value)

    p = sub.add_parser("check-algebra", help="格、FL_e 与 m-格公理检查")
    p.add_argument("file", help="代数文件或单个内置代数（l3、diamond、l3-example 等）")
    p.add_argument("--lattice", action="store_true", help="检查格公理")
    p.add_argument("--fle", action="append", choices=[v.value for v in FLeVariant], default=[], help="检查 FL_e（可重复）")
    p.add_argument("--m-axioms", action="store_true", help="检查 m-格公理与 □A")
    p.add_argument("--equation", action="append", default=[], help="检查一条模态等式（可重复）")
    p.add_argument("--law", action="append", choices=list(LAWS), default=[], help="检查命名定律（可重复）")
    p.add_argument("--show", action="store_true", help="打印运算表")

    p = sub.add_parser("expansions", help="枚举格上的全部模态扩张")
    p.add_argument("file")
    p.add_argument("--out-dir", default=None, help="把每个扩张写成代数文件")

    for name, help_text in (("consequence", "语义后承判定"), ("countermodel", "有效性的反模型搜索")):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("goal", help="目标等式 φ = ψ 或不等式 φ <= ψ")
        _add_battery_options(p)
        p.add_argument("--mode", choices=["eq", "fo"], default="eq", help="eq: 模态等式，fo: 一阶等式")
        if name == "consequence":
            p.add_argument("--theory", default=None, help="理论文件（每行一条等式）")
            p.add_argument("--premise", action="append", default=[], help="前提等式（可重复）")
        p.add_argument("--max-size", type=int, default=2, help="一阶模式下 |S| 的上界（默认: 2）")
        p.add_argument("--via-modal", action="store_true", help="一阶模式经全函数代数判定")
        p.add_argument("--max-assignments", type=int, default=None)
        p.add_argument("--max-structures", type=int, default=None)

    p = sub.add_parser("embed", help="在全函数代数中搜索嵌入")
    p.add_argument("file")
    p.add_argument("--base", action="append", default=[], help="基代数文件或目录（可重复）")
    p.add_argument("--gen", action="append", default=[], help="基代数内置电池")
    p.add_argument("--max-worlds", type=int, default=2, help="|W| 的上界（默认: 2）")
    p.add_argument("--ops", default=None, help="须保持的运算，逗号分隔（默认: 整个签名）")
    p.add_argument("--node-budget", type=int, default=None)

    p = sub.add_parser("suite", help="随机性质测试")
    p.add_argument("kind", choices=["roundtrip", "interpolation"])
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--depth", type=int, default=4)
    p.add_argument("--calc", choices=[c.value for c in Calculus], default=Calculus.FLE.value)
    p.add_argument("--bridge-size", type=int, default=None, help="对 Fm¹ 相继式做可靠性桥接，|S| 的上界")
    return parser


def dispatch(args, workflow: MonolatWorkflow) -> Report:
    """按子命令调用工作流"""
    if args.command == "translate":
        return workflow.translate(args.formula, to_modal=args.to_modal)
    if args.command == "prove":
        return workflow.prove(args.sequent, _search_config(args), args.out)
    if args.command == "interpolate":
        return workflow.interpolate(args.sequent, args.gamma, _search_config(args))
    if args.command == "check-proof":
        return workflow.check_proof(args.file, Calculus(args.calc), TermPolicy(args.policy))
    if args.command == "check-algebra":
        return workflow.check_algebra(
            args.file,
            lattice=args.lattice,
            fle=[FLeVariant(v) for v in args.fle],
            m_axioms=args.m_axioms,
            equations=args.equation,
            laws=args.law,
            show=args.show,
        )
    if args.command == "expansions":
        return workflow.expansions(args.file, out_dir=args.out_dir)
    if args.command in ("consequence", "countermodel"):
        syntax = "modal" if args.mode == "eq" else "fo"
        theory = load_theory(getattr(args, "theory", None), getattr(args, "premise", []), syntax)
        return workflow.consequence(
            args.goal,
            mode=args.mode,
            paths=args.algebra,
            gens=args.gen,
            theory=theory,
            max_size=args.max_size,
            via_modal=args.via_modal,
            max_assignments=args.max_assignments,
            max_structures=args.max_structures,
            command=args.command,
        )
    if args.command == "embed":
        operations = [op.strip() for op in args.ops.split(",") if op.strip()] if args.ops else None
        return workflow.embed(args.file, args.base, args.gen, args.max_worlds, operations, args.node_budget)
    if args.command == "suite":
        if args.kind == "roundtrip":
            return workflow.roundtrip_suite(args.count, args.depth, args.seed)
        return workflow.interpolation_suite(Calculus(args.calc), args.count, args.depth, args.seed, args.bridge_size)
    raise MonolatError(f"未知命令: {args.command}")


def emit(report: Report, as_json: bool) -> None:
    if as_json:
        print(dumps(report))
        return
    print("=" * 60)
    print(f"monolat {report.command}: {report.status}")
    print("=" * 60)
    print(report.text)


def main(argv: Optional[List[str]] = None) -> int:
    """主函数，返回退出码"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT

    if args.log_level:
        set_level(args.log_level)
    if args.seed is not None:
        settings.RANDOM_SEED = args.seed
    workflow = MonolatWorkflow(jobs=args.jobs)
    try:
        report = dispatch(args, workflow)
    except (MonolatError, ValidationError) as exc:
        logger.error(f"{args.command} 失败: {exc}")
        report = error_report(args.command, exc)
    emit(report, args.json)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
