"""
命令编排 - 把语法、代数与证明模块组合成命令行各子命令

每个命令返回一个 Report：人类可读文本、机器可读数据与退出码。
"""
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from monolat.algebra.amalgam import search_functional_embedding
from monolat.algebra.consequence import (
    equational_consequence, fo_consequence, fo_consequence_via_modal,
)
from monolat.algebra.finite import FiniteAlgebra, check_fle, check_lattice
from monolat.algebra.laws import check_variety
from monolat.algebra.modal import ModalExpansion, box_image, check_m_axioms, enumerate_modal_expansions
from monolat.algebra.semantics import base_of
from monolat.core.exceptions import AlgebraError, InterpolationError, MonolatError
from monolat.proof.bridge import battery_for, soundness_bridge
from monolat.proof.derivation import (
    check_derivation, derivation_from_dict, md, random_derivation, to_dict, to_text,
)
from monolat.proof.interpolation import interpolate, interpolate_all
from monolat.proof.search import prove
from monolat.proof.sequent import Sequent
from monolat.schemas.models import (
    Calculus, ConsequenceStatus, ConsequenceVerdict, EmbeddingStatus, FLeVariant,
    Report, SearchConfig, SearchStatus, TermPolicy,
)
from monolat.syntax.formulas import Equation, Theory, circle, has_modality, in_fm1, render, star
from monolat.syntax.parser import parse_equation, parse_fo, parse_modal, parse_sequent_parts, parse_theory
from monolat.syntax.random_formulas import make_rng, random_fo, random_modal
from monolat.utils.file_utils import (
    load_source, render_tables, resolve_algebras, resolve_bases, resolve_modal_algebras, save_algebra,
)
from monolat.utils.json_utils import load_json_file, write_json_file
from monolat.utils.logger import logger

# 退出码
EXIT_OK = 0
EXIT_REFUTED = 1
EXIT_EXHAUSTED = 2
EXIT_INPUT = 3

CONSEQUENCE_EXIT = {
    ConsequenceStatus.HOLDS: EXIT_OK,
    ConsequenceStatus.FAILS: EXIT_REFUTED,
    ConsequenceStatus.EXHAUSTED: EXIT_EXHAUSTED,
}
SEARCH_EXIT = {
    SearchStatus.DERIVABLE: EXIT_OK,
    SearchStatus.NOT_DERIVABLE: EXIT_REFUTED,
    SearchStatus.BOUND_EXHAUSTED: EXIT_EXHAUSTED,
}
EMBED_EXIT = {
    EmbeddingStatus.FOUND: EXIT_OK,
    EmbeddingStatus.NOT_FOUND: EXIT_REFUTED,
    EmbeddingStatus.BUDGET_EXCEEDED: EXIT_EXHAUSTED,
}


def _banner(title: str) -> None:
    logger.info("=" * 50)
    logger.info(title)
    logger.info("=" * 50)


def error_report(command: str, exc: Exception) -> Report:
    """输入错误的统一报告"""
    return Report(command=command, status="error", exit_code=EXIT_INPUT, text=f"错误: {exc}", data={"error": str(exc)})


def _verdict_text(verdict: ConsequenceVerdict, algebras: Dict[str, object]) -> List[str]:
    lines = [f"结果: {verdict.status.value}（{verdict.message}）", f"已检查: {verdict.checked}"]
    cm = verdict.countermodel
    if cm is None:
        return lines
    algebra = algebras.get(cm.algebra)
    label = base_of(algebra).label if algebra is not None else str
    lines.append(f"反模型代数: {cm.algebra}")
    if cm.assignment is not None:
        values = ", ".join(f"{k} = {label(v)}" for k, v in cm.assignment.items())
        lines.append(f"赋值: {values or '（无变元）'}")
    if cm.interpretation is not None:
        lines.append(f"|S| = {cm.domain_size}，失败的世界: {cm.world}")
        for pred, column in cm.interpretation.items():
            lines.append(f"  {pred}: [{', '.join(label(v) for v in column)}]")
    lines.append(f"左边 = {cm.lhs_label or cm.lhs_value}，右边 = {cm.rhs_label or cm.rhs_value}")
    return lines


class MonolatWorkflow:
    """子命令的实现"""

    def __init__(self, jobs: Optional[int] = None):
        self.jobs = jobs

    # ---------- 语法 ----------

    def translate(self, text: str, to_modal: bool) -> Report:
        _banner("翻译")
        if to_modal:
            source = parse_fo(text)
            target = star(source)
        else:
            source = parse_modal(text)
            target = circle(source)
        return Report(
            command="translate",
            status="ok",
            exit_code=EXIT_OK,
            text=render(target),
            data={"input": render(source, ascii_only=True), "output": render(target, ascii_only=True)},
        )

    # ---------- 证明 ----------

    def prove(self, sequent_text: str, config: SearchConfig, out: Optional[str] = None) -> Report:
        _banner(f"证明搜索（{config.calculus.value}）")
        sequent = Sequent.parse(sequent_text)
        logger.info(f"相继式: {sequent}")
        outcome = prove(sequent, config)
        data = {"sequent": sequent.render(ascii_only=True), "nodes": outcome.nodes}
        lines = [f"结果: {outcome.status.value}（{outcome.message}）"]
        if outcome.derivation is not None:
            data["md"] = md(outcome.derivation)
            data["derivation"] = to_dict(outcome.derivation)
            lines += [f"md = {data['md']}", to_text(outcome.derivation)]
            if out:
                write_json_file(out, data["derivation"])
                lines.append(f"推导已写入 {out}")
        return Report(
            command="prove",
            status=outcome.status.value,
            exit_code=SEARCH_EXIT[outcome.status],
            text="\n".join(lines),
            data=data,
        )

    def interpolate(self, sequent_text: str, gamma: Sequence[int], config: SearchConfig) -> Report:
        _banner("插值式提取")
        sequent = Sequent.parse(sequent_text)
        gamma_indices = gamma_positions(sequent_text, sequent, gamma)
        outcome = prove(sequent, config)
        if outcome.derivation is None:
            return Report(
                command="interpolate",
                status=outcome.status.value,
                exit_code=SEARCH_EXIT[outcome.status],
                text=f"相继式不可推导，无法提取插值式: {outcome.message}",
                data={"sequent": sequent.render(ascii_only=True)},
            )
        result = interpolate(outcome.derivation, gamma_indices, config.calculus, config.policy)
        data = {
            "sequent": sequent.render(ascii_only=True),
            "gamma": [render(phi, ascii_only=True) for phi in result.gamma],
            "pi": [render(phi, ascii_only=True) for phi in result.pi],
            "chi": render(result.chi, ascii_only=True),
            "md": result.md,
            "md1": result.md1,
            "md2": result.md2,
            "d1": to_dict(result.d1),
            "d2": to_dict(result.d2),
        }
        lines = [
            f"χ = {render(result.chi)}",
            f"md(d) = {result.md}, md(d₁) = {result.md1}, md(d₂) = {result.md2}",
            "d₁:", to_text(result.d1),
            "d₂:", to_text(result.d2),
        ]
        return Report(command="interpolate", status="ok", exit_code=EXIT_OK, text="\n".join(lines), data=data)

    def check_proof(self, file_path: str, calculus: Calculus, policy: TermPolicy) -> Report:
        _banner("推导检查")
        derivation = derivation_from_dict(load_json_file(file_path))
        check = check_derivation(derivation, calculus, policy)
        text = "推导正确" if check.ok else f"推导错误: 路径 {check.path}，规则 {check.rule}，{check.reason}"
        return Report(
            command="check-proof",
            status="ok" if check.ok else "invalid",
            exit_code=EXIT_OK if check.ok else EXIT_REFUTED,
            text=text,
            data=check.model_dump(mode="json"),
        )

    # ---------- 代数 ----------

    def check_algebra(
        self,
        file_path: str,
        lattice: bool = False,
        fle: Sequence[FLeVariant] = (),
        m_axioms: bool = False,
        equations: Sequence[str] = (),
        laws: Sequence[str] = (),
        show: bool = False,
    ) -> Report:
        _banner("代数检查")
        algebra = load_source(file_path)
        base = base_of(algebra)
        if not (lattice or fle or m_axioms or equations or laws or show):
            lattice = True
            if base.has_fle_signature:
                fle = [FLeVariant.PLAIN]
            m_axioms = isinstance(algebra, ModalExpansion)

        lines: List[str] = [f"代数: {algebra.name}（{base.size} 个元素）"]
        data: Dict[str, object] = {"algebra": algebra.name}
        passed = True
        if show:
            lines.append(render_tables(algebra))
        if lattice:
            report = check_lattice(base)
            passed &= report.passed
            data["lattice"] = report.model_dump(mode="json")
            lines.append(f"格: {'通过' if report.passed else '失败'}")
            lines += [f"  {f.law} @ {f.witness}" for f in report.failures]
        for variant in fle:
            report = check_fle(base, variant)
            passed &= report.passed
            data[f"fle_{variant.value}"] = report.model_dump(mode="json")
            lines.append(f"FL_e({variant.value}): {'通过' if report.passed else '失败'}")
            lines += [
                f"  {f.law} @ {', '.join(base.label(w) for w in f.witness)}" for f in report.failures
            ]
        if m_axioms:
            if not isinstance(algebra, ModalExpansion):
                raise AlgebraError(f"{algebra.name} 没有 box/diamond 表，无法检查 m-格公理")
            report = check_m_axioms(algebra)
            image = box_image(algebra)
            passed &= report.passed
            data["m_axioms"] = report.model_dump(mode="json")
            data["box_image"] = image.model_dump(mode="json")
            lines.append(f"m-格公理: {'通过' if report.passed else '失败'}")
            for res in report.results:
                mark = "✓" if res.passed else "✗"
                detail = "" if res.passed else f"  见证 {res.witness}"
                lines.append(f"  {mark} {res.name}: {res.equation}{detail}")
            lines.append(f"□A = {{{', '.join(base.label(a) for a in image.elements)}}}")
        equation_results = []
        for text in equations:
            goal = parse_equation(text, "modal")
            verdict = equational_consequence([algebra], (), goal, jobs=1)
            equation_results.append(verdict.model_dump(mode="json"))
            passed &= verdict.status == ConsequenceStatus.HOLDS
            lines.append(f"等式 {goal}:")
            lines += ["  " + line for line in _verdict_text(verdict, {algebra.name: algebra})]
        if equation_results:
            data["equations"] = equation_results
        if laws:
            results = check_variety(algebra, laws)
            passed &= all(r.passed for r in results)
            data["laws"] = [r.model_dump(mode="json") for r in results]
            for r in results:
                lines.append(f"定律 {r.name}: {'成立' if r.passed else '不成立'}  {r.equation}")
        return Report(
            command="check-algebra",
            status="passed" if passed else "failed",
            exit_code=EXIT_OK if passed else EXIT_REFUTED,
            text="\n".join(lines),
            data=data,
        )

    def expansions(self, file_path: str, max_size: int = 12, out_dir: Optional[str] = None) -> Report:
        _banner("模态扩张枚举")
        base = base_of(load_source(file_path))
        found = enumerate_modal_expansions(base, max_size)
        lines = [f"{base.name}: {len(found)} 个模态扩张"]
        items = []
        for k, M in enumerate(found, 1):
            image = sorted(set(int(v) for v in M.box))
            items.append({"box": M.box.tolist(), "diamond": M.diamond.tolist(), "image": image})
            lines.append(
                f"  #{k} □A = {{{', '.join(base.label(a) for a in image)}}}  "
                f"□ = {M.box.tolist()}  ◇ = {M.diamond.tolist()}"
            )
            if out_dir:
                save_algebra(M, str(Path(out_dir) / f"{base.name}_m{k}.json"))
        return Report(
            command="expansions",
            status="ok",
            exit_code=EXIT_OK,
            text="\n".join(lines),
            data={"algebra": base.name, "count": len(found), "expansions": items},
        )

    def consequence(
        self,
        goal_text: str,
        mode: str = "eq",
        paths: Sequence[str] = (),
        gens: Sequence[str] = (),
        theory: Theory = (),
        max_size: int = 2,
        via_modal: bool = False,
        max_assignments: Optional[int] = None,
        max_structures: Optional[int] = None,
        command: str = "consequence",
    ) -> Report:
        _banner(f"语义后承（{mode}）")
        if not paths and not gens:
            raise AlgebraError("需要至少一个代数文件或 --gen 电池")
        if mode == "eq":
            goal = parse_equation(goal_text, "modal")
            modal = any(has_modality(eq.lhs) or has_modality(eq.rhs) for eq in (*theory, goal))
            battery = resolve_modal_algebras(paths, gens) if modal else resolve_algebras(paths, gens)
            verdict = equational_consequence(battery, theory, goal, self.jobs, max_assignments)
        elif mode == "fo":
            goal = parse_equation(goal_text, "fo")
            battery = resolve_bases(paths, gens)
            if via_modal:
                verdict = fo_consequence_via_modal(battery, max_size, theory, goal, max_structures)
            else:
                verdict = fo_consequence(battery, max_size, theory, goal, self.jobs, max_structures)
        else:
            raise MonolatError(f"未知模式: {mode}")
        named = {a.name: a for a in battery}
        lines = [f"目标: {goal}", f"电池: {len(battery)} 个代数"] + _verdict_text(verdict, named)
        return Report(
            command=command,
            status=verdict.status.value,
            exit_code=CONSEQUENCE_EXIT[verdict.status],
            text="\n".join(lines),
            data=verdict.model_dump(mode="json"),
        )

    # ---------- 性质测试 ----------

    def roundtrip_suite(self, count: int, depth: int, seed: Optional[int] = None) -> Report:
        """随机公式上检查 (φ∗)∘ = φ 与 (α∘)∗ = α"""
        _banner("翻译往返测试")
        rng = make_rng(seed)
        failures: List[str] = []
        for _ in range(count):
            phi = random_fo(rng, depth)
            if circle(star(phi)) != phi:
                failures.append(render(phi, ascii_only=True))
            alpha = random_modal(rng, depth)
            if star(circle(alpha)) != alpha:
                failures.append(render(alpha, ascii_only=True))
        logger.info(f"往返测试: {2 * count} 个公式，{len(failures)} 个失败")
        return Report(
            command="suite",
            status="passed" if not failures else "failed",
            exit_code=EXIT_OK if not failures else EXIT_REFUTED,
            text=f"翻译往返: {2 * count} 个公式，失败 {len(failures)} 个",
            data={"checked": 2 * count, "failures": failures},
        )

    def interpolation_suite(
        self,
        calculus: Calculus,
        count: int,
        depth: int,
        seed: Optional[int] = None,
        bridge_size: Optional[int] = None,
    ) -> Report:
        """随机推导语料：对每个可接受划分提取插值式；可选地对 Fm¹ 相继式做可靠性桥接"""
        _banner(f"插值性质测试（{calculus.value}）")
        rng = make_rng(seed)
        bases = battery_for(calculus, 3) if bridge_size else []
        partitions, bridged = 0, 0
        failures: List[Dict[str, str]] = []
        for _ in range(count):
            d = random_derivation(calculus, rng, depth)
            sequent = d.conclusion.render(ascii_only=True)
            try:
                for _, _ in interpolate_all(d, calculus):
                    partitions += 1
            except InterpolationError as exc:
                failures.append({"sequent": sequent, "reason": str(exc)})
            if bridge_size and all(in_fm1(phi) for phi in d.conclusion.formulas):
                report = soundness_bridge(d.conclusion, True, bases, bridge_size)
                bridged += 1
                if not report.consistent:
                    failures.append({"sequent": sequent, "reason": "可推导却在电池上有反模型"})
        lines = [
            f"推导: {count}，划分: {partitions}，桥接检查: {bridged}",
            f"失败: {len(failures)}",
        ] + [f"  {f['sequent']}: {f['reason']}" for f in failures]
        return Report(
            command="suite",
            status="passed" if not failures else "failed",
            exit_code=EXIT_OK if not failures else EXIT_REFUTED,
            text="\n".join(lines),
            data={"derivations": count, "partitions": partitions, "bridged": bridged, "failures": failures},
        )

    def embed(
        self,
        file_path: str,
        paths: Sequence[str] = (),
        gens: Sequence[str] = (),
        max_worlds: int = 2,
        operations: Optional[Sequence[str]] = None,
        node_budget: Optional[int] = None,
    ) -> Report:
        _banner("函数嵌入搜索")
        M = load_source(file_path)
        if not isinstance(M, ModalExpansion):
            raise AlgebraError(f"{M.name} 没有 box/diamond 表")
        bases: List[FiniteAlgebra] = resolve_bases(paths, gens) if (paths or gens) else [M.base]
        result = search_functional_embedding(M, bases, max_worlds, operations, node_budget)
        lines = [f"结果: {result.status.value}（{result.nodes} 个搜索节点）"]
        if result.status == EmbeddingStatus.FOUND:
            lines.append(f"目标: {result.base}^{result.worlds}")
            for a, image in enumerate(result.mapping):
                lines.append(f"  {M.base.label(a)} ↦ {tuple(image)}")
        return Report(
            command="embed",
            status=result.status.value,
            exit_code=EMBED_EXIT[result.status],
            text="\n".join(lines),
            data=result.model_dump(mode="json"),
        )


def gamma_positions(sequent_text: str, sequent: Sequent, gamma: Sequence[int]) -> Tuple[int, ...]:
    """输入顺序下的前件下标 0..k-1 对应到规范化前件中的位置"""
    written, _ = parse_sequent_parts(sequent_text)
    if len(set(gamma)) != len(gamma) or any(not 0 <= i < len(written) for i in gamma):
        raise MonolatError(f"--gamma 下标必须互不相同且在 0..{len(written) - 1} 内: {list(gamma)}")
    taken: List[int] = []
    for i in gamma:
        slots = [j for j, psi in enumerate(sequent.antecedent) if psi == written[i] and j not in taken]
        taken.append(slots[0])
    return tuple(sorted(taken))


def load_theory(file_path: Optional[str], premises: Sequence[str], syntax: str) -> Theory:
    """理论来自文件（每行一条）与命令行 --premise"""
    equations: List[Equation] = []
    if file_path:
        path = Path(file_path)
        if not path.is_file():
            raise MonolatError(f"理论文件不存在: {file_path}")
        equations.extend(parse_theory(path.read_text(encoding="utf-8"), syntax))
    equations.extend(parse_equation(text, syntax) for text in premises)
    return tuple(equations)
