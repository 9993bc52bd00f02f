"""
文件处理工具：代数文件读写、目录扫描、电池解析与运算表渲染
"""
import os
from pathlib import Path
from typing import List, Optional, Sequence, Union

import pandas as pd
from pydantic import ValidationError

from monolat.algebra.finite import FiniteAlgebra
from monolat.algebra.generators import resolve_battery, resolve_modal_battery
from monolat.algebra.modal import ModalExpansion
from monolat.core.exceptions import AlgebraError
from monolat.schemas.models import AlgebraSpec
from monolat.utils.logger import logger

Loaded = Union[FiniteAlgebra, ModalExpansion]

ALGEBRA_EXTENSIONS = (".json",)


def is_algebra_file(file_path: str) -> bool:
    return Path(file_path).suffix.lower() in ALGEBRA_EXTENSIONS


def read_spec(file_path: str) -> AlgebraSpec:
    """读取并校验代数文件"""
    path = Path(file_path)
    if not path.is_file():
        raise AlgebraError(f"代数文件不存在: {file_path}")
    try:
        return AlgebraSpec.model_validate_json(path.read_text(encoding="utf-8"))
    except ValidationError as e:
        raise AlgebraError(f"代数文件格式错误 {file_path}: {e}") from e


def load_algebra(file_path: str) -> Loaded:
    """带 box/diamond 的文件读作模态扩张，否则读作有限代数"""
    spec = read_spec(file_path)
    if spec.name is None:
        spec.name = Path(file_path).stem
    if spec.box is not None or spec.diamond is not None:
        return ModalExpansion.from_spec(spec)
    return FiniteAlgebra.from_spec(spec)


def load_source(source: str) -> Loaded:
    """代数文件路径，或只产出单个代数的内置生成器（如 l3、diamond、l3-example）"""
    if os.path.exists(source):
        return load_algebra(source)
    if source.strip().lower() == "l3-example":
        found: List[Loaded] = list(resolve_modal_battery(source))
    else:
        found = list(resolve_battery(source))
    if len(found) != 1:
        raise AlgebraError(f"{source} 不是单个代数（得到 {len(found)} 个）")
    return found[0]


def save_algebra(algebra: Loaded, file_path: str) -> str:
    """保存代数文件"""
    path = Path(file_path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(algebra.to_spec().model_dump_json(indent=2, exclude_none=True), encoding="utf-8")
    logger.info(f"保存代数文件: {path}")
    return str(path)


def scan_algebra_files(
    directory: str,
    recursive: bool = True,
    limit: Optional[int] = None,
) -> List[str]:
    """
    扫描目录中的代数文件，按路径排序

    Args:
        directory: 需要扫描的目录
        recursive: 是否递归扫描子目录
        limit: 返回的文件数量上限（None表示无限制）
    """
    logger.info(f"扫描代数文件目录: {directory}")
    if not os.path.isdir(directory):
        raise AlgebraError(f"目录不存在: {directory}")

    walker = os.walk(directory) if recursive else [(directory, [], os.listdir(directory))]
    found: List[str] = []
    for root, _, files in walker:
        for file_name in files:
            file_path = os.path.join(root, file_name)
            if os.path.isfile(file_path) and is_algebra_file(file_path):
                found.append(file_path)
    found.sort()
    if limit and len(found) > limit:
        logger.warning("代数文件数量达到限制(%s)，只取前 %s 个", limit, limit)
        found = found[:limit]
    logger.info(f"发现 {len(found)} 个代数文件")
    return found


def _sources(paths: Sequence[str]) -> List[str]:
    files: List[str] = []
    for p in paths:
        files.extend(scan_algebra_files(p) if os.path.isdir(p) else [p])
    return files


def resolve_algebras(paths: Sequence[str] = (), gens: Sequence[str] = ()) -> List[Loaded]:
    """文件/目录与内置生成器合成的电池（顺序：文件在前，生成器在后）"""
    battery: List[Loaded] = [load_algebra(f) for f in _sources(paths)]
    for spec in gens:
        battery.extend(resolve_battery(spec))
    return battery


def resolve_modal_algebras(paths: Sequence[str] = (), gens: Sequence[str] = ()) -> List[Loaded]:
    """模态电池：文件原样读入，生成器展开为全部模态扩张"""
    battery: List[Loaded] = [load_algebra(f) for f in _sources(paths)]
    for spec in gens:
        battery.extend(resolve_modal_battery(spec))
    return battery


def resolve_bases(paths: Sequence[str] = (), gens: Sequence[str] = ()) -> List[FiniteAlgebra]:
    """基代数电池：模态文件只取其基代数"""
    return [a.base if isinstance(a, ModalExpansion) else a for a in resolve_algebras(paths, gens)]


# ---------- 运算表 ----------

def cayley_table(algebra: FiniteAlgebra, op: str) -> pd.DataFrame:
    """二元运算的 Cayley 表，行列以元素标签命名"""
    table = algebra.op(op)
    if table.ndim != 2:
        raise AlgebraError(f"运算 {op} 不是二元的")
    labels = [algebra.label(a) for a in range(algebra.size)]
    return pd.DataFrame(
        [[algebra.label(int(v)) for v in row] for row in table],
        index=pd.Index(labels, name=op),
        columns=labels,
    )


def unary_table(algebra: FiniteAlgebra, rows: dict) -> pd.DataFrame:
    """一元运算表：每列一个运算"""
    labels = [algebra.label(a) for a in range(algebra.size)]
    data = {name: [algebra.label(int(v)) for v in values] for name, values in rows.items()}
    return pd.DataFrame(data, index=pd.Index(labels, name="x"))


def render_tables(algebra: Loaded) -> str:
    """全部运算表的文本渲染"""
    base = algebra.base if isinstance(algebra, ModalExpansion) else algebra
    parts = [f"{base.name}（{base.size} 个元素）"]
    for name, _ in base.signature:
        if name in base.ops and base.ops[name].ndim == 2:
            parts.append(cayley_table(base, name).to_string())
        elif name in base.ops:
            parts.append(f"{name}: {base.ops[name].ndim} 元运算")
    unary = {name: table.tolist() for name, table in base.ops.items() if table.ndim == 1}
    if isinstance(algebra, ModalExpansion):
        unary.update({"□": algebra.box.tolist(), "◇": algebra.diamond.tolist()})
    if unary:
        parts.append(unary_table(base, unary).to_string())
    if base.consts:
        parts.append("  ".join(f"{c} = {base.label(v)}" for c, v in sorted(base.consts.items())))
    return "\n\n".join(parts)
