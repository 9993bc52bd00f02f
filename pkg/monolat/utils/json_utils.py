"""
JSON 处理工具
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import numpy as np
from pydantic import BaseModel

from monolat.core.exceptions import MonolatError
from monolat.utils.logger import logger


def to_jsonable(obj: Any) -> Any:
    """pydantic 模型、numpy 数组与标量、元组转为 JSON 可序列化对象"""
    if isinstance(obj, BaseModel):
        return obj.model_dump(mode="json")
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    return obj


def dumps(obj: Any, indent: int = 2) -> str:
    return json.dumps(to_jsonable(obj), ensure_ascii=False, indent=indent)


def load_json_file(file_path: str) -> Any:
    """读取 JSON 文件，格式错误时抛出 MonolatError"""
    path = Path(file_path)
    if not path.is_file():
        raise MonolatError(f"文件不存在: {file_path}")
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        logger.error("解析JSON失败: %s | 文件: %s", exc, file_path)
        raise MonolatError(f"JSON 格式错误 {file_path}: {exc}") from exc


def write_json_file(file_path: str, obj: Any) -> str:
    path = Path(file_path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(obj), encoding="utf-8")
    logger.info(f"写入 JSON 文件: {path}")
    return str(path)
