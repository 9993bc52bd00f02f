"""
JSON 工具测试
"""
import numpy as np
import pytest

from monolat.core.exceptions import MonolatError
from monolat.utils.json_utils import load_json_file, to_jsonable, write_json_file


class TestJsonFiles:
    def test_write_then_load(self, tmp_path):
        path = write_json_file(str(tmp_path / "sub" / "alg.json"), {"size": 2, "box": (0, 1)})
        assert load_json_file(path) == {"size": 2, "box": [0, 1]}

    def test_fenced_file_rejected(self, tmp_path):
        """带 Markdown 代码围栏的文件不是合法 JSON"""
        path = tmp_path / "fenced.json"
        path.write_text('```json\n{"size": 2}\n```\n', encoding="utf-8")
        with pytest.raises(MonolatError):
            load_json_file(str(path))

    def test_missing_file(self, tmp_path):
        with pytest.raises(MonolatError):
            load_json_file(str(tmp_path / "missing.json"))


def test_numpy_values_become_plain():
    assert to_jsonable({1: np.array([[0, 1]]), "k": np.int64(3)}) == {"1": [[0, 1]], "k": 3}
