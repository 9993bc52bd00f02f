"""
测试公共夹具
"""
import os
import sys
from pathlib import Path

import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from monolat.algebra.generators import boolean2, chain, diamond, l3_example_expansion, lukasiewicz
from monolat.syntax.random_formulas import make_rng

DATA_DIR = Path(__file__).resolve().parent.parent / "data"


@pytest.fixture
def l3():
    """Ł₃，元素 0 < ½ < 1 编号为 0, 1, 2"""
    return lukasiewicz(3)


@pytest.fixture
def l3_box():
    """Ł₃ 上 □ 的像为 {0, 1} 的模态扩张"""
    return l3_example_expansion()


@pytest.fixture
def boolean():
    return boolean2()


@pytest.fixture
def c3():
    return chain(3)


@pytest.fixture
def m2():
    return diamond()


@pytest.fixture
def rng():
    return make_rng(20240607)


@pytest.fixture
def data_dir() -> Path:
    return DATA_DIR
