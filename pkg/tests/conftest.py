import json  # 写临时实例文件
import os  # 选择 hypothesis 配置
from pathlib import Path  # 路径工具
from typing import Any, Callable, Dict  # 类型标注

import pytest  # 测试框架
from hypothesis import HealthCheck, settings  # 性质测试配置

# 三档配置，由 HYPOTHESIS_PROFILE 选择
settings.register_profile("default", max_examples=100, deadline=None)
settings.register_profile("fast", max_examples=10, deadline=None)
settings.register_profile(
    "thorough", max_examples=2000, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

ROOT = Path(__file__).resolve().parent.parent


@pytest.fixture
def example_instance_path() -> Path:
    """(z + 2)/(z − 2)，根形式"""
    return ROOT / "example_instance.json"


@pytest.fixture
def write_instance(tmp_path: Path) -> Callable[[Dict[str, Any], str], Path]:
    """把实例文档写到临时目录，返回路径"""

    def _write(document: Dict[str, Any], name: str = "instance.json") -> Path:
        path = tmp_path / name
        path.write_text(json.dumps(document), encoding="utf-8")
        return path

    return _write
