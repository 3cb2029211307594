import json  # 处理 JSON 文件
import yaml  # 处理 YAML 文件
from pathlib import Path  # 文件路径工具
from typing import Any, Callable, Dict, IO  # 类型标注


def _write_json(data: Any, f: IO[str]) -> None:
    json.dump(data, f, ensure_ascii=False, indent=2, sort_keys=True)
    f.write("\n")


def _write_yaml(data: Any, f: IO[str]) -> None:
    yaml.safe_dump(data, f, sort_keys=True, allow_unicode=True)


# 后缀 → 读 / 写函数
_READERS: Dict[str, Callable[[IO[str]], Any]] = {
    ".yaml": yaml.safe_load,
    ".yml": yaml.safe_load,
    ".json": json.load,
}
_WRITERS: Dict[str, Callable[[Any, IO[str]], None]] = {
    ".yaml": _write_yaml,
    ".yml": _write_yaml,
    ".json": _write_json,
}


def load_config(config_path: str) -> Any:
    """按后缀读取 YAML / JSON 文件（配置或实例），空文件返回空字典"""
    path = Path(config_path)
    if not path.exists():
        raise FileNotFoundError(f"File not found: {config_path}")
    reader = _READERS.get(path.suffix.lower())
    if reader is None:
        raise ValueError(f"Unsupported file format: {path.suffix}")

    with open(path, "r", encoding="utf-8") as f:
        data = reader(f)
    return {} if data is None else data


def load_instance(instance_path: str):
    """读取实例文件（JSON / YAML）并解析为 Instance"""
    # 延迟导入，避免 config 与 algebra 之间的循环依赖
    from algebra.instance import Instance

    return Instance.from_document(load_config(instance_path))


def save_config(data: Dict[str, Any], config_path: str) -> None:
    """按后缀写出 YAML / JSON；浮点按 repr 写出，读回后逐位相同"""
    path = Path(config_path)
    writer = _WRITERS.get(path.suffix.lower())
    if writer is None:
        raise ValueError(f"Unsupported file format: {path.suffix}")
    with open(path, "w", encoding="utf-8") as f:
        writer(data, f)
