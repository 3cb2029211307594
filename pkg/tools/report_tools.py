import csv  # CSV 输出
import io  # 内存缓冲
import json  # 字符串转义
import math  # 非有限值判断
from datetime import datetime, timezone  # 报告时间戳
from enum import Enum  # 枚举值展开
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple  # 类型标注

import numpy as np  # numpy 标量展开
from pydantic import BaseModel, ConfigDict  # 报告信封

from config.settings import TOOL_VERSION  # 工具版本

# 子命令 → 载荷类型
PAYLOAD_TYPES = {
    "verify": "verification",
    "fuzz": "campaign",
    "compare": "comparison",
    "sharpness": "sharpness",
    "limit": "limit",
    "lemmas": "lemmas",
}


class ReportEnvelope(BaseModel):
    """报告信封：版本、时间戳、配置回显、载荷"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    tool_version: str = TOOL_VERSION
    # --no-timestamp 时为空
    timestamp: Optional[str] = None
    config: Dict[str, Any] = {}
    payload_type: str
    payload: Any


def make_envelope(
    subcommand: str, payload: Any, config: Dict[str, Any], timestamp: bool = True
) -> ReportEnvelope:
    stamp = datetime.now(timezone.utc).isoformat(timespec="seconds") if timestamp else None
    return ReportEnvelope(
        timestamp=stamp,
        config=config,
        payload_type=PAYLOAD_TYPES[subcommand],
        payload=payload,
    )


def to_plain(value: Any) -> Any:
    """把模型 / 复数 / 枚举 / numpy 值展开成纯 JSON 结构"""
    if isinstance(value, BaseModel):
        return to_plain(value.model_dump(by_alias=True))
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, (complex, np.complexfloating)):
        return [float(value.real), float(value.imag)]
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(value)
    if isinstance(value, int):
        return value
    if isinstance(value, dict):
        return {str(k): to_plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset, np.ndarray)):
        items = sorted(value, key=str) if isinstance(value, (set, frozenset)) else list(value)
        return [to_plain(v) for v in items]
    return str(value)


def format_number(value: float) -> Optional[str]:
    """17 位有效数字；非有限值返回 None"""
    if not math.isfinite(value):
        return None
    return format(value, ".17g")


def _scalar(value: Any) -> str:
    """CSV / 文本单元格"""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        text = format_number(value)
        return "" if text is None else text
    if isinstance(value, (list, dict)):
        return _dump_json(value, None, 0)
    return str(value)


def _dump_json(value: Any, indent: Optional[int], level: int) -> str:
    """键按字母序、浮点按 17 位有效数字的 JSON 输出"""
    pad = "" if indent is None else "\n" + " " * (indent * (level + 1))
    end = "" if indent is None else "\n" + " " * (indent * level)
    colon = ":" if indent is None else ": "

    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        text = format_number(value)
        return "null" if text is None else text
    if isinstance(value, str):
        return json.dumps(value, ensure_ascii=False)
    if isinstance(value, dict):
        if not value:
            return "{}"
        parts = [
            pad + json.dumps(k, ensure_ascii=False) + colon + _dump_json(value[k], indent, level + 1)
            for k in sorted(value)
        ]
        return "{" + ",".join(parts) + end + "}"
    if isinstance(value, list):
        if not value:
            return "[]"
        parts = [pad + _dump_json(v, indent, level + 1) for v in value]
        return "[" + ",".join(parts) + end + "]"
    return json.dumps(str(value), ensure_ascii=False)


def envelope_document(env: ReportEnvelope) -> Dict[str, Any]:
    return to_plain(
        {
            "tool_version": env.tool_version,
            "timestamp": env.timestamp,
            "config": env.config,
            "payload_type": env.payload_type,
            "payload": env.payload,
        }
    )


def _flatten(value: Any, prefix: str = "") -> List[Tuple[str, Any]]:
    """嵌套结构展开为 (点分路径, 标量)"""
    if isinstance(value, dict):
        items: List[Tuple[str, Any]] = []
        for key in sorted(value):
            items.extend(_flatten(value[key], f"{prefix}.{key}" if prefix else key))
        return items
    if isinstance(value, list) and value and any(isinstance(v, (dict, list)) for v in value):
        items = []
        for i, item in enumerate(value):
            items.extend(_flatten(item, f"{prefix}[{i}]"))
        return items
    return [(prefix, value)]


def _table(payload_type: str, payload: Dict[str, Any]) -> Tuple[List[str], List[List[Any]]]:
    """各载荷的表格视图：比较表按 (η, 定理) 一行，其余按各自的自然行"""
    if payload_type == "comparison":
        header = ["eta", "theorem", "value", "correction_term", "base_factor", "pole_product"]
        return header, [[row[h] for h in header] for row in payload["rows"]]
    if payload_type == "limit":
        header = ["beta_modulus", "difference"]
        return header, [list(pair) for pair in zip(payload["beta_moduli"], payload["differences"])]
    if payload_type == "campaign":
        header = ["eta", "passed", "failed", "vacuous", "errors", "min_slack"]
        return header, [[row[h] for h in header] for row in payload["per_eta"]]
    if payload_type == "lemmas":
        header = ["name", "samples", "violations", "worst_margin", "equality_residual", "equality_samples", "degenerate"]
        return header, [[row[h] for h in header] for row in payload["sweeps"]]
    return ["field", "value"], [[k, v] for k, v in _flatten(payload)]


def to_json(env: ReportEnvelope) -> str:
    return _dump_json(envelope_document(env), 2, 0) + "\n"


def to_csv(env: ReportEnvelope) -> str:
    header, rows = _table(env.payload_type, to_plain(env.payload))
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_scalar(v) for v in row])
    return buffer.getvalue()


def _aligned(header: Sequence[str], rows: Sequence[Sequence[str]]) -> List[str]:
    widths = [max(len(str(cell)) for cell in column) for column in zip(header, *rows)]
    lines = ["  ".join(str(cell).ljust(w) for cell, w in zip(header, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    for row in rows:
        lines.append("  ".join(str(cell).ljust(w) for cell, w in zip(row, widths)).rstrip())
    return lines


def to_text(env: ReportEnvelope) -> str:
    payload = to_plain(env.payload)
    lines = [
        f"ratgrow {env.tool_version}  {env.payload_type}",
    ]
    if env.timestamp is not None:
        lines.append(f"timestamp: {env.timestamp}")
    lines.append("")

    header, rows = _table(env.payload_type, payload)
    lines.extend(_aligned(header, [[_scalar(v) for v in row] for row in rows]))

    # 表格视图之外的汇总字段
    if env.payload_type != "verification" and env.payload_type != "sharpness":
        summary = [(k, v) for k, v in sorted(payload.items()) if not isinstance(v, (dict, list))]
        if summary:
            lines.append("")
            width = max(len(k) for k, _ in summary)
            lines.extend(f"{k.ljust(width)}  {_scalar(v)}" for k, v in summary)
    return "\n".join(lines) + "\n"


# 输出格式注册表：格式名 → 渲染函数
FORMATTERS: Dict[str, Callable[[ReportEnvelope], str]] = {
    "json": to_json,
    "csv": to_csv,
    "text": to_text,
}


def serialize_report(env: ReportEnvelope, fmt: str = "json") -> bytes:
    """按格式渲染；同一载荷与格式总是得到同样的字节（时间戳除外）"""
    formatter = FORMATTERS.get(fmt)
    if formatter is None:
        raise ValueError(f"Unknown report format: {fmt}")
    return formatter(env).encode("utf-8")
