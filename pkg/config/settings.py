import logging  # 标准日志
import os  # 环境变量覆盖
from typing import Any, Dict, Optional  # 类型标注

from pydantic import BaseModel, ConfigDict, Field  # 配置模型与校验

from config.loader import load_config  # YAML / JSON 通用加载器

# 工具版本号，写入报告信封
TOOL_VERSION = "0.1.0"

SEED_ENV = "RATGROW_SEED"
LOG_LEVEL_ENV = "RATGROW_LOG_LEVEL"
LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


class Settings(BaseModel):
    """全局可调常量；默认值即数值容差策略"""

    model_config = ConfigDict(frozen=True, extra="forbid")

    # 逐点不等式的判定容差：相对 + 绝对
    rel_tol: float = Field(default=1e-9, ge=0.0)
    abs_tol: float = Field(default=1e-12, ge=0.0)
    # |r(e^{iθ})| 低于 vacuous_rel·scale 的点视为空洞点
    vacuous_rel: float = Field(default=1e-13, ge=0.0)
    pole_hit_tol: float = Field(default=1e-14, ge=0.0)
    degeneracy_tol: float = Field(default=1e-12, ge=0.0)
    pole_margin: float = Field(default=0.05, gt=0.0)
    zero_tol: float = Field(default=1e-12, ge=0.0)
    step_tol: float = Field(default=1e-12, ge=0.0)
    strict_margin: float = Field(default=1e-12, ge=0.0)
    grid_points: int = Field(default=4096, ge=16)
    refine_iters: int = Field(default=60, ge=0)
    log_space_threshold: int = Field(default=32, ge=1)
    workers: int = Field(default=4, ge=1)
    log_level: str = "WARNING"

    @classmethod
    def load(cls, config_path: Optional[str] = None) -> "Settings":
        """读取可选的配置文件并叠加环境变量"""
        data: Dict[str, Any] = {}
        if config_path:
            loaded = load_config(config_path)
            if not isinstance(loaded, dict):
                raise ValueError(f"Settings file must hold a mapping: {config_path}")
            data.update(loaded)
        # 环境变量优先级最高
        if os.environ.get(LOG_LEVEL_ENV):
            data["log_level"] = os.environ[LOG_LEVEL_ENV]
        return cls(**data)


DEFAULT_SETTINGS = Settings()


def env_seed() -> Optional[int]:
    """RATGROW_SEED 仅在未显式给出 --seed 时生效"""
    raw = os.environ.get(SEED_ENV)
    if raw is None or raw.strip() == "":
        return None
    return int(raw)


def configure_logging(level: str = "WARNING") -> None:
    """只在入口处调用一次；库代码只取 logger，不装 handler"""
    root = logging.getLogger()
    for handler in list(root.handlers):
        root.removeHandler(handler)
    handler = logging.StreamHandler()
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    root.addHandler(handler)
    root.setLevel(getattr(logging, str(level).upper(), logging.WARNING))
