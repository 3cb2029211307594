import cmath  # 极坐标构造
import math  # 圆周常量
from typing import Optional, Tuple  # 类型标注

import numpy as np  # 带种子的随机数
from pydantic import BaseModel, ConfigDict, Field, model_validator  # 配置模型

from algebra.instance import Instance  # 实例
from algebra.polynomial import RootForm  # 根形式
from algebra.rational import PoleSet  # 极点集合
from config.settings import DEFAULT_SETTINGS  # 默认极点边距


class GeneratorConfig(BaseModel):
    """随机实例生成配置；同一 (seed, draw) 总是得到同一个实例"""

    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=1)
    # 给出时每次抽样的 n 在 [n, n_max] 中均匀选取
    n_max: Optional[int] = Field(default=None, ge=1)
    k: float = Field(default=1.0, ge=1.0)
    root_modulus_max: float = 5.0
    pole_margin: float = Field(default=DEFAULT_SETTINGS.pole_margin, gt=0.0)
    pole_modulus_max: float = 10.0
    seed: int = Field(default=0, ge=0)

    @model_validator(mode="after")
    def _check_ranges(self) -> "GeneratorConfig":
        if self.n_max is not None and self.n_max < self.n:
            raise ValueError(f"n_max={self.n_max} < n={self.n}")
        if self.root_modulus_max < self.k:
            raise ValueError(f"root_modulus_max={self.root_modulus_max} < k={self.k}")
        if self.pole_modulus_max < 1.0 + self.pole_margin:
            raise ValueError("pole_modulus_max must be at least 1 + pole_margin")
        return self


def generate_instance(cfg: GeneratorConfig, draw: int = 0) -> Tuple[RootForm, PoleSet]:
    """按配置抽取 (RootForm, PoleSet)。

    每次抽样使用独立子流 SeedSequence([seed, draw])，结果与执行顺序无关。
    """
    rng = np.random.default_rng([cfg.seed, draw])
    n = cfg.n if cfg.n_max is None else int(rng.integers(cfg.n, cfg.n_max + 1))

    # 首项系数在单位圆上
    leading = cmath.rect(1.0, float(rng.uniform(0.0, 2.0 * math.pi)))
    root_moduli = rng.uniform(cfg.k, cfg.root_modulus_max, size=n)
    root_angles = rng.uniform(0.0, 2.0 * math.pi, size=n)
    pole_moduli = rng.uniform(1.0 + cfg.pole_margin, cfg.pole_modulus_max, size=n)
    pole_angles = rng.uniform(0.0, 2.0 * math.pi, size=n)

    root_form = RootForm.from_polar(leading, root_moduli.tolist(), root_angles.tolist())
    poles = PoleSet(poles=[cmath.rect(float(m), float(a)) for m, a in zip(pole_moduli, pole_angles)])
    return root_form, poles


def generate_case(cfg: GeneratorConfig, draw: int = 0) -> Instance:
    """generate_instance 的结果包装成带 k 的 Instance"""
    root_form, poles = generate_instance(cfg, draw)
    return Instance.from_roots(root_form, poles.poles, k=cfg.k)
