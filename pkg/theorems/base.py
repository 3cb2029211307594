from abc import ABC, abstractmethod  # 抽象基类支持
from enum import Enum  # 定理标识枚举
from typing import List, Literal, Optional  # 类型标注

from pydantic import BaseModel, ConfigDict, Field  # 参数 / 结果模型


class TheoremId(str, Enum):
    """定理标识；取值即 CLI / 报告中使用的小写标签"""

    E2_MAXMOD = "e2max"
    E1_VARGA = "e1varga"
    A_RIVLIN = "tA"
    B_AZIZ = "tB"
    C_KM = "tC"
    D_KM = "tD"
    E_DK = "tE"
    F_DK = "tF"
    G_RAT = "tG"
    H_RAT = "tH"
    I_RAT = "tI"
    J_RAT = "tJ"
    T1_NEW = "t1"
    T2_NEW = "t2"


class BoundParams(BaseModel):
    """η ∈ [0,1]，零点半径 k ≥ 1，增长半径 ν ≥ 1（仅最大模上界使用）"""

    model_config = ConfigDict(frozen=True)

    eta: float = Field(default=0.0, ge=0.0, le=1.0)
    k: float = Field(default=1.0, ge=1.0)
    nu: float = Field(default=1.0, ge=1.0)


class BoundFactor(BaseModel):
    """定理断言的乘数 c：|target(ηz)| ≥ c·|target(z)|，|z| = 1"""

    model_config = ConfigDict(frozen=True)

    value: float
    theorem: TheoremId
    params: BoundParams
    # 花括号内的系数修正项，无修正的定理为 0
    correction_term: float = 0.0
    # 不含修正的部分（含极点乘积）：value = base_factor·(1 + correction_term)
    base_factor: float
    pole_product: float = 1.0
    # lower：下界；upper：最大模上界
    direction: Literal["lower", "upper"] = "lower"
    # pointwise：逐点比较；max_modulus：比较两圆上的最大模
    comparison: Literal["pointwise", "max_modulus"] = "pointwise"
    warnings: List[str] = []


class BaseTheorem(ABC):
    """所有增长不等式的抽象基类"""

    # 是否依赖 |α₀|、|αₙ|
    uses_coefficients: bool = False
    # 是否乘上极点乘积
    rational: bool = False
    direction: Literal["lower", "upper"] = "lower"
    comparison: Literal["pointwise", "max_modulus"] = "pointwise"

    def __init__(self, theorem_id: TheoremId, uses_k: bool = False):
        # 定理在目录中的唯一标识
        self.theorem_id = theorem_id
        # 零点半径取 params.k 还是固定为 1
        self.uses_k = uses_k

    def radius(self, params: BoundParams) -> float:
        """零点排除半径：假设为 |z| < radius 内无零点"""
        return params.k if self.uses_k else 1.0

    def zero_radius(self, params: BoundParams) -> Optional[float]:
        """需要检查的零点半径；无零点假设时为 None"""
        return self.radius(params)

    @abstractmethod
    def base(self, params: BoundParams, n: int) -> float:
        """不含系数修正、不含极点乘积的主因子"""
        raise NotImplementedError

    def correction(self, params: BoundParams, n: int, a0: float, an: float) -> float:
        """花括号内的加性修正；默认无"""
        return 0.0
