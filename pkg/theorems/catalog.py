import logging  # 标准日志
from typing import Dict, List, Optional  # 类型标注

from algebra.errors import HYPOTHESIS_WARNING, DomainError, PoleOnCircle, PreconditionError  # 领域错误
from algebra.rational import PoleSet  # 极点集合
from config.settings import DEFAULT_SETTINGS, Settings  # 对数空间阈值
from theorems.base import BaseTheorem, BoundFactor, BoundParams, TheoremId  # 定理基类与模型
from utils.numeric import int_pow, stable_product  # 整数次幂 / 稳定连乘

logger = logging.getLogger(__name__)


class PowerGrowth(BaseTheorem):
    """最大模型不等式：νⁿ（上界）或 ηⁿ（反向下界）"""

    comparison = "max_modulus"

    def __init__(self, theorem_id: TheoremId, upper: bool):
        super().__init__(theorem_id)
        self.direction = "upper" if upper else "lower"

    def zero_radius(self, params: BoundParams) -> Optional[float]:
        # 对任意 f ∈ 𝒫ₙ 成立，没有零点假设
        return None

    def base(self, params: BoundParams, n: int) -> float:
        radius = params.nu if self.direction == "upper" else params.eta
        return int_pow(radius, n)


class ZeroFreeGrowth(BaseTheorem):
    """((k+η)/(k+1))ⁿ；k 固定为 1 时即 ((1+η)/2)ⁿ"""

    def base(self, params: BoundParams, n: int) -> float:
        k = self.radius(params)
        return int_pow((k + params.eta) / (k + 1.0), n)


class CoefficientGrowth(ZeroFreeGrowth):
    """用 |α₀|、|αₙ| 加强的版本。

    refined=False：修正项 [(|α₀|−|αₙ|kⁿ)/(|α₀|+|αₙ|)]·((1−η)/(k+η))ⁿ，k_scaled 时再除以 kⁿ⁻¹
    refined=True ：修正项 (1/kⁿ⁻¹)·[(|α₀|−|αₙ|kⁿ)/(|α₀|+|αₙ|)]·(1−η)/(k+η)ⁿ
    """

    uses_coefficients = True

    def __init__(self, theorem_id: TheoremId, uses_k: bool, refined: bool, k_scaled: bool = False):
        super().__init__(theorem_id, uses_k)
        self.refined = refined
        # 经典修正项是否带 1/kⁿ⁻¹（有理函数版本带，多项式版本不带）
        self.k_scaled = k_scaled or refined

    def coefficient_bracket(self, params: BoundParams, n: int, a0: float, an: float) -> float:
        """[(|α₀| − |αₙ|kⁿ)/(|α₀| + |αₙ|)]"""
        if a0 + an <= 0.0:
            raise DomainError("coefficient bracket undefined: |alpha_0| + |alpha_n| = 0")
        k = self.radius(params)
        return (a0 - an * int_pow(k, n)) / (a0 + an)

    def correction(self, params: BoundParams, n: int, a0: float, an: float) -> float:
        k = self.radius(params)
        eta = params.eta
        bracket = self.coefficient_bracket(params, n, a0, an)
        if self.refined:
            term = bracket * (1.0 - eta) / int_pow(k + eta, n)
        else:
            term = bracket * int_pow((1.0 - eta) / (k + eta), n)
        return term / int_pow(k, n - 1) if self.k_scaled else term


class PoleWeightedGrowth(BaseTheorem):
    """多项式不等式在 ℛₙ 上的推广：乘上 ∏(|βⱼ|−1)/(|βⱼ|+η)"""

    rational = True

    def __init__(self, theorem_id: TheoremId, polynomial: BaseTheorem):
        super().__init__(theorem_id, polynomial.uses_k)
        # 对应的多项式版本
        self.polynomial = polynomial
        self.uses_coefficients = polynomial.uses_coefficients

    def base(self, params: BoundParams, n: int) -> float:
        return self.polynomial.base(params, n)

    def correction(self, params: BoundParams, n: int, a0: float, an: float) -> float:
        return self.polynomial.correction(params, n, a0, an)


def _build_registry() -> Dict[TheoremId, BaseTheorem]:
    tid = TheoremId
    a = ZeroFreeGrowth(tid.A_RIVLIN)
    b = ZeroFreeGrowth(tid.B_AZIZ, uses_k=True)
    c = CoefficientGrowth(tid.C_KM, uses_k=False, refined=False)
    d = CoefficientGrowth(tid.D_KM, uses_k=True, refined=False)
    e = CoefficientGrowth(tid.E_DK, uses_k=False, refined=True)
    f = CoefficientGrowth(tid.F_DK, uses_k=True, refined=True)
    return {
        tid.E2_MAXMOD: PowerGrowth(tid.E2_MAXMOD, upper=True),
        tid.E1_VARGA: PowerGrowth(tid.E1_VARGA, upper=False),
        tid.A_RIVLIN: a,
        tid.B_AZIZ: b,
        tid.C_KM: c,
        tid.D_KM: d,
        tid.E_DK: e,
        tid.F_DK: f,
        tid.G_RAT: PoleWeightedGrowth(tid.G_RAT, a),
        tid.H_RAT: PoleWeightedGrowth(tid.H_RAT, b),
        tid.I_RAT: PoleWeightedGrowth(tid.I_RAT, c),
        tid.J_RAT: PoleWeightedGrowth(
            tid.J_RAT, CoefficientGrowth(tid.J_RAT, uses_k=True, refined=False, k_scaled=True)
        ),
        tid.T1_NEW: PoleWeightedGrowth(tid.T1_NEW, e),
        tid.T2_NEW: PoleWeightedGrowth(tid.T2_NEW, f),
    }


# 定理注册表：按 TheoremId 查找对应的不等式
THEOREM_REGISTRY: Dict[TheoremId, BaseTheorem] = _build_registry()

POLYNOMIAL_THEOREMS = [tid for tid, thm in THEOREM_REGISTRY.items() if not thm.rational]
RATIONAL_THEOREMS = [tid for tid, thm in THEOREM_REGISTRY.items() if thm.rational]


def get_theorem(theorem_id: TheoremId) -> BaseTheorem:
    theorem = THEOREM_REGISTRY.get(TheoremId(theorem_id))
    if theorem is None:
        raise ValueError(f"Unknown theorem: {theorem_id}")
    return theorem


def pole_product(poles: PoleSet, eta: float, threshold: Optional[int] = None) -> float:
    """∏(|βⱼ|−1)/(|βⱼ|+η)，取值在 (0, 1)"""
    factors: List[float] = []
    for j, m in enumerate(poles.moduli()):
        if m <= 1.0:
            raise PoleOnCircle(f"pole {j} has modulus {m!r} <= 1")
        factors.append((m - 1.0) / (m + eta))
    return stable_product(factors, DEFAULT_SETTINGS.log_space_threshold if threshold is None else threshold)


def _compose(
    theorem: BaseTheorem,
    params: BoundParams,
    n: int,
    a0: Optional[float],
    an: Optional[float],
    poles_factor: float,
) -> BoundFactor:
    warnings: List[str] = []
    correction = 0.0
    if theorem.uses_coefficients:
        if a0 is None or an is None:
            raise PreconditionError(f"{theorem.theorem_id.value} needs |alpha_0| and |alpha_n|")
        k = theorem.radius(params)
        if a0 < an * int_pow(k, n):
            # 零点假设不可能成立；仍给出数值，由调用方判定实例无效
            warnings.append(
                f"{HYPOTHESIS_WARNING}: |alpha_0|={a0!r} < |alpha_n| k^n={an * int_pow(k, n)!r}"
            )
            logger.warning("%s: %s", theorem.theorem_id.value, warnings[-1])
        correction = theorem.correction(params, n, a0, an)

    base = theorem.base(params, n)
    value = base * (1.0 + correction) * poles_factor
    return BoundFactor(
        value=value,
        theorem=theorem.theorem_id,
        params=params,
        correction_term=correction,
        base_factor=base * poles_factor,
        pole_product=poles_factor,
        direction=theorem.direction,
        comparison=theorem.comparison,
        warnings=warnings,
    )


def factor_polynomial(
    theorem_id: TheoremId,
    params: BoundParams,
    n: int,
    a0: Optional[float] = None,
    an: Optional[float] = None,
) -> BoundFactor:
    """多项式不等式（e2max、e1varga、tA–tF）的闭式因子"""
    theorem = get_theorem(theorem_id)
    if theorem.rational:
        raise PreconditionError(f"{theorem.theorem_id.value} is a rational bound; use factor_rational")
    return _compose(theorem, params, n, a0, an, 1.0)


def factor_rational(
    theorem_id: TheoremId,
    params: BoundParams,
    n: int,
    a0: Optional[float],
    an: Optional[float],
    poles: PoleSet,
    settings: Settings = DEFAULT_SETTINGS,
) -> BoundFactor:
    """有理函数不等式（tG–tJ、t1、t2）的完整因子，含极点乘积"""
    theorem = get_theorem(theorem_id)
    if not theorem.rational:
        raise PreconditionError(f"{theorem.theorem_id.value} is a polynomial bound; use factor_polynomial")
    if poles.n != n:
        raise PreconditionError(f"n={n} but {poles.n} poles were given")
    return _compose(theorem, params, n, a0, an, pole_product(poles, params.eta, settings.log_space_threshold))


def compute_factor(
    theorem_id: TheoremId,
    params: BoundParams,
    n: int,
    a0: Optional[float] = None,
    an: Optional[float] = None,
    poles: Optional[PoleSet] = None,
    settings: Settings = DEFAULT_SETTINGS,
) -> BoundFactor:
    """按定理类型分派到 factor_polynomial / factor_rational"""
    if get_theorem(theorem_id).rational:
        return factor_rational(theorem_id, params, n, a0, an, poles or PoleSet(), settings)
    return factor_polynomial(theorem_id, params, n, a0, an)
