import logging  # 标准日志
from typing import Any, List, Literal, Optional, Tuple, Union  # 类型标注

import numpy as np  # 向量化求值
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator  # 数据模型

from algebra.errors import DegenerateLeading, PoleHit, PreconditionError  # 领域错误
from algebra.polynomial import (  # 多项式层
    ComplexArg,
    Polynomial,
    RootForm,
    _coerce_complex_tuple,
    poly_coeff_moduli,
    poly_eval,
    poly_from_roots,
    to_complex,
)
from config.settings import DEFAULT_SETTINGS  # 默认容差
from utils.numeric import int_pow  # 整数次幂

logger = logging.getLogger(__name__)


class PoleSet(BaseModel):
    """极点 β₁..βₙ；|βⱼ| > 1 由 validate_instance / pole_product 把关"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    poles: Tuple[complex, ...] = ()

    @field_validator("poles", mode="before")
    @classmethod
    def _coerce_poles(cls, value: Any) -> Tuple[complex, ...]:
        return _coerce_complex_tuple(value)

    @property
    def n(self) -> int:
        return len(self.poles)

    def moduli(self) -> List[float]:
        return [abs(b) for b in self.poles]

    def w(self) -> Polynomial:
        """w(z) = ∏(z − βⱼ) 的系数形式"""
        return poly_from_roots(1.0, self.poles)


class ZeroConstraint(BaseModel):
    """分子在 |z| < k 内无零点，k ≥ 1"""

    model_config = ConfigDict(frozen=True)

    k: float = Field(default=1.0, ge=1.0)


class RationalFunction(BaseModel):
    """r(z) = f(z)/w(z)；无极点时 w ≡ 1，即多项式本身"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    numerator: Polynomial
    poles: PoleSet = PoleSet()
    # 分子由根给出时保留，求值走乘积形式
    roots: Optional[RootForm] = None

    @model_validator(mode="after")
    def _check_degree(self) -> "RationalFunction":
        # ℛₙ 要求 deg f ≤ n（n 为极点个数）；结构检查只看精确为零的系数
        degree = self.numerator.degree(0.0)
        if self.poles.n and degree > self.poles.n:
            raise ValueError(f"numerator degree {degree} exceeds pole count {self.poles.n}")
        return self

    @property
    def n(self) -> int:
        return self.poles.n

    def __call__(self, z: ComplexArg) -> Union[complex, np.ndarray]:
        return rat_eval(self, z)


class Violation(BaseModel):
    """单条假设违例"""

    model_config = ConfigDict(frozen=True)

    kind: Literal["root", "pole", "degree", "coefficients"]
    index: int
    modulus: float
    bound: float


class ValidationOutcome(BaseModel):
    """validate_instance 的结果：accepted 与全部违例"""

    model_config = ConfigDict(frozen=True)

    accepted: bool
    violations: List[Violation] = []
    # 系数形式的实例无法直接检查零点位置
    zeros_verified: bool = True


def _check_pole_hit(poles: PoleSet, z: ComplexArg, tol: float) -> None:
    for j, beta in enumerate(poles.poles):
        distance = np.abs(np.asarray(z, dtype=complex) - beta)
        if np.any(distance <= tol):
            raise PoleHit(f"evaluation point lies within {tol!r} of pole {j} ({beta!r})")


def w_eval(poles: PoleSet, z: ComplexArg) -> Union[complex, np.ndarray]:
    """w(z) = ∏(z − βⱼ)"""
    if isinstance(z, np.ndarray):
        acc = np.ones_like(z, dtype=complex)
        for beta in poles.poles:
            acc = acc * (z - beta)
        return acc

    point = to_complex(z)
    value = 1 + 0j
    for beta in poles.poles:
        value *= point - beta
    return value


def blaschke_eval(
    poles: PoleSet, z: ComplexArg, tol: Optional[float] = None
) -> Union[complex, np.ndarray]:
    """B(z) = ∏(1 − β̄ⱼz)/(z − βⱼ)；|z| = 1 时模为 1"""
    tol = DEFAULT_SETTINGS.pole_hit_tol if tol is None else tol
    _check_pole_hit(poles, z, tol)
    if isinstance(z, np.ndarray):
        acc = np.ones_like(z, dtype=complex)
        for beta in poles.poles:
            acc = acc * (1 - beta.conjugate() * z) / (z - beta)
        return acc

    point = to_complex(z)
    value = 1 + 0j
    for beta in poles.poles:
        value *= (1 - beta.conjugate() * point) / (point - beta)
    return value


def numerator_eval(r: RationalFunction, z: ComplexArg) -> Union[complex, np.ndarray]:
    """f(z)；有根形式时按 c·∏(z − zⱼ) 计算，否则秦九韶"""
    if r.roots is not None:
        return r.roots.evaluate(z)
    return poly_eval(r.numerator, z)


def rat_eval(
    r: RationalFunction, z: ComplexArg, tol: Optional[float] = None
) -> Union[complex, np.ndarray]:
    """r(z) = f(z)/w(z)"""
    tol = DEFAULT_SETTINGS.pole_hit_tol if tol is None else tol
    _check_pole_hit(r.poles, z, tol)
    return numerator_eval(r, z) / w_eval(r.poles, z)


def _pole_violations(poles: PoleSet, pole_margin: float) -> List[Violation]:
    bound = 1.0 + pole_margin
    return [
        Violation(kind="pole", index=j, modulus=m, bound=bound)
        for j, m in enumerate(poles.moduli())
        if m < bound
    ]


def validate_instance(
    numerator_roots: RootForm,
    poles: PoleSet,
    constraint: ZeroConstraint,
    pole_margin: Optional[float] = None,
    zero_tol: Optional[float] = None,
) -> ValidationOutcome:
    """检查零点模长 ≥ k 与极点模长 ≥ 1 + margin，列出全部违例"""
    pole_margin = DEFAULT_SETTINGS.pole_margin if pole_margin is None else pole_margin
    zero_tol = DEFAULT_SETTINGS.zero_tol if zero_tol is None else zero_tol

    violations: List[Violation] = []
    for j, m in enumerate(numerator_roots.moduli()):
        if m < constraint.k - zero_tol:
            violations.append(Violation(kind="root", index=j, modulus=m, bound=constraint.k))
    violations.extend(_pole_violations(poles, pole_margin))
    if numerator_roots.leading == 0:
        violations.append(Violation(kind="degree", index=numerator_roots.n, modulus=0.0, bound=0.0))

    if violations:
        logger.debug("instance rejected: %s", [v.model_dump() for v in violations])
    return ValidationOutcome(accepted=not violations, violations=violations)


def validate_coefficient_instance(
    numerator: Polynomial,
    n: int,
    poles: PoleSet,
    constraint: ZeroConstraint,
    pole_margin: Optional[float] = None,
    exact_degree: bool = True,
    degeneracy_tol: Optional[float] = None,
    rel_tol: Optional[float] = None,
) -> ValidationOutcome:
    """系数形式：检查极点、次数（exact_degree 时恰为 n），以及必要条件 |α₀| ≥ |α_m|kᵐ"""
    pole_margin = DEFAULT_SETTINGS.pole_margin if pole_margin is None else pole_margin
    degeneracy_tol = DEFAULT_SETTINGS.degeneracy_tol if degeneracy_tol is None else degeneracy_tol
    rel_tol = DEFAULT_SETTINGS.rel_tol if rel_tol is None else rel_tol

    violations = _pole_violations(poles, pole_margin)
    degree = numerator.degree(degeneracy_tol)
    if exact_degree:
        try:
            poly_coeff_moduli(numerator, n, degeneracy_tol)
        except (DegenerateLeading, PreconditionError):
            top = abs(numerator.coeffs[n]) if n < len(numerator.coeffs) else 0.0
            violations.append(Violation(kind="degree", index=n, modulus=top, bound=0.0))
            return ValidationOutcome(accepted=False, violations=violations, zeros_verified=False)
    elif degree > n:
        violations.append(
            Violation(kind="degree", index=degree, modulus=abs(numerator.coeffs[degree]), bound=0.0)
        )
        return ValidationOutcome(accepted=False, violations=violations, zeros_verified=False)

    # 零点全在 |z| ≥ k 时 ∏ηⱼ = |α₀|/|α_m| ≥ kᵐ
    a0, am = abs(numerator.coeffs[0]), abs(numerator.coeffs[degree])
    required = am * int_pow(constraint.k, degree)
    if a0 < required * (1.0 - rel_tol):
        violations.append(Violation(kind="coefficients", index=0, modulus=a0, bound=required))
    return ValidationOutcome(accepted=not violations, violations=violations, zeros_verified=False)
