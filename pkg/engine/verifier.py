import logging  # 标准日志
from typing import List, Literal, Optional  # 类型标注

import numpy as np  # 网格比较
from pydantic import BaseModel, ConfigDict, Field  # 报告模型

from algebra.errors import AllSkipped, DegenerateLeading, PreconditionError  # 领域错误
from algebra.instance import Instance  # 实例
from algebra.polynomial import Polynomial  # 最大模检查
from algebra.rational import (  # 假设检查
    PoleSet,
    RationalFunction,
    ValidationOutcome,
    Violation,
    ZeroConstraint,
    validate_coefficient_instance,
    validate_instance,
)
from config.settings import DEFAULT_SETTINGS, Settings  # 容差策略
from engine.search import CircleGrid, GrowthRatio, max_modulus_search, min_ratio_search  # 圆周搜索
from theorems.base import BoundFactor, BoundParams, TheoremId  # 定理模型
from theorems.catalog import compute_factor, get_theorem  # 因子计算
from utils.numeric import int_pow  # 整数次幂

logger = logging.getLogger(__name__)


class VerificationReport(BaseModel):
    """一次验证的结果；pass ⇔ 所有未跳过的网格点都满足不等式"""

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    theorem: Optional[TheoremId] = None
    params: BoundParams
    status: Literal["pass", "fail", "hypothesis_unmet"]
    factor: Optional[float] = None
    correction_term: Optional[float] = None
    min_observed: Optional[float] = None
    argmin_theta: Optional[float] = None
    slack: Optional[float] = None
    passed: bool = Field(default=False, alias="pass")
    skipped_points: int = 0
    violations: int = 0
    instance_digest: str = ""
    warnings: List[str] = []
    hypothesis_violations: List[Violation] = []
    zeros_verified: bool = True


def pointwise_check(
    r: RationalFunction,
    eta: float,
    factor: float,
    grid: Optional[CircleGrid] = None,
    settings: Settings = DEFAULT_SETTINGS,
    instance_digest: str = "",
) -> VerificationReport:
    """逐点检查 |r(ηe^{iθ})| ≥ factor·|r(e^{iθ})|·(1 − rel) − abs"""
    grid = grid or CircleGrid()
    thetas = grid.angles()
    ratio = GrowthRatio(r, eta, grid, settings)
    inner, outer, skipped = ratio.parts(thetas)

    with np.errstate(invalid="ignore"):
        holds = inner >= factor * outer * (1.0 - settings.rel_tol) - settings.abs_tol
    checked = ~skipped
    violations = int(np.count_nonzero(checked & ~holds))

    min_observed: Optional[float] = None
    argmin_theta: Optional[float] = None
    if np.any(checked):
        values = np.where(checked, inner / np.where(checked, outer, 1.0), np.inf)
        i = int(np.argmin(values))
        min_observed, argmin_theta = float(values[i]), float(thetas[i])

    passed = violations == 0
    if not passed:
        logger.warning("pointwise check failed at %d grid points (eta=%g)", violations, eta)
    return VerificationReport(
        params=BoundParams(eta=eta),
        status="pass" if passed else "fail",
        factor=factor,
        min_observed=min_observed,
        argmin_theta=argmin_theta,
        slack=None if min_observed is None else min_observed - factor,
        passed=passed,
        skipped_points=int(np.count_nonzero(skipped)),
        violations=violations,
        instance_digest=instance_digest,
    )


def _unmet(
    theorem_id: TheoremId,
    params: BoundParams,
    digest: str,
    violations: List[Violation],
    warnings: Optional[List[str]] = None,
    zeros_verified: bool = True,
) -> VerificationReport:
    logger.info("%s: hypothesis unmet (%d violations)", theorem_id.value, len(violations))
    return VerificationReport(
        theorem=theorem_id,
        params=params,
        status="hypothesis_unmet",
        instance_digest=digest,
        warnings=warnings or [],
        hypothesis_violations=violations,
        zeros_verified=zeros_verified,
    )


def check_hypotheses(
    theorem_id: TheoremId,
    instance: Instance,
    params: BoundParams,
    settings: Settings = DEFAULT_SETTINGS,
) -> ValidationOutcome:
    """按定理的零点半径与极点要求检查实例"""
    theorem = get_theorem(theorem_id)
    radius = theorem.zero_radius(params)
    poles = instance.poles if theorem.rational else PoleSet()
    if radius is None:
        return ValidationOutcome(accepted=True)

    constraint = ZeroConstraint(k=radius)
    if instance.root_form is not None:
        return validate_instance(
            instance.root_form, poles, constraint, settings.pole_margin, settings.zero_tol
        )
    return validate_coefficient_instance(
        instance.numerator,
        instance.n,
        poles,
        constraint,
        settings.pole_margin,
        exact_degree=theorem.uses_coefficients,
        degeneracy_tol=settings.degeneracy_tol,
        rel_tol=settings.rel_tol,
    )


def max_modulus_check(
    p: Polynomial,
    theorem_id: TheoremId,
    params: BoundParams,
    n: int,
    grid: Optional[CircleGrid] = None,
    settings: Settings = DEFAULT_SETTINGS,
    instance_digest: str = "",
) -> VerificationReport:
    """最大模型不等式：比较 max_{|z|=ρ}|f| 与 ρⁿ·max_{|z|=1}|f|"""
    grid = grid or CircleGrid()
    factor = compute_factor(theorem_id, params, n, settings=settings)
    upper = factor.direction == "upper"
    radius = params.nu if upper else params.eta

    if p.is_zero():
        # f ≡ 0：两边均为 0
        return VerificationReport(
            theorem=theorem_id,
            params=params,
            status="pass",
            factor=factor.value,
            correction_term=0.0,
            passed=True,
            skipped_points=grid.points,
            instance_digest=instance_digest,
        )

    unit_max, _ = max_modulus_search(p, 1.0, grid)
    radius_max, theta = max_modulus_search(p, radius, grid)
    observed = radius_max / unit_max
    if upper:
        passed = observed <= factor.value * (1.0 + settings.rel_tol) + settings.abs_tol
        slack = factor.value - observed
    else:
        passed = observed >= factor.value * (1.0 - settings.rel_tol) - settings.abs_tol
        slack = observed - factor.value
    if not passed:
        logger.warning("%s: max-modulus ratio %.17g violates factor %.17g", theorem_id.value, observed, factor.value)
    return VerificationReport(
        theorem=theorem_id,
        params=params,
        status="pass" if passed else "fail",
        factor=factor.value,
        correction_term=0.0,
        min_observed=observed,
        argmin_theta=theta,
        slack=slack,
        passed=passed,
        violations=0 if passed else 1,
        instance_digest=instance_digest,
    )


def verify_theorem(
    theorem_id: TheoremId,
    instance: Instance,
    params: BoundParams,
    grid: Optional[CircleGrid] = None,
    settings: Settings = DEFAULT_SETTINGS,
) -> VerificationReport:
    """假设检查 → 因子 → 逐点检查 + 全局极小搜索"""
    theorem_id = TheoremId(theorem_id)
    theorem = get_theorem(theorem_id)
    grid = grid or CircleGrid(points=settings.grid_points, refine_iters=settings.refine_iters)
    digest = instance.digest()
    n = instance.n

    if theorem.rational and instance.poles.n != n:
        raise PreconditionError(f"{theorem_id.value} needs {n} poles, instance has {instance.poles.n}")

    if theorem.comparison == "max_modulus":
        return max_modulus_check(instance.numerator, theorem_id, params, n, grid, settings, digest)

    outcome = check_hypotheses(theorem_id, instance, params, settings)
    if not outcome.accepted:
        return _unmet(theorem_id, params, digest, outcome.violations, zeros_verified=outcome.zeros_verified)

    a0: Optional[float] = None
    an: Optional[float] = None
    if theorem.uses_coefficients:
        try:
            a0, an = instance.coefficient_moduli(settings.degeneracy_tol, settings.log_space_threshold)
        except DegenerateLeading as exc:
            violation = Violation(kind="degree", index=n, modulus=0.0, bound=0.0)
            return _unmet(theorem_id, params, digest, [violation], [str(exc)], outcome.zeros_verified)

    factor: BoundFactor = compute_factor(theorem_id, params, n, a0, an, instance.poles, settings)
    if a0 is not None and an is not None:
        # 修正项为负：零点假设与系数矛盾，实例无效
        required = an * int_pow(theorem.radius(params), n)
        if a0 < required * (1.0 - settings.rel_tol):
            violation = Violation(kind="coefficients", index=0, modulus=a0, bound=required)
            return _unmet(theorem_id, params, digest, [violation], factor.warnings, outcome.zeros_verified)

    target = instance.rational() if theorem.rational else instance.polynomial_view()
    report = pointwise_check(target, params.eta, factor.value, grid, settings, digest)
    try:
        min_observed, argmin_theta = min_ratio_search(target, params.eta, grid, settings)
    except AllSkipped:
        min_observed, argmin_theta = None, None

    return report.model_copy(
        update={
            "theorem": theorem_id,
            "params": params,
            "correction_term": factor.correction_term,
            "min_observed": min_observed,
            "argmin_theta": argmin_theta,
            "slack": None if min_observed is None else min_observed - factor.value,
            "warnings": factor.warnings,
            "zeros_verified": outcome.zeros_verified,
        }
    )
