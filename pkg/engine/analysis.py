import logging  # 标准日志
import math  # 有限性判断
from enum import Enum  # 极值族枚举
from typing import Any, Dict, FrozenSet, List, Optional, Sequence, Tuple  # 类型标注

import numpy as np  # 圆周网格上的向量化求值
from pydantic import BaseModel, ConfigDict, field_validator  # 数据模型

from algebra.errors import DegenerateLeading, DomainError, HypothesisUnmet, PreconditionError  # 领域错误
from algebra.instance import Instance  # 实例
from algebra.polynomial import Polynomial, poly_coeff_moduli, poly_from_roots, to_complex  # 多项式层
from algebra.rational import PoleSet, RationalFunction  # 极点集合 / w ≡ 1 的嵌入
from config.settings import DEFAULT_SETTINGS, Settings  # 容差
from engine.search import CircleGrid, max_ratio_search, min_ratio_search  # 圆周搜索
from theorems.base import BoundFactor, BoundParams, TheoremId  # 定理模型
from theorems.catalog import compute_factor, factor_polynomial, factor_rational, get_theorem  # 因子计算
from utils.numeric import int_pow  # 整数次幂

logger = logging.getLogger(__name__)

# 极值族的等号判定容差
SHARPNESS_TOL = 1e-9
# 参数模长约束 |ζ| = 1 等的判定容差
_MODULUS_TOL = 1e-12
# limit 子命令默认的 |β| 序列
DEFAULT_BETA_MODULI = [10.0 ** p for p in range(1, 9)]

# 需要检查的排序链：前者 ≥ 后者
ORDERING_CHAINS: List[Tuple[TheoremId, TheoremId, TheoremId]] = [
    (TheoremId.T1_NEW, TheoremId.I_RAT, TheoremId.G_RAT),
    (TheoremId.T2_NEW, TheoremId.J_RAT, TheoremId.H_RAT),
]


class FamilyKind(str, Enum):
    ZETA_POWER = "zeta_power"  # (z + ζ)ⁿ，|ζ| = 1
    K_POWER = "k_power"  # (z + k)ⁿ
    AB_POWER = "ab_power"  # (a + bz)ⁿ，|a| = |b| = 1
    LINEAR_GAMMA = "linear_gamma"  # z + γ，|γ| ≥ k
    MONOMIAL = "monomial"  # λzⁿ，λ ≠ 0


# 族 → 以它为等号情形的定理
FAMILY_THEOREMS: Dict[FamilyKind, FrozenSet[TheoremId]] = {
    FamilyKind.ZETA_POWER: frozenset(
        {TheoremId.A_RIVLIN, TheoremId.B_AZIZ, TheoremId.C_KM, TheoremId.D_KM, TheoremId.E_DK, TheoremId.F_DK}
    ),
    FamilyKind.K_POWER: frozenset(
        {TheoremId.A_RIVLIN, TheoremId.B_AZIZ, TheoremId.C_KM, TheoremId.D_KM, TheoremId.E_DK, TheoremId.F_DK}
    ),
    FamilyKind.AB_POWER: frozenset({TheoremId.A_RIVLIN, TheoremId.C_KM, TheoremId.E_DK}),
    FamilyKind.LINEAR_GAMMA: frozenset({TheoremId.C_KM, TheoremId.D_KM, TheoremId.E_DK, TheoremId.F_DK}),
    FamilyKind.MONOMIAL: frozenset({TheoremId.E2_MAXMOD, TheoremId.E1_VARGA}),
}


class ExtremalFamily(BaseModel):
    """使某个不等式取等号的函数族及其参数"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    family: FamilyKind
    zeta: complex = 1 + 0j
    a: complex = 1 + 0j
    b: complex = 1 + 0j
    # 缺省为 γ = k
    gamma: Optional[complex] = None
    lam: complex = 1 + 0j

    @field_validator("zeta", "a", "b", "gamma", "lam", mode="before")
    @classmethod
    def _coerce(cls, value: Any) -> Any:
        return None if value is None else to_complex(value)

    def check(self, theorem_id: TheoremId, params: BoundParams) -> float:
        """检查族与定理匹配、参数满足约束；返回定理的零点半径"""
        theorem_id = TheoremId(theorem_id)
        if theorem_id not in FAMILY_THEOREMS[self.family]:
            raise PreconditionError(
                f"{self.family.value} is not an extremal family of {theorem_id.value}"
            )
        radius = get_theorem(theorem_id).radius(params)
        if self.family is FamilyKind.ZETA_POWER:
            if abs(abs(self.zeta) - 1.0) > _MODULUS_TOL:
                raise PreconditionError(f"|zeta| must be 1, got {abs(self.zeta)!r}")
            if radius != 1.0:
                raise PreconditionError(f"(z+zeta)^n has zeros on |z|=1 but {theorem_id.value} needs k={radius!r}")
        elif self.family is FamilyKind.AB_POWER:
            if abs(abs(self.a) - 1.0) > _MODULUS_TOL or abs(abs(self.b) - 1.0) > _MODULUS_TOL:
                raise PreconditionError(f"|a| and |b| must be 1, got {abs(self.a)!r}, {abs(self.b)!r}")
        elif self.family is FamilyKind.LINEAR_GAMMA:
            gamma = self.gamma_for(radius)
            if abs(gamma) < radius - _MODULUS_TOL:
                raise PreconditionError(f"|gamma|={abs(gamma)!r} < k={radius!r}")
        elif self.family is FamilyKind.MONOMIAL:
            if self.lam == 0:
                raise PreconditionError("lambda must be nonzero")
        return radius

    def gamma_for(self, radius: float) -> complex:
        return complex(radius) if self.gamma is None else self.gamma

    def polynomial(self, n: int, radius: float = 1.0) -> Polynomial:
        """族中次数为 n 的成员；LINEAR_GAMMA 总是一次"""
        if n < 1:
            raise PreconditionError(f"extremal families need n >= 1, got n={n}")
        if self.family is FamilyKind.ZETA_POWER:
            return poly_from_roots(1.0, [-self.zeta] * n)
        if self.family is FamilyKind.K_POWER:
            return poly_from_roots(1.0, [-complex(radius)] * n)
        if self.family is FamilyKind.AB_POWER:
            # (a + bz)ⁿ = bⁿ (z + a/b)ⁿ
            return poly_from_roots(self.b ** n, [-self.a / self.b] * n)
        if self.family is FamilyKind.LINEAR_GAMMA:
            return Polynomial(coeffs=[self.gamma_for(radius), 1.0])
        return Polynomial(coeffs=[0.0] * n + [self.lam])

    def degree(self, n: int) -> int:
        return 1 if self.family is FamilyKind.LINEAR_GAMMA else n


class SharpnessReport(BaseModel):
    """sharpness 子命令的载荷"""

    model_config = ConfigDict(frozen=True)

    family: ExtremalFamily
    theorem: TheoremId
    params: BoundParams
    n: int
    factor: float
    min_observed: float
    argmin_theta: float
    difference: float
    equality: bool
    tolerance: float = SHARPNESS_TOL


def sharpness_check(
    family: ExtremalFamily,
    theorem_id: TheoremId,
    params: BoundParams,
    n: int,
    grid: Optional[CircleGrid] = None,
    settings: Settings = DEFAULT_SETTINGS,
) -> SharpnessReport:
    """极值多项式上比较圆周极值与定理因子。

    下界定理比较 min_θ |f(ηe^{iθ})/f(e^{iθ})|；e2max 比较 max_θ |f(νe^{iθ})/f(e^{iθ})|。
    """
    theorem_id = TheoremId(theorem_id)
    grid = grid or CircleGrid(points=settings.grid_points, refine_iters=settings.refine_iters)
    radius = family.check(theorem_id, params)
    n = family.degree(n)
    p = family.polynomial(n, radius)
    target = RationalFunction(numerator=p)
    theorem = get_theorem(theorem_id)

    a0: Optional[float] = None
    an: Optional[float] = None
    if theorem.uses_coefficients:
        a0, an = poly_coeff_moduli(p, n, settings.degeneracy_tol)
    factor: BoundFactor = factor_polynomial(theorem_id, params, n, a0, an)

    if theorem.direction == "upper":
        observed, theta = max_ratio_search(target, params.nu, grid, settings)
    else:
        observed, theta = min_ratio_search(target, params.eta, grid, settings)

    difference = abs(observed - factor.value)
    equality = difference <= SHARPNESS_TOL
    if not equality:
        logger.warning(
            "%s on %s (n=%d): |observed - factor| = %.3g", theorem_id.value, family.family.value, n, difference
        )
    return SharpnessReport(
        family=family,
        theorem=theorem_id,
        params=params,
        n=n,
        factor=factor.value,
        min_observed=observed,
        argmin_theta=theta,
        difference=difference,
        equality=equality,
    )


class ComparisonRow(BaseModel):
    """表中一行：(η, 定理) 的因子"""

    model_config = ConfigDict(frozen=True)

    eta: float
    theorem: TheoremId
    value: float
    correction_term: float
    base_factor: float
    pole_product: float
    warnings: List[str] = []


class OrderingCheck(BaseModel):
    """单个 η 上一条排序链的检查结果"""

    model_config = ConfigDict(frozen=True)

    eta: float
    chain: List[TheoremId]
    values: List[float]
    # 系数与零点假设相容时才有意义
    applicable: bool
    holds: bool
    strict_expected: bool
    strict_holds: bool

    @property
    def ok(self) -> bool:
        if not self.applicable:
            return True
        return self.holds and (self.strict_holds or not self.strict_expected)


class ComparisonTable(BaseModel):
    """compare 子命令的载荷"""

    model_config = ConfigDict(frozen=True)

    theorems: List[TheoremId]
    etas: List[float]
    n: int
    k: float
    a0: Optional[float] = None
    an: Optional[float] = None
    rows: List[ComparisonRow]
    orderings: List[OrderingCheck] = []
    passed: bool = True


def _separated(a: float, b: float, margin: float) -> Tuple[bool, bool]:
    """(a ≥ b, a > b)，均带相对边距"""
    scale = margin * max(abs(a), abs(b))
    return a - b >= -scale, a - b > scale


def compare_factors(
    ids: Sequence[TheoremId],
    instance: Instance,
    eta_sweep: Sequence[float],
    params: BoundParams = BoundParams(),
    settings: Settings = DEFAULT_SETTINGS,
) -> ComparisonTable:
    """对同一实例按 η 列出各定理的因子，并检查 t1 ≥ tI ≥ tG、t2 ≥ tJ ≥ tH；零点半径取 params.k"""
    ids = [TheoremId(i) for i in ids]
    n = instance.n
    k = params.k
    a0: Optional[float] = None
    an: Optional[float] = None

    if any(get_theorem(i).uses_coefficients for i in ids):
        try:
            a0, an = instance.coefficient_moduli(settings.degeneracy_tol, settings.log_space_threshold)
        except DegenerateLeading as exc:
            raise PreconditionError(f"coefficient bounds need degree exactly n={n}: {exc}") from exc
    for i in ids:
        if get_theorem(i).rational and instance.poles.n != n:
            raise PreconditionError(f"{i.value} needs {n} poles, instance has {instance.poles.n}")

    rows: List[ComparisonRow] = []
    values: Dict[Tuple[int, TheoremId], float] = {}
    for e_index, eta in enumerate(eta_sweep):
        step_params = params.model_copy(update={"eta": float(eta)})
        for theorem_id in ids:
            factor = compute_factor(theorem_id, step_params, n, a0, an, instance.poles, settings)
            values[(e_index, theorem_id)] = factor.value
            rows.append(
                ComparisonRow(
                    eta=float(eta),
                    theorem=theorem_id,
                    value=factor.value,
                    correction_term=factor.correction_term,
                    base_factor=factor.base_factor,
                    pole_product=factor.pole_product,
                    warnings=factor.warnings,
                )
            )

    orderings: List[OrderingCheck] = []
    for chain in ORDERING_CHAINS:
        if not all(t in ids for t in chain):
            continue
        radius = get_theorem(chain[0]).radius(BoundParams(k=k))
        for e_index, eta in enumerate(eta_sweep):
            chain_values = [values[(e_index, t)] for t in chain]
            ge_1, gt_1 = _separated(chain_values[0], chain_values[1], settings.strict_margin)
            ge_2, gt_2 = _separated(chain_values[1], chain_values[2], settings.strict_margin)
            required = an * int_pow(radius, n)
            applicable = a0 >= required * (1.0 - settings.rel_tol)
            strict_expected = (
                applicable
                and 0.0 < eta < 1.0
                and n > 1
                and abs(a0 - required) > settings.strict_margin * (a0 + an)
            )
            orderings.append(
                OrderingCheck(
                    eta=float(eta),
                    chain=list(chain),
                    values=chain_values,
                    applicable=applicable,
                    holds=ge_1 and ge_2,
                    strict_expected=strict_expected,
                    strict_holds=gt_1 and gt_2,
                )
            )

    passed = all(check.ok for check in orderings)
    if not passed:
        logger.warning("factor ordering violated for %d checks", sum(1 for c in orderings if not c.ok))
    return ComparisonTable(
        theorems=ids,
        etas=[float(e) for e in eta_sweep],
        n=n,
        k=k,
        a0=a0,
        an=an,
        rows=rows,
        orderings=orderings,
        passed=passed,
    )


def _limit_pair(k: float) -> Tuple[TheoremId, TheoremId]:
    """(多项式定理, 对应的有理定理)"""
    if k == 1.0:
        return TheoremId.E_DK, TheoremId.T1_NEW
    return TheoremId.F_DK, TheoremId.T2_NEW


def limit_recovery_check(
    n: int,
    eta: float,
    k: float,
    poly: Polynomial,
    beta_modulus: float,
    grid: Optional[CircleGrid] = None,
    settings: Settings = DEFAULT_SETTINGS,
) -> float:
    """w = (z − β)ⁿ（β 取正实数）时有理侧乘子（t1 / t2）与多项式因子（tE / tF）的最大差。

    有理侧乘子 = t1/t2 因子（n 个极点都取 β）·|(ηz−β)/(z−β)|ⁿ，在 θ 网格上取 max。
    """
    if n < 1:
        raise PreconditionError(f"limit recovery needs n >= 1, got n={n}")
    if beta_modulus <= 1.0:
        raise DomainError(f"beta modulus {beta_modulus!r} must exceed 1")
    grid = grid or CircleGrid(points=settings.grid_points, refine_iters=settings.refine_iters)
    theorem_id, rational_id = _limit_pair(k)
    params = BoundParams(eta=eta, k=k)
    a0, an = poly_coeff_moduli(poly, n, settings.degeneracy_tol)
    if a0 < an * int_pow(k, n) * (1.0 - settings.rel_tol):
        # 分子在 |z| < k 内必有零点
        raise HypothesisUnmet(f"|alpha_0|={a0!r} < |alpha_n| k^n={an * int_pow(k, n)!r}")
    factor = factor_polynomial(theorem_id, params, n, a0, an).value

    beta = float(beta_modulus)
    z = np.exp(1j * grid.angles())
    shift = np.abs((eta * z - beta) / (z - beta))
    rational_factor = factor_rational(rational_id, params, n, a0, an, PoleSet(poles=[beta] * n), settings).value
    rational_side = rational_factor * shift ** n
    difference = float(np.max(np.abs(rational_side - factor)))
    logger.debug("limit recovery |beta|=%g: max difference %.3g", beta, difference)
    return difference


class LimitReport(BaseModel):
    """limit 子命令的载荷"""

    model_config = ConfigDict(frozen=True)

    theorem: TheoremId
    rational_theorem: TheoremId
    n: int
    eta: float
    k: float
    beta_moduli: List[float]
    differences: List[float]
    monotone: bool
    final_difference: float

    @property
    def passed(self) -> bool:
        return self.monotone and math.isfinite(self.final_difference)


def limit_recovery_sweep(
    n: int,
    eta: float,
    k: float,
    poly: Polynomial,
    beta_moduli: Sequence[float] = DEFAULT_BETA_MODULI,
    grid: Optional[CircleGrid] = None,
    settings: Settings = DEFAULT_SETTINGS,
) -> LimitReport:
    """对一串递增的 |β| 运行 limit_recovery_check，并检查差值单调不增"""
    moduli = sorted(float(b) for b in beta_moduli)
    differences = [limit_recovery_check(n, eta, k, poly, b, grid, settings) for b in moduli]
    monotone = all(later <= earlier for earlier, later in zip(differences, differences[1:]))
    theorem_id, rational_id = _limit_pair(k)
    return LimitReport(
        theorem=theorem_id,
        rational_theorem=rational_id,
        n=n,
        eta=eta,
        k=k,
        beta_moduli=moduli,
        differences=differences,
        monotone=monotone,
        final_difference=differences[-1],
    )
