import cmath  # 复数运算
import logging  # 标准日志
import math  # 闭式两边
from typing import List, Optional  # 类型标注

import numpy as np  # 带种子的随机数
from pydantic import BaseModel, ConfigDict  # 结果模型

from algebra.errors import DEGENERATE_DENOMINATOR, DomainError  # 领域错误
from algebra.polynomial import ComplexLike, to_complex  # 复数转换
from config.settings import DEFAULT_SETTINGS, Settings  # 容差
from theorems.lemmas import lemma1_rhs, lemma2_rhs, product_lhs  # 引理两边

logger = logging.getLogger(__name__)

# 各扫描使用的子流编号，与种子一起构成 SeedSequence
_LEMMA1_STREAM = 1
_LEMMA2_STREAM = 2
_ROOT_STEP_STREAM = 3
_POLE_STEP_STREAM = 4


class StepCheck(BaseModel):
    """单个证明步骤不等式的检查结果；bool(StepCheck) 即 holds"""

    model_config = ConfigDict(frozen=True)

    holds: bool
    lhs: float
    rhs: float
    degenerate: bool = False
    warnings: List[str] = []

    def __bool__(self) -> bool:
        return self.holds


class SweepSummary(BaseModel):
    """一次随机扫描的汇总"""

    model_config = ConfigDict(frozen=True)

    name: str
    samples: int
    violations: int
    # min(lhs − rhs)
    worst_margin: float
    # 等号情形的最大 |lhs − rhs|
    equality_residual: float
    equality_samples: int
    degenerate: int = 0

    @property
    def passed(self) -> bool:
        return self.violations == 0


class LemmaCheckSummary(BaseModel):
    """lemmas 子命令的载荷"""

    model_config = ConfigDict(frozen=True)

    seed: int
    samples: int
    sweeps: List[SweepSummary]
    passed: bool


def check_root_ratio_step(
    eta: float, eta_j: float, delta: float, tol: Optional[float] = None
) -> StepCheck:
    """|ηe^{iδ} − ηⱼ| / |e^{iδ} − ηⱼ| ≥ (η + ηⱼ)/(1 + ηⱼ)，δ = θ − θⱼ"""
    tol = DEFAULT_SETTINGS.step_tol if tol is None else tol
    if not 0.0 <= eta <= 1.0:
        raise DomainError(f"eta={eta!r} outside [0, 1]")
    if eta_j < 1.0:
        raise DomainError(f"eta_j={eta_j!r} < 1")

    rhs = (eta + eta_j) / (1.0 + eta_j)
    # 1 − cos δ = 2 sin²(δ/2)，避免 δ ≈ 0 时的相消
    half = math.sin(delta / 2.0) ** 2
    numerator = (eta_j - eta) ** 2 + 4.0 * eta * eta_j * half
    denominator = (eta_j - 1.0) ** 2 + 4.0 * eta_j * half
    if denominator == 0.0:
        # ηⱼ = 1 且 δ = 0：左边分母为 0，不等式空洞成立
        return StepCheck(
            holds=True, lhs=math.inf, rhs=rhs, degenerate=True, warnings=[DEGENERATE_DENOMINATOR]
        )

    lhs = math.sqrt(numerator / denominator)
    return StepCheck(holds=lhs >= rhs - tol, lhs=lhs, rhs=rhs)


def check_pole_ratio_step(
    eta: float, beta: ComplexLike, theta: float, tol: Optional[float] = None
) -> StepCheck:
    """|e^{iθ} − β| / |ηe^{iθ} − β| ≥ (|β| − 1)/(|β| + η)，|β| > 1"""
    tol = DEFAULT_SETTINGS.step_tol if tol is None else tol
    beta = to_complex(beta)
    modulus = abs(beta)
    if modulus <= 1.0:
        raise DomainError(f"|beta|={modulus!r} <= 1")

    unit = cmath.exp(1j * theta)
    lhs = abs(unit - beta) / abs(eta * unit - beta)
    rhs = (modulus - 1.0) / (modulus + eta)
    return StepCheck(holds=lhs >= rhs - tol, lhs=lhs, rhs=rhs)


def _summary(
    name: str,
    margins: List[float],
    residuals: List[float],
    degenerate: int,
    tol: float,
) -> SweepSummary:
    violations = sum(1 for m in margins if m < -tol)
    summary = SweepSummary(
        name=name,
        samples=len(margins),
        violations=violations,
        worst_margin=min(margins) if margins else math.inf,
        equality_residual=max(residuals) if residuals else 0.0,
        equality_samples=len(residuals),
        degenerate=degenerate,
    )
    if violations:
        logger.warning("%s: %d of %d samples violate the inequality", name, violations, len(margins))
    return summary


def lemma_sweep(
    samples: int,
    seed: int,
    n_max: int = 8,
    moduli_max: float = 10.0,
    k_max: float = 3.0,
    tol: Optional[float] = None,
    threshold: Optional[int] = None,
) -> List[SweepSummary]:
    """两条引理的随机扫描：product_lhs ≥ rhs − tol；n = 1 时记录等号残差"""
    tol = DEFAULT_SETTINGS.step_tol if tol is None else tol
    results: List[SweepSummary] = []

    rng = np.random.default_rng([seed, _LEMMA1_STREAM])
    margins: List[float] = []
    residuals: List[float] = []
    for _ in range(samples):
        eta = float(rng.uniform(0.0, 1.0))
        n = int(rng.integers(1, n_max + 1))
        moduli = rng.uniform(1.0, moduli_max, size=n).tolist()
        margin = product_lhs(eta, moduli, threshold) - lemma1_rhs(eta, moduli, threshold)
        margins.append(margin)
        if n == 1:
            residuals.append(abs(margin))
    results.append(_summary("lemma1", margins, residuals, 0, tol))

    rng = np.random.default_rng([seed, _LEMMA2_STREAM])
    margins, residuals = [], []
    for _ in range(samples):
        eta = float(rng.uniform(0.0, 1.0))
        k = float(rng.uniform(1.0, k_max))
        n = int(rng.integers(1, n_max + 1))
        moduli = rng.uniform(k, moduli_max, size=n).tolist()
        margin = product_lhs(eta, moduli, threshold) - lemma2_rhs(eta, k, moduli, threshold)
        margins.append(margin)
        if n == 1:
            residuals.append(abs(margin))
    results.append(_summary("lemma2", margins, residuals, 0, tol))
    return results


def proof_step_sweep(
    samples: int,
    seed: int,
    moduli_max: float = 10.0,
    pole_margin: Optional[float] = None,
    tol: Optional[float] = None,
) -> List[SweepSummary]:
    """根比值步骤与极点比值步骤的随机扫描，并在等号位置检查残差"""
    tol = DEFAULT_SETTINGS.step_tol if tol is None else tol
    pole_margin = DEFAULT_SETTINGS.pole_margin if pole_margin is None else pole_margin
    results: List[SweepSummary] = []

    rng = np.random.default_rng([seed, _ROOT_STEP_STREAM])
    margins: List[float] = []
    residuals: List[float] = []
    degenerate = 0
    for _ in range(samples):
        eta = float(rng.uniform(0.0, 1.0))
        eta_j = float(rng.uniform(1.0, moduli_max))
        delta = float(rng.uniform(0.0, 2.0 * math.pi))
        check = check_root_ratio_step(eta, eta_j, delta, tol)
        if check.degenerate:
            degenerate += 1
            continue
        margins.append(check.lhs - check.rhs)
        # δ = π 时两边相等
        antipodal = check_root_ratio_step(eta, eta_j, math.pi, tol)
        residuals.append(abs(antipodal.lhs - antipodal.rhs))
    results.append(_summary("root_ratio_step", margins, residuals, degenerate, tol))

    rng = np.random.default_rng([seed, _POLE_STEP_STREAM])
    margins, residuals = [], []
    for _ in range(samples):
        eta = float(rng.uniform(0.0, 1.0))
        modulus = float(rng.uniform(1.0 + pole_margin, moduli_max))
        angle = float(rng.uniform(0.0, 2.0 * math.pi))
        theta = float(rng.uniform(0.0, 2.0 * math.pi))
        beta = cmath.rect(modulus, angle)
        check = check_pole_ratio_step(eta, beta, theta, tol)
        margins.append(check.lhs - check.rhs)
        # η = 0 且 θ = arg β 时两边相等
        aligned = check_pole_ratio_step(0.0, beta, angle, tol)
        residuals.append(abs(aligned.lhs - aligned.rhs))
    results.append(_summary("pole_ratio_step", margins, residuals, 0, tol))
    return results


def run_lemma_checks(samples: int, seed: int, settings: Settings = DEFAULT_SETTINGS) -> LemmaCheckSummary:
    """lemmas 子命令：引理扫描 + 证明步骤扫描，容差取自 settings"""
    tol = settings.step_tol
    sweeps = lemma_sweep(samples, seed, tol=tol, threshold=settings.log_space_threshold)
    sweeps += proof_step_sweep(samples, seed, pole_margin=settings.pole_margin, tol=tol)
    passed = all(s.violations == 0 and s.equality_residual <= tol for s in sweeps)
    logger.info("lemma checks: %d samples per sweep, passed=%s", samples, passed)
    return LemmaCheckSummary(seed=seed, samples=samples, sweeps=sweeps, passed=passed)
