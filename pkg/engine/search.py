import logging  # 标准日志
import math  # 黄金分割常数
from typing import Callable, Optional, Tuple  # 类型标注

import numpy as np  # 圆周网格上的向量化求值
from pydantic import BaseModel, ConfigDict, Field  # 网格配置模型

from algebra.errors import AllSkipped  # 全部为空洞点
from algebra.polynomial import Polynomial, poly_eval  # 多项式求值
from algebra.rational import RationalFunction, numerator_eval, w_eval  # 有理函数求值
from config.settings import DEFAULT_SETTINGS, Settings  # 容差策略

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi
# 1/φ，黄金分割收缩比
INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


class CircleGrid(BaseModel):
    """θ 的等距网格 + 黄金分割细化次数"""

    model_config = ConfigDict(frozen=True)

    points: int = Field(default=DEFAULT_SETTINGS.grid_points, ge=16)
    refine_iters: int = Field(default=DEFAULT_SETTINGS.refine_iters, ge=0)

    @property
    def step(self) -> float:
        return TWO_PI / self.points

    def angles(self) -> np.ndarray:
        return TWO_PI * np.arange(self.points) / self.points


class GrowthRatio:
    """|r(ρe^{iθ})| / |r(e^{iθ})| 的求值器（ρ = η 或 ν），带空洞点与极点命中掩码"""

    def __init__(
        self,
        r: RationalFunction,
        radius: float,
        grid: Optional[CircleGrid] = None,
        settings: Settings = DEFAULT_SETTINGS,
    ):
        self.r = r
        # 内圈半径；下界定理为 η，最大模上界为 ν
        self.radius = float(radius)
        self.settings = settings
        grid = grid or CircleGrid()
        # 实例尺度 = 分子最大系数模 / 单位圆上 min|w|；根形式改用到零点的距离判空洞
        unit = np.exp(1j * grid.angles())
        w_min = float(np.min(np.abs(w_eval(r.poles, unit)))) if r.poles.n else 1.0
        self.scale = r.numerator.max_modulus() / w_min if w_min > 0.0 else math.inf
        self.threshold = settings.vacuous_rel * self.scale

    def _vacuous(self, z: np.ndarray, value: np.ndarray) -> np.ndarray:
        roots = self.r.roots
        if roots is None:
            return ~(value > self.threshold)
        near = np.zeros(z.shape, dtype=bool)
        for root in roots.roots:
            near |= np.abs(z - root) <= self.settings.vacuous_rel * max(1.0, abs(root))
        return near | (value == 0.0)

    def _near_pole(self, z: np.ndarray) -> np.ndarray:
        hit = np.zeros(z.shape, dtype=bool)
        for beta in self.r.poles.poles:
            hit |= np.abs(z - beta) <= self.settings.pole_hit_tol
        return hit

    def parts(self, theta: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """返回 (|r(ρz)|, |r(z)|, skipped 掩码)"""
        theta = np.asarray(theta, dtype=float)
        unit = np.exp(1j * theta)
        inner_z = self.radius * unit
        skipped = self._near_pole(unit) | self._near_pole(inner_z)

        with np.errstate(divide="ignore", invalid="ignore"):
            outer = np.abs(numerator_eval(self.r, unit)) / np.abs(w_eval(self.r.poles, unit))
            inner = np.abs(numerator_eval(self.r, inner_z)) / np.abs(w_eval(self.r.poles, inner_z))
        # 空洞点：|r(z)| 可忽略，不等式平凡成立
        skipped |= self._vacuous(unit, outer)
        skipped |= ~np.isfinite(outer) | ~np.isfinite(inner)
        return inner, outer, skipped

    def evaluate(self, theta: np.ndarray) -> np.ndarray:
        """比值；跳过的点记为 +inf"""
        inner, outer, skipped = self.parts(theta)
        with np.errstate(divide="ignore", invalid="ignore"):
            values = inner / outer
        values[skipped] = np.inf
        return values

    def at(self, theta: float) -> float:
        return float(self.evaluate(np.array([theta]))[0])


def golden_section(
    f: Callable[[float], float], a: float, b: float, iters: int
) -> Tuple[float, float]:
    """在 [a, b] 上做 iters 次黄金分割迭代，返回见过的最优 (x, f(x))"""
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    best_x, best_f = (c, fc) if fc <= fd else (d, fd)

    for _ in range(iters):
        if fc <= fd:
            # 极小值落在 [a, d]
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
            if fc < best_f:
                best_x, best_f = c, fc
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
            if fd < best_f:
                best_x, best_f = d, fd
    return best_x, best_f


def grid_then_golden(
    values_fn: Callable[[np.ndarray], np.ndarray], grid: CircleGrid
) -> Tuple[float, float]:
    """网格定位 + 括区细化求周期函数的全局极小；并列时取最小 θ"""
    thetas = grid.angles()
    values = values_fn(thetas)
    if not np.any(np.isfinite(values)):
        raise AllSkipped("every grid point is vacuous")

    # np.argmin 返回第一个极小，即最小的 θ
    i = int(np.argmin(values))
    best_theta, best_value = float(thetas[i]), float(values[i])
    if grid.refine_iters:
        theta, value = golden_section(
            lambda t: float(values_fn(np.array([t]))[0]),
            best_theta - grid.step,
            best_theta + grid.step,
            grid.refine_iters,
        )
        if value < best_value:
            best_theta, best_value = theta, value
    return best_value, best_theta % TWO_PI


def min_ratio_search(
    r: RationalFunction,
    eta: float,
    grid: Optional[CircleGrid] = None,
    settings: Settings = DEFAULT_SETTINGS,
) -> Tuple[float, float]:
    """min_θ |r(ηe^{iθ})/r(e^{iθ})| 及其位置"""
    grid = grid or CircleGrid()
    ratio = GrowthRatio(r, eta, grid, settings)
    value, theta = grid_then_golden(ratio.evaluate, grid)
    logger.debug("min ratio %.17g at theta=%.17g (eta=%g)", value, theta, eta)
    return value, theta


def max_ratio_search(
    r: RationalFunction,
    radius: float,
    grid: Optional[CircleGrid] = None,
    settings: Settings = DEFAULT_SETTINGS,
) -> Tuple[float, float]:
    """max_θ |r(ρe^{iθ})/r(e^{iθ})|；跳过的点不参与"""
    grid = grid or CircleGrid()
    ratio = GrowthRatio(r, radius, grid, settings)

    def negated(theta: np.ndarray) -> np.ndarray:
        values = ratio.evaluate(theta)
        return np.where(np.isfinite(values), -values, np.inf)

    value, theta = grid_then_golden(negated, grid)
    return -value, theta


def max_modulus_search(
    p: Polynomial, radius: float, grid: Optional[CircleGrid] = None
) -> Tuple[float, float]:
    """max_{|z|=ρ} |f(z)| 及其辐角"""
    grid = grid or CircleGrid()

    def negated(theta: np.ndarray) -> np.ndarray:
        return -np.abs(poly_eval(p, radius * np.exp(1j * np.asarray(theta, dtype=float))))

    value, theta = grid_then_golden(negated, grid)
    return -value, theta
