import cmath  # 极坐标构造
import logging  # 标准日志
from typing import Any, List, Optional, Sequence, Tuple, Union  # 类型标注

import numpy as np  # 卷积与向量化求值
from pydantic import BaseModel, ConfigDict, field_validator  # 不可变数据模型

from algebra.errors import DegenerateLeading, PreconditionError  # 领域错误
from config.settings import DEFAULT_SETTINGS  # 默认容差
from utils.numeric import stable_product  # 稳定连乘

logger = logging.getLogger(__name__)

# 支持的复数输入：内置数值、[re, im] 对、{"re":, "im":} 字典
ComplexLike = Union[complex, float, int, Sequence[float]]
# 单点或 numpy 数组
ComplexArg = Union[complex, float, int, np.ndarray]


def to_complex(value: Any) -> complex:
    """把各种复数写法统一转为内置 complex"""
    if isinstance(value, bool):
        raise ValueError(f"Not a complex number: {value!r}")
    if isinstance(value, (complex, float, int, np.number)):
        return complex(value)
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return complex(float(value[0]), float(value[1]))
    if isinstance(value, dict) and set(value) == {"re", "im"}:
        return complex(float(value["re"]), float(value["im"]))
    raise ValueError(f"Not a complex number: {value!r}")


def _coerce_complex_tuple(value: Any) -> Tuple[complex, ...]:
    if isinstance(value, np.ndarray):
        value = value.tolist()
    return tuple(to_complex(v) for v in value)


class Polynomial(BaseModel):
    """f(z) = Σ αⱼ zʲ，coeffs[j] = αⱼ（升幂排列）"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    coeffs: Tuple[complex, ...]

    @field_validator("coeffs", mode="before")
    @classmethod
    def _coerce_coeffs(cls, value: Any) -> Tuple[complex, ...]:
        items = _coerce_complex_tuple(value)
        if not items:
            raise ValueError("Polynomial needs at least one coefficient")
        return items

    def array(self) -> np.ndarray:
        """系数的 numpy 视图（升幂）"""
        return np.asarray(self.coeffs, dtype=complex)

    def max_modulus(self) -> float:
        return max(abs(c) for c in self.coeffs)

    def degree(self, tol: Optional[float] = None) -> int:
        """最高的 |αⱼ| > tol·max|α| 的下标；零多项式记为 0"""
        tol = DEFAULT_SETTINGS.degeneracy_tol if tol is None else tol
        threshold = tol * self.max_modulus()
        for j in range(len(self.coeffs) - 1, -1, -1):
            if abs(self.coeffs[j]) > threshold:
                return j
        return 0

    def is_zero(self) -> bool:
        return self.max_modulus() == 0.0

    def __call__(self, z: ComplexArg) -> Union[complex, np.ndarray]:
        return poly_eval(self, z)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        size = max(len(self.coeffs), len(other.coeffs))
        padded = [0j] * size
        for j, c in enumerate(self.coeffs):
            padded[j] += c
        for j, c in enumerate(other.coeffs):
            padded[j] += c
        return Polynomial(coeffs=padded)


class RootForm(BaseModel):
    """f(z) = c·∏(z − zⱼ)，zⱼ = ηⱼ e^{iθⱼ}"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    leading: complex
    roots: Tuple[complex, ...] = ()

    @field_validator("leading", mode="before")
    @classmethod
    def _coerce_leading(cls, value: Any) -> complex:
        return to_complex(value)

    @field_validator("roots", mode="before")
    @classmethod
    def _coerce_roots(cls, value: Any) -> Tuple[complex, ...]:
        return _coerce_complex_tuple(value)

    @classmethod
    def from_polar(
        cls, leading: ComplexLike, moduli: Sequence[float], angles: Sequence[float]
    ) -> "RootForm":
        """由模长 ηⱼ 与辐角 θⱼ 构造"""
        if len(moduli) != len(angles):
            raise PreconditionError("moduli and angles must have equal length")
        roots = [cmath.rect(float(m), float(a)) for m, a in zip(moduli, angles)]
        return cls(leading=to_complex(leading), roots=roots)

    @property
    def n(self) -> int:
        return len(self.roots)

    def moduli(self) -> List[float]:
        """ηⱼ"""
        return [abs(r) for r in self.roots]

    def modulus_product(self, threshold: Optional[int] = None) -> float:
        """η₁η₂⋯ηₙ；c ≠ 0 时等于 |α₀|/|αₙ|"""
        threshold = DEFAULT_SETTINGS.log_space_threshold if threshold is None else threshold
        return stable_product(self.moduli(), threshold)

    def evaluate(self, z: ComplexArg) -> Union[complex, np.ndarray]:
        """乘积形式 c·∏(z − zⱼ)；高次时比展开后的系数稳定"""
        if isinstance(z, np.ndarray):
            acc = np.full(z.shape, self.leading, dtype=complex)
            for root in self.roots:
                acc = acc * (z - root)
            return acc
        point = to_complex(z)
        value = self.leading
        for root in self.roots:
            value *= point - root
        return value

    def to_polynomial(self) -> Polynomial:
        return poly_from_roots(self.leading, self.roots)


def poly_from_roots(leading: ComplexLike, roots: Sequence[ComplexLike]) -> Polynomial:
    """逐个乘上线性因子 (z − zⱼ)，O(n²) 顺序卷积"""
    coeffs = np.array([to_complex(leading)], dtype=complex)
    for root in roots:
        # 升幂系数的卷积即多项式乘法
        coeffs = np.convolve(coeffs, np.array([-to_complex(root), 1.0 + 0j]))
    return Polynomial(coeffs=coeffs)


def poly_eval(p: Polynomial, z: ComplexArg) -> Union[complex, np.ndarray]:
    """秦九韶（嵌套乘法）求值；z 可以是标量或 numpy 数组"""
    if isinstance(z, np.ndarray):
        zz = z.astype(complex, copy=False)
        acc = np.zeros_like(zz)
        for c in reversed(p.coeffs):
            acc = acc * zz + c
        return acc

    point = to_complex(z)
    value = 0j
    for c in reversed(p.coeffs):
        value = value * point + c
    return value


def poly_coeff_moduli(
    p: Polynomial, n: Optional[int] = None, tol: Optional[float] = None
) -> Tuple[float, float]:
    """返回 (|α₀|, |αₙ|)；给定 n 时要求次数恰为 n，否则 DegenerateLeading"""
    tol = DEFAULT_SETTINGS.degeneracy_tol if tol is None else tol
    if n is None:
        n = p.degree(tol)
        return abs(p.coeffs[0]), abs(p.coeffs[n])

    threshold = tol * p.max_modulus()
    if n < 0:
        raise PreconditionError(f"degree must be nonnegative, got n={n}")
    if n >= len(p.coeffs) or abs(p.coeffs[n]) <= threshold:
        top = abs(p.coeffs[n]) if n < len(p.coeffs) else 0.0
        logger.debug("degenerate leading coefficient: n=%d |a_n|=%g threshold=%g", n, top, threshold)
        raise DegenerateLeading(
            f"|alpha_{n}| = {top!r} is not above {threshold!r}; degree {n} is not attained"
        )
    if any(abs(c) > threshold for c in p.coeffs[n + 1 :]):
        raise PreconditionError(f"polynomial degree exceeds the nominal n={n}")
    return abs(p.coeffs[0]), abs(p.coeffs[n])
