from typing import Optional, Sequence  # 类型标注

from algebra.errors import DomainError  # 定义域错误
from config.settings import DEFAULT_SETTINGS  # 对数空间阈值
from utils.numeric import int_pow, stable_product  # 整数次幂 / 稳定连乘


def _modulus_ratio(product: float, offset: float) -> float:
    """(P − offset)/(P + 1)，P 溢出为 inf 时取极限 1"""
    if product == float("inf"):
        return 1.0
    return (product - offset) / (product + 1.0)


def _threshold(threshold: Optional[int]) -> int:
    return DEFAULT_SETTINGS.log_space_threshold if threshold is None else threshold


def product_lhs(eta: float, root_moduli: Sequence[float], threshold: Optional[int] = None) -> float:
    """∏(ηⱼ+η)/(ηⱼ+1)"""
    return stable_product(((m + eta) / (m + 1.0) for m in root_moduli), _threshold(threshold))


def lemma1_rhs(eta: float, root_moduli: Sequence[float], threshold: Optional[int] = None) -> float:
    """((η+1)/2)ⁿ·[1 + (∏ηⱼ−1)(1−η)/((∏ηⱼ+1)(η+1)ⁿ)]，要求 ηⱼ ≥ 1"""
    for j, m in enumerate(root_moduli):
        if m < 1.0:
            raise DomainError(f"root modulus {j} is {m!r} < 1")
    n = len(root_moduli)
    product = stable_product(root_moduli, _threshold(threshold))
    bracket = (1.0 - eta) / int_pow(eta + 1.0, n) * _modulus_ratio(product, 1.0)
    return int_pow((eta + 1.0) / 2.0, n) * (1.0 + bracket)


def lemma2_rhs(
    eta: float, k: float, root_moduli: Sequence[float], threshold: Optional[int] = None
) -> float:
    """((k+η)/(k+1))ⁿ·[1 + (1/kⁿ⁻¹)·((1−η)/(k+η)ⁿ)·(∏ηⱼ−kⁿ)/(∏ηⱼ+1)]，要求 ηⱼ ≥ k ≥ 1"""
    if k < 1.0:
        raise DomainError(f"k={k!r} < 1")
    for j, m in enumerate(root_moduli):
        if m < k:
            raise DomainError(f"root modulus {j} is {m!r} < k={k!r}")
    n = len(root_moduli)
    product = stable_product(root_moduli, _threshold(threshold))
    bracket = (
        (1.0 - eta)
        / int_pow(k + eta, n)
        * _modulus_ratio(product, int_pow(k, n))
        / int_pow(k, n - 1)
    )
    return int_pow((k + eta) / (k + 1.0), n) * (1.0 + bracket)
