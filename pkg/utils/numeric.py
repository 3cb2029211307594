import math  # 对数空间求积
from typing import Iterable  # 类型标注


def int_pow(base: float, exponent: int) -> float:
    """整数次幂：平方求幂，不走通用 pow，保证各平台逐位一致"""
    if exponent < 0:
        return 1.0 / int_pow(base, -exponent)
    result = 1.0
    factor = float(base)
    while exponent:
        if exponent & 1:
            result *= factor
        exponent >>= 1
        if exponent:
            factor *= factor
    return result


def stable_product(values: Iterable[float], threshold: int) -> float:
    """正数连乘：因子较少时直接相乘，超过 threshold 个时在对数空间累加"""
    items = [float(v) for v in values]
    if len(items) <= threshold:
        result = 1.0
        for v in items:
            result *= v
        return result

    if any(v == 0.0 for v in items):
        return 0.0
    if any(v < 0.0 for v in items):
        # 对数空间只处理正因子，符号单独累计
        sign = -1.0 if sum(1 for v in items if v < 0.0) % 2 else 1.0
        return sign * math.exp(math.fsum(math.log(abs(v)) for v in items))
    return math.exp(math.fsum(math.log(v) for v in items))
