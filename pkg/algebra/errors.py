class RatgrowError(ValueError):
    """所有领域错误的基类"""


class DegenerateLeading(RatgrowError):
    """名义最高次系数低于退化容差，次数 n 不确定，系数类界不可用"""


class PoleHit(RatgrowError):
    """求值点与某个极点的距离低于容差"""


class PoleOnCircle(RatgrowError):
    """极点模长 ≤ 1，不属于 |β| > 1 的极点配置"""


class DomainError(RatgrowError):
    """参数落在公式定义域之外"""


class AllSkipped(RatgrowError):
    """圆周网格上所有点都是空洞点（分子恒为 0）"""


class PreconditionError(RatgrowError):
    """调用方违反了操作的前置条件"""


class HypothesisUnmet(RatgrowError):
    """实例不满足定理的零点 / 极点假设"""


class InstanceFormatError(RatgrowError):
    """实例文件字段缺失或格式不符"""


# 非致命状态：以字符串代码挂在结果模型上，不抛出
HYPOTHESIS_WARNING = "HypothesisWarning"
DEGENERATE_DENOMINATOR = "DegenerateDenominator"
