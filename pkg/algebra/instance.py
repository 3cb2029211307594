import hashlib  # 实例摘要
import json  # 规范化序列化
from typing import Any, Dict, List, Optional, Sequence, Tuple  # 类型标注

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator  # 数据模型

from algebra.errors import DegenerateLeading, InstanceFormatError  # 领域错误
from algebra.polynomial import ComplexLike, Polynomial, RootForm, poly_coeff_moduli, to_complex  # 多项式层
from algebra.rational import PoleSet, RationalFunction  # 有理函数层


def _pair(z: complex) -> List[float]:
    return [float(z.real), float(z.imag)]


class Instance(BaseModel):
    """一个待验证的实例：分子（系数或根形式）+ 极点 + 可选的零点半径 k"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    n: int = Field(ge=1)
    numerator: Polynomial
    # 由根构造时保留根形式，零点假设可直接检查
    root_form: Optional[RootForm] = None
    poles: PoleSet = PoleSet()
    k: Optional[float] = Field(default=None, ge=1.0)

    @model_validator(mode="after")
    def _check_shape(self) -> "Instance":
        if self.poles.n and self.poles.n != self.n:
            raise ValueError(f"instance declares n={self.n} but has {self.poles.n} poles")
        degree = self.numerator.degree(0.0)
        if degree > self.n:
            raise ValueError(f"numerator degree {degree} exceeds n={self.n}")
        if self.root_form is not None and self.root_form.n > self.n:
            raise ValueError(f"instance declares n={self.n} but has {self.root_form.n} roots")
        return self

    @classmethod
    def from_roots(
        cls,
        root_form: RootForm,
        poles: Sequence[ComplexLike] = (),
        k: Optional[float] = None,
        n: Optional[int] = None,
    ) -> "Instance":
        return cls(
            n=root_form.n if n is None else n,
            numerator=root_form.to_polynomial(),
            root_form=root_form,
            poles=PoleSet(poles=poles),
            k=k,
        )

    @classmethod
    def from_coeffs(
        cls,
        coeffs: Sequence[ComplexLike],
        poles: Sequence[ComplexLike] = (),
        k: Optional[float] = None,
        n: Optional[int] = None,
    ) -> "Instance":
        numerator = Polynomial(coeffs=coeffs)
        if n is None:
            n = len(poles) if len(poles) else numerator.degree(0.0)
        return cls(n=n, numerator=numerator, poles=PoleSet(poles=poles), k=k)

    def rational(self) -> RationalFunction:
        """r = f/w"""
        return RationalFunction(numerator=self.numerator, poles=self.poles, roots=self.root_form)

    def polynomial_view(self) -> RationalFunction:
        """只看分子（w ≡ 1），供多项式定理使用"""
        return RationalFunction(numerator=self.numerator, roots=self.root_form)

    def coefficient_moduli(
        self, tol: Optional[float] = None, threshold: Optional[int] = None
    ) -> Tuple[float, float]:
        """(|α₀|, |αₙ|)；根形式直接取 |c|·∏ηⱼ 与 |c|，系数形式按 tol 判定首项"""
        if self.root_form is None:
            return poly_coeff_moduli(self.numerator, self.n, tol)
        if self.root_form.leading == 0 or self.root_form.n < self.n:
            raise DegenerateLeading(
                f"root form has {self.root_form.n} roots and leading {self.root_form.leading!r}; "
                f"degree {self.n} is not attained"
            )
        scale = abs(self.root_form.leading)
        return scale * self.root_form.modulus_product(threshold), scale

    def to_document(self) -> Dict[str, Any]:
        """实例文件格式：n / numerator / poles / 可选 k"""
        if self.root_form is not None:
            numerator: Dict[str, Any] = {
                "roots": {
                    "leading": _pair(self.root_form.leading),
                    "roots": [_pair(z) for z in self.root_form.roots],
                }
            }
        else:
            numerator = {"coeffs": [_pair(c) for c in self.numerator.coeffs]}
        document: Dict[str, Any] = {
            "n": self.n,
            "numerator": numerator,
            "poles": [_pair(b) for b in self.poles.poles],
        }
        if self.k is not None:
            document["k"] = float(self.k)
        return document

    @classmethod
    def from_document(cls, document: Any) -> "Instance":
        """解析实例文件内容；字段缺失或类型不符抛 InstanceFormatError"""
        if not isinstance(document, dict):
            raise InstanceFormatError("instance document must be a mapping")
        for field in ("n", "numerator", "poles"):
            if field not in document:
                raise InstanceFormatError(f"instance document is missing field '{field}'")

        numerator = document["numerator"]
        if not isinstance(numerator, dict) or not ({"coeffs", "roots"} & set(numerator)):
            raise InstanceFormatError("'numerator' must hold either 'coeffs' or 'roots'")
        try:
            n = int(document["n"])
            poles = [to_complex(b) for b in document["poles"] or []]
            k = document.get("k")
            k = None if k is None else float(k)
            if "roots" in numerator:
                roots_doc = numerator["roots"]
                if not isinstance(roots_doc, dict) or "leading" not in roots_doc:
                    raise InstanceFormatError("'numerator.roots' needs 'leading' and 'roots'")
                root_form = RootForm(leading=roots_doc["leading"], roots=roots_doc.get("roots") or [])
                return cls.from_roots(root_form, poles, k=k, n=n)
            return cls.from_coeffs(numerator["coeffs"], poles, k=k, n=n)
        except InstanceFormatError:
            raise
        except (TypeError, ValueError, ValidationError) as exc:
            raise InstanceFormatError(f"malformed instance document: {exc}") from exc

    def digest(self) -> str:
        """规范化文档的 SHA-256，用作报告中的实例来源"""
        canonical = json.dumps(self.to_document(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()
