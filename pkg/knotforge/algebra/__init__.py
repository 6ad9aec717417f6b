__all__ = [
    "LaurentPoly",
    "Factorization",
    "gcd_poly",
    "coprime",
    "factor_rational",
    "RealAlgebraicNumber",
    "RealField",
    "FieldElement",
    "certified_sign",
    "AlgebraicAngle",
    "UnitPoint",
    "RootOfUnity",
    "AnglePoint",
    "RootLocus",
    "compact_form",
    "unit_circle_roots",
    "CyclotomicValue",
    "eval_root_of_unity",
]

from .laurent import LaurentPoly, Factorization, gcd_poly, coprime, factor_rational
from .numberfield import RealAlgebraicNumber, RealField, FieldElement, certified_sign
from .unitcircle import AlgebraicAngle, UnitPoint, RootOfUnity, AnglePoint, RootLocus
from .unitcircle import compact_form, unit_circle_roots
from .cyclotomic import CyclotomicValue, eval_root_of_unity
