import dataclasses
import functools
from fractions import Fraction
from typing import Tuple

import sympy
from sympy import Poly, QQ

from .laurent import LaurentPoly, to_fraction

Z = sympy.Symbol("z")


@functools.lru_cache(maxsize=None)
def cyclotomic_modulus(order: int) -> Poly:
    return Poly(sympy.cyclotomic_poly(order, Z), Z, domain=QQ)


@dataclasses.dataclass(frozen=True)
class CyclotomicValue:
    """Element of ℚ(ζ_order), as a polynomial in ζ reduced modulo the cyclotomic polynomial."""
    order: int
    rep: Poly

    @property
    def is_zero(self) -> bool:
        return self.rep.is_zero

    def norm(self) -> Fraction:
        """Field norm down to ℚ; zero exactly when the value is zero."""
        if self.is_zero:
            return Fraction(0)
        return to_fraction(sympy.resultant(cyclotomic_modulus(self.order), self.rep))

    def __str__(self):
        return str(self.rep.as_expr()).replace("z", "ζ")


def eval_root_of_unity(f: LaurentPoly, order: int, index: int) -> Tuple[CyclotomicValue, bool]:
    """
    Evaluate f exactly at ζ_order^index.

    :param f: Laurent polynomial
    :param order: Order d >= 1 of the root of unity
    :param index: Exponent r; reduced modulo d
    :return: Value in the cyclotomic field of order d and whether it is zero
    """
    if order < 1:
        raise ValueError("Order of a root of unity must be positive")
    terms = {}
    for exponent, coefficient in f.terms():
        power = (exponent * index) % order
        terms[power] = terms.get(power, 0) + coefficient
    rep = Poly.from_dict({(power,): sympy.Rational(c.numerator, c.denominator)
                          for power, c in terms.items()} or {(0,): 0}, Z, domain=QQ)
    value = CyclotomicValue(order, rep.rem(cyclotomic_modulus(order)))
    return value, value.is_zero
