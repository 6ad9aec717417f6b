import dataclasses
import math
import re
from fractions import Fraction
from typing import Mapping, Iterator, Tuple, Union, Optional, Iterable

import sympy
from sympy import Poly, QQ

Rational = Union[int, Fraction]

T = sympy.Symbol("t")

TERM_PATTERN = re.compile(
    r"(?P<sign>[+-])?"
    r"(?:\((?P<pcoeff>\d+/\d+)\)|(?P<coeff>\d+(?:/\d+)?))?"
    r"\*?"
    r"(?:(?P<var>t)(?:\^\(?(?P<exp>-?\d+)\)?)?)?"
)


def to_fraction(value) -> Fraction:
    """Convert int, Fraction, str or sympy rational to Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    value = sympy.Rational(value)
    return Fraction(int(value.p), int(value.q))


def format_rational(value: Fraction) -> str:
    """Write a rational as "num/den", also when the denominator is 1."""
    return f"{value.numerator}/{value.denominator}"


class LaurentPoly:
    """Polynomial in t and 1/t with rational coefficients.

    Instances are immutable. Zero coefficients are never stored.
    Alexander polynomials are only defined up to ±t^k; use canonical()
    to pick the representative with minimal exponent 0 and positive
    leading coefficient.
    """
    __slots__ = "_coeffs", "_hash"

    def __init__(self, coeffs: Union[Mapping[int, Rational], Iterable[Tuple[int, Rational]]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        clean = {}
        for exponent, coefficient in items:
            exponent = int(exponent)
            coefficient = clean.get(exponent, 0) + to_fraction(coefficient)
            if coefficient:
                clean[exponent] = coefficient
            else:
                clean.pop(exponent, None)
        self._coeffs = dict(sorted(clean.items()))
        self._hash = None

    @classmethod
    def constant(cls, value: Rational) -> "LaurentPoly":
        return cls({0: value})

    @classmethod
    def monomial(cls, coefficient: Rational = 1, exponent: int = 1) -> "LaurentPoly":
        return cls({exponent: coefficient})

    @classmethod
    def from_coefficients(cls, coefficients: Iterable[Rational], shift: int = 0) -> "LaurentPoly":
        """Build from coefficients listed by ascending exponent, starting at t^shift."""
        return cls({shift + i: c for i, c in enumerate(coefficients)})

    @classmethod
    def from_poly(cls, poly: Poly, shift: int = 0) -> "LaurentPoly":
        """Convert a univariate sympy Poly, multiplied by t^shift."""
        coeffs = {}
        for (exponent,), coefficient in poly.terms():
            coeffs[exponent + shift] = to_fraction(coefficient)
        return cls(coeffs)

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly":
        """Parse strings like "2t^2-5t+2", "t^-1 - 3 + t" or "(1/2)t^2"."""
        cleaned = text.replace(" ", "").replace("**", "^")
        if not cleaned:
            raise ValueError("Empty polynomial")
        cleaned = re.sub(r"\^\(?-", "^~", cleaned)
        pieces = re.findall(r"[+-]?[^+-]+", cleaned)
        if "".join(pieces) != cleaned:
            raise ValueError(f"Can't parse polynomial {text!r}")
        coeffs = []
        for piece in pieces:
            match = TERM_PATTERN.fullmatch(piece.replace("^~", "^-"))
            if not match or not (match["coeff"] or match["pcoeff"] or match["var"]):
                raise ValueError(f"Can't parse term {piece!r} in {text!r}")
            coefficient = Fraction(match["pcoeff"] or match["coeff"] or 1)
            if match["sign"] == "-":
                coefficient = -coefficient
            if match["var"]:
                exponent = int(match["exp"]) if match["exp"] is not None else 1
            else:
                exponent = 0
            coeffs.append((exponent, coefficient))
        return cls(coeffs)

    @classmethod
    def from_json(cls, data: Mapping) -> "LaurentPoly":
        return cls((int(exponent), Fraction(coefficient)) for exponent, coefficient in data["terms"])

    def to_json(self) -> dict:
        return {"terms": [[exponent, format_rational(c)] for exponent, c in self._coeffs.items()]}

    @property
    def coeffs(self) -> Mapping[int, Fraction]:
        return dict(self._coeffs)

    def terms(self) -> Iterator[Tuple[int, Fraction]]:
        return iter(self._coeffs.items())

    def coefficient(self, exponent: int) -> Fraction:
        return self._coeffs.get(exponent, Fraction(0))

    @property
    def min_exponent(self) -> int:
        return next(iter(self._coeffs)) if self._coeffs else 0

    @property
    def max_exponent(self) -> int:
        return next(reversed(self._coeffs)) if self._coeffs else 0

    @property
    def span(self) -> int:
        """Difference between highest and lowest exponent (degree of the canonical form)."""
        return self.max_exponent - self.min_exponent

    degree = span

    @property
    def leading_coefficient(self) -> Fraction:
        return self._coeffs[self.max_exponent] if self._coeffs else Fraction(0)

    @property
    def trailing_coefficient(self) -> Fraction:
        return self._coeffs[self.min_exponent] if self._coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self._coeffs

    def is_constant(self) -> bool:
        return not self._coeffs or set(self._coeffs) == {0}

    def is_unit(self) -> bool:
        """Units of the Laurent ring are c·t^k with c ≠ 0."""
        return len(self._coeffs) == 1

    def __bool__(self):
        return bool(self._coeffs)

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._coeffs == other._coeffs
        elif isinstance(other, (int, Fraction)):
            return self._coeffs == LaurentPoly.constant(other)._coeffs
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._coeffs.items()))
        return self._hash

    def __repr__(self):
        return f"{self.__class__.__name__}({str(self)!r})"

    def __str__(self):
        if not self._coeffs:
            return "0"
        output = []
        for exponent, coefficient in reversed(self._coeffs.items()):
            sign = "-" if coefficient < 0 else "+"
            magnitude = abs(coefficient)
            if exponent == 0:
                body = str(magnitude)
            else:
                if magnitude == 1:
                    number = ""
                elif magnitude.denominator == 1:
                    number = str(magnitude)
                else:
                    number = f"({magnitude})"
                body = number + ("t" if exponent == 1 else f"t^{exponent}")
            output.append(sign + body)
        text = "".join(output)
        return text[1:] if text.startswith("+") else text

    @staticmethod
    def _coerce(other) -> Optional["LaurentPoly"]:
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.constant(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return LaurentPoly(list(self._coeffs.items()) + list(other._coeffs.items()))

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self._coeffs.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        product = {}
        for e1, c1 in self._coeffs.items():
            for e2, c2 in other._coeffs.items():
                product[e1 + e2] = product.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(product)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if not self.is_unit():
                raise ValueError("Only units can be raised to a negative power")
            (exponent, coefficient), = self._coeffs.items()
            return LaurentPoly({exponent * n: coefficient ** n})
        result = LaurentPoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __call__(self, x: Rational) -> Fraction:
        return self.evaluate(x)

    def evaluate(self, x: Rational) -> Fraction:
        x = to_fraction(x)
        if x == 0 and self.min_exponent < 0:
            raise ZeroDivisionError("Negative powers of t at t=0")
        return sum((c * x ** e for e, c in self._coeffs.items()), Fraction(0))

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by t^k."""
        return LaurentPoly({e + k: c for e, c in self._coeffs.items()})

    def scale(self, factor: Rational) -> "LaurentPoly":
        return LaurentPoly({e: c * factor for e, c in self._coeffs.items()})

    def conjugate(self) -> "LaurentPoly":
        """Substitute t -> 1/t."""
        return LaurentPoly({-e: c for e, c in self._coeffs.items()})

    def canonical(self) -> "LaurentPoly":
        """Representative up to ±t^k: lowest exponent 0, positive leading coefficient."""
        if not self._coeffs:
            return self
        shifted = self.shift(-self.min_exponent)
        return -shifted if shifted.leading_coefficient < 0 else shifted

    def primitive(self) -> "LaurentPoly":
        """Canonical form scaled to coprime integer coefficients."""
        canonical = self.canonical()
        if not canonical:
            return canonical
        denominators = math.lcm(*(c.denominator for c in canonical._coeffs.values()))
        numerators = math.gcd(*(int(c * denominators) for c in canonical._coeffs.values()))
        return canonical.scale(Fraction(denominators, numerators))

    def monic(self) -> "LaurentPoly":
        canonical = self.canonical()
        if not canonical:
            return canonical
        return canonical.scale(1 / canonical.leading_coefficient)

    def reciprocal(self) -> "LaurentPoly":
        """The canonical form of f(1/t)."""
        return self.conjugate().canonical()

    def is_reciprocal(self) -> bool:
        """Check whether f(1/t) = ±t^k f(t)."""
        return self.canonical() == self.reciprocal()

    def to_poly(self) -> Poly:
        """Sympy polynomial of t^(-min exponent)·f, an ordinary polynomial."""
        shift = self.min_exponent
        return Poly.from_dict({(e - shift,): sympy.Rational(c.numerator, c.denominator)
                               for e, c in self._coeffs.items()} or {(0,): 0}, T, domain=QQ)

    def exact_div(self, other: "LaurentPoly") -> Optional["LaurentPoly"]:
        """Quotient in the Laurent ring, or None when other does not divide self."""
        if not other:
            raise ZeroDivisionError("Division by zero polynomial")
        if not self:
            return self
        quotient, remainder = self.to_poly().div(other.to_poly())
        if not remainder.is_zero:
            return None
        return LaurentPoly.from_poly(quotient, self.min_exponent - other.min_exponent)


ZERO = LaurentPoly()
ONE = LaurentPoly.constant(1)


def gcd_poly(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    """Greatest common divisor up to units ±t^k.

    gcd(f, 0) is canonical(f). Otherwise the result is primitive:
    coprime integer coefficients, positive leading coefficient.
    """
    if not g:
        return f.canonical()
    if not f:
        return g.canonical()
    return LaurentPoly.from_poly(f.to_poly().gcd(g.to_poly())).primitive()


def coprime(f: LaurentPoly, g: LaurentPoly) -> bool:
    """Check that gcd(f, g) is a unit."""
    if not f or not g:
        raise ValueError("coprime needs nonzero polynomials")
    return gcd_poly(f, g).is_unit()


@dataclasses.dataclass(frozen=True)
class Factorization:
    """f = sign · content · t^shift · Π factor^multiplicity.

    sign: ±1
    content: positive rational
    shift: power of t split off
    factors: primitive irreducible factors with multiplicities, sorted by (degree, coefficients)
    """
    sign: int
    content: Fraction
    shift: int
    factors: Tuple[Tuple[LaurentPoly, int], ...]

    def __iter__(self):
        return iter(self.factors)

    def __len__(self):
        return len(self.factors)

    def as_dict(self) -> dict:
        return dict(self.factors)

    def expand(self) -> LaurentPoly:
        result = LaurentPoly.monomial(self.sign * self.content, self.shift)
        for factor, multiplicity in self.factors:
            result = result * factor ** multiplicity
        return result

    def is_squarefree(self) -> bool:
        return all(multiplicity == 1 for _, multiplicity in self.factors)


def _factor_key(item):
    factor, multiplicity = item
    return factor.span, [(e, c) for e, c in factor.terms()], multiplicity


def factor_rational(f: LaurentPoly) -> Factorization:
    """Factor into irreducibles over the rationals."""
    if not f:
        raise ValueError("Can't factor the zero polynomial")
    canonical = f.canonical()
    sign = 1 if canonical == f.shift(-f.min_exponent) else -1
    _, factor_list = canonical.to_poly().factor_list()
    factors = []
    leading = Fraction(1)
    for poly, multiplicity in factor_list:
        factor = LaurentPoly.from_poly(poly).primitive()
        factors.append((factor, multiplicity))
        leading *= factor.leading_coefficient ** multiplicity
    content = canonical.leading_coefficient / leading
    return Factorization(sign, content, f.min_exponent, tuple(sorted(factors, key=_factor_key)))


def squarefree_part(f: LaurentPoly) -> LaurentPoly:
    """Product of the distinct irreducible factors of f."""
    result = ONE
    for factor, _ in factor_rational(f):
        result = result * factor
    return result
