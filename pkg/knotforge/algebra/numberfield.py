"""
Exact real algebraic numbers and arithmetic in the fields they generate.

Zero tests are exact (normal forms modulo the minimal polynomial). Signs of
nonzero elements are certified with mpmath interval arithmetic, doubling the
working precision until the enclosure excludes zero.
"""
import contextlib
import logging
from fractions import Fraction
from typing import Optional, Tuple, Union, List

import sympy
from mpmath import iv
from mpmath import libmp
from sympy import Poly, QQ

from .laurent import to_fraction
from .realroots import as_sympy, count_roots, isolate_roots, refine_root, root_bound, sturm_sequence
from ..config import Settings, DEFAULT_SETTINGS
from ..exceptions import UncertifiedError

logger = logging.getLogger(__name__)

S = sympy.Symbol("s")

Rational = Union[int, Fraction]


@contextlib.contextmanager
def working_precision(bits: int):
    """Temporarily set the precision of mpmath.iv."""
    old = iv.prec
    iv.prec = bits
    try:
        yield
    finally:
        iv.prec = old


def iv_rational(value: Fraction):
    """Smallest interval enclosing a rational at the current precision."""
    return iv.mpf(value.numerator) / value.denominator


def iv_bounds(value) -> Optional[Tuple[Fraction, Fraction]]:
    """Endpoints of an mpmath interval as Fractions, or None if unbounded."""
    a, b = value._mpi_
    if a in (libmp.fninf, libmp.finf, libmp.fnan) or b in (libmp.fninf, libmp.finf, libmp.fnan):
        return None
    return Fraction(*libmp.to_rational(a)), Fraction(*libmp.to_rational(b))


class RealAlgebraicNumber:
    """A real root of a monic irreducible polynomial, fixed by an isolating interval.

    The interval (lo, hi] contains exactly one root. Instances are never changed:
    refine returns a copy with a narrower interval. Only the Sturm sequence and the
    root index are filled in lazily.
    """
    __slots__ = "minpoly", "_bounds", "_sturm", "_index"

    def __init__(self, minpoly: Poly, lo: Rational, hi: Rational, check: bool = True):
        minpoly = Poly(minpoly, S, domain=QQ).monic()
        self.minpoly = minpoly
        self._bounds = (to_fraction(lo), to_fraction(hi))
        self._sturm = None
        self._index = None
        if check:
            if self.lo >= self.hi:
                raise ValueError(f"Empty isolating interval ({self.lo}, {self.hi}]")
            if not minpoly.is_irreducible:
                raise ValueError(f"{minpoly.as_expr()} is not irreducible")
            if count_roots(self.sturm, self.lo, self.hi) != 1:
                raise ValueError(f"({self.lo}, {self.hi}] does not isolate a root of {minpoly.as_expr()}")

    @classmethod
    def from_rational(cls, value: Rational) -> "RealAlgebraicNumber":
        value = to_fraction(value)
        return cls(Poly(S - as_sympy(value), S, domain=QQ), value - 1, value + 1, check=False)

    @classmethod
    def roots_of(cls, poly: Poly, lo: Rational = None, hi: Rational = None) -> List["RealAlgebraicNumber"]:
        """All real roots of an irreducible polynomial in (lo, hi], ascending."""
        poly = Poly(poly, S, domain=QQ).monic()
        if lo is None or hi is None:
            bound = root_bound(poly)
            lo = -bound if lo is None else lo
            hi = bound if hi is None else hi
        intervals = isolate_roots(poly, to_fraction(lo), to_fraction(hi))
        return [cls(poly, a, b, check=False) for a, b in intervals]

    def __repr__(self):
        return f"{self.__class__.__name__}({self.minpoly.as_expr()}, {self.lo}, {self.hi})"

    def __str__(self):
        if self.is_rational:
            return str(self.rational)
        return f"root of {self.minpoly.as_expr()} in ({self.lo}, {self.hi}]"

    @property
    def lo(self) -> Fraction:
        return self._bounds[0]

    @property
    def hi(self) -> Fraction:
        return self._bounds[1]

    @property
    def sturm(self):
        if self._sturm is None:
            self._sturm = sturm_sequence(self.minpoly)
        return self._sturm

    @property
    def degree(self) -> int:
        return self.minpoly.degree()

    @property
    def is_rational(self) -> bool:
        return self.degree == 1

    @property
    def rational(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self} is irrational")
        return -to_fraction(self.minpoly.TC())

    @property
    def index(self) -> int:
        """Position among the real roots of the minimal polynomial, counting from the smallest."""
        if self._index is None:
            bound = root_bound(self.minpoly)
            self._index = count_roots(self.sturm, -bound, self.lo)
        return self._index

    def refine(self, width: Fraction) -> "RealAlgebraicNumber":
        """The same number with an isolating interval at most width wide."""
        lo, hi = self._bounds
        if hi - lo <= width:
            return self
        if self.is_rational:
            value = self.rational
            lo, hi = value - width / 2, value + width / 2
        else:
            lo, hi = refine_root(self.minpoly, lo, hi, width)
        refined = RealAlgebraicNumber(self.minpoly, lo, hi, check=False)
        refined._sturm, refined._index = self._sturm, self._index
        return refined

    def iv(self):
        """Enclosure of the number at the current mpmath.iv precision."""
        if self.is_rational:
            return iv_rational(self.rational)
        return iv.mpf((iv_rational(self.lo), iv_rational(self.hi)))

    def conjugates(self) -> List["RealAlgebraicNumber"]:
        """All real roots of the minimal polynomial, this one included."""
        return RealAlgebraicNumber.roots_of(self.minpoly)

    def _key(self):
        return tuple(self.minpoly.all_coeffs()), self.index

    def __eq__(self, other):
        if not isinstance(other, RealAlgebraicNumber):
            return NotImplemented
        return self.minpoly == other.minpoly and self.index == other.index

    def __hash__(self):
        return hash(self._key())

    def compare(self, other: "RealAlgebraicNumber") -> int:
        """Exact three-way comparison."""
        if self == other:
            return 0
        a, b = self, other
        while True:
            if a.hi <= b.lo:
                return -1
            if b.hi <= a.lo:
                return 1
            a = a.refine((a.hi - a.lo) / 2)
            b = b.refine((b.hi - b.lo) / 2)

    def compare_rational(self, value: Rational) -> int:
        value = to_fraction(value)
        if self.is_rational:
            rational = self.rational
            return (rational > value) - (rational < value)
        number = self
        while number.lo < value < number.hi:
            number = number.refine((number.hi - number.lo) / 2)
        # value is never a root of an irreducible minpoly of degree > 1
        return 1 if value <= number.lo else -1

    def __lt__(self, other):
        return self.compare(other) < 0

    def __le__(self, other):
        return self.compare(other) <= 0

    def __gt__(self, other):
        return self.compare(other) > 0

    def __ge__(self, other):
        return self.compare(other) >= 0


class RealField:
    """The number field ℚ(α) embedded in the reals through a chosen root α."""
    __slots__ = "generator", "modulus"

    def __init__(self, generator: RealAlgebraicNumber):
        self.generator = generator
        self.modulus = generator.minpoly

    def __repr__(self):
        return f"RealField({self.generator!r})"

    def __eq__(self, other):
        return isinstance(other, RealField) and self.modulus == other.modulus

    def __hash__(self):
        return hash(tuple(self.modulus.all_coeffs()))

    @property
    def degree(self) -> int:
        return self.modulus.degree()

    def __call__(self, value: Union[Rational, Poly, "FieldElement"]) -> "FieldElement":
        if isinstance(value, FieldElement):
            return value
        if isinstance(value, Poly):
            return FieldElement(self, Poly(value.as_expr(), S, domain=QQ))
        return FieldElement(self, Poly(as_sympy(to_fraction(value)), S, domain=QQ))

    @property
    def gen(self) -> "FieldElement":
        return FieldElement(self, Poly(S, S, domain=QQ))

    @property
    def zero(self) -> "FieldElement":
        return self(0)

    @property
    def one(self) -> "FieldElement":
        return self(1)

    def embeddings(self) -> List[RealAlgebraicNumber]:
        """The real conjugates of the generator (all of them for totally real fields)."""
        return self.generator.conjugates()


class FieldElement:
    """Element of a RealField, stored as a polynomial in the generator reduced modulo its minimal polynomial."""
    __slots__ = "field", "rep"

    def __init__(self, field: RealField, rep: Poly):
        self.field = field
        self.rep = rep.rem(field.modulus) if rep.degree() >= field.modulus.degree() else rep

    def __repr__(self):
        return f"FieldElement({self.rep.as_expr()})"

    def __str__(self):
        return str(self.rep.as_expr())

    def _coerce(self, other) -> Optional["FieldElement"]:
        if isinstance(other, FieldElement):
            if other.field.modulus != self.field.modulus:
                raise ValueError("Elements of different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return FieldElement(self.field, self.rep + other.rep)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, -self.rep)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return FieldElement(self.field, self.rep - other.rep)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return FieldElement(self.field, self.rep * other.rep)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        return hash(tuple(self.rep.all_coeffs()))

    def is_zero(self) -> bool:
        return self.rep.is_zero

    def is_rational(self) -> bool:
        return self.rep.degree() <= 0

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("Inverse of zero field element")
        if self.is_rational():
            return self.field(1 / to_fraction(self.rep.LC()))
        return FieldElement(self.field, self.rep.invert(self.field.modulus))

    def evaluate(self, at: RealAlgebraicNumber):
        """Interval enclosure of this element under the embedding sending the generator to at."""
        value = iv.mpf(0)
        x = at.iv()
        for c in self.rep.all_coeffs():
            value = value * x + iv_rational(to_fraction(c))
        return value

    def sign(self, at: RealAlgebraicNumber = None, settings: Settings = DEFAULT_SETTINGS) -> int:
        return certified_sign(self, at=at, settings=settings)


def certified_sign(
    value: Union[FieldElement, Rational],
    sine: Union[FieldElement, Rational] = 0,
    at: RealAlgebraicNumber = None,
    settings: Settings = DEFAULT_SETTINGS,
) -> int:
    """
    Exact sign of value + sine·sqrt(1 - (g/2)^2), where g is the field generator.

    When g = 2cos θ with θ in (0, π), the square root is sin θ, so expressions
    in cos θ and sin θ are covered. Zero is decided exactly; nonzero signs are
    decided by interval evaluation with doubling precision.

    :param value: Element of a RealField, or a rational
    :param sine: Coefficient of the sine term
    :param at: Evaluate under the embedding generator -> at instead of the field's own root
    :param settings: Precision limits
    :return: -1, 0 or 1
    """
    if isinstance(sine, FieldElement) and not sine.is_zero() or isinstance(sine, (int, Fraction)) and sine:
        if isinstance(value, FieldElement):
            field = value.field
        elif isinstance(sine, FieldElement):
            field = sine.field
        else:
            raise ValueError("A sine term needs a field to fix the angle")
        value, sine = field(value), field(sine)
        a_sign = certified_sign(value, at=at, settings=settings)
        b_sign = certified_sign(sine, at=at, settings=settings)
        if a_sign == 0 or a_sign == b_sign:
            return b_sign
        # Opposite signs: compare squares
        half = field.gen / 2
        difference = value * value - sine * sine * (1 - half * half)
        return a_sign * certified_sign(difference, at=at, settings=settings)

    if not isinstance(value, FieldElement):
        value = to_fraction(value)
        return (value > 0) - (value < 0)
    if value.is_zero():
        return 0
    if value.is_rational():
        constant = to_fraction(value.rep.LC())
        return (constant > 0) - (constant < 0)

    root = value.field.generator if at is None else at
    precision = settings.initial_precision
    while precision <= settings.max_precision:
        root = root.refine(Fraction(1, 2 ** precision))
        with working_precision(precision):
            bounds = iv_bounds(value.evaluate(root))
        if bounds is not None:
            lo, hi = bounds
            if lo > 0:
                return 1
            if hi < 0:
                return -1
        logger.debug("Sign of %s undecided at %d bits", value, precision)
        precision *= 2
    raise UncertifiedError(f"sign of {value}", settings.max_precision)
