"""
Points on the unit circle, located exactly.

A point e^{iθ} with θ in (0, π) is stored through its trace s = 2cos θ,
a real algebraic number in (-2, 2). Unimodular roots of a polynomial f(t)
are found by writing the reciprocal part of f as t^n·g(t + 1/t) and
isolating the real roots of g in (-2, 2).
"""
import dataclasses
import functools
import logging
import math
from fractions import Fraction
from typing import Optional, Tuple, Iterator, List, Union

import sympy
from mpmath import iv
from sympy import Poly, QQ

from .laurent import LaurentPoly, factor_rational, gcd_poly, to_fraction
from .numberfield import RealAlgebraicNumber, RealField, FieldElement, S, working_precision, iv_bounds
from ..config import Settings, DEFAULT_SETTINGS
from ..exceptions import UncertifiedError

logger = logging.getLogger(__name__)

T_MINUS_ONE = LaurentPoly({1: 1, 0: -1})
T_PLUS_ONE = LaurentPoly({1: 1, 0: 1})


def compact_form(p: LaurentPoly) -> Poly:
    """
    Given a palindromic polynomial p of span 2n, return g with p = t^k·g(t + 1/t).

    :param p: Palindromic Laurent polynomial
    :return: Polynomial in s of degree n
    """
    if p.span % 2:
        raise ValueError(f"{p} has odd span and is not palindromic")
    if p.conjugate().shift(p.min_exponent + p.max_exponent) != p:
        raise ValueError(f"{p} is not palindromic")
    symmetric = p.shift(-(p.min_exponent + p.max_exponent) // 2)
    t_plus_inverse = LaurentPoly({1: 1, -1: 1})
    coefficients = {}
    while symmetric:
        degree = symmetric.max_exponent
        c = symmetric.leading_coefficient
        coefficients[degree] = c
        symmetric = symmetric - t_plus_inverse ** degree * c
    return Poly.from_dict({(d,): sympy.Rational(c.numerator, c.denominator) for d, c in coefficients.items()},
                          S, domain=QQ)


@functools.lru_cache(maxsize=None)
def cyclotomic_trace_poly(n: int) -> Poly:
    """Minimal polynomial of 2cos(2π/n), n >= 3."""
    if n < 3:
        raise ValueError("2cos(2π/n) is rational for n < 3")
    phi = LaurentPoly.from_poly(sympy.cyclotomic_poly(n, sympy.Symbol("t"), polys=True))
    return compact_form(phi).monic()


@functools.lru_cache(maxsize=None)
def _cyclotomic_traces(n: int) -> Tuple[Tuple[int, RealAlgebraicNumber], ...]:
    # roots 2cos(2πk/n) decrease as k grows
    roots = RealAlgebraicNumber.roots_of(cyclotomic_trace_poly(n), -2, 2)
    ks = [k for k in range(1, (n + 1) // 2) if math.gcd(k, n) == 1]
    return tuple(zip(ks, reversed(roots)))


class AlgebraicAngle:
    """An angle θ in (0, π), stored exactly as the trace 2cos θ."""
    __slots__ = "trace", "_field", "_turn"

    def __init__(self, trace: RealAlgebraicNumber):
        if trace.compare_rational(-2) <= 0 or trace.compare_rational(2) >= 0:
            raise ValueError(f"Trace {trace} is not in (-2, 2)")
        self.trace = trace
        self._field = None
        self._turn = False

    @classmethod
    def from_cosine(cls, cosine: Union[int, Fraction]) -> "AlgebraicAngle":
        return cls(RealAlgebraicNumber.from_rational(2 * to_fraction(cosine)))

    @classmethod
    def from_root_of_unity(cls, n: int, k: int) -> "AlgebraicAngle":
        """The angle 2πk/n, reduced to (0, π)."""
        turn = Fraction(k, n) % 1
        if turn > Fraction(1, 2):
            turn = 1 - turn
        if turn == 0 or turn == Fraction(1, 2):
            raise ValueError(f"2π·{k}/{n} is not in (0, π)")
        k, n = turn.numerator, turn.denominator
        if n in (3, 4, 6):
            angle = cls.from_cosine({3: Fraction(-1, 2), 4: Fraction(0), 6: Fraction(1, 2)}[n])
        else:
            trace = dict(_cyclotomic_traces(n))[k]
            angle = cls(RealAlgebraicNumber(trace.minpoly, trace.lo, trace.hi, check=False))
        angle._turn = Fraction(k, n)
        return angle

    @property
    def minpoly(self) -> Poly:
        return self.trace.minpoly

    @property
    def isolating_interval(self) -> Tuple[Fraction, Fraction]:
        return self.trace.lo, self.trace.hi

    @property
    def field(self) -> RealField:
        if self._field is None:
            self._field = RealField(self.trace)
        return self._field

    def cos(self) -> FieldElement:
        return self.field.gen / 2

    def sin_squared(self) -> FieldElement:
        c = self.cos()
        return 1 - c * c

    def turn(self) -> Optional[Fraction]:
        """θ / 2π when θ is a rational multiple of π, else None."""
        if self._turn is False:
            self._turn = self._find_turn()
        return self._turn

    def _find_turn(self) -> Optional[Fraction]:
        degree = self.trace.degree
        # totient(n) = 2·degree forces n <= 8·degree²
        for n in range(3, 8 * degree * degree + 1):
            if sympy.totient(n) != 2 * degree:
                continue
            if n in (3, 4, 6):
                cosine = {3: Fraction(-1, 2), 4: Fraction(0), 6: Fraction(1, 2)}[n]
                if self.trace.is_rational and self.trace.rational == 2 * cosine:
                    return Fraction(1, n)
                continue
            if cyclotomic_trace_poly(n) == self.minpoly:
                for k, root in _cyclotomic_traces(n):
                    if root == self.trace:
                        return Fraction(k, n)
        return None

    def pi_fraction_bounds(self, settings: Settings = DEFAULT_SETTINGS, width: Fraction = None) -> Tuple[Fraction, Fraction]:
        """Rational bounds on θ/π, at most width apart (exact when the turn is rational)."""
        turn = self.turn()
        if turn is not None:
            return 2 * turn, 2 * turn
        width = width or settings.integral_tolerance
        precision = settings.initial_precision
        while precision <= settings.max_precision:
            trace = self.trace.refine(Fraction(1, 2 ** precision))
            with working_precision(precision):
                half = trace.iv() / 2
                angle = iv.atan2(iv.sqrt(1 - half * half), half) / iv.pi
                bounds = iv_bounds(angle)
            if bounds is not None and bounds[1] - bounds[0] <= width:
                return bounds
            precision *= 2
        raise UncertifiedError(f"angle {self}", settings.max_precision)

    def approximate(self) -> float:
        lo, hi = self.pi_fraction_bounds(width=Fraction(1, 2 ** 40))
        return float((lo + hi) / 2) * math.pi

    def compare(self, other: "AlgebraicAngle") -> int:
        """Compare angles; larger trace means smaller angle."""
        return -self.trace.compare(other.trace)

    def __eq__(self, other):
        if not isinstance(other, AlgebraicAngle):
            return NotImplemented
        return self.trace == other.trace

    def __hash__(self):
        return hash(self.trace)

    def __lt__(self, other):
        return self.compare(other) < 0

    def __le__(self, other):
        return self.compare(other) <= 0

    def __gt__(self, other):
        return self.compare(other) > 0

    def __ge__(self, other):
        return self.compare(other) >= 0

    def __repr__(self):
        return f"AlgebraicAngle({self})"

    def __str__(self):
        turn = self.turn()
        if turn is not None:
            return f"2π·{turn.numerator}/{turn.denominator}"
        if self.trace.is_rational:
            return f"arccos({self.trace.rational / 2})"
        return f"arccos(s/2), s {self.trace}"

    def to_json(self) -> dict:
        return {
            "minpoly": [str(c) for c in self.minpoly.all_coeffs()],
            "interval": [str(self.trace.lo), str(self.trace.hi)],
        }

    @classmethod
    def from_json(cls, data) -> "AlgebraicAngle":
        coefficients = [sympy.Rational(c) for c in data["minpoly"]]
        lo, hi = (Fraction(x) for x in data["interval"])
        return cls(RealAlgebraicNumber(Poly(coefficients, S, domain=QQ), lo, hi))


class UnitPoint:
    """Exact point on the unit circle."""
    __slots__ = ()

    @property
    def angle(self) -> Optional[AlgebraicAngle]:
        """The angle in (0, π) of this point or its conjugate, None at ±1."""
        raise NotImplementedError

    @property
    def is_one(self) -> bool:
        raise NotImplementedError

    @property
    def is_minus_one(self) -> bool:
        raise NotImplementedError


@dataclasses.dataclass(frozen=True)
class RootOfUnity(UnitPoint):
    """exp(2πi·index/order)."""
    order: int
    index: int = 1

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("Order must be positive")
        if not 0 <= self.index < self.order:
            raise ValueError(f"Index must be in [0, {self.order})")

    @property
    def turn(self) -> Fraction:
        return Fraction(self.index, self.order)

    @property
    def is_one(self) -> bool:
        return self.index == 0

    @property
    def is_minus_one(self) -> bool:
        return self.turn == Fraction(1, 2)

    @property
    def angle(self) -> Optional[AlgebraicAngle]:
        if self.is_one or self.is_minus_one:
            return None
        return AlgebraicAngle.from_root_of_unity(self.order, self.index)

    def __str__(self):
        return f"exp(2πi·{self.index}/{self.order})"


@dataclasses.dataclass(frozen=True, eq=False)
class AnglePoint(UnitPoint):
    """exp(iθ), or exp(-iθ) when conjugate is set."""
    angle_value: AlgebraicAngle
    conjugate: bool = False

    @property
    def angle(self) -> AlgebraicAngle:
        return self.angle_value

    @property
    def is_one(self) -> bool:
        return False

    @property
    def is_minus_one(self) -> bool:
        return False

    def __eq__(self, other):
        if isinstance(other, AnglePoint):
            return self.angle_value == other.angle_value and self.conjugate == other.conjugate
        return NotImplemented

    def __hash__(self):
        return hash((self.angle_value, self.conjugate))

    def __str__(self):
        return f"exp({'-' if self.conjugate else ''}i·{self.angle_value})"


MINUS_ONE = RootOfUnity(2, 1)
ONE = RootOfUnity(1, 0)


@dataclasses.dataclass(frozen=True)
class RootLocus:
    """Unimodular roots of a polynomial, one angle in (0, π) per conjugate pair."""
    angles: Tuple[AlgebraicAngle, ...]
    at_one: bool = False
    at_minus_one: bool = False

    def __iter__(self) -> Iterator[AlgebraicAngle]:
        return iter(self.angles)

    def __len__(self):
        return len(self.angles)

    def __getitem__(self, item):
        return self.angles[item]


def unit_circle_roots(f: LaurentPoly) -> RootLocus:
    """
    Locate the unimodular roots of f without multiplicity.

    :param f: Nonzero Laurent polynomial
    :return: Angles sorted ascending, plus flags for roots at t = 1 and t = -1
    """
    if not f:
        raise ValueError("The zero polynomial vanishes everywhere")
    # Unimodular roots of a real polynomial are shared with f(1/t)
    reciprocal_part = gcd_poly(f, f.reciprocal())
    at_one = at_minus_one = False
    angles: List[AlgebraicAngle] = []
    if reciprocal_part.span == 0:
        return RootLocus(())
    for factor, _ in factor_rational(reciprocal_part):
        if factor == T_MINUS_ONE:
            at_one = True
        elif factor == T_PLUS_ONE:
            at_minus_one = True
        elif factor.is_reciprocal():
            g = compact_form(factor).monic()
            for trace in RealAlgebraicNumber.roots_of(g, -2, 2):
                angles.append(AlgebraicAngle(trace))
    angles.sort(key=functools.cmp_to_key(AlgebraicAngle.compare))
    logger.debug("Unit circle roots of %s: %s", f, [str(angle) for angle in angles])
    return RootLocus(tuple(angles), at_one, at_minus_one)
