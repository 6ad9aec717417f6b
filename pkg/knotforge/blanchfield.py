"""
The rational Alexander module and its Blanchfield form.

Module elements are vectors of Laurent polynomials of length 2g, read modulo
the columns of the presentation matrix tV - Vᵀ. The pairing is

    bl(x, y) = (1 - t)·xᵀ(V - tVᵀ)⁻¹·ȳ   modulo ℚ[t, 1/t]

where ȳ applies t -> 1/t entrywise.
"""
import dataclasses
import functools
import itertools
import logging
from fractions import Fraction
from typing import Sequence, Tuple, List, Optional, Union

import sympy
from sympy import Matrix, Poly, QQ
from sympy.matrices.normalforms import smith_normal_decomp
from sympy.polys.matrices import DomainMatrix

from .algebra.laurent import LaurentPoly, T, ZERO, ONE, gcd_poly, factor_rational
from .exceptions import NonSquarefreeError, DimensionMismatchError
from .seifert import SeifertMatrix, alexander, alexander_matrix, to_laurent

logger = logging.getLogger(__name__)

Element = Tuple[LaurentPoly, ...]


def _laurent(expr) -> LaurentPoly:
    return LaurentPoly.from_poly(Poly(expr, T, domain=QQ))


def _residue(a: LaurentPoly, modulus: Poly) -> Poly:
    """Remainder of a Laurent polynomial modulo a polynomial with nonzero constant term."""
    base = a.to_poly().rem(modulus)
    exponent = a.min_exponent
    step = Poly(T, T, domain=QQ) if exponent >= 0 else Poly(T, T, domain=QQ).invert(modulus)
    for _ in range(abs(exponent)):
        base = (base * step).rem(modulus)
    return base


class BlanchfieldValue:
    """A class in ℚ(t)/ℚ[t, 1/t], stored as a reduced fraction.

    The denominator is monic with nonzero constant term and coprime to the
    numerator, whose degree is smaller. Zero is 0/1.
    """
    __slots__ = "numerator", "denominator"

    def __init__(self, numerator: LaurentPoly, denominator: LaurentPoly = ONE):
        if not denominator:
            raise ZeroDivisionError("Blanchfield value with zero denominator")
        shift = denominator.min_exponent
        a, b = numerator.shift(-shift), denominator.shift(-shift)
        if a:
            common = gcd_poly(a, b)
            if not common.is_unit():
                a, b = a.exact_div(common), b.exact_div(common)
        lead = b.leading_coefficient
        a, b = a.scale(1 / lead), b.scale(1 / lead)
        remainder = LaurentPoly.from_poly(_residue(a, b.to_poly())) if a and b.degree else ZERO
        if remainder:
            self.numerator, self.denominator = remainder, b
        else:
            self.numerator, self.denominator = ZERO, ONE

    def is_zero(self) -> bool:
        return not self.numerator

    def __bool__(self):
        return not self.is_zero()

    def conjugate(self) -> "BlanchfieldValue":
        """Apply t -> 1/t."""
        return BlanchfieldValue(self.numerator.conjugate(), self.denominator.conjugate())

    def __add__(self, other: "BlanchfieldValue") -> "BlanchfieldValue":
        if not isinstance(other, BlanchfieldValue):
            return NotImplemented
        return BlanchfieldValue(self.numerator * other.denominator + other.numerator * self.denominator,
                                self.denominator * other.denominator)

    def __neg__(self) -> "BlanchfieldValue":
        return BlanchfieldValue(-self.numerator, self.denominator)

    def scale(self, f: LaurentPoly) -> "BlanchfieldValue":
        return BlanchfieldValue(self.numerator * f, self.denominator)

    def __eq__(self, other):
        if not isinstance(other, BlanchfieldValue):
            return NotImplemented
        return self.numerator == other.numerator and self.denominator == other.denominator

    def __hash__(self):
        return hash((self.numerator, self.denominator))

    def __repr__(self):
        return f"BlanchfieldValue({self})"

    def __str__(self):
        if self.is_zero():
            return "0"
        return f"({self.numerator})/({self.denominator})"

    def to_json(self) -> dict:
        return {"numerator": self.numerator.to_json(), "denominator": self.denominator.to_json(), "label": str(self)}


class AlexanderModule:
    """
    The module ℚ[t, 1/t]^{2g} / (tV - Vᵀ), diagonalized over ℚ[t].

    With D = S·P·U in Smith normal form, x ↦ S·x identifies the module with
    ⊕ ℚ[t, 1/t]/(f_i), where f_i is d_i without its powers of t.
    """
    __slots__ = "seifert", "presentation", "invariant_factors", "_change", "_positions", "_inverse"

    def __init__(self, seifert: SeifertMatrix):
        self.seifert = seifert
        m = seifert.matrix()
        self.presentation = T * m - m.T
        self._change: List[List[LaurentPoly]] = []
        self._positions: Tuple[int, ...] = ()
        self._inverse: List[List[LaurentPoly]] = []
        self.invariant_factors: Tuple[LaurentPoly, ...] = ()
        if seifert.dimension == 0:
            return
        diagonal, change, _ = smith_normal_decomp(self.presentation, domain=QQ[T])
        positions, factors = [], []
        for i in range(seifert.dimension):
            factor = _laurent(diagonal[i, i]).monic()
            if not factor.is_constant():
                positions.append(i)
                factors.append(factor)
        self._positions = tuple(positions)
        self.invariant_factors = tuple(factors)
        self._change = [[_laurent(change[i, j]) for j in range(change.cols)] for i in range(change.rows)]
        adjugate, det = DomainMatrix.from_Matrix(change).convert_to(QQ[T]).adj_det()
        scale = 1 / to_laurent(QQ[T], det).leading_coefficient
        adjugate = adjugate.to_Matrix()
        self._inverse = [[_laurent(adjugate[i, j]).scale(scale) for j in range(adjugate.cols)]
                         for i in range(adjugate.rows)]
        logger.debug("Alexander module of %s: %s", seifert, [str(f) for f in factors])

    @property
    def dimension(self) -> int:
        """Dimension over ℚ, the degree of Δ."""
        return sum(f.degree for f in self.invariant_factors)

    @property
    def is_zero(self) -> bool:
        return not self.invariant_factors

    @property
    def cyclic_decomposition(self) -> Tuple[LaurentPoly, ...]:
        """Orders of the primary cyclic summands, monic."""
        pieces = []
        for f in self.invariant_factors:
            for factor, multiplicity in factor_rational(f):
                pieces.append((factor ** multiplicity).monic())
        return tuple(pieces)

    def coordinates(self, x: Sequence[LaurentPoly]) -> List[Fraction]:
        """Coordinates over ℚ in the basis t^k of each summand ℚ[t, 1/t]/(f_i)."""
        x = as_element(x, self.seifert.dimension)
        result = []
        for position, f in zip(self._positions, self.invariant_factors):
            y = sum((self._change[position][j] * x[j] for j in range(len(x))), ZERO)
            residue = _residue(y, f.to_poly()) if y else Poly(0, T, domain=QQ)
            coeffs = dict(LaurentPoly.from_poly(residue).terms())
            result.extend(coeffs.get(k, Fraction(0)) for k in range(f.degree))
        return result

    def is_zero_element(self, x: Sequence[LaurentPoly]) -> bool:
        return not any(self.coordinates(x))

    def summand_generator(self, k: int) -> Element:
        """Element generating the k-th cyclic summand ℚ[t, 1/t]/(f_k)."""
        position = self._positions[k]
        return tuple(row[position] for row in self._inverse)

    def to_json(self) -> dict:
        return {
            "invariant_factors": [str(f.primitive()) for f in self.invariant_factors],
            "cyclic_decomposition": [str(f.primitive()) for f in self.cyclic_decomposition],
            "dimension": self.dimension,
        }


@functools.lru_cache(maxsize=256)
def present_module(v: SeifertMatrix) -> AlexanderModule:
    """Diagonalize the presentation tV - Vᵀ over the rational Laurent ring."""
    return AlexanderModule(v)


def as_element(x: Sequence[Union[int, LaurentPoly]], size: int) -> Element:
    if len(x) != size:
        raise DimensionMismatchError((size,), (len(x),))
    return tuple(c if isinstance(c, LaurentPoly) else LaurentPoly.constant(c) for c in x)


@functools.lru_cache(maxsize=256)
def _inverse_data(v: SeifertMatrix) -> Tuple[Tuple[Tuple[LaurentPoly, ...], ...], LaurentPoly]:
    matrix = alexander_matrix(v)
    adjugate, det = matrix.adj_det()
    adjugate = adjugate.to_Matrix()
    rows = tuple(tuple(_laurent(adjugate[i, j]) for j in range(adjugate.cols)) for i in range(adjugate.rows))
    return rows, to_laurent(matrix.domain, det)


def bl_pair(v: SeifertMatrix, x: Sequence[LaurentPoly], y: Sequence[LaurentPoly]) -> BlanchfieldValue:
    """
    Blanchfield pairing of two module elements.

    :param v: Seifert matrix
    :param x: Vector of 2g Laurent polynomials (or integers)
    :param y: Vector of 2g Laurent polynomials (or integers)
    :return: bl(x, y), sesquilinear: bl(fx, gy) = f(t)·g(1/t)·bl(x, y)
    """
    x, y = as_element(x, v.dimension), as_element(y, v.dimension)
    if v.dimension == 0:
        return BlanchfieldValue(ZERO)
    adjugate, det = _inverse_data(v)
    conjugated = [c.conjugate() for c in y]
    total = ZERO
    for i, xi in enumerate(x):
        if not xi:
            continue
        for j, yj in enumerate(conjugated):
            if yj and adjugate[i][j]:
                total = total + xi * adjugate[i][j] * yj
    return BlanchfieldValue(LaurentPoly({0: 1, 1: -1}) * total, det)


def module_generators(v: SeifertMatrix) -> List[Element]:
    """The standard generators e_1, ..., e_2g, dual to the bands of the Seifert surface."""
    n = v.dimension
    return [tuple(ONE if i == j else ZERO for i in range(n)) for j in range(n)]


@dataclasses.dataclass(frozen=True)
class Witness:
    generator: int
    partner: Optional[int]
    value: BlanchfieldValue

    def to_json(self) -> dict:
        return {"generator": self.generator + 1,
                "partner": None if self.partner is None else self.partner + 1,
                "value": str(self.value)}


def nonsingularity_witnesses(v: SeifertMatrix) -> List[Witness]:
    """
    For each generator that is nonzero in the module, the first generator pairing nontrivially with it.

    A partner of None would mean the form is singular.
    """
    module = present_module(v)
    generators = module_generators(v)
    witnesses = []
    for i, x in enumerate(generators):
        if module.is_zero_element(x):
            continue
        witness = Witness(i, None, BlanchfieldValue(ZERO))
        for j, y in enumerate(generators):
            value = bl_pair(v, x, y)
            if value:
                witness = Witness(i, j, value)
                break
        witnesses.append(witness)
    return witnesses


@dataclasses.dataclass(frozen=True)
class Submodule:
    """
    generators: Module elements generating the submodule over ℚ[t, 1/t]
    factors: Irreducible factors of Δ whose primary components are summed
    rank: Dimension over ℚ
    """
    generators: Tuple[Element, ...]
    factors: Tuple[LaurentPoly, ...]
    rank: int

    @property
    def label(self) -> str:
        return " ⊕ ".join(f"({f})" for f in self.factors) or "0"

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "rank": self.rank,
            "generators": [[c.to_json() for c in x] for x in self.generators],
        }


def self_annihilating_submodules(v: SeifertMatrix) -> List[Submodule]:
    """
    All submodules P with P = P^⊥, for squarefree Δ.

    The module is then cyclic and splits into primary components, one per
    irreducible factor p of Δ. A component pairs nontrivially exactly with the
    component of the conjugate factor, so P must contain one component out of
    each conjugate pair and no self-conjugate one can exist.

    :raises NonSquarefreeError: If Δ has a repeated factor
    """
    delta = alexander(v).delta
    factorization = factor_rational(delta)
    if not factorization.is_squarefree():
        raise NonSquarefreeError(delta)
    module = present_module(v)
    if module.is_zero:
        return [Submodule((), (), 0)]
    (order,) = module.invariant_factors
    generator = module.summand_generator(0)
    factors = [factor.monic() for factor, _ in factorization]
    pairs, seen = [], set()
    for factor in factors:
        if factor in seen:
            continue
        conjugate = factor.reciprocal().monic()
        if conjugate == factor:
            return []
        if conjugate not in factors:
            raise AssertionError(f"Conjugate of {factor} does not divide the reciprocal {delta}")
        seen.update((factor, conjugate))
        pairs.append((factor, conjugate))

    submodules = []
    for choice in itertools.product(*pairs):
        generators = []
        for factor in choice:
            cofactor = order.exact_div(factor)
            generators.append(tuple(cofactor * c for c in generator))
        submodules.append(Submodule(tuple(generators), tuple(choice), sum(f.degree for f in choice)))
    return submodules


def verify_self_annihilating(v: SeifertMatrix, generators: Sequence[Sequence[LaurentPoly]]) -> bool:
    """
    Check that the generators span a self-annihilating submodule.

    They must pair trivially with each other and span half the rational dimension.
    This works for any Δ, squarefree or not.
    """
    module = present_module(v)
    generators = [as_element(x, v.dimension) for x in generators]
    for x, y in itertools.combinations_with_replacement(generators, 2):
        if bl_pair(v, x, y):
            return False
    dimension = module.dimension
    rows = [module.coordinates(tuple(c.shift(k) for c in x)) for x in generators for k in range(dimension)]
    rank = Matrix(rows).rank() if rows and dimension else 0
    return 2 * rank == dimension


def eta_generation_check(v: SeifertMatrix, p: Union[int, str]) -> bool:
    """
    Whether the band-dual classes generate the module with rational or mod p coefficients.

    Over ℚ they always do. Mod p this needs Δ to keep its degree, so p must not divide a_K.
    """
    data = alexander(v)
    if p == "rational":
        return not data.delta.is_zero()
    if not sympy.isprime(p):
        raise ValueError(f"{p} is not prime")
    return data.top_coeff % p != 0
