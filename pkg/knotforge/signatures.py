"""
Levine-Tristram signatures, computed exactly.

At ω = e^{iθ} the Hermitian form (1-ω)V + (1-ω̄)Vᵀ is realified and rescaled
by a positive congruence into

    [[(1+c)A, (1+c)B], [-(1+c)B, (1-c)A]],   A = V + Vᵀ, B = V - Vᵀ, c = cos θ

whose entries lie in ℚ(2cos θ) and whose signature and nullity are twice those
of the Hermitian form. Pivots are chosen by exact zero tests only, so the same
elimination is valid under every Galois conjugate of 2cos θ.
"""
import dataclasses
import functools
import logging
from fractions import Fraction
from typing import List, Tuple, Sequence, Optional, Union

import sympy

from .algebra.cyclotomic import eval_root_of_unity
from .algebra.laurent import format_rational, to_fraction
from .algebra.numberfield import certified_sign, RealAlgebraicNumber
from .algebra.unitcircle import AlgebraicAngle, UnitPoint, AnglePoint, unit_circle_roots
from .config import Settings, DEFAULT_SETTINGS
from .exceptions import SingularEvaluationError
from .seifert import SeifertMatrix, alexander

logger = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True)
class RationalInterval:
    """Closed interval [lo, hi] with rational endpoints."""
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"Empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def exact(cls, value: Union[int, Fraction]) -> "RationalInterval":
        value = to_fraction(value)
        return cls(value, value)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __contains__(self, value) -> bool:
        return self.lo <= to_fraction(value) <= self.hi

    def __add__(self, other: "RationalInterval") -> "RationalInterval":
        if not isinstance(other, RationalInterval):
            return NotImplemented
        return RationalInterval(self.lo + other.lo, self.hi + other.hi)

    def __neg__(self) -> "RationalInterval":
        return RationalInterval(-self.hi, -self.lo)

    def __mul__(self, n: int) -> "RationalInterval":
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return -self * -n
        return RationalInterval(self.lo * n, self.hi * n)

    __rmul__ = __mul__

    def compare(self, value) -> Optional[int]:
        """1 if every point exceeds value, -1 if every point is below, 0 if exactly value, None if undecided."""
        value = to_fraction(value)
        if self.lo > value:
            return 1
        if self.hi < value:
            return -1
        if self.is_exact:
            return 0
        return None

    def __str__(self):
        if self.is_exact:
            return str(self.lo)
        return f"[{self.lo}, {self.hi}]"

    def to_json(self) -> dict:
        return {"lower": format_rational(self.lo), "upper": format_rational(self.hi), "exact": self.is_exact}

    @classmethod
    def from_json(cls, data) -> "RationalInterval":
        return cls(Fraction(data["lower"]), Fraction(data["upper"]))


def symmetric_elimination(matrix: Sequence[Sequence]) -> Tuple[list, int]:
    """
    Diagonalize a symmetric matrix by congruence.

    Entries may be Fractions or FieldElements; only exact zero tests are used to
    choose pivots. When the diagonal is zero but a_ij is not, adding row j to
    row i (and column j to column i) makes a_ii = 2a_ij.

    :param matrix: Symmetric matrix as nested sequences
    :return: Nonzero pivots and the nullity
    """
    rows = [list(row) for row in matrix]
    pivots = []
    while rows:
        n = len(rows)
        pivot = next((i for i in range(n) if rows[i][i] != 0), None)
        if pivot is None:
            pair = next(((i, j) for i in range(n) for j in range(i + 1, n) if rows[i][j] != 0), None)
            if pair is None:
                return pivots, n
            i, j = pair
            for k in range(n):
                rows[i][k] = rows[i][k] + rows[j][k]
            for k in range(n):
                rows[k][i] = rows[k][i] + rows[k][j]
            pivot = i
        a = rows[pivot][pivot]
        pivots.append(a)
        rest = [k for k in range(n) if k != pivot]
        rows = [[rows[k][l] - rows[k][pivot] * rows[pivot][l] / a for l in rest] for k in rest]
    return pivots, 0


def _count_signs(pivots: list, at: Optional[RealAlgebraicNumber], settings: Settings) -> int:
    return sum(certified_sign(pivot, at=at, settings=settings) for pivot in pivots)


def _realified(v: SeifertMatrix, angle: AlgebraicAngle) -> List[list]:
    n = v.dimension
    c = angle.cos()
    plus, minus = 1 + c, 1 - c
    a = [[v[i, j] + v[j, i] for j in range(n)] for i in range(n)]
    b = [[v[i, j] - v[j, i] for j in range(n)] for i in range(n)]
    top = [[plus * a[i][j] for j in range(n)] + [plus * b[i][j] for j in range(n)] for i in range(n)]
    bottom = [[-plus * b[i][j] for j in range(n)] + [minus * a[i][j] for j in range(n)] for i in range(n)]
    return top + bottom


def _signature_at_minus_one(v: SeifertMatrix) -> Tuple[int, int]:
    n = v.dimension
    pivots, nullity = symmetric_elimination([[Fraction(2 * (v[i, j] + v[j, i])) for j in range(n)] for i in range(n)])
    return _count_signs(pivots, None, DEFAULT_SETTINGS), nullity


def _signature_at_angle(v: SeifertMatrix, angle: AlgebraicAngle, settings: Settings) -> Tuple[int, int]:
    pivots, nullity = symmetric_elimination(_realified(v, angle))
    return _count_signs(pivots, None, settings) // 2, nullity // 2


def lt_signature(v: SeifertMatrix, omega: UnitPoint, settings: Settings = DEFAULT_SETTINGS) -> Tuple[int, int]:
    """
    Signature and nullity of (1-ω)V + (1-ω̄)Vᵀ.

    Where the form is singular the signature reported is the average of the two
    neighbouring arc values of the profile.

    :param v: Seifert matrix
    :param omega: Exact point on the unit circle
    :param settings: Precision limits
    :return: (signature, nullity)
    """
    if omega.is_one:
        return 0, v.dimension
    if v.dimension == 0:
        return 0, 0
    if omega.is_minus_one:
        return _signature_at_minus_one(v)
    signature, nullity = _signature_at_angle(v, omega.angle, settings)
    if nullity:
        signature = sig_profile(v, settings).value_at(omega)
    return signature, nullity


@functools.lru_cache(maxsize=4096)
def _primitive_sum(v: SeifertMatrix, order: int, settings: Settings) -> int:
    """Sum of σ over the primitive order-th roots of unity."""
    if order == 1 or v.dimension == 0:
        return 0
    if order == 2:
        return _signature_at_minus_one(v)[0]
    _, vanishes = eval_root_of_unity(alexander(v).delta, order, 1)
    if vanishes:
        raise SingularEvaluationError(order, 1)
    angle = AlgebraicAngle.from_root_of_unity(order, 1)
    pivots, nullity = symmetric_elimination(_realified(v, angle))
    assert nullity == 0, "nonsingular at a root of unity that is not a root of Δ"
    total = 0
    # Each embedding is 2cos(2πk/order) for one k; k and order-k give equal σ.
    for root in angle.field.embeddings():
        total += _count_signs(pivots, root, settings)
    logger.debug("Primitive signature sum of %s at order %d: %d", v, order, total)
    return total


def sig_sum(v: SeifertMatrix, p: int, settings: Settings = DEFAULT_SETTINGS) -> int:
    """
    Σ_{r=0}^{p-1} σ(e^{2πir/p}) for a prime p.

    :raises SingularEvaluationError: If e^{2πi/p} is a root of the Alexander polynomial
    """
    if not sympy.isprime(p):
        raise ValueError(f"{p} is not prime")
    return _primitive_sum(v, p, settings)


def rho_cyclic(v: SeifertMatrix, d: int, settings: Settings = DEFAULT_SETTINGS) -> Fraction:
    """Average of σ over all d-th roots of unity."""
    if d < 1:
        raise ValueError("Order must be positive")
    total = sum(_primitive_sum(v, n, settings) for n in sympy.divisors(d) if n > 1)
    return Fraction(total, d)


@dataclasses.dataclass(frozen=True)
class SignatureProfile:
    """
    The signature function as a step function on the upper half circle.

    jump_angles: Unimodular roots of Δ in (0, π), ascending
    arc_values: σ on (0, θ₁), (θ₁, θ₂), ..., (θ_k, π]
    """
    jump_angles: Tuple[AlgebraicAngle, ...] = ()
    arc_values: Tuple[int, ...] = (0,)
    value_at_one: int = 0

    def __post_init__(self):
        if len(self.arc_values) != len(self.jump_angles) + 1:
            raise ValueError("Need one value per arc")

    def value_at(self, point: UnitPoint) -> int:
        """σ at an exact point; at a jump, the average of the neighbouring arcs."""
        if point.is_one:
            return self.value_at_one
        if point.is_minus_one:
            return self.arc_values[-1]
        angle = point.angle
        for position, jump in enumerate(self.jump_angles):
            order = angle.compare(jump)
            if order == 0:
                return (self.arc_values[position] + self.arc_values[position + 1]) // 2
            if order < 0:
                return self.arc_values[position]
        return self.arc_values[-1]

    def arcs(self) -> List[Tuple[Optional[AlgebraicAngle], Optional[AlgebraicAngle], int]]:
        """(left, right, value) per arc; None stands for the endpoints 0 and π."""
        bounds = [None, *self.jump_angles, None]
        return [(bounds[i], bounds[i + 1], value) for i, value in enumerate(self.arc_values)]

    def is_zero(self) -> bool:
        return not any(self.arc_values)

    def max_abs(self) -> int:
        return max(abs(value) for value in self.arc_values)

    def integral(self, tol: Fraction = None, settings: Settings = DEFAULT_SETTINGS) -> RationalInterval:
        """∫σ over the circle with total mass 1, enclosed in an interval of width at most tol."""
        tol = to_fraction(tol) if tol is not None else settings.integral_tolerance
        if tol <= 0:
            raise ValueError("Tolerance must be positive")
        # ∫σ = v_k - Σ_j (v_j - v_{j-1})·θ_j/π
        steps = [self.arc_values[j + 1] - self.arc_values[j] for j in range(len(self.jump_angles))]
        width = tol / max(1, sum(abs(step) for step in steps))
        lo = hi = Fraction(self.arc_values[-1])
        for step, angle in zip(steps, self.jump_angles):
            if not step:
                continue
            x_lo, x_hi = angle.pi_fraction_bounds(settings, width)
            if step > 0:
                lo, hi = lo - step * x_hi, hi - step * x_lo
            else:
                lo, hi = lo - step * x_lo, hi - step * x_hi
        return RationalInterval(lo, hi)

    def to_json(self) -> dict:
        return {
            "jumps": [dict(angle.to_json(), label=str(angle)) for angle in self.jump_angles],
            "values": list(self.arc_values),
            "value_at_one": self.value_at_one,
        }


def _sample_between(upper: RealAlgebraicNumber, lower: RealAlgebraicNumber) -> Fraction:
    """A rational strictly between two distinct real algebraic numbers, lower < upper."""
    while lower.hi >= upper.lo:
        lower = lower.refine((lower.hi - lower.lo) / 2)
        upper = upper.refine((upper.hi - upper.lo) / 2)
    return (lower.hi + upper.lo) / 2


@functools.lru_cache(maxsize=1024)
def sig_profile(v: SeifertMatrix, settings: Settings = DEFAULT_SETTINGS) -> SignatureProfile:
    """
    Jumps and arc values of σ on the upper half circle.

    Each arc is sampled at one point with rational cosine, except the last arc,
    which is sampled at -1.
    """
    if v.dimension == 0:
        return SignatureProfile()
    jumps = tuple(unit_circle_roots(alexander(v).delta))
    values = []
    upper_trace = RealAlgebraicNumber.from_rational(2)
    for jump in jumps:
        trace = _sample_between(upper_trace, jump.trace)
        values.append(_signature_at_angle(v, AlgebraicAngle.from_cosine(trace / 2), settings)[0])
        upper_trace = jump.trace
    values.append(_signature_at_minus_one(v)[0])
    logger.debug("Signature profile of %s: %s on arcs split at %s", v, values, [str(j) for j in jumps])
    return SignatureProfile(jumps, tuple(values))


def sig_integral(v: SeifertMatrix, tol: Fraction = None, settings: Settings = DEFAULT_SETTINGS) -> RationalInterval:
    """
    Integral of σ over the circle, Haar measure of mass 1.

    :param v: Seifert matrix
    :param tol: Maximal width of the returned interval
    :return: Certified enclosure, exact when all jumps are at rational multiples of π
    """
    return sig_profile(v, settings).integral(tol, settings)


def max_abs_signature(v: SeifertMatrix, settings: Settings = DEFAULT_SETTINGS) -> int:
    return sig_profile(v, settings).max_abs()


def point_at(angle: AlgebraicAngle) -> UnitPoint:
    return AnglePoint(angle)
