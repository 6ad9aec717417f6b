"""
Synthesis of companion knots J_i and of the family descriptor built from them.

Companions are connected sums of twist knots T_m, whose Seifert matrix is
[[-1, 1], [0, -m]]. The signature of T_m is -2 on the arc (θ_m, π] with
cos θ_m = (2m-1)/(2m), so T_lo # mirror(T_hi) has signature +2 on the arc
(θ_hi, θ_lo) only. Expressions keep multiplicities symbolic; invariants are
combined summand by summand.
"""
import dataclasses
import hashlib
import logging
from fractions import Fraction
from typing import Tuple, Union, Optional, Sequence, List, Dict

import sympy

from .algebra.laurent import LaurentPoly, format_rational
from .algebra.unitcircle import AlgebraicAngle
from .concordance import is_algebraically_slice, Metabolizer
from .config import Settings, DEFAULT_SETTINGS
from .exceptions import (HypothesisError, InfeasiblePrimeError, PrimeSearchExhaustedError, SingularEvaluationError,
                         UncertifiedError)
from .seifert import SeifertMatrix, EMPTY, alexander, arf, block_sum, mirror, validate
from .serializers.jsonserializer import dumps
from .signatures import RationalInterval, sig_sum, sig_integral, rho_cyclic

logger = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True)
class CatalogRef:
    """Twist knot T_m from the built-in catalog."""
    m: int
    kind: str = "twist"

    def __post_init__(self):
        if self.kind != "twist":
            raise ValueError(f"Unknown catalog kind {self.kind!r}")
        if self.m < 1:
            raise ValueError("Twist parameter must be at least 1")

    @property
    def seifert(self) -> SeifertMatrix:
        return SeifertMatrix([[-1, 1], [0, -self.m]])

    @property
    def jump_angle(self) -> AlgebraicAngle:
        return AlgebraicAngle.from_cosine(Fraction(2 * self.m - 1, 2 * self.m))

    @property
    def crossing_number(self) -> int:
        return 2 * self.m + 1

    def __str__(self):
        return f"T_{self.m}"

    def to_json(self) -> dict:
        return {"kind": self.kind, "m": self.m}


def twist_matrix(m: int) -> CatalogRef:
    return CatalogRef(m)


@dataclasses.dataclass(frozen=True)
class Summand:
    base: Union[CatalogRef, SeifertMatrix]
    mirrored: bool = False
    multiplicity: int = 1

    def __post_init__(self):
        if self.multiplicity < 0:
            raise ValueError("Multiplicity can not be negative")

    @property
    def seifert(self) -> SeifertMatrix:
        v = self.base.seifert if isinstance(self.base, CatalogRef) else self.base
        return mirror(v) if self.mirrored else v

    def __str__(self):
        body = f"mirror({self.base})" if self.mirrored else str(self.base)
        return body if self.multiplicity == 1 else f"{self.multiplicity}·{body}"

    def to_json(self) -> dict:
        base = self.base.to_json()
        return {"base": base, "mirrored": self.mirrored, "multiplicity": str(self.multiplicity)}

    @classmethod
    def from_json(cls, data) -> "Summand":
        base = data["base"]
        base = CatalogRef(int(base["m"]), base["kind"]) if "kind" in base else SeifertMatrix.from_json(base)
        return cls(base, bool(data["mirrored"]), int(data["multiplicity"]))


@dataclasses.dataclass(frozen=True)
class KnotExpr:
    """Connected sum of summands, each a catalog knot or Seifert matrix taken with a multiplicity."""
    summands: Tuple[Summand, ...] = ()

    @classmethod
    def of(cls, base: Union[CatalogRef, SeifertMatrix], mirrored: bool = False, multiplicity: int = 1) -> "KnotExpr":
        return cls((Summand(base, mirrored, multiplicity),))

    def __add__(self, other: "KnotExpr") -> "KnotExpr":
        if not isinstance(other, KnotExpr):
            return NotImplemented
        return KnotExpr(self.summands + other.summands)

    def mirror(self) -> "KnotExpr":
        return KnotExpr(tuple(dataclasses.replace(s, mirrored=not s.mirrored) for s in self.summands))

    def __rmul__(self, n: int) -> "KnotExpr":
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return (-n) * self.mirror()
        return KnotExpr(tuple(dataclasses.replace(s, multiplicity=s.multiplicity * n) for s in self.summands if n))

    __mul__ = __rmul__

    @property
    def copies(self) -> int:
        return sum(s.multiplicity for s in self.summands)

    def alexander_powers(self) -> Dict[LaurentPoly, int]:
        """Δ of the sum as {Δ of summand: total exponent}."""
        powers = {}
        for s in self.summands:
            delta = alexander(s.seifert).delta
            if s.multiplicity and delta != 1:
                powers[delta] = powers.get(delta, 0) + s.multiplicity
        return powers

    def alexander(self, limit: int = 64) -> LaurentPoly:
        powers = self.alexander_powers()
        if sum(powers.values()) > limit:
            raise ValueError(f"Alexander polynomial has more than {limit} factors; use alexander_powers()")
        result = LaurentPoly.constant(1)
        for delta, exponent in powers.items():
            result = result * delta ** exponent
        return result.canonical()

    def arf_weight(self) -> int:
        """Σ multiplicity·Arf; its parity is the Arf invariant."""
        return sum(s.multiplicity * arf(s.seifert) for s in self.summands)

    def arf(self) -> int:
        return self.arf_weight() % 2

    def sig_sum(self, p: int, settings: Settings = DEFAULT_SETTINGS) -> int:
        return sum(s.multiplicity * sig_sum(s.seifert, p, settings) for s in self.summands if s.multiplicity)

    def rho_cyclic(self, d: int, settings: Settings = DEFAULT_SETTINGS) -> Fraction:
        return sum((s.multiplicity * rho_cyclic(s.seifert, d, settings) for s in self.summands), Fraction(0))

    def sig_integral(self, tol: Fraction = None, settings: Settings = DEFAULT_SETTINGS) -> RationalInterval:
        tol = tol if tol is not None else settings.integral_tolerance
        total = RationalInterval.exact(0)
        active = [s for s in self.summands if s.multiplicity]
        for s in active:
            share = Fraction(tol) / (len(active) * s.multiplicity)
            total = total + s.multiplicity * sig_integral(s.seifert, share, settings)
        return total

    def materialize(self, limit: int = 16) -> SeifertMatrix:
        """Block sum of all copies; refused above limit copies."""
        if self.copies > limit:
            raise ValueError(f"Refusing to materialize {self.copies} copies (limit {limit})")
        result = EMPTY
        for s in self.summands:
            for _ in range(s.multiplicity):
                result = block_sum(result, s.seifert)
        return result

    def __str__(self):
        return " # ".join(str(s) for s in self.summands) or "unknot"

    def to_json(self) -> dict:
        return {"summands": [s.to_json() for s in self.summands], "label": str(self)}

    @classmethod
    def from_json(cls, data) -> "KnotExpr":
        return cls(tuple(Summand.from_json(s) for s in data["summands"]))


def bump_expr(m_lo: int, m_hi: int, positive: bool = True) -> KnotExpr:
    """
    Knot with signature ±2 on (θ_hi, θ_lo) and its conjugate, 0 elsewhere.

    :param m_lo: Twist parameter of the wider arc endpoint θ_lo
    :param m_hi: Twist parameter of the narrower arc endpoint θ_hi, m_hi > m_lo
    :param positive: Sign of the bump
    """
    if m_lo < 1 or m_hi <= m_lo:
        raise ValueError(f"Need 1 <= m_lo < m_hi, got {m_lo}, {m_hi}")
    expr = KnotExpr.of(twist_matrix(m_lo)) + KnotExpr.of(twist_matrix(m_hi), mirrored=True)
    return expr if positive else expr.mirror()


@dataclasses.dataclass(frozen=True)
class CGBound:
    """
    value: The constant C_K
    crossing: Crossing number it was derived from, None for a direct value
    """
    value: int
    crossing: Optional[int] = None

    def __post_init__(self):
        if self.value < 1:
            raise ValueError("C_K must be positive")

    @classmethod
    def from_crossing(cls, crossing: int, settings: Settings = DEFAULT_SETTINGS) -> "CGBound":
        if crossing < 1:
            raise ValueError("Crossing number must be positive")
        return cls(settings.crossing_factor * crossing, crossing)

    @classmethod
    def direct(cls, value: int) -> "CGBound":
        return cls(value)

    @property
    def provenance(self) -> str:
        return "direct" if self.crossing is None else "crossing"

    def to_json(self) -> dict:
        return {"C_K": str(self.value), "crossing": self.crossing, "provenance": self.provenance}

    @classmethod
    def from_json(cls, data) -> "CGBound":
        return cls(int(data["C_K"]), data.get("crossing"))


@dataclasses.dataclass(frozen=True)
class CompanionWitness:
    """
    arc: (m_lo, m_hi) of the bump, None for full support
    per_copy_sum: Σ_r σ(ζ_p^r) of one copy
    root_count: Number of r with ζ_p^r inside the support
    per_copy_integral: Enclosure of ∫σ of one copy
    threshold: p·C_K
    """
    arc: Optional[Tuple[int, int]]
    per_copy_sum: int
    root_count: int
    per_copy_integral: RationalInterval
    threshold: int

    def to_json(self) -> dict:
        return {
            "arc": list(self.arc) if self.arc else None,
            "per_copy_sum": str(self.per_copy_sum),
            "root_count": self.root_count,
            "per_copy_integral": self.per_copy_integral.to_json(),
            "threshold": str(self.threshold),
        }

    @classmethod
    def from_json(cls, data) -> "CompanionWitness":
        arc = tuple(data["arc"]) if data["arc"] else None
        return cls(arc, int(data["per_copy_sum"]), int(data["root_count"]),
                   RationalInterval.from_json(data["per_copy_integral"]), int(data["threshold"]))


@dataclasses.dataclass(frozen=True)
class Companion:
    """J = multiplicity · unit, attached to a prime."""
    prime: int
    unit: KnotExpr
    multiplicity: int
    witness: CompanionWitness

    @property
    def expr(self) -> KnotExpr:
        return self.multiplicity * self.unit

    def to_json(self) -> dict:
        return {
            "prime": self.prime,
            "unit": self.unit.to_json(),
            "multiplicity": str(self.multiplicity),
            "witness": self.witness.to_json(),
        }

    @classmethod
    def from_json(cls, data) -> "Companion":
        return cls(int(data["prime"]), KnotExpr.from_json(data["unit"]), int(data["multiplicity"]),
                   CompanionWitness.from_json(data["witness"]))


def _bump_arc(p: int, previous: int, settings: Settings) -> Tuple[int, int]:
    """Twist parameters with θ_hi < 2π/p < θ_lo < 2π/previous."""
    target = AlgebraicAngle.from_root_of_unity(p, 1)
    if twist_matrix(settings.twist_cap).jump_angle.compare(target) >= 0:
        raise InfeasiblePrimeError(p, f"needs a twist parameter above {settings.twist_cap}")
    lo, hi = 1, settings.twist_cap
    while lo < hi:
        middle = (lo + hi) // 2
        if twist_matrix(middle).jump_angle.compare(target) < 0:
            hi = middle
        else:
            lo = middle + 1
    m_hi = lo
    m_lo = m_hi - 1
    if m_lo < 1:
        raise InfeasiblePrimeError(p, f"2π/{p} is not below θ_1 = π/3, so no twist arc contains it")
    if previous > 2 and twist_matrix(m_lo).jump_angle.compare(AlgebraicAngle.from_root_of_unity(previous, 1)) >= 0:
        raise InfeasiblePrimeError(p, f"the arc (θ_{m_hi}, θ_{m_lo}) reaches 2π/{previous}")
    return m_lo, m_hi


def _smallest_exceeding(unit: KnotExpr, bound: int, prime: int, settings: Settings) -> int:
    """Smallest N with N·∫σ(unit) > bound."""
    tol = settings.integral_tolerance
    floor = Fraction(1, 2 ** settings.max_precision)
    while tol >= floor:
        integral = unit.sig_integral(tol, settings)
        if integral.hi <= 0:
            raise InfeasiblePrimeError(prime, f"∫σ of {unit} is not positive")
        if integral.lo > 0:
            if integral.is_exact:
                return int(Fraction(bound) / integral.lo) + 1
            low, high = Fraction(bound) / integral.hi, Fraction(bound) / integral.lo
            if int(low) == int(high):
                return int(low) + 1
        tol /= 2 ** 32
    raise UncertifiedError(f"∫σ of {unit}", settings.max_precision)


def forge_companion(p_new: int, earlier: Sequence[int], bound: CGBound,
                    settings: Settings = DEFAULT_SETTINGS) -> Companion:
    """
    Build the companion for p_new.

    Without earlier primes the unit is mirror(T_1) with signature +2 on (π/3, π].
    Otherwise it is a positive bump inside (0, 2π/max(earlier)) around 2π/p_new.
    The multiplicity is the smallest even N with N·s > p·C_K and N·∫σ > C_K.

    :raises InfeasiblePrimeError: If no admissible bump exists for p_new
    """
    if not sympy.isprime(p_new):
        raise ValueError(f"{p_new} is not prime")
    if earlier and p_new <= max(earlier):
        raise ValueError(f"{p_new} does not exceed the earlier primes {list(earlier)}")
    if earlier:
        arc = _bump_arc(p_new, max(earlier), settings)
        unit = bump_expr(*arc)
    else:
        arc = None
        unit = KnotExpr.of(twist_matrix(1), mirrored=True)
    per_copy_sum = unit.sig_sum(p_new, settings)
    if per_copy_sum <= 0:
        raise InfeasiblePrimeError(p_new, f"signature sum of {unit} is {per_copy_sum}")
    for q in earlier:
        if unit.sig_sum(q, settings):
            raise InfeasiblePrimeError(p_new, f"{unit} has nonzero signature sum at {q}")
    threshold = p_new * bound.value
    multiplicity = max(threshold // per_copy_sum + 1, _smallest_exceeding(unit, bound.value, p_new, settings))
    multiplicity += multiplicity % 2
    witness = CompanionWitness(arc, per_copy_sum, per_copy_sum // 2, unit.sig_integral(settings=settings), threshold)
    logger.info("Companion for p=%d: %d·(%s), arc %s", p_new, multiplicity, unit, arc)
    return Companion(p_new, unit, multiplicity, witness)


@dataclasses.dataclass(frozen=True)
class FamilyDescriptor:
    """
    seifert: Seifert matrix V of the base knot K
    bound: The constant C_K
    companions: One companion J_i per prime p_i, primes increasing
    sliceness: How algebraic sliceness of V was established
    """
    seifert: SeifertMatrix
    bound: CGBound
    companions: Tuple[Companion, ...] = ()
    sliceness: Optional[str] = None

    @property
    def genus(self) -> int:
        return self.seifert.genus

    @property
    def primes(self) -> Tuple[int, ...]:
        return tuple(c.prime for c in self.companions)

    @property
    def top_coeff(self) -> int:
        return alexander(self.seifert).top_coeff

    @property
    def eta(self) -> Tuple[int, ...]:
        """Indices of the curves dual to the bands, one per generator."""
        return tuple(range(1, self.seifert.dimension + 1))

    def to_json(self) -> dict:
        data = alexander(self.seifert)
        return {
            "seifert": self.seifert.to_json(),
            "genus": self.genus,
            "alexander": str(data.delta),
            "top_coefficient": str(data.top_coeff),
            "bound": self.bound.to_json(),
            "eta": list(self.eta),
            "sliceness": self.sliceness,
            "companions": [c.to_json() for c in self.companions],
        }

    @classmethod
    def from_json(cls, data) -> "FamilyDescriptor":
        return cls(
            validate(data["seifert"]["matrix"]),
            CGBound.from_json(data["bound"]),
            tuple(Companion.from_json(c) for c in data["companions"]),
            data.get("sliceness"),
        )

    def sha256(self) -> str:
        return hashlib.sha256(dumps(self.to_json()).encode("utf-8")).hexdigest()


def _next_companions(family: FamilyDescriptor, count: int, prime_floor: int, settings: Settings) -> FamilyDescriptor:
    companions = list(family.companions)
    wanted = len(companions) + count
    p = max(family.top_coeff, prime_floor - 1, *family.primes)
    while len(companions) < wanted:
        p = sympy.nextprime(p)
        if p > settings.prime_cap:
            raise PrimeSearchExhaustedError(settings.prime_cap, len(companions), wanted)
        logger.debug("Trying prime %d", p)
        try:
            companions.append(forge_companion(p, [c.prime for c in companions], family.bound, settings))
        except InfeasiblePrimeError as e:
            logger.debug("Skipping prime: %s", e)
    return dataclasses.replace(family, companions=tuple(companions))


def forge_family(
    v: SeifertMatrix,
    bound: CGBound,
    count: int,
    prime_floor: int = 2,
    certificate: Optional[Metabolizer] = None,
    override: bool = False,
    settings: Settings = DEFAULT_SETTINGS,
) -> FamilyDescriptor:
    """
    Build a family of count companions for an algebraically slice knot.

    :param v: Seifert matrix of K
    :param bound: The constant C_K
    :param count: Number of companions
    :param prime_floor: Smallest prime to consider
    :param certificate: Metabolizer proving algebraic sliceness
    :param override: Accept V as algebraically slice without a metabolizer
    :param settings: Caps and precision
    :raises HypothesisError: If Δ = 1 or V is not shown algebraically slice
    :raises PrimeSearchExhaustedError: If the prime cap is reached first
    """
    if count < 1:
        raise ValueError("Need at least one companion")
    v = validate(v)
    data = alexander(v)
    if data.is_trivial:
        raise HypothesisError("K needs a nontrivial Alexander polynomial, got Δ = 1")
    report = is_algebraically_slice(v, certificate, override=override, settings=settings)
    if not report.verdict:
        reason = "Fox-Milnor fails" if not report.fox_milnor else "no metabolizer verified"
        raise HypothesisError(f"{v} is not shown algebraically slice ({reason}, Δ = {data.delta})")
    assert data.degree >= 2, "a nontrivial reciprocal Δ has degree at least 2"
    family = _next_companions(FamilyDescriptor(v, bound, (), report.source), count, prime_floor, settings)
    lemma = verify_lemma_conditions(family, settings)
    if not lemma.passed:
        raise AssertionError(f"Forged family fails its own verification: {lemma.failures()}")
    return family


def extend_family(family: FamilyDescriptor, count: int, settings: Settings = DEFAULT_SETTINGS) -> FamilyDescriptor:
    """Append count companions at primes beyond the last one."""
    if count < 1:
        raise ValueError("Need at least one companion")
    return _next_companions(family, count, 2, settings)


@dataclasses.dataclass(frozen=True)
class ConditionResult:
    """
    condition: "primes", "arf", "prime-sum", "vanishing" or "integral"
    companion: 1-based index of the companion, 0 for the family as a whole
    """
    condition: str
    companion: int
    prime: Optional[int]
    passed: bool
    witness: dict

    def to_json(self) -> dict:
        return dataclasses.asdict(self)


@dataclasses.dataclass(frozen=True)
class LemmaReport:
    results: Tuple[ConditionResult, ...]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def by_condition(self, condition: str) -> List[ConditionResult]:
        return [r for r in self.results if r.condition == condition]

    def failures(self) -> List[ConditionResult]:
        return [r for r in self.results if not r.passed]

    def to_json(self) -> dict:
        return {"passed": self.passed, "results": [r.to_json() for r in self.results]}


def certify_integral(unit: KnotExpr, multiplicity: int, bound: int,
                     settings: Settings = DEFAULT_SETTINGS) -> Tuple[bool, RationalInterval]:
    """Decide N·∫σ(unit) > bound, refining the enclosure until it is decided."""
    tol = settings.integral_tolerance
    floor = Fraction(1, 2 ** settings.max_precision)
    while tol >= floor:
        scaled = multiplicity * unit.sig_integral(tol, settings)
        outcome = scaled.compare(bound)
        if outcome is not None:
            return outcome > 0, scaled
        tol /= 2 ** 32
    raise UncertifiedError(f"{multiplicity}·∫σ of {unit} against {bound}", settings.max_precision)


def _check_primes(family: FamilyDescriptor) -> ConditionResult:
    primes = family.primes
    increasing = all(a < b for a, b in zip(primes, primes[1:]))
    valid = all(sympy.isprime(p) and p > family.top_coeff for p in primes)
    return ConditionResult("primes", 0, None, increasing and valid,
                           {"primes": list(primes), "top_coefficient": str(family.top_coeff)})


def verify_lemma_conditions(family: FamilyDescriptor, settings: Settings = DEFAULT_SETTINGS) -> LemmaReport:
    """
    Check every companion of the family exactly.

    arf: Arf(J_i) = 0
    prime-sum: Σ_r σ_{J_i}(ζ_{p_i}^r) > p_i·C_K
    vanishing: Σ_r σ_{J_j}(ζ_{p_i}^r) = 0 for j > i
    integral: ∫σ_{J_i} > C_K

    Failures are reported, not raised.
    """
    results = [_check_primes(family)]
    bound = family.bound.value
    companions = family.companions
    for i, companion in enumerate(companions, start=1):
        p, n, unit = companion.prime, companion.multiplicity, companion.unit
        weight = n * unit.arf_weight()
        results.append(ConditionResult("arf", i, p, weight % 2 == 0, {"arf_weight": str(weight)}))

        total = n * unit.sig_sum(p, settings)
        results.append(ConditionResult("prime-sum", i, p, total > p * bound,
                                       {"sum": str(total), "threshold": str(p * bound)}))

        sums, vanishing = [], True
        for j, later in enumerate(companions[i:], start=i + 1):
            try:
                value = later.multiplicity * later.unit.sig_sum(p, settings)
            except SingularEvaluationError as e:
                sums.append({"companion": j, "sum": None, "reason": str(e)})
                vanishing = False
                continue
            sums.append({"companion": j, "sum": str(value)})
            vanishing = vanishing and value == 0
        results.append(ConditionResult("vanishing", i, p, vanishing, {"sums": sums}))

        exceeds, scaled = certify_integral(unit, n, bound, settings)
        results.append(ConditionResult("integral", i, p, exceeds, {
            "lower": format_rational(scaled.lo), "upper": format_rational(scaled.hi), "bound": str(bound)}))
    report = LemmaReport(tuple(results))
    logger.info("Lemma conditions for %d companions: %s", len(companions), "passed" if report.passed else "failed")
    return report
