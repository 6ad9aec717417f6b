"""
Machine-checkable certificates over a family descriptor.

A certificate lists every arithmetic premise of an obstruction argument as a
named check with exact witness values. The topological steps that consume
these premises are not verified here. A certificate says a knot is obstructed
by the argument, never that it was proved non-slice by computation, and a
failed check gives INCONCLUSIVE, never "concordant".
"""
import dataclasses
import enum
import itertools
import logging
from fractions import Fraction
from typing import Sequence, Tuple, Union, List, Callable, Mapping, Optional

import sympy

from .algebra.laurent import LaurentPoly, gcd_poly, format_rational
from .blanchfield import nonsingularity_witnesses, eta_generation_check
from .config import Settings, DEFAULT_SETTINGS
from .exceptions import CertificateInputError
from .forge import FamilyDescriptor, LemmaReport, verify_lemma_conditions, certify_integral
from .seifert import alexander
from .serializers.jsonserializer import canonical_bytes
from .signatures import sig_integral

__all__ = [
    "Verdict",
    "Check",
    "Certificate",
    "certify_linear_combination",
    "certify_coprime_nonconcordance",
    "certify_box",
    "reverify",
]

logger = logging.getLogger(__name__)

LINEAR_COMBINATION = "LinearCombination"
COPRIME_SPLIT = "CoprimeSplit"


class Verdict(str, enum.Enum):
    OBSTRUCTED = "OBSTRUCTED"
    NOT_CONCORDANT_BY_SPLITTING = "NOT_CONCORDANT_BY_SPLITTING"
    INCONCLUSIVE = "INCONCLUSIVE"

    def __str__(self):
        return self.value


_SUCCESS = {
    LINEAR_COMBINATION: Verdict.OBSTRUCTED,
    COPRIME_SPLIT: Verdict.NOT_CONCORDANT_BY_SPLITTING,
}


@dataclasses.dataclass(frozen=True)
class Check:
    """
    name: Stable identifier such as "lemma:arf"
    claim: Human readable statement being checked
    passed: Outcome at certification time
    witness: Exact values from which the outcome can be recomputed
    """
    name: str
    claim: str
    passed: bool
    witness: dict

    def to_json(self) -> dict:
        return {"name": self.name, "claim": self.claim, "witness": self.witness, "pass": self.passed}

    @classmethod
    def from_json(cls, data: Mapping) -> "Check":
        return cls(data["name"], data["claim"], bool(data["pass"]), dict(data["witness"]))


@dataclasses.dataclass(frozen=True)
class Certificate:
    kind: str
    family_sha256: str
    inputs: dict
    checks: Tuple[Check, ...]
    verdict: Verdict

    def failed(self) -> List[Check]:
        return [check for check in self.checks if not check.passed]

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "family_sha256": self.family_sha256,
            "inputs": self.inputs,
            "checks": [check.to_json() for check in self.checks],
            "verdict": self.verdict.value,
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "Certificate":
        if data.get("kind") not in _SUCCESS:
            raise ValueError(f"Unknown certificate kind {data.get('kind')!r}")
        try:
            return cls(data["kind"], data["family_sha256"], dict(data["inputs"]),
                       tuple(Check.from_json(c) for c in data["checks"]), Verdict(data["verdict"]))
        except (KeyError, TypeError) as e:
            raise CertificateInputError(f"malformed certificate, {type(e).__name__}: {e}")

    def to_bytes(self) -> bytes:
        return canonical_bytes(self.to_json())


def _conclude(kind: str, family: FamilyDescriptor, inputs: dict, checks: List[Check]) -> Certificate:
    verdict = _SUCCESS[kind] if all(check.passed for check in checks) else Verdict.INCONCLUSIVE
    certificate = Certificate(kind, family.sha256(), inputs, tuple(checks), verdict)
    if verdict is Verdict.INCONCLUSIVE:
        logger.warning("%s %s is inconclusive, failing checks: %s",
                       kind, inputs, ", ".join(c.name for c in certificate.failed()))
    else:
        logger.info("%s %s: %s", kind, inputs, verdict)
    return certificate


# Lemma checks

def _lemma_checks(family: FamilyDescriptor, report: LemmaReport) -> List[Check]:
    bound = family.bound.value
    arf = [{"companion": r.companion, "arf_weight": r.witness["arf_weight"]} for r in report.by_condition("arf")]
    sums = [{"companion": r.companion, "prime": r.prime, "sum": r.witness["sum"], "bound": str(bound)}
            for r in report.by_condition("prime-sum")]
    vanishing = [{"companion": r.companion, "prime": r.prime, "sums": r.witness["sums"]}
                 for r in report.by_condition("vanishing")]
    integral = [{"companion": r.companion, "prime": r.prime, **r.witness} for r in report.by_condition("integral")]
    return [
        Check("lemma:arf", "Arf(J_i) = 0 for every companion",
              all(r.passed for r in report.by_condition("arf")), {"companions": arf}),
        Check("lemma:prime-sums", "Σ_r σ_{J_i}(ζ_{p_i}^r) > p_i·C_K for every companion",
              all(r.passed for r in report.by_condition("prime-sum")), {"companions": sums}),
        Check("lemma:vanishing", "Σ_r σ_{J_j}(ζ_{p_i}^r) = 0 for all j > i",
              all(r.passed for r in report.by_condition("vanishing")), {"companions": vanishing}),
        Check("lemma:integral", "∫σ_{J_i} > C_K for every companion",
              all(r.passed for r in report.by_condition("integral")), {"companions": integral}),
    ]


def _generation_check(family: FamilyDescriptor, report: LemmaReport, prime: int) -> Check:
    data = alexander(family.seifert)
    top = abs(data.top_coeff)
    primes_ok = all(r.passed for r in report.by_condition("primes"))
    generates = eta_generation_check(family.seifert, prime)
    witness = {
        "degree": data.degree,
        "top_coefficient": str(top),
        "prime": prime,
        "primes": list(family.primes),
    }
    return Check("generation", f"deg Δ ≥ 2 and p = {prime} > a_K, so η generates the module mod p",
                 data.degree >= 2 and primes_ok and generates and prime > top, witness)


def _normalize(a: Sequence[int]) -> Tuple[Tuple[int, ...], int, int]:
    leading = next(k for k, x in enumerate(a) if x)
    sign = 1 if a[leading] > 0 else -1
    return tuple(sign * x for x in a), sign, leading


def _linear_combination(family: FamilyDescriptor, a: Sequence[int], report: LemmaReport,
                        settings: Settings) -> Certificate:
    normalized, sign, leading = _normalize(a)
    checks = [Check("reindex", "The first nonzero coefficient is made positive, inverting the knot if needed",
                    normalized[leading] > 0,
                    {"combination": [str(x) for x in a], "normalized": [str(x) for x in normalized],
                     "sign": sign, "leading_index": leading + 1})]
    checks += _lemma_checks(family, report)
    companion = family.companions[leading]
    p, n = companion.prime, companion.multiplicity
    checks.append(_generation_check(family, report, p))

    per_copy = companion.unit.sig_sum(p, settings)
    rho = Fraction(n * per_copy, p)
    bound = family.bound.value
    checks.append(Check("rho-bound", f"(1/{p})·Σ_r σ_J(ζ_{p}^r) > C_K", rho > bound, {
        "prime": p,
        "multiplicity": str(n),
        "per_copy_sum": str(per_copy),
        "rho": format_rational(rho),
        "bound": str(bound),
    }))
    inputs = {"combination": [str(x) for x in a]}
    return _conclude(LINEAR_COMBINATION, family, inputs, checks)


def _validate_combination(family: FamilyDescriptor, a: Sequence[int]) -> Tuple[int, ...]:
    a = tuple(int(x) for x in a)
    if len(a) != len(family.companions):
        raise CertificateInputError(f"combination has {len(a)} entries for {len(family.companions)} companions")
    if not any(a):
        raise CertificateInputError("combination is zero")
    return a


def certify_linear_combination(family: FamilyDescriptor, a: Sequence[int],
                               settings: Settings = DEFAULT_SETTINGS) -> Certificate:
    """
    Certify that Σ a_i·K_i is obstructed from being slice.

    :param family: Forged family K_1, K_2, ...
    :param a: One integer per companion, not all zero
    :raises CertificateInputError: If a is zero or has the wrong length
    """
    a = _validate_combination(family, a)
    return _linear_combination(family, a, verify_lemma_conditions(family, settings), settings)


def certify_box(family: FamilyDescriptor, box: int = 1, settings: Settings = DEFAULT_SETTINGS) -> List[Certificate]:
    """Certificates for every nonzero a in {-box..box}^N, in lexicographic order."""
    if box < 1:
        raise CertificateInputError(f"box must be at least 1, got {box}")
    if not family.companions:
        raise CertificateInputError("family has no companions")
    report = verify_lemma_conditions(family, settings)
    combinations = itertools.product(range(-box, box + 1), repeat=len(family.companions))
    return [_linear_combination(family, a, report, settings) for a in combinations if any(a)]


def certify_coprime_nonconcordance(family: FamilyDescriptor, index: int, n: int,
                                   delta_other: Union[LaurentPoly, str],
                                   settings: Settings = DEFAULT_SETTINGS) -> Certificate:
    """
    Certify that n·K_index is not concordant to any knot with Alexander polynomial delta_other.

    :param family: Forged family
    :param index: 1-based companion index
    :param n: Nonzero multiple
    :param delta_other: Alexander polynomial of the other knot
    :raises CertificateInputError: If n = 0 or index is out of range
    """
    if n == 0:
        raise CertificateInputError("n must be nonzero")
    if not 1 <= index <= len(family.companions):
        raise CertificateInputError(f"index {index} out of range 1..{len(family.companions)}")
    if isinstance(delta_other, str):
        delta_other = LaurentPoly.parse(delta_other)
    if not delta_other:
        raise CertificateInputError("Alexander polynomial of the other knot is zero")
    delta_other = delta_other.canonical()
    data = alexander(family.seifert)
    bound = family.bound.value

    common = gcd_poly(delta_other, data.delta)
    checks = [Check("coprime", "gcd(Δ_other, Δ_K) = 1", common.is_unit(), {
        "delta": str(data.delta), "delta_other": str(delta_other), "gcd": str(common)})]

    rank = abs(n) * data.degree // 2
    checks.append(Check("half-rank", "Δ_{nK} = Δ_K^|n| is nontrivial, so P has rank |n|·deg Δ/2 > 0",
                        data.degree >= 2 and rank > 0,
                        {"degree": data.degree, "n": str(n), "rank": str(rank)}))

    companion = family.companions[index - 1]
    exceeds, scaled = certify_integral(companion.unit, companion.multiplicity, bound, settings)
    checks.append(Check("integral", f"∫σ_{{J_{index}}} > C_K", exceeds, {
        "companion": index, "prime": companion.prime,
        "lower": format_rational(scaled.lo), "upper": format_rational(scaled.hi), "bound": str(bound)}))

    witnesses = nonsingularity_witnesses(family.seifert)
    checks.append(Check("blanchfield-nonsingular", "Every nonzero generator pairs nontrivially with a generator",
                        bool(witnesses) and all(w.partner is not None for w in witnesses),
                        {"witnesses": [w.to_json() for w in witnesses]}))

    integral = sig_integral(family.seifert, settings=settings)
    checks.append(Check("seifert-integral", "∫σ_V = 0", integral.is_exact and integral.lo == 0, {
        "lower": format_rational(integral.lo), "upper": format_rational(integral.hi)}))

    inputs = {"index": index, "n": str(n), "delta_other": str(delta_other)}
    return _conclude(COPRIME_SPLIT, family, inputs, checks)


# Re-verification from witness data

def _reindex(w) -> bool:
    a = [int(x) for x in w["combination"]]
    normalized = [int(x) for x in w["normalized"]]
    sign = w["sign"]
    if sign not in (1, -1) or normalized != [sign * x for x in a]:
        return False
    leading = next((k for k, x in enumerate(normalized) if x), None)
    return leading is not None and leading + 1 == w["leading_index"] and normalized[leading] > 0


def _arf(w) -> bool:
    return bool(w["companions"]) and all(int(c["arf_weight"]) % 2 == 0 for c in w["companions"])


def _prime_sums(w) -> bool:
    return bool(w["companions"]) and all(
        int(c["sum"]) > int(c["prime"]) * int(c["bound"]) for c in w["companions"])


def _vanishing(w) -> bool:
    return all(s["sum"] is not None and int(s["sum"]) == 0 for c in w["companions"] for s in c["sums"])


def _exceeds(entry) -> bool:
    return Fraction(entry["lower"]) > int(entry["bound"])


def _lemma_integral(w) -> bool:
    return bool(w["companions"]) and all(_exceeds(c) for c in w["companions"])


def _generation(w) -> bool:
    primes, top, prime = w["primes"], int(w["top_coefficient"]), w["prime"]
    increasing = all(a < b for a, b in zip(primes, primes[1:]))
    valid = all(sympy.isprime(q) and q > top for q in primes)
    return w["degree"] >= 2 and increasing and valid and prime in primes and top % prime != 0


def _rho_bound(w) -> bool:
    rho = Fraction(int(w["multiplicity"]) * int(w["per_copy_sum"]), w["prime"])
    return rho == Fraction(w["rho"]) and rho > int(w["bound"])


def _coprime(w) -> bool:
    common = gcd_poly(LaurentPoly.parse(w["delta"]), LaurentPoly.parse(w["delta_other"]))
    return common.is_unit()


def _half_rank(w) -> bool:
    degree, n, rank = w["degree"], int(w["n"]), int(w["rank"])
    return degree >= 2 and n != 0 and rank == abs(n) * degree // 2


def _nonsingular(w) -> bool:
    return bool(w["witnesses"]) and all(x["partner"] is not None and x["value"] != "0" for x in w["witnesses"])


def _seifert_integral(w) -> bool:
    return Fraction(w["lower"]) == 0 == Fraction(w["upper"])


RULES: Mapping[str, Callable[[dict], bool]] = {
    "reindex": _reindex,
    "lemma:arf": _arf,
    "lemma:prime-sums": _prime_sums,
    "lemma:vanishing": _vanishing,
    "lemma:integral": _lemma_integral,
    "generation": _generation,
    "rho-bound": _rho_bound,
    "coprime": _coprime,
    "half-rank": _half_rank,
    "integral": _exceeds,
    "blanchfield-nonsingular": _nonsingular,
    "seifert-integral": _seifert_integral,
}

REQUIRED = {
    LINEAR_COMBINATION: ("reindex", "lemma:arf", "lemma:prime-sums", "lemma:vanishing", "lemma:integral",
                         "generation", "rho-bound"),
    COPRIME_SPLIT: ("coprime", "half-rank", "integral", "blanchfield-nonsingular", "seifert-integral"),
}


def _recheck(check: Check) -> Optional[bool]:
    rule = RULES.get(check.name)
    if rule is None:
        return None
    try:
        return rule(check.witness)
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as e:
        logger.debug("Witness of %s is malformed: %s", check.name, e)
        return False


def reverify(certificate: Union[Certificate, Mapping]) -> Verdict:
    """
    Recompute the verdict from the recorded witnesses only.

    Nothing is synthesized again: each check is re-evaluated with big-integer
    and rational arithmetic on its own witness. A missing or unknown check
    makes the result INCONCLUSIVE.
    """
    if not isinstance(certificate, Certificate):
        certificate = Certificate.from_json(certificate)
    names = [check.name for check in certificate.checks]
    if sorted(names) != sorted(REQUIRED[certificate.kind]):
        logger.warning("Certificate checks %s do not match %s", names, REQUIRED[certificate.kind])
        return Verdict.INCONCLUSIVE
    passed = True
    for check in certificate.checks:
        outcome = _recheck(check)
        if outcome != check.passed:
            logger.warning("Check %s recorded pass=%s but recomputes to %s", check.name, check.passed, outcome)
        passed = passed and bool(outcome)
    return _SUCCESS[certificate.kind] if passed else Verdict.INCONCLUSIVE
