"""
Algebraic concordance: Fox-Milnor, metabolizers and the sliceness policy.
"""
import dataclasses
import itertools
import logging
import math
from typing import Optional, Sequence, Tuple, Union, Iterator, List

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors

from .algebra.laurent import LaurentPoly, coprime, factor_rational
from .config import Settings, DEFAULT_SETTINGS
from .exceptions import DimensionMismatchError
from .seifert import SeifertMatrix, alexander

__all__ = [
    "fox_milnor",
    "Metabolizer",
    "verify_metabolizer",
    "search_metabolizer",
    "coprime",
    "half_rank",
    "SlicenessReport",
    "is_algebraically_slice",
]

logger = logging.getLogger(__name__)


def fox_milnor(delta: LaurentPoly) -> bool:
    """
    Check Δ ≐ f(t)·f(1/t) by pairing irreducible factors with their conjugates.

    Self-conjugate factors need even multiplicity, the others must occur as often
    as their conjugate.
    """
    multiplicities = factor_rational(delta).as_dict()
    for factor, multiplicity in multiplicities.items():
        conjugate = factor.reciprocal().primitive()
        if conjugate == factor:
            if multiplicity % 2:
                return False
        elif multiplicities.get(conjugate, 0) != multiplicity:
            return False
    return True


def half_rank(delta: LaurentPoly) -> int:
    """Rank of a self-annihilating submodule of a module of order Δ."""
    return delta.degree // 2


@dataclasses.dataclass(frozen=True)
class Metabolizer:
    """Integer basis of a candidate metabolizer, stored as column vectors."""
    columns: Tuple[Tuple[int, ...], ...]

    @classmethod
    def from_matrix(cls, matrix: Union[Matrix, Sequence[Sequence[int]]]) -> "Metabolizer":
        """From a 2g×g matrix whose columns span the subgroup."""
        matrix = Matrix(matrix)
        return cls(tuple(tuple(int(x) for x in matrix.col(j)) for j in range(matrix.cols)))

    @classmethod
    def from_json(cls, data) -> "Metabolizer":
        return cls(tuple(tuple(int(x) for x in column) for column in data["basis"]))

    def to_json(self) -> dict:
        return {"basis": [list(column) for column in self.columns]}

    @property
    def rank(self) -> int:
        return len(self.columns)

    @property
    def shape(self) -> Tuple[int, int]:
        rows = len(self.columns[0]) if self.columns else 0
        return rows, len(self.columns)

    def matrix(self) -> Matrix:
        rows, cols = self.shape
        return Matrix(rows, cols, lambda i, j: self.columns[j][i])


def _as_metabolizer(h) -> Metabolizer:
    if isinstance(h, Metabolizer):
        return h
    return Metabolizer.from_matrix(h)


def verify_metabolizer(v: SeifertMatrix, h: Union[Metabolizer, Matrix, Sequence[Sequence[int]]]) -> bool:
    """
    Check that the columns of h span a primitive rank-g summand on which V vanishes.

    :param v: Seifert matrix of size 2g
    :param h: Metabolizer or 2g×g integer matrix
    :raises DimensionMismatchError: If h is not 2g×g
    """
    h = _as_metabolizer(h)
    expected = (v.dimension, v.genus)
    if v.genus == 0:
        if h.rank:
            raise DimensionMismatchError(expected, h.shape)
        return True
    if h.shape != expected:
        raise DimensionMismatchError(expected, h.shape)
    basis = h.matrix()
    factors = invariant_factors(basis, domain=ZZ)
    if len(factors) != v.genus or any(abs(factor) != 1 for factor in factors):
        return False
    return (basis.T * v.matrix() * basis).is_zero_matrix


def _form(v: SeifertMatrix, x: Sequence[int], y: Sequence[int]) -> int:
    n = v.dimension
    return sum(x[i] * v[i, j] * y[j] for i in range(n) for j in range(n) if x[i] and y[j])


def _candidates(v: SeifertMatrix, height: int) -> List[Tuple[int, ...]]:
    """Primitive isotropic vectors up to sign, in search order."""
    found = []
    for x in itertools.product(range(-height, height + 1), repeat=v.dimension):
        leading = next((c for c in x if c), 0)
        if leading <= 0 or math.gcd(*x) != 1:
            continue
        if _form(v, x, x) == 0:
            found.append(x)
    found.sort(key=lambda x: (max(map(abs, x)), sum(map(abs, x)), tuple(-c for c in x)))
    return found


def _extend(v: SeifertMatrix, chosen: List[Tuple[int, ...]], pool: List[Tuple[int, ...]]) -> Iterator[List[Tuple[int, ...]]]:
    if len(chosen) == v.genus:
        yield chosen
        return
    for index, x in enumerate(pool):
        candidate = chosen + [x]
        if Matrix(candidate).rank() < len(candidate):
            continue
        # Stay inside the complement of x under both V and Vᵀ
        rest = [y for y in pool[index + 1:] if _form(v, x, y) == 0 and _form(v, y, x) == 0]
        yield from _extend(v, candidate, rest)


def search_metabolizer(v: SeifertMatrix, bound: int = None, settings: Settings = DEFAULT_SETTINGS) -> Optional[Metabolizer]:
    """
    Look for a metabolizer with entries of absolute value at most bound.

    Heights 1, 2, ..., bound are tried in turn. Not finding one proves nothing.

    :param v: Seifert matrix
    :param bound: Height bound, settings.search_bound by default
    :return: Verified metabolizer, or None
    """
    bound = settings.search_bound if bound is None else bound
    if v.genus == 0:
        return Metabolizer(())
    for height in range(1, bound + 1):
        pool = _candidates(v, height)
        logger.debug("Metabolizer search for %s at height %d: %d isotropic vectors", v, height, len(pool))
        for basis in _extend(v, [], pool):
            metabolizer = Metabolizer(tuple(basis))
            if verify_metabolizer(v, metabolizer):
                return metabolizer
    return None


@dataclasses.dataclass(frozen=True)
class SlicenessReport:
    """
    fox_milnor: Whether Δ factors as f(t)·f(1/t)
    source: "certificate", "search", "override" or None
    metabolizer: The verified metabolizer, if any
    """
    fox_milnor: bool
    source: Optional[str] = None
    metabolizer: Optional[Metabolizer] = None

    @property
    def verdict(self) -> bool:
        return self.fox_milnor and self.source is not None

    def to_json(self) -> dict:
        return {
            "fox_milnor": self.fox_milnor,
            "source": self.source,
            "metabolizer": self.metabolizer.to_json() if self.metabolizer else None,
            "algebraically_slice": self.verdict,
        }


def is_algebraically_slice(
    v: SeifertMatrix,
    certificate: Optional[Metabolizer] = None,
    bound: int = None,
    override: bool = False,
    settings: Settings = DEFAULT_SETTINGS,
) -> SlicenessReport:
    """
    Decide whether to treat V as algebraically slice.

    Requires Fox-Milnor and, in this order of preference, a verified certificate,
    a metabolizer found by bounded search, or an explicit override.
    """
    if not fox_milnor(alexander(v).delta):
        return SlicenessReport(False)
    if certificate is not None:
        if verify_metabolizer(v, certificate):
            return SlicenessReport(True, "certificate", _as_metabolizer(certificate))
        logger.warning("Supplied metabolizer %s does not verify for %s", certificate, v)
    found = search_metabolizer(v, bound, settings)
    if found is not None:
        return SlicenessReport(True, "search", found)
    if override:
        logger.warning("Treating %s as algebraically slice on override, no metabolizer verified", v)
        return SlicenessReport(True, "override")
    return SlicenessReport(True)
