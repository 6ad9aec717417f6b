"""
Seifert matrices and the abelian invariants computed from them.
"""
import dataclasses
import functools
from typing import Sequence, Tuple, Mapping

import sympy
from sympy import Matrix, QQ
from sympy.polys.matrices import DomainMatrix

from .algebra.laurent import LaurentPoly, T
from .exceptions import InvalidSeifertMatrixError

Entries = Tuple[Tuple[int, ...], ...]


def _as_entries(matrix: Sequence[Sequence[int]]) -> Entries:
    rows = tuple(tuple(row) for row in matrix)
    if any(len(row) != len(rows) for row in rows):
        raise InvalidSeifertMatrixError(matrix, "not square")
    for row in rows:
        for entry in row:
            if isinstance(entry, bool) or not isinstance(entry, int):
                raise InvalidSeifertMatrixError(matrix, f"entry {entry!r} is not an integer")
    return rows


class SeifertMatrix:
    """Integer matrix V of even size 2g with det(V - Vᵀ) = 1."""
    __slots__ = "entries", "_hash"

    def __init__(self, matrix: Sequence[Sequence[int]] = (), check: bool = True):
        self.entries = _as_entries(matrix)
        self._hash = None
        if check:
            if len(self.entries) % 2:
                raise InvalidSeifertMatrixError(self.entries, "odd dimension")
            skew = self.matrix() - self.matrix().T
            if skew.det() != 1:
                raise InvalidSeifertMatrixError(self.entries, f"det(V - Vᵀ) = {skew.det()}, expected 1")

    @classmethod
    def from_json(cls, data: Mapping) -> "SeifertMatrix":
        return cls(data["matrix"])

    def to_json(self) -> dict:
        return {"matrix": [list(row) for row in self.entries]}

    @property
    def dimension(self) -> int:
        return len(self.entries)

    @property
    def genus(self) -> int:
        return self.dimension // 2

    def matrix(self) -> Matrix:
        return Matrix(self.dimension, self.dimension, [x for row in self.entries for x in row])

    def __getitem__(self, item):
        i, j = item
        return self.entries[i][j]

    def __eq__(self, other):
        if isinstance(other, SeifertMatrix):
            return self.entries == other.entries
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.entries)
        return self._hash

    def __repr__(self):
        return f"SeifertMatrix({[list(row) for row in self.entries]})"

    def __str__(self):
        return str([list(row) for row in self.entries])

    def transpose(self) -> "SeifertMatrix":
        return SeifertMatrix(tuple(zip(*self.entries)), check=False)

    def __neg__(self) -> "SeifertMatrix":
        return SeifertMatrix([[-x for x in row] for row in self.entries], check=False)

    def symmetrized(self) -> Matrix:
        """V + Vᵀ."""
        return self.matrix() + self.matrix().T

    def congruent(self, p: Sequence[Sequence[int]]) -> "SeifertMatrix":
        """PᵀVP for a unimodular integer matrix P."""
        p = Matrix(p)
        if abs(p.det()) != 1:
            raise ValueError("Congruence needs a unimodular matrix")
        product = p.T * self.matrix() * p
        return SeifertMatrix([[int(x) for x in row] for row in product.tolist()])


def validate(matrix: Sequence[Sequence[int]]) -> SeifertMatrix:
    """
    Check that matrix is a Seifert matrix.

    :param matrix: Square integer matrix as nested sequences
    :return: Validated SeifertMatrix
    :raises InvalidSeifertMatrixError: If dimension is odd or det(V - Vᵀ) ≠ 1
    """
    if isinstance(matrix, SeifertMatrix):
        return matrix
    return SeifertMatrix(matrix)


EMPTY = SeifertMatrix(())
TREFOIL = SeifertMatrix([[-1, 1], [0, -1]])


@dataclasses.dataclass(frozen=True)
class AlexanderData:
    delta: LaurentPoly
    top_coeff: int
    degree: int

    @property
    def is_trivial(self) -> bool:
        return self.degree == 0


def to_laurent(domain, element) -> LaurentPoly:
    """Convert an element of the domain ℚ[t] to a LaurentPoly."""
    return LaurentPoly.from_poly(sympy.Poly(domain.to_sympy(element), T, domain=QQ))


def alexander_matrix(v: SeifertMatrix) -> DomainMatrix:
    """V - tVᵀ over ℚ[t]."""
    m = v.matrix()
    return DomainMatrix.from_Matrix(m - T * m.T).convert_to(QQ[T])


@functools.lru_cache(maxsize=1024)
def alexander(v: SeifertMatrix) -> AlexanderData:
    """
    Alexander polynomial det(V - tVᵀ), canonicalized.

    :param v: Seifert matrix
    :return: Δ, top coefficient a_K and degree
    """
    if v.dimension == 0:
        return AlexanderData(LaurentPoly.constant(1), 1, 0)
    matrix = alexander_matrix(v)
    delta = to_laurent(matrix.domain, matrix.det()).canonical()
    if abs(delta.evaluate(1)) != 1:
        raise AssertionError(f"|Δ(1)| = {abs(delta.evaluate(1))} for validated matrix {v}")
    return AlexanderData(delta, int(delta.leading_coefficient), delta.degree)


def alexander_power(delta: LaurentPoly, n: int) -> LaurentPoly:
    """Alexander polynomial of n copies of a knot, Δ^|n|."""
    return (delta ** abs(n)).canonical()


def determinant(v: SeifertMatrix) -> int:
    """Knot determinant |Δ(-1)|."""
    return int(abs(alexander(v).delta.evaluate(-1)))


def arf(v: SeifertMatrix) -> int:
    """Arf invariant: 0 when |Δ(-1)| ≡ ±1 mod 8, else 1."""
    return 0 if determinant(v) % 8 in (1, 7) else 1


def block_sum(v1: SeifertMatrix, v2: SeifertMatrix) -> SeifertMatrix:
    """Seifert matrix of the connected sum."""
    n1, n2 = v1.dimension, v2.dimension
    rows = [list(row) + [0] * n2 for row in v1.entries]
    rows += [[0] * n1 + list(row) for row in v2.entries]
    return SeifertMatrix(rows, check=False)


def mirror(v: SeifertMatrix) -> SeifertMatrix:
    """Mirror image, -Vᵀ."""
    return -v.transpose()


def inverse_knot(v: SeifertMatrix) -> SeifertMatrix:
    """Concordance inverse, -V."""
    return -v
