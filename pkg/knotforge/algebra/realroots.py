"""
Real root isolation over the rationals with Sturm sequences.

All polynomials are sympy Polys with rational coefficients and must be
squarefree. Intervals are pairs of Fractions and are read as (lo, hi].
"""
import logging
from fractions import Fraction
from typing import List, Sequence, Tuple

import sympy
from sympy import Poly

logger = logging.getLogger(__name__)

Interval = Tuple[Fraction, Fraction]


def as_sympy(value: Fraction) -> sympy.Rational:
    return sympy.Rational(value.numerator, value.denominator)


def sign_at(poly: Poly, x: Fraction) -> int:
    return int(sympy.sign(poly.eval(as_sympy(x))))


def sturm_sequence(poly: Poly) -> List[Poly]:
    return poly.sturm()


def sign_changes(signs: Sequence[int]) -> int:
    nonzero = [s for s in signs if s]
    return sum(1 for s1, s2 in zip(nonzero, nonzero[1:]) if s1 != s2)


def count_roots(sequence: Sequence[Poly], lo: Fraction, hi: Fraction) -> int:
    """Number of distinct roots in (lo, hi]."""
    at_lo = sign_changes([sign_at(p, lo) for p in sequence])
    at_hi = sign_changes([sign_at(p, hi) for p in sequence])
    return at_lo - at_hi


def root_bound(poly: Poly) -> Fraction:
    """Cauchy bound: every root has absolute value below the result."""
    coefficients = [Fraction(int(c.p), int(c.q)) for c in map(sympy.Rational, poly.all_coeffs())]
    leading = coefficients[0]
    return 1 + max((abs(c / leading) for c in coefficients[1:]), default=Fraction(0))


def _split_point(poly: Poly, lo: Fraction, hi: Fraction) -> Fraction:
    mid = (lo + hi) / 2
    while sign_at(poly, mid) == 0:
        mid = (lo + mid) / 2
    return mid


def isolate_roots(poly: Poly, lo: Fraction, hi: Fraction) -> List[Interval]:
    """Disjoint intervals (a, b] in (lo, hi], each holding exactly one root, ascending."""
    if poly.degree() < 1:
        return []
    sequence = sturm_sequence(poly)
    output = []
    stack = [(lo, hi, count_roots(sequence, lo, hi))]
    while stack:
        a, b, count = stack.pop()
        if count == 0:
            continue
        elif count == 1:
            output.append((a, b))
        else:
            mid = _split_point(poly, a, b)
            left = count_roots(sequence, a, mid)
            stack.append((mid, b, count - left))
            stack.append((a, mid, left))
    output.sort()
    return output


def refine_root(poly: Poly, lo: Fraction, hi: Fraction, width: Fraction) -> Interval:
    """Bisect an isolating interval of a simple root until it is at most width wide.

    If a bisection point hits the root exactly, a small interval centered on it is returned.
    """
    lo_sign = sign_at(poly, lo) or -sign_at(poly, hi)
    steps = 0
    while hi - lo > width:
        mid = (lo + hi) / 2
        mid_sign = sign_at(poly, mid)
        if mid_sign == 0:
            quarter = (hi - lo) / 4
            while 2 * quarter > width:
                quarter /= 2
            lo, hi = mid - quarter, mid + quarter
            break
        elif mid_sign == lo_sign:
            lo = mid
        else:
            hi = mid
        steps += 1
    if steps > 64:
        logger.debug("Refined root of %s in %d steps", poly.as_expr(), steps)
    return lo, hi
