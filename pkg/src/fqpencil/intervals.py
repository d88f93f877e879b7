"""Rational enclosures for square roots and the bound formulas.

All PASS/FAIL comparisons against the displayed bounds go through these
outward-rounded enclosures so verdicts never depend on floating point.
"""

from fractions import Fraction
from math import isqrt

_SCALE = 10 ** 25


def sqrt_bounds(x) -> tuple[Fraction, Fraction]:
    """Return (lo, hi) with lo <= sqrt(x) <= hi, outward rounded."""
    x = Fraction(x)
    if x < 0:
        raise ValueError("negative radicand")
    num, den = x.numerator, x.denominator
    # sqrt(num/den) = sqrt(num*den)/den
    m = num * den * _SCALE * _SCALE
    r = isqrt(m)
    lo = Fraction(r, den * _SCALE)
    hi = Fraction(r + 1, den * _SCALE)
    return lo, hi


def fourth_root_bounds(x) -> tuple[Fraction, Fraction]:
    lo2, hi2 = sqrt_bounds(x)
    return sqrt_bounds(lo2)[0], sqrt_bounds(hi2)[1]


def q_pow_half_bounds(q: int, s: int) -> tuple[Fraction, Fraction]:
    """Enclosure of q**(s/2)."""
    if s % 2 == 0:
        v = Fraction(q ** (s // 2))
        return v, v
    return sqrt_bounds(q ** s)


def q_pow_quarter_bounds(q: int, s: int) -> tuple[Fraction, Fraction]:
    """Enclosure of q**(s/4)."""
    if s % 4 == 0:
        v = Fraction(q ** (s // 4))
        return v, v
    if s % 2 == 0:
        return sqrt_bounds(q ** (s // 2))
    return fourth_root_bounds(q ** s)


def mul_bounds(a: tuple[Fraction, Fraction], b: tuple[Fraction, Fraction]):
    prods = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
    return min(prods), max(prods)
