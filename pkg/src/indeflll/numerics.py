"""Exact scalar arithmetic primitives.

Everything in this package computes over arbitrary-precision integers
(plain ``int``) and rationals (``fractions.Fraction``).  No floating
point is used anywhere; comparisons against square roots are decided by
sign analysis and squaring.
"""

from fractions import Fraction
from math import ceil, floor, isqrt

from .errors import ParseError

Rational = int | Fraction


def sign(x: Rational) -> int:
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


def nearest_int(x: Rational) -> int:
    """Closest integer to x, ties broken toward zero.

    |x - nearest_int(x)| <= 1/2 always; at half-integers the candidate
    with the smaller absolute value wins (so 7/2 -> 3 and -7/2 -> -3).
    """
    x = Fraction(x)
    fl = x.numerator // x.denominator
    rem = x - fl  # in [0, 1)
    twice = 2 * rem.numerator
    if twice < rem.denominator:
        return fl
    if twice > rem.denominator:
        return fl + 1
    return fl if fl >= 0 else fl + 1


def is_rational_square(x: Rational) -> Fraction | None:
    """Return r >= 0 with r*r == x if x is the square of a rational, else None."""
    x = Fraction(x)
    if x < 0:
        return None
    rn = isqrt(x.numerator)
    rd = isqrt(x.denominator)
    if rn * rn == x.numerator and rd * rd == x.denominator:
        return Fraction(rn, rd)
    return None


def cmp_with_sqrt(p: Rational, q: Rational, d: Rational) -> int:
    """Exact sign of p - q*sqrt(d) for rational p, q and d >= 0."""
    pn, pd = (p.numerator, p.denominator) if isinstance(p, Fraction) else (p, 1)
    qn, qd = (q.numerator, q.denominator) if isinstance(q, Fraction) else (q, 1)
    dn, dd = (d.numerator, d.denominator) if isinstance(d, Fraction) else (d, 1)
    if dn < 0:
        raise ValueError("cmp_with_sqrt requires d >= 0")
    if dn == 0 or qn == 0:
        return sign(pn)
    if qn > 0 and pn <= 0:
        return -1
    if qn < 0 and pn >= 0:
        return 1
    # p and q*sqrt(d) share a strict sign; compare squares cross-multiplied
    lhs = pn * pn * qd * qd * dd
    rhs = qn * qn * dn * pd * pd
    if lhs == rhs:
        return 0
    return sign(pn) * (1 if lhs > rhs else -1)


def floor_mixed(a: Rational, b: Rational, d: Rational) -> int:
    """floor(a + b*sqrt(d)) computed exactly, d >= 0.

    A scaled integer square root brackets b*sqrt(d) within less than 1,
    then the candidate is fixed with exact sign tests.
    """
    a, b, d = Fraction(a), Fraction(b), Fraction(d)
    if d < 0:
        raise ValueError("floor_mixed requires d >= 0")
    m = d.numerator * d.denominator  # sqrt(d) = sqrt(m) / d.denominator
    bp = b / d.denominator
    if m == 0 or bp == 0:
        return a.numerator // a.denominator
    k = abs(bp.numerator) // bp.denominator + 2  # k > |bp|
    s = isqrt(m * k * k)  # s/k <= sqrt(m) < (s+1)/k
    lo = a + bp * Fraction(s if bp > 0 else s + 1, k)
    n = lo.numerator // lo.denominator
    # value >= n+1  <=>  (a - (n+1)) + bp*sqrt(m) >= 0
    while cmp_with_sqrt(a - (n + 1), -bp, m) >= 0:
        n += 1
    return n


def ceil_mixed(a: Rational, b: Rational, d: Rational) -> int:
    """ceil(a + b*sqrt(d)) computed exactly, d >= 0."""
    n = floor_mixed(a, b, d)
    return n if _equals_int(a, b, d, n) else n + 1


def _equals_int(a: Rational, b: Rational, d: Rational, n: int) -> bool:
    a, b, d = Fraction(a), Fraction(b), Fraction(d)
    m = d.numerator * d.denominator
    bp = b / d.denominator
    return cmp_with_sqrt(a - n, -bp, m) == 0


def floor_frac(x: Rational) -> int:
    return floor(Fraction(x))


def ceil_frac(x: Rational) -> int:
    return ceil(Fraction(x))


def parse_rational(text: str) -> Fraction:
    """Parse a decimal integer or a "p/q" literal into a Fraction."""
    s = text.strip()
    try:
        if "/" in s:
            num, den = s.split("/", 1)
            return Fraction(int(num.strip()), int(den.strip()))
        return Fraction(int(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"not a rational literal: {text!r}") from exc


def parse_integer(text: str) -> int:
    s = text.strip()
    try:
        return int(s)
    except ValueError as exc:
        raise ParseError(f"not an integer literal: {text!r}") from exc


def format_rational(x: Rational) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"
