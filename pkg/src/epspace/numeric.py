"""Number handling shared by every module.

Two arithmetic regimes coexist:

* exact: ``int``/``Fraction`` values. Used whenever the exponent ``p`` is an
  integer and all inputs are rational.
* float: ``mpmath.mpf`` at 60 significant digits. Used when ``p`` is a
  non-integer rational or an input is irrational (e.g. ``2**(-1/2)``).
  Comparisons in this regime carry a relative tolerance.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Union

import mpmath

mpmath.mp.dps = 60

Number = Union[int, Fraction, mpmath.mpf]

#: default relative tolerance for equality assertions in float mode
FLOAT_RTOL = Fraction(1, 10**12)


def is_exact(v) -> bool:
    return isinstance(v, (int, Fraction))


def to_mpf(v) -> mpmath.mpf:
    if isinstance(v, mpmath.mpf):
        return v
    if isinstance(v, Fraction):
        return mpmath.mpf(v.numerator) / v.denominator
    return mpmath.mpf(v)


def to_fraction(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    raise TypeError(f"expected an exact rational, got {v!r}")


def parse_rational(text: str) -> Fraction:
    """Parse ``"3"``, ``"-1/2"`` or a decimal like ``"0.25"`` into a Fraction."""
    text = text.strip()
    if not text:
        raise ValueError("empty number")
    return Fraction(text)


def format_number(v) -> str:
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(v, int):
        return str(v)
    return mpmath.nstr(v, 20)


def unify(values: Iterable) -> list:
    """Return ``values`` as a list in a single regime (mpf if any is inexact)."""
    vals = list(values)
    if all(is_exact(v) for v in vals):
        return [Fraction(v) for v in vals]
    return [to_mpf(v) for v in vals]


def rational_power(base: Fraction, p: Fraction):
    """``base ** p`` exactly when ``p`` is an integer, else as an mpf."""
    if p.denominator == 1:
        return Fraction(base) ** p.numerator
    return to_mpf(base) ** to_mpf(p)


def power(base, p):
    """``base ** p`` for arbitrary regime ``base`` (``p`` a Fraction)."""
    if is_exact(base):
        return rational_power(Fraction(base), Fraction(p))
    if p.denominator == 1:
        return base ** p.numerator
    return base ** to_mpf(p)


def leq(a, b, rtol=FLOAT_RTOL) -> bool:
    """``a <= b`` exactly for rationals, with relative slack otherwise."""
    if is_exact(a) and is_exact(b):
        return a <= b
    a, b = to_mpf(a), to_mpf(b)
    slack = to_mpf(rtol) * max(abs(a), abs(b), mpmath.mpf(1))
    return a <= b + slack


def close(a, b, rtol=FLOAT_RTOL) -> bool:
    if is_exact(a) and is_exact(b):
        return a == b
    return leq(a, b, rtol) and leq(b, a, rtol)
