"""Ordinals below omega^omega in Cantor normal form.

An ordinal ``c_d*w^d + ... + c_1*w + c_0`` is stored as the coefficient tuple
``(c_0, c_1, ..., c_d)`` with ``c_d > 0``; zero is the empty tuple.

Fundamental sequences follow one fixed convention: for a limit ordinal
``a = b + w^(k+1)`` (``b`` the CNF remainder), ``a[n] = b + w^k * n``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import total_ordering
from typing import Union


@total_ordering
@dataclass(frozen=True)
class Ordinal:
    coefficients: tuple[int, ...] = ()

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coefficients)
        if any(c < 0 for c in coeffs):
            raise ValueError(f"negative coefficient in {coeffs}")
        while coeffs and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        object.__setattr__(self, "coefficients", coeffs)

    @classmethod
    def finite(cls, n: int) -> "Ordinal":
        if n < 0:
            raise ValueError("ordinals are non-negative")
        return cls((n,))

    @property
    def degree(self) -> int:
        """Highest power of w present; -1 for zero."""
        return len(self.coefficients) - 1

    def coefficient(self, k: int) -> int:
        return self.coefficients[k] if k < len(self.coefficients) else 0

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    @property
    def is_finite(self) -> bool:
        return self.degree <= 0

    @property
    def is_successor(self) -> bool:
        return self.coefficient(0) > 0

    @property
    def is_limit(self) -> bool:
        return not self.is_zero and self.coefficient(0) == 0

    def successor(self) -> "Ordinal":
        c = list(self.coefficients) or [0]
        c[0] += 1
        return Ordinal(tuple(c))

    def predecessor(self) -> "Ordinal":
        if not self.is_successor:
            raise ValueError(f"{self} has no predecessor")
        c = list(self.coefficients)
        c[0] -= 1
        return Ordinal(tuple(c))

    def __int__(self):
        if not self.is_finite:
            raise ValueError(f"{self} is infinite")
        return self.coefficient(0)

    def _key(self):
        # compare from the highest power down
        return (len(self.coefficients), tuple(reversed(self.coefficients)))

    def __lt__(self, other):
        other = as_ordinal(other)
        return self._key() < other._key()

    def __eq__(self, other):
        if isinstance(other, int):
            other = Ordinal.finite(other)
        if not isinstance(other, Ordinal):
            return NotImplemented
        return self.coefficients == other.coefficients

    def __hash__(self):
        return hash(self.coefficients)

    def __str__(self):
        if self.is_zero:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coefficients[k]
            if c == 0:
                continue
            if k == 0:
                terms.append(str(c))
                continue
            base = "w" if k == 1 else f"w^{k}"
            terms.append(base if c == 1 else f"{base}*{c}")
        return "+".join(terms)

    def __repr__(self):
        return f"Ordinal({self})"


OrdinalLike = Union[Ordinal, int, str]

OMEGA = Ordinal((0, 1))


def as_ordinal(a: OrdinalLike) -> Ordinal:
    if isinstance(a, Ordinal):
        return a
    if isinstance(a, bool):
        raise TypeError("bool is not an ordinal")
    if isinstance(a, int):
        return Ordinal.finite(a)
    if isinstance(a, str):
        return parse_ordinal(a)
    raise TypeError(f"cannot interpret {a!r} as an ordinal")


def ord_compare(a: OrdinalLike, b: OrdinalLike) -> int:
    """-1, 0 or 1 as ``a`` is less than, equal to, or greater than ``b``."""
    a, b = as_ordinal(a), as_ordinal(b)
    ka, kb = a._key(), b._key()
    return (ka > kb) - (ka < kb)


def fundamental_sequence(a: OrdinalLike, n: int) -> Ordinal:
    """The n-th term ``a[n]`` of the fundamental sequence of a limit ordinal."""
    a = as_ordinal(a)
    if not a.is_limit:
        raise ValueError(f"{a} is not a limit ordinal")
    if n < 1:
        raise ValueError("fundamental sequence index must be >= 1")
    k1 = next(i for i, c in enumerate(a.coefficients) if c > 0)
    c = list(a.coefficients)
    c[k1] -= 1
    c[k1 - 1] = n
    return Ordinal(tuple(c))


_TERM = re.compile(r"^(?:w(?:\^(\d+))?(?:\*(\d+))?|(\d+))$")


def parse_ordinal(text: str) -> Ordinal:
    """Parse ASCII CNF such as ``w^2*4+w*1+5``; powers must strictly decrease."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty ordinal")
    coeffs: dict[int, int] = {}
    last_power = None
    for term in s.split("+"):
        m = _TERM.match(term)
        if not m:
            raise ValueError(f"bad ordinal term {term!r} in {text!r}")
        power_s, coeff_s, const_s = m.groups()
        if const_s is not None:
            power, coeff = 0, int(const_s)
        else:
            power = int(power_s) if power_s is not None else 1
            coeff = int(coeff_s) if coeff_s is not None else 1
        if last_power is not None and power >= last_power:
            raise ValueError(f"powers must strictly decrease in {text!r}")
        last_power = power
        coeffs[power] = coeff
    top = max(coeffs)
    return Ordinal(tuple(coeffs.get(k, 0) for k in range(top + 1)))
