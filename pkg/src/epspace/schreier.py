"""Schreier families S_a for ordinals a < w^w.

Convention (fixed, never varied at runtime)::

    S_0     = {empty} U {singletons}
    S_{b+1} = {F_1 U ... U F_k : k <= min F_1, F_1 < ... < F_k, F_i in S_b nonempty} U {empty}
    S_a     = {F : F in S_{a[min F]}} U {empty}          (a a limit)

with ``a[n]`` the fundamental sequence of :mod:`epspace.ordinals`.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Sequence

from .ordinals import Ordinal, OrdinalLike, as_ordinal, fundamental_sequence

DEFAULT_ENUM_CAP = 10**6

FinSet = tuple[int, ...]


class ResourceLimitError(RuntimeError):
    """Raised instead of silently truncating an enumeration or search."""


def finset(elements: Iterable[int]) -> FinSet:
    """Normalise to a strictly increasing tuple of positive integers."""
    out = tuple(sorted(set(int(e) for e in elements)))
    if out and out[0] < 1:
        raise ValueError(f"finite sets live in the positive integers, got {out}")
    return out


def format_set(F: Sequence[int]) -> str:
    return "{" + ",".join(str(e) for e in F) + "}"


def schreier_member(F: Iterable[int], a: OrdinalLike) -> bool:
    F = finset(F)
    a = as_ordinal(a)
    if a == 1:
        return len(F) <= (F[0] if F else 0)
    return _member(F, a)


@lru_cache(maxsize=1 << 18)
def _member(F: FinSet, a: Ordinal) -> bool:
    if not F:
        return True
    if a.is_zero:
        return len(F) == 1
    if a.is_limit:
        return _member(F, fundamental_sequence(a, F[0]))
    return min_pieces(F, a.predecessor()) <= F[0]


def min_pieces(F: FinSet, b: Ordinal) -> int:
    """Fewest successive S_b pieces that partition ``F``.

    Greedy longest-prefix is optimal because S_b is hereditary: any interval
    of a member is again a member.
    """
    count, i, n = 0, 0, len(F)
    while i < n:
        j = i + 1
        while j < n and _member(F[i:j + 1], b):
            j += 1
        count += 1
        i = j
    return count


def schreier_maximal(F: Iterable[int], a: OrdinalLike) -> bool:
    """True iff no ``m > max F`` can be added to ``F`` inside S_a.

    Under the fixed convention, membership of ``F + {m}`` does not depend on
    which ``m > max F`` is chosen, so testing ``max F + 1`` suffices.
    """
    F = finset(F)
    a = as_ordinal(a)
    if not schreier_member(F, a):
        raise ValueError(f"{format_set(F)} is not in S_{a}")
    if not F:
        return False
    return not schreier_member(F + (F[-1] + 1,), a)


def schreier_enumerate(a: OrdinalLike, N: int, cap: int = DEFAULT_ENUM_CAP) -> list[FinSet]:
    """All members of S_a contained in {1..N}, sorted by (size, elements)."""
    a = as_ordinal(a)
    if N < 0:
        raise ValueError("window size must be non-negative")
    out: list[FinSet] = [()]
    # depth-first extension; heredity lets us stop at the first non-member
    stack: list[FinSet] = [()]
    while stack:
        F = stack.pop()
        start = F[-1] + 1 if F else 1
        for m in range(start, N + 1):
            G = F + (m,)
            if schreier_member(G, a):
                out.append(G)
                if len(out) > cap:
                    raise ResourceLimitError(
                        f"S_{a} on {{1..{N}}} has more than cap={cap} members"
                    )
                stack.append(G)
    out.sort(key=lambda s: (len(s), s))
    return out


def schreier_subsets(a: OrdinalLike, M: Iterable[int], cap: int = DEFAULT_ENUM_CAP) -> list[FinSet]:
    """All members of S_a contained in ``M``, sorted by (size, elements)."""
    a = as_ordinal(a)
    M = finset(M)
    out: list[FinSet] = [()]
    stack: list[tuple[FinSet, int]] = [((), 0)]
    while stack:
        F, start = stack.pop()
        for idx in range(start, len(M)):
            G = F + (M[idx],)
            if schreier_member(G, a):
                out.append(G)
                if len(out) > cap:
                    raise ResourceLimitError(f"S_{a} inside M has more than cap={cap} members")
                stack.append((G, idx + 1))
    out.sort(key=lambda s: (len(s), s))
    return out
