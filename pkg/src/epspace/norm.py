"""Evaluation of the norming-set norm, its dual norm, and unit-ball vertices.

Two independent routes compute ``||x|| = max |L(x)|`` over L in M_p:

* :func:`norm_exhaustive` enumerates every admissible sequence of p-measures
  with atoms in ``supp x`` straight from the definition.
* :func:`norm_bb` solves a branch-and-bound knapsack per contiguous run of
  blocks and stitches runs together with a dynamic program over admissible
  partitions.

Every non-unit member of M_p is a non-negative measure and M_p is closed
under restriction, so the positive and negative parts of ``x`` are handled
separately by :func:`norm_bb`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Iterator, Mapping, Optional

import mpmath

from . import numeric
from .numeric import is_exact, to_mpf
from .schreier import ResourceLimitError
from .simplex import Tableau
from .space import (
    Admissible,
    NormFunctional,
    PMeasure,
    SpaceConfig,
    SparseVector,
    StructuralError,
    Unit,
    functional_atoms,
    functional_value,
)

DEFAULT_FUNCTIONAL_CAP = 2_000_000
FLOAT_CUT_TOL = mpmath.mpf("1e-9")
FLOAT_PIVOT_EPS = mpmath.mpf("1e-40")
_BUDGET_SLACK = numeric.to_mpf(numeric.FLOAT_RTOL)


@dataclass
class NormResult:
    value: object
    witness: Optional[NormFunctional]
    nodes: int = 0
    pruned: int = 0


@dataclass
class DualNormResult:
    value: object
    witness_point: SparseVector
    cuts_used: int
    iterations: int
    # (sign, functional, multiplier) with sum multiplier * sign * functional >= f
    # coordinatewise on the search cone and sum of multipliers == value
    multipliers: list = field(default_factory=list)


class DualNormDidNotConverge(RuntimeError):
    def __init__(self, lower, upper, iterations):
        super().__init__(f"no convergence after {iterations} iterations; dual norm in [{lower}, {upper}]")
        self.lower = lower
        self.upper = upper
        self.iterations = iterations


# --------------------------------------------------------------------------
# shared arithmetic set-up


class _Scaled:
    """Integer-scaled copy of weights and vector values in exact mode.

    Values are multiplied by ``vscale`` and weights by ``wscale`` so that all
    work happens on Python ints; results are divided back at the end.  In
    float mode both scales are 1 and everything is an mpf.
    """

    def __init__(self, cfg: SpaceConfig, x: Mapping):
        self.cfg = cfg
        self.exact = cfg.exact and all(isinstance(v, (int, Fraction)) for v in x.values())
        if self.exact:
            den = 1
            for v in x.values():
                d = v.denominator
                if den % d:
                    den = den // gcd(den, d) * d
            self.vscale = den
            self.wscale = cfg.weight_denominator
            self.values = {k: v.numerator * (den // v.denominator) for k, v in x.items()}
            self.capacity = self.wscale
            self._w = _int_weights(cfg)
        else:
            self.vscale = self.wscale = 1
            self.values = {k: to_mpf(v) for k, v in x.items()}
            self.capacity = mpmath.mpf(1) + _BUDGET_SLACK
            self._w = _mpf_weights(cfg)

    def w(self, n: int, g: int):
        return self._w[(n, g)]

    def value(self, v, weighted: bool = True):
        if self.exact:
            return Fraction(v, self.vscale * (self.wscale if weighted else 1))
        return v


@lru_cache(maxsize=64)
def _int_weights(cfg: SpaceConfig) -> dict:
    L = cfg.weight_denominator
    return {key: int(w * L) for key, w in cfg._weights.items()}


@lru_cache(maxsize=64)
def _mpf_weights(cfg: SpaceConfig) -> dict:
    return {key: to_mpf(w) for key, w in cfg._weights.items()}


# --------------------------------------------------------------------------
# exhaustive enumeration


def _available(cfg: SpaceConfig, coords: Iterable[int]) -> list[tuple[int, list[int]]]:
    """Blocks meeting ``coords`` with the admissible segment lengths there."""
    by_block: dict[int, list[int]] = {}
    for c in coords:
        loc = cfg.locate(c)
        if loc is not None:
            by_block.setdefault(loc[0], []).append(loc[1])
    return [(n, sorted(gs)) for n, gs in sorted(by_block.items())]


def _pmeasures_from(cfg: SpaceConfig, avail, start: int) -> Iterator[tuple[int, PMeasure]]:
    """Every non-empty p-measure on blocks ``avail[start:]`` within budget.

    Yields (index of its last block in ``avail``, measure).
    """

    def rec(i, budget, segs):
        if i == len(avail):
            return
        n, gs = avail[i]
        for g in gs:
            w = cfg.weight(n, g)
            nb = budget + w
            if numeric.leq(nb, 1):
                new = segs + ((n, g),)
                yield i, PMeasure(new)
                yield from rec(i + 1, nb, new)
        yield from rec(i + 1, budget, segs)

    yield from rec(start, Fraction(0), ())


def enumerate_admissible(cfg: SpaceConfig, coords: Iterable[int], cap: int = DEFAULT_FUNCTIONAL_CAP) -> Iterator[Admissible]:
    """Every admissible sum of p-measures with all atoms inside ``coords``.

    Different sequences with the same sum are all produced.
    """
    avail = _available(cfg, coords)
    count = 0

    def seqs(start):
        for last, m in _pmeasures_from(cfg, avail, start):
            yield (m,)
            for rest in seqs(last + 1):
                yield (m,) + rest

    for ms in seqs(0):
        k_max = cfg.blocks[ms[0].blocks[0] - 1][0]
        if len(ms) <= k_max:
            count += 1
            if count > cap:
                raise ResourceLimitError(f"more than cap={cap} admissible functionals")
            yield Admissible(ms)


@lru_cache(maxsize=4096)
def _functional_table(cfg: SpaceConfig, coords: frozenset) -> tuple:
    table = [(Unit(c).encode(), Unit(c), ((c, None),)) for c in coords]
    for fn in enumerate_admissible(cfg, coords):
        atoms = tuple((cfg.atom(n, g), (n, g)) for m in fn.measures for n, g in m.segments)
        table.append((fn.encode(), fn, atoms))
    table.sort(key=lambda t: t[0])
    return tuple(table)


def distinct_measures(cfg: SpaceConfig, coords: Optional[Iterable[int]] = None) -> list[tuple[tuple[int, int], ...]]:
    """Segment choices ((n, g), ...) of the distinct non-unit members of M_p on ``coords``.

    A member is fixed by its segments (one per block at most).  A choice is
    realisable iff the greedy split into successive budget-feasible chunks uses
    at most ``min F`` of its first block chunks; greedy minimises the count.
    """
    coords = cfg.window if coords is None else coords
    avail = _available(cfg, coords)
    W = _int_weights(cfg) if cfg.exact else _mpf_weights(cfg)
    cap = cfg.weight_denominator if cfg.exact else mpmath.mpf(1) + _BUDGET_SLACK
    out: list = []

    def rec(i, chosen, k_max, chunks, used):
        if chosen:
            out.append(tuple(chosen))
        for t in range(i, len(avail)):
            n, gs = avail[t]
            first = k_max if chosen else cfg.blocks[n - 1][0]
            for g in gs:
                w = W[(n, g)]
                if chosen and used + w <= cap:
                    c2, u2 = chunks, used + w
                else:
                    c2, u2 = chunks + 1, w
                if c2 <= first:
                    chosen.append((n, g))
                    rec(t + 1, chosen, first, c2, u2)
                    chosen.pop()

    rec(0, [], 0, 0, 0)
    return out


def window_measures(cfg: SpaceConfig, coords: Optional[Iterable[int]] = None) -> list[dict]:
    """Distinct members of M_p (as coordinate -> mass maps) acting on ``coords``."""
    coords = tuple(cfg.window if coords is None else coords)
    out = [{c: Fraction(1)} for c in sorted(set(coords))]
    for choice in distinct_measures(cfg, coords):
        out.append({cfg.atom(n, g): cfg.weight(n, g) for n, g in choice})
    return out


def _check_support(cfg: SpaceConfig, coords: Iterable[int]):
    loc = cfg._locator
    bad = [c for c in coords if c not in loc]
    if bad:
        raise StructuralError(f"coordinates {bad} lie outside the window {cfg.window[0]}..{cfg.window[-1]}")


def norm_exhaustive(x: Mapping, cfg: SpaceConfig) -> NormResult:
    """Maximise |L(x)| over every functional supported in ``supp x``."""
    x = x if isinstance(x, SparseVector) else SparseVector(x)
    if not x:
        return NormResult(Fraction(0), None)
    _check_support(cfg, x.support)
    sc = _Scaled(cfg, x)
    vals = sc.values
    table = _functional_table(cfg, frozenset(x.support))
    W = sc._w
    best, best_fn = None, None
    for _, fn, atoms in table:
        if isinstance(fn, Unit):
            v = abs(vals[fn.n]) * sc.wscale
        else:
            v = abs(sum(W[ng] * vals[a] for a, ng in atoms))
        if best is None or v > best:
            best, best_fn = v, fn
    return NormResult(sc.value(best), best_fn, nodes=len(table))


# --------------------------------------------------------------------------
# branch and bound


class _OneSided:
    """max L(y) over M_p for a vector ``y`` with positive entries."""

    def __init__(self, cfg: SpaceConfig, sc: _Scaled, y: dict):
        self.cfg = cfg
        self.cap = sc.capacity
        self.nodes = 0
        self.pruned = 0
        self.zero = zero = 0 if sc.exact else mpmath.mpf(0)
        W = sc._w
        loc = cfg._locator
        by_block: dict[int, list] = {}
        for c, v in y.items():
            ng = loc.get(c)
            if ng is not None:
                by_block.setdefault(ng[0], []).append((ng[1], v))
        # per block: options (g, weight, gain) with dominated ones removed,
        # best gain first
        self.blocks = []
        self.max_gain = []
        self.max_val = []
        for n in sorted(by_block):
            opts, best_gain, best_val = [], zero, zero
            for g, v in sorted(by_block[n]):
                w = W[(n, g)]
                gain = w * v
                if gain > best_gain:
                    opts.append((g, w, gain))
                    best_gain = gain
                if v > best_val:
                    best_val = v
            opts.reverse()
            self.blocks.append((n, opts))
            self.max_gain.append(best_gain)
            self.max_val.append(best_val)
        self.r = len(self.blocks)
        self._knap: dict = {}

    def knap(self, i: int, j: int):
        """Best single p-measure on blocks i..j (inclusive): (value, choices)."""
        res = self._knap.get((i, j))
        if res is None:
            if i == j:
                return self._single(i)
            self._fill(i)
            res = self._knap[(i, j)]
        return res

    def _single(self, t: int):
        n, opts = self.blocks[t]
        g, _, gain = opts[0]
        return gain, ((n, g),)

    def _singles(self, t: int):
        """Every block from t on as its own chunk; optimal once chunks are plentiful."""
        val, chunks = self.suffix[t], []
        for u in range(t, self.r):
            chunks.append(self._single(u)[1])
        return val, tuple(chunks)

    def _fill(self, i: int):
        # knap(i, j) for every j >= i, each seeded with knap(i, j - 1)
        blocks, r, zero = self.blocks, self.r, self.zero
        state = [zero, ()]
        for j in range(i, r):
            suf_gain = [zero] * (j - i + 2)
            suf_val = [zero] * (j - i + 2)
            for t in range(j, i - 1, -1):
                suf_gain[t - i] = suf_gain[t - i + 1] + self.max_gain[t]
                v = self.max_val[t]
                suf_val[t - i] = v if v > suf_val[t - i + 1] else suf_val[t - i + 1]

            def dfs(t, cap, val, choice):
                self.nodes += 1
                if val > state[0]:
                    state[0], state[1] = val, choice
                if t > j:
                    return
                k = t - i
                rem = cap * suf_val[k]
                g_ = suf_gain[k]
                if val + (g_ if g_ < rem else rem) <= state[0]:
                    self.pruned += 1
                    return
                n, opts = blocks[t]
                for g, w, gain in opts:
                    if w <= cap:
                        dfs(t + 1, cap - w, val + gain, choice + ((n, g),))
                dfs(t + 1, cap, val, choice)

            dfs(i, self.cap, zero, ())
            self._knap[(i, j)] = (state[0], state[1])

    def solve(self):
        """(value, list of chunks) for the best admissible sum."""
        r = self.r
        if r == 0:
            return self.zero, []
        memo: dict = {}
        suffix = self.suffix = [self.zero] * (r + 1)
        for t in range(r - 1, -1, -1):
            suffix[t] = suffix[t + 1] + self.max_gain[t]

        def h(t, c):
            # best over blocks t.. with at most c further chunks
            if t >= r or c <= 0:
                return self.zero, ()
            if c >= r - t:
                return self._singles(t)
            key = (t, c)
            if key in memo:
                return memo[key]
            best = (self.zero, ())
            for j in range(t, r):
                kv, kc = self.knap(t, j)
                tv, tc = h(j + 1, c - 1)
                if kv + tv > best[0]:
                    best = (kv + tv, ((kc,) if kc else ()) + tc)
            memo[key] = best
            return best

        best = (self.zero, ())
        for s in range(r):
            if suffix[s] <= best[0]:
                self.pruned += 1
                continue
            k_cap = self.cfg.blocks[self.blocks[s][0] - 1][0]
            if k_cap >= r - s:
                best = self._singles(s)
                continue
            for j in range(s, r):
                kv, kc = self.knap(s, j)
                tv, tc = h(j + 1, k_cap - 1)
                if kv + tv > best[0]:
                    best = (kv + tv, ((kc,) if kc else ()) + tc)
        return best


def _bb_side(cfg: SpaceConfig, sc: _Scaled, y: dict):
    """(scaled value, witness, nodes, pruned) for positive entries ``y``."""
    if not y:
        return None, None, 0, 0
    unit_coord = min(y, key=lambda c: (-y[c], c))
    unit_val = y[unit_coord] * sc.wscale
    solver = _OneSided(cfg, sc, y)
    val, chunks = solver.solve()
    if chunks and val > unit_val:
        fn = Admissible(PMeasure(ch) for ch in chunks)
        return val, fn, solver.nodes, solver.pruned
    return unit_val, Unit(unit_coord), solver.nodes, solver.pruned


def norm_bb(x: Mapping, cfg: SpaceConfig) -> NormResult:
    x = x if isinstance(x, SparseVector) else SparseVector(x)
    if not x:
        return NormResult(Fraction(0), None)
    _check_support(cfg, x.support)
    sc = _Scaled(cfg, x)
    pos = {k: v for k, v in sc.values.items() if v > 0}
    neg = {k: -v for k, v in sc.values.items() if v < 0}
    pv, pfn, pn, pp = _bb_side(cfg, sc, pos)
    nv, nfn, nn, np_ = _bb_side(cfg, sc, neg)
    if nv is None or (pv is not None and pv >= nv):
        val, fn = pv, pfn
    else:
        val, fn = nv, nfn
    return NormResult(sc.value(val), fn, nodes=pn + nn, pruned=pp + np_)


def norm(x: Mapping, cfg: SpaceConfig, engine: str = "bb") -> NormResult:
    if engine == "bb":
        return norm_bb(x, cfg)
    if engine == "exhaustive":
        return norm_exhaustive(x, cfg)
    raise ValueError(f"unknown engine {engine!r}")


# --------------------------------------------------------------------------
# dual norm


def dual_norm(f: Mapping, cfg: SpaceConfig, max_iter: int = 1000) -> DualNormResult:
    """max f(x) over the unit ball, by cutting planes with ``norm_bb`` as oracle.

    For sign-definite ``f`` the search is restricted to ``x`` of the same
    sign: suppressing coordinates never increases the norm, so an optimiser
    exists there.  Mixed-sign ``f`` uses the split ``x = x+ - x-``.
    """
    f = {k: (Fraction(v) if isinstance(v, int) else v) for k, v in f.items() if v != 0}
    for k in f:
        if k < 1:
            raise StructuralError(f"bad coordinate {k}")
    coords = sorted(f)
    _check_support(cfg, coords)
    if not coords:
        return DualNormResult(Fraction(0), SparseVector(), 0, 0)
    exact = cfg.exact and all(is_exact(v) for v in f.values())
    if exact:
        zero, eps, conv = Fraction(0), 0, Fraction
    else:
        zero, eps, conv = mpmath.mpf(0), FLOAT_PIVOT_EPS, to_mpf

    signs = {1 if f[c] > 0 else -1 for c in coords}
    d = len(coords)
    if len(signs) == 1:
        sgn = signs.pop()
        split = False
        c = [conv(sgn * f[k]) for k in coords]
    else:
        sgn = 1
        split = True
        c = [conv(f[k]) for k in coords] + [conv(-f[k]) for k in coords]

    tab = Tableau(c, eps=eps, zero=zero)
    rows: list[tuple[int, NormFunctional]] = []

    def add(sign: int, fn: NormFunctional):
        atoms = functional_atoms(fn, cfg)
        a = [conv(sign * atoms.get(k, 0)) for k in coords]
        if split:
            a = a + [-v for v in a]
        tab.add_row(a, conv(1))
        rows.append((sign, fn))

    for k in coords:
        add(1, Unit(k))
        if split:
            add(-1, Unit(k))

    seen = set(rows)
    lower = None
    for it in range(1, max_iter + 1):
        sol = tab.solve()
        xs = sol.x[:d] if not split else [sol.x[i] - sol.x[d + i] for i in range(d)]
        point = SparseVector({k: sgn * v for k, v in zip(coords, xs)})
        res = norm_bb(point, cfg)
        ok = res.value <= 1 if exact else res.value <= 1 + FLOAT_CUT_TOL
        if ok:
            mults = [(s * sgn, fn, y) for (s, fn), y in zip(rows, sol.duals) if y != 0]
            return DualNormResult(sol.value, point, len(rows) - (2 if split else 1) * d, it, mults)
        lower = sol.value / res.value
        sign = 1 if functional_value(res.witness, point, cfg) * sgn > 0 else -1
        key = (sign, res.witness)
        if key in seen:
            raise DualNormDidNotConverge(lower, sol.value, it)
        seen.add(key)
        add(sign, res.witness)
    sol = tab.solve()
    raise DualNormDidNotConverge(lower, sol.value, max_iter)


# --------------------------------------------------------------------------
# unit-ball vertices


def _solve_exact(M: list[list[Fraction]], rhs: list[Fraction]) -> Optional[list[Fraction]]:
    """Gauss-Jordan over Fractions; None when singular."""
    n = len(M)
    A = [row[:] + [b] for row, b in zip(M, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col] != 0), None)
        if piv is None:
            return None
        A[col], A[piv] = A[piv], A[col]
        pv = A[col][col]
        A[col] = [v / pv for v in A[col]]
        for r in range(n):
            if r != col and A[r][col] != 0:
                fct = A[r][col]
                A[r] = [a - fct * b for a, b in zip(A[r], A[col])]
    return [A[r][n] for r in range(n)]


MAX_EXTREME_DIM = 5


def section_extreme_points(cfg: SpaceConfig, coords: Iterable[int]) -> list[SparseVector]:
    """Vertices of the unit ball restricted to ``span{e_c : c in coords}``."""
    coords = sorted(set(int(c) for c in coords))
    d = len(coords)
    if d == 0:
        return []
    if d > MAX_EXTREME_DIM:
        raise ResourceLimitError(f"extreme points limited to {MAX_EXTREME_DIM} coordinates, got {d}")
    if not cfg.exact:
        raise ValueError("extreme points are computed in exact mode (integer p) only")
    constraints = set()
    for atoms in window_measures(cfg, coords):
        constraints.add(tuple(Fraction(atoms.get(c, 0)) for c in coords))
    for c in coords:
        constraints.add(tuple(Fraction(int(c == k)) for k in coords))
    rows = sorted(constraints)
    rows = rows + [tuple(-v for v in r) for r in rows]
    one = [Fraction(1)] * d
    vertices = set()
    for combo in itertools.combinations(range(len(rows)), d):
        sol = _solve_exact([list(rows[i]) for i in combo], one)
        if sol is None:
            continue
        if all(sum(a * x for a, x in zip(r, sol)) <= 1 for r in rows):
            vertices.add(tuple(sol))
    return [SparseVector(zip(coords, v)) for v in sorted(vertices)]
