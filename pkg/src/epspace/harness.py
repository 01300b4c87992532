"""Seeded checks of the quantitative estimates on finite windows.

Every check returns a :class:`CheckReport`.  Instances are generated so that
they satisfy the hypotheses by construction; each failure records the input
needed to replay it.

Comparisons mixing rationals with values built from eps_n (irrational in
general) are done in 60-digit arithmetic and must clear a margin of 1e-40;
anything closer counts as a failure.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence

import mpmath
import numpy as np

from .constructions import combine_u_star
from .norm import DualNormResult, distinct_measures, dual_norm, norm_bb
from .numeric import format_number, is_exact, to_mpf
from .space import SpaceConfig, SparseVector, config_validate

MARGIN = mpmath.mpf("1e-40")
FLOAT_TOL = Fraction(1, 10**9)
TAIL_TARGET = mpmath.mpf("1e-12")

DEFAULT_COUNTS = {"L1": 1000, "L2": 200, "L3": 100, "L4L5": 100, "C2T3": 100}
SECTION4_ONLY = {"L3", "L4L5", "C2T3"}
SUITES = ("L1", "L2", "L3", "L4L5", "C2T3")


# --------------------------------------------------------------------------
# reports


@dataclass
class Failure:
    input: dict
    lhs: str
    rhs: str
    relation: str


@dataclass
class CheckReport:
    id: str
    config: str
    instances: int = 0
    failures: list[Failure] = field(default_factory=list)
    runtime: float = 0.0
    seed: Optional[int] = None
    skipped: int = 0
    parts: list["CheckReport"] = field(default_factory=list)

    @property
    def verdict(self) -> str:
        return "pass" if not self.failures else "fail"

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        d = asdict(self)
        d["verdict"] = self.verdict
        d["parts"] = [p.to_dict() for p in self.parts]
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def summary(self) -> str:
        line = f"{self.id}: {self.verdict} ({self.instances} instances, {len(self.failures)} failures"
        if self.skipped:
            line += f", {self.skipped} skipped"
        return line + f", {self.runtime:.2f}s)"


class _Recorder:
    def __init__(self, rep: CheckReport):
        self.rep = rep

    def check(self, lhs, relation: str, rhs, inp: dict, tol=None) -> bool:
        ok = holds(lhs, relation, rhs, tol)
        if not ok:
            self.rep.failures.append(Failure(inp, _fmt(lhs), _fmt(rhs), relation))
        return ok


def _fmt(v) -> str:
    return format_number(v) if is_exact(v) else mpmath.nstr(v, 30)


def holds(lhs, relation: str, rhs, tol=None) -> bool:
    """Exact comparison for rationals; otherwise a 1e-40 safety margin.

    With ``tol`` set, inexact comparisons instead allow that relative slack.
    """
    if is_exact(lhs) and is_exact(rhs):
        return {"<=": lhs <= rhs, ">=": lhs >= rhs, "<": lhs < rhs, "==": lhs == rhs}[relation]
    a, b = to_mpf(lhs), to_mpf(rhs)
    if relation == ">=":
        a, b, relation = b, a, "<="
    if tol is None:
        # strict separation required, whatever the relation
        if relation in ("<=", "<"):
            return b - a > MARGIN
        return False
    slack = to_mpf(tol) * max(abs(a), abs(b), mpmath.mpf(1))
    if relation in ("<=", "<"):
        return a <= b + slack
    if relation == "==":
        return abs(a - b) <= slack
    raise ValueError(relation)


def _lin(const, *terms):
    """const + sum coef * value, exact whenever every irrational coef meets a zero."""
    total = const
    for coef, val in terms:
        if val == 0 or coef == 0:
            continue
        total = total + (coef * val if is_exact(coef) else coef * to_mpf(val))
    return total


def _vec(x: SparseVector) -> str:
    return x.format()


def _new_report(cid: str, cfg: SpaceConfig, seed) -> CheckReport:
    return CheckReport(id=cid, config=cfg.digest, seed=seed)


def _rng(seed: int, cid: str) -> random.Random:
    return random.Random(f"{seed}:{cid}")


def _qpow(v, q: Fraction):
    """|v| ** q; exact when q is an integer and v rational."""
    v = abs(v)
    if q.denominator == 1 and is_exact(v):
        return Fraction(v) ** q.numerator
    return to_mpf(v) ** to_mpf(q)


def _qsum(values: Iterable, q: Fraction):
    out = Fraction(0)
    for v in values:
        out = out + _qpow(v, q)
    return out


def _scale_into_ball(vals: list, q: Fraction, rng_den: int = 10**6) -> list:
    """Rescale by a rational factor so that sum |v|^q <= 1."""
    S = _qsum(vals, q)
    if S <= 1:
        return vals
    c = Fraction(int(mpmath.floor(to_mpf(S) ** (-1 / to_mpf(q)) * rng_den)), rng_den)
    while _qsum([c * v for v in vals], q) > 1:
        c -= Fraction(1, rng_den)
    return [c * v for v in vals]


def certified_dual(f: dict, cfg: SpaceConfig) -> tuple[DualNormResult, bool]:
    """dual_norm plus re-validation of its certificate with norm_bb."""
    res = dual_norm(f, cfg)
    x = res.witness_point
    fx = sum((v * x.get(k, 0) for k, v in f.items()), Fraction(0))
    nx = norm_bb(x, cfg).value if x else Fraction(0)
    if is_exact(res.value) and is_exact(fx) and is_exact(nx):
        ok = fx == res.value and nx <= 1
    else:
        ok = holds(fx, "==", res.value, FLOAT_TOL) and holds(nx, "<=", 1, FLOAT_TOL)
    return res, ok


# --------------------------------------------------------------------------
# L1


@lru_cache(maxsize=8)
def _measure_matrix(cfg: SpaceConfig):
    """Integer-scaled masses of every distinct member of M_p on the window."""
    coords = list(cfg.window)
    col = {c: i for i, c in enumerate(coords)}
    L = cfg.weight_denominator
    rows = distinct_measures(cfg)
    A = np.zeros((len(rows) + len(coords), len(coords)), dtype=np.int64)
    for r, choice in enumerate(rows):
        for n, g in choice:
            A[r, col[cfg.atom(n, g)]] = int(cfg.weight(n, g) * L)
    for i in range(len(coords)):
        A[len(rows) + i, i] = L
    return A, col, L


def random_segment_choice(cfg: SpaceConfig, rng: random.Random) -> dict[int, int]:
    """Segment lengths per block (0 = empty) with total budget at most 1."""
    order = list(range(1, cfg.num_blocks + 1))
    rng.shuffle(order)
    budget = Fraction(0)
    out = {}
    for n in order:
        fits = [g for g in range(cfg.size(n) + 1) if g == 0 or budget + cfg.weight(n, g) <= 1]
        g = rng.choice(fits)
        if g:
            out[n] = g
            budget += cfg.weight(n, g)
    return dict(sorted(out.items()))


def check_L1(cfg: SpaceConfig, count: int = DEFAULT_COUNTS["L1"], seed: int = 0,
             choices: Optional[Sequence[dict]] = None) -> CheckReport:
    """Segments G_n with sum (|G_n|/|F_n|)^p <= 1: every mu has sum mu(G_n) <= 1,
    and ||sum_n 1_{G_n}|| <= 1."""
    if not cfg.exact:
        raise ValueError("check_L1 runs in exact mode (integer p)")
    t0 = time.perf_counter()
    rep = _new_report("L1", cfg, seed)
    rec = _Recorder(rep)
    rng = _rng(seed, "L1")
    A, col, L = _measure_matrix(cfg)
    if choices is None:
        choices = [random_segment_choice(cfg, rng) for _ in range(count)]
    for ch in choices:
        ch = {n: g for n, g in ch.items() if g}
        budget = sum((cfg.weight(n, g) for n, g in ch.items()), Fraction(0))
        inp = {"segments": {str(n): g for n, g in ch.items()}}
        if budget > 1:
            rep.skipped += 1
            continue
        rep.instances += 1
        ind = np.zeros(len(col), dtype=np.int64)
        coords = [c for n, g in ch.items() for c in cfg.block(n)[:g]]
        for c in coords:
            ind[col[c]] = 1
        worst = int((A @ ind).max()) if coords else 0
        rec.check(Fraction(worst, L), "<=", Fraction(1), inp | {"part": "measures"})
        x = SparseVector.indicator(coords)
        rec.check(norm_bb(x, cfg).value, "<=", Fraction(1), inp | {"part": "norm"})
    rep.runtime = time.perf_counter() - t0
    return rep


# --------------------------------------------------------------------------
# L2


def l2_segment(a, size: int, q: Fraction) -> int:
    """Largest g with g/size <= a^(q-1)."""
    e = q - 1
    if is_exact(a) and e.denominator == 1:
        return int(Fraction(a) ** e.numerator * size)
    return int(mpmath.floor(to_mpf(a) ** to_mpf(e) * size))


def check_L2_lower(cfg: SpaceConfig, coeffs: Optional[Sequence[Sequence]] = None,
                   count: int = DEFAULT_COUNTS["L2"], seed: int = 0) -> CheckReport:
    """dual_norm(sum a_i u_i*) >= sum a_i^q - sum_{i<=n} 1/|F_i| and the global A bound."""
    if cfg.p <= 1:
        raise ValueError("lower l_q estimate needs p > 1")
    t0 = time.perf_counter()
    rep = _new_report("L2", cfg, seed)
    rec = _Recorder(rep)
    q = cfg.q
    recip_window = sum(Fraction(1, len(F)) for F in cfg.blocks)
    A = (1 - recip_window) / 2 if recip_window < 1 else None
    if coeffs is None:
        rng = _rng(seed, "L2")
        coeffs = []
        for _ in range(count):
            n = rng.randint(1, cfg.num_blocks)
            vals = [Fraction(rng.randint(0, 20), 20) for _ in range(n)]
            coeffs.append(_scale_into_ball(vals, q))
    for a in coeffs:
        a = [v if not isinstance(v, int) else Fraction(v) for v in a]
        inp = {"a": [_fmt(v) for v in a]}
        if any(v < 0 for v in a) or not holds(_qsum(a, q), "<=", 1, FLOAT_TOL):
            rep.skipped += 1
            continue
        rep.instances += 1
        n = len(a)
        exact = cfg.exact and all(is_exact(v) for v in a) and q.denominator == 1
        tol = None if exact else FLOAT_TOL
        f = combine_u_star(a, cfg)
        res, cert = certified_dual(f, cfg)
        rec.check(Fraction(int(cert)), "==", Fraction(1), inp | {"part": "certificate"})
        Sq = _qsum(a, q)
        recip = sum(Fraction(1, cfg.size(i)) for i in range(1, n + 1))
        rhs = Sq - recip
        rec.check(res.value, ">=", rhs, inp | {"part": "display"}, tol)
        # the explicit unit-ball vector of the argument
        gs = [l2_segment(v, cfg.size(i), q) for i, v in enumerate(a, 1)]
        u = SparseVector.indicator(c for i, g in enumerate(gs, 1) for c in cfg.block(i)[:g])
        rec.check(norm_bb(u, cfg).value if u else Fraction(0), "<=", Fraction(1), inp | {"part": "witness-norm"}, tol)
        val = sum((v * Fraction(g, cfg.size(i)) for i, (v, g) in enumerate(zip(a, gs), 1)), Fraction(0))
        rec.check(val, ">=", rhs, inp | {"part": "witness-value"}, tol)
        if A is not None:
            if exact:
                rec.check(res.value ** q.numerator, ">=", A ** q.numerator * Sq, inp | {"part": "A"})
            else:
                rec.check(res.value, ">=", to_mpf(A) * to_mpf(Sq) ** (1 / to_mpf(q)), inp | {"part": "A"}, tol)
    rep.runtime = time.perf_counter() - t0
    return rep


# --------------------------------------------------------------------------
# L3, L4, L5


def _need_section4(cfg: SpaceConfig):
    rep = config_validate(cfg)
    if cfg.mode != "section4" or not rep.ok:
        raise ValueError(f"check needs a valid section4 config: {rep.violations or cfg.mode}")


def _eps(cfg: SpaceConfig, n: int):
    return cfg.eps(n)


def _ge_eps(a, cfg: SpaceConfig, n: int) -> bool:
    return holds(a, ">=", _eps(cfg, n))


def l3_terms(u: SparseVector, I: Sequence[int], js: dict, cfg: SpaceConfig) -> Fraction:
    """sum_{i in I} a_{j_i} (|G_i|/|F_i|)^p with G_i = [min F_i, j_i] inside F_i."""
    total = Fraction(0)
    for i in I:
        F = cfg.block(i)
        g = F.index(js[i]) + 1
        total += u.get(js[i], 0) * cfg.weight(i, g)
    return total


def _random_nonneg_unit(cfg: SpaceConfig, rng: random.Random, density: float = 0.5) -> SparseVector:
    """Random u >= 0 on the window, scaled by its own norm when that exceeds 1."""
    entries = {}
    for c in cfg.window:
        if rng.random() < density:
            entries[c] = Fraction(rng.randint(1, 40), 40)
    if not entries:
        entries[rng.choice(cfg.window)] = Fraction(1)
    u = SparseVector(entries)
    nu = norm_bb(u, cfg).value
    return u.scale(1 / nu) if nu > 1 else u


def _l3_instance(cfg: SpaceConfig, rng: random.Random):
    # large entries at the chosen j_i, small elsewhere, then normalise
    blocks = list(range(1, cfg.num_blocks + 1))
    I = sorted(rng.sample(blocks, rng.randint(1, len(blocks))))
    js = {i: rng.choice(cfg.block(i)) for i in I}
    entries = {c: Fraction(rng.randint(0, 10), 40) for c in cfg.window if rng.random() < 0.4}
    for i in I:
        entries[js[i]] = Fraction(rng.randint(20, 40), 40)
    u = SparseVector(entries)
    nu = norm_bb(u, cfg).value
    if nu > 1:
        u = u.scale(1 / nu)
    low = min(u.get(js[i], 0) for i in I)
    n0 = 1
    while not _ge_eps(low, cfg, n0):
        n0 += 1
    n = n0 + rng.randint(0, 2)
    return u, n, I, js


def check_L3(cfg: SpaceConfig, instances: Optional[Sequence] = None, count: int = DEFAULT_COUNTS["L3"],
             seed: int = 0) -> CheckReport:
    """sum_{i in I} a_{j_i} (|G_i|/|F_i|)^p <= (n+1) ||u||."""
    _need_section4(cfg)
    t0 = time.perf_counter()
    rep = _new_report("L3", cfg, seed)
    rec = _Recorder(rep)
    if instances is None:
        rng = _rng(seed, "L3")
        instances = [_l3_instance(cfg, rng) for _ in range(count)]
    for u, n, I, js in instances:
        inp = {"u": _vec(u), "n": n, "I": list(I), "j": {str(i): js[i] for i in I}}
        nu = norm_bb(u, cfg).value
        pre = nu <= 1 and all(v >= 0 for v in u.values()) and all(
            js[i] in cfg.block(i) and _ge_eps(u.get(js[i], 0), cfg, n) for i in I
        )
        if not pre:
            rep.skipped += 1
            continue
        rep.instances += 1
        rec.check(l3_terms(u, I, js, cfg), "<=", (n + 1) * nu, inp)
    rep.runtime = time.perf_counter() - t0
    return rep


@dataclass
class LevelData:
    """Per-block quantities of the level decomposition of u >= 0."""

    lam0: dict[int, Fraction]  # sum_{a_j >= eps_1} a_j / |F_i|
    lam: dict[int, dict[int, Fraction]]  # n -> i -> sum_{a_j < eps_n} a_j / |F_i|
    seg: dict[int, dict[int, int]]  # n -> i -> |G_i^n| (0 when empty)


def level_data(u: SparseVector, I: Sequence[int], cfg: SpaceConfig, n_max: int) -> LevelData:
    eps = [None] + [cfg.eps(n) for n in range(1, n_max + 3)]

    def ge(v, n):
        # v >= eps_n; entries within the margin of eps_n cannot be classified
        if holds(v, ">=", eps[n]):
            return True
        if holds(v, "<", eps[n]):
            return False
        raise ValueError(f"entry {v} too close to eps_{n} to classify")

    lam0, lam, seg = {}, {n: {} for n in range(1, n_max + 2)}, {n: {} for n in range(0, n_max + 1)}
    for i in I:
        F = cfg.block(i)
        vals = [u.get(j, Fraction(0)) for j in F]
        levels = [[False] + [ge(v, n) for n in range(1, n_max + 3)] if v else [False] * (n_max + 3) for v in vals]
        lam0[i] = sum((v for v, lv in zip(vals, levels) if lv[1]), Fraction(0)) / len(F)
        for n in range(1, n_max + 2):
            lam[n][i] = sum((v for v, lv in zip(vals, levels) if not lv[n]), Fraction(0)) / len(F)
        seg[0][i] = max((g for g, lv in enumerate(levels, 1) if lv[1]), default=0)
        for n in range(1, n_max + 1):
            seg[n][i] = max((g for g, lv in enumerate(levels, 1) if lv[n + 1] and not lv[n]), default=0)
    return LevelData(lam0, lam, seg)


def default_n_max(u: SparseVector, cfg: SpaceConfig, cap: int = 64) -> int:
    """Smallest N with eps_{N+1} below every positive entry (so lambda^{N+1} = 0)."""
    low = min((v for v in u.values() if v > 0), default=None)
    if low is None:
        return 1
    N = 1
    while N < cap and not holds(low, ">=", cfg.eps(N + 1)):
        N += 1
    return N


def _weighted_seg_sum(u, I, cfg, seg_n) -> Fraction:
    total = Fraction(0)
    for i in I:
        g = seg_n[i]
        if g:
            total += u[cfg.block(i)[g - 1]] * cfg.weight(i, g)
    return total


def _l45_instance(cfg: SpaceConfig, rng: random.Random):
    u = _random_nonneg_unit(cfg, rng, density=rng.choice([0.2, 0.5, 0.8]))
    blocks = list(range(1, cfg.num_blocks + 1))
    I = sorted(rng.sample(blocks, rng.randint(1, len(blocks))))
    rhos = {i: Fraction(rng.randint(0, 30), 10) for i in I}
    return u, I, rhos, None


def check_L4_L5(cfg: SpaceConfig, instances: Optional[Sequence] = None, count: int = DEFAULT_COUNTS["L4L5"],
                seed: int = 0) -> CheckReport:
    """Both level bounds for n <= n_max and both level estimates, with the
    underlying segment bound sum a_{j_i^n} (|G_i^n|/|F_i|)^p <= (n+2)||u||."""
    _need_section4(cfg)
    t0 = time.perf_counter()
    rep = _new_report("L4L5", cfg, seed)
    rec = _Recorder(rep)
    p, q = cfg.p, cfg.q
    beta, gamma = to_mpf(cfg.beta), to_mpf(cfg.gamma)
    if instances is None:
        rng = _rng(seed, "L4L5")
        instances = [_l45_instance(cfg, rng) for _ in range(count)]
    for u, I, rhos, n_max in instances:
        inp = {"u": _vec(u), "I": list(I), "rho": {str(i): _fmt(rhos[i]) for i in I}}
        nu = norm_bb(u, cfg).value if u else Fraction(0)
        if nu > 1 or any(v < 0 for v in u.values()) or any(r < 0 for r in rhos.values()):
            rep.skipped += 1
            continue
        n_max = n_max or default_n_max(u, cfg)
        inp["n_max"] = n_max
        try:
            ld = level_data(u, I, cfg, n_max)
        except ValueError:
            rep.skipped += 1
            continue
        rep.instances += 1
        e1 = cfg.eps(1)
        rq = _qsum((rhos[i] for i in I), q)
        S = {n: _weighted_seg_sum(u, I, cfg, ld.seg[n]) for n in ld.seg}
        # segment bound from the three-measure argument, at level n + 1
        for n, s in S.items():
            rec.check(s, "<=", (n + 2) * nu, inp | {"part": f"L3[{n}]"})
        lhs0 = sum((rhos[i] * ld.lam0[i] for i in I), Fraction(0))
        rec.check(lhs0, "<=", _lin(rq, (1 / e1, S[0])), inp | {"part": "E1"})
        rec.check(lhs0, "<=", _lin(rq, (2 / e1, nu)), inp | {"part": "L5[0]"})
        for n in range(1, n_max + 1):
            en = cfg.eps(n)
            lhs = sum((rhos[i] * ld.lam[n][i] for i in I), Fraction(0))
            nxt = sum((rhos[i] * ld.lam[n + 1][i] for i in I), Fraction(0))
            rec.check(lhs, "<=", _lin(nxt, (en ** gamma, S[n]), (en ** beta, rq)), inp | {"part": f"E2[{n}]"})
            rec.check(lhs, "<=", _lin(nxt, ((n + 2) * en ** gamma, nu), (en ** beta, rq)), inp | {"part": f"L5[{n}]"})
    rep.runtime = time.perf_counter() - t0
    return rep


# --------------------------------------------------------------------------
# C2 / T3


@dataclass
class BConstant:
    lower: mpmath.mpf  # truncated series, a lower bound for B
    upper: mpmath.mpf  # lower + certified tail bound
    terms: int


def b_constant(cfg: SpaceConfig, target=TAIL_TARGET, max_terms: int = 10_000) -> BConstant:
    """B = 4(1 + 2/eps_1 + sum eps_n^beta + sum (n+2) eps_n^gamma) with a certified tail.

    Terms t_n = eps_n^beta + (n+2) eps_n^gamma satisfy t_{n+1}/t_n <= r_n with
    r_n = max(eps_n^(beta(alpha-1)), (n+3)/(n+2) eps_n^(gamma(alpha-1))), and r_n
    decreases in n; hence sum_{n>N} t_n <= t_{N+1} / (1 - r_{N+1}).
    """
    if cfg.mode != "section4":
        raise ValueError("B needs section4 parameters")
    al, be, ga = to_mpf(cfg.alpha), to_mpf(cfg.beta), to_mpf(cfg.gamma)
    base = 1 + 2 / cfg.eps(1)
    s = mpmath.mpf(0)
    for N in range(1, max_terms + 1):
        e = cfg.eps(N)
        s += e ** be + (N + 2) * e ** ga
        e1 = cfg.eps(N + 1)
        t_next = e1 ** be + (N + 3) * e1 ** ga
        r = max(e1 ** (be * (al - 1)), mpmath.mpf(N + 4) / (N + 3) * e1 ** (ga * (al - 1)))
        if r < 1:
            tail = t_next / (1 - r)
            if 4 * tail < target:
                return BConstant(4 * (base + s), 4 * (base + s + tail), N)
    raise RuntimeError("B series did not reach the tail target")


def _c2_instance(cfg: SpaceConfig, rng: random.Random):
    n = rng.randint(1, cfg.num_blocks)
    vals = [Fraction(rng.randint(-20, 20), 20) for _ in range(n)]
    return _scale_into_ball(vals, cfg.q)


def check_C2_T3(cfg: SpaceConfig, rhos: Optional[Sequence[Sequence]] = None, count: int = DEFAULT_COUNTS["C2T3"],
                seed: int = 0) -> CheckReport:
    """A ||rho||_q <= ||sum rho_i u_i*|| <= B ||rho||_q with A = (1 - sum 1/|F_i|)/2."""
    _need_section4(cfg)
    t0 = time.perf_counter()
    rep = _new_report("C2T3", cfg, seed)
    rec = _Recorder(rep)
    q = cfg.q
    B = b_constant(cfg).lower
    A = (1 - sum(Fraction(1, len(F)) for F in cfg.blocks)) / 2
    if rhos is None:
        rng = _rng(seed, "C2T3")
        rhos = [_c2_instance(cfg, rng) for _ in range(count)]
    for rho in rhos:
        rho = [Fraction(v) if isinstance(v, int) else v for v in rho]
        inp = {"rho": [_fmt(v) for v in rho]}
        Sq = _qsum(rho, q)
        if not holds(Sq, "<=", 1, FLOAT_TOL):
            rep.skipped += 1
            continue
        rep.instances += 1
        exact = cfg.exact and q.denominator == 1 and all(is_exact(v) for v in rho)
        res, cert = certified_dual(combine_u_star(rho, cfg), cfg)
        rec.check(Fraction(int(cert)), "==", Fraction(1), inp | {"part": "certificate"})
        if exact:
            rec.check(res.value ** q.numerator, ">=", A ** q.numerator * Sq, inp | {"part": "lower"})
        else:
            rec.check(res.value, ">=", to_mpf(A) * to_mpf(Sq) ** (1 / to_mpf(q)), inp | {"part": "lower"}, FLOAT_TOL)
        norm_q = Fraction(0) if Sq == 0 else to_mpf(Sq) ** (1 / to_mpf(q))
        rec.check(res.value, "<=", _lin(Fraction(0), (B, norm_q)), inp | {"part": "upper"})
    rep.runtime = time.perf_counter() - t0
    return rep


# --------------------------------------------------------------------------
# suites


def _run_one(sid: str, cfg: SpaceConfig, seed: int, count: Optional[int]) -> CheckReport:
    kw = {"seed": seed}
    if count is not None:
        kw["count"] = count
    if sid == "L1":
        return check_L1(cfg, **kw)
    if sid == "L2":
        return check_L2_lower(cfg, **kw)
    if sid == "L3":
        return check_L3(cfg, **kw)
    if sid == "L4L5":
        return check_L4_L5(cfg, **kw)
    if sid == "C2T3":
        return check_C2_T3(cfg, **kw)
    raise ValueError(f"unknown suite {sid!r}")


def run_suite(cfg: SpaceConfig, suites: Iterable[str] = SUITES, seed: int = 0,
              count: Optional[int] = None) -> CheckReport:
    """Run the selected checks; checks needing section4 parameters are skipped on basic configs."""
    suites = list(suites)
    for sid in suites:
        if sid not in SUITES:
            raise ValueError(f"unknown suite {sid!r}")
    t0 = time.perf_counter()
    agg = CheckReport(id="suite:" + ",".join(suites), config=cfg.digest, seed=seed)
    for sid in suites:
        if sid in SECTION4_ONLY and cfg.mode != "section4":
            agg.skipped += 1
            continue
        rep = _run_one(sid, cfg, seed, count)
        agg.parts.append(rep)
        agg.instances += rep.instances
        agg.failures.extend(rep.failures)
    agg.runtime = time.perf_counter() - t0
    return agg
