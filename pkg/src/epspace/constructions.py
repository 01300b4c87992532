"""Derived objects: block averages u_n*, the quotient Q, repeated averages and
the witness families used against embeddings into C(K) for countable K.

Repeated averages of order a on an increasing list M::

    order 0      point mass at min M
    order b + 1  uniform average of n = min M successive order-b averages,
                 built greedily left to right
    order a      (a a limit) the order a[min M] average
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .norm import norm_bb
from .ordinals import Ordinal, OrdinalLike, as_ordinal, fundamental_sequence
from .schreier import ResourceLimitError, finset, schreier_subsets
from .space import Admissible, PMeasure, SpaceConfig, SparseVector, check_functional

SIMULATION_CAP = 10**6


class PreconditionError(ValueError):
    """Strict-mode hypotheses on M, eps and the blocks fail."""


class SmallnessError(RuntimeError):
    """No witness family passed the validation; carries the violating set."""

    def __init__(self, message: str, violating: tuple = (), value=None):
        super().__init__(message)
        self.violating = violating
        self.value = value


class ExhaustedError(ValueError):
    """The list M is too short for the requested repeated average."""

    def __init__(self, message: str, required: Optional[int]):
        super().__init__(message)
        self.required = required


# --------------------------------------------------------------------------
# block averages


def u_star(n: int, cfg: SpaceConfig) -> dict[int, Fraction]:
    """Uniform average of the coordinate functionals over F_n."""
    F = cfg.block(n)
    return {i: Fraction(1, len(F)) for i in F}


def combine_u_star(coeffs: Sequence, cfg: SpaceConfig, blocks: Optional[Sequence[int]] = None) -> dict:
    """sum_i coeffs[i] * u_{blocks[i]}* as a coefficient map (blocks default 1, 2, ...)."""
    blocks = list(blocks) if blocks is not None else list(range(1, len(coeffs) + 1))
    f: dict = {}
    for n, a in zip(blocks, coeffs):
        if a != 0:
            for i, w in u_star(n, cfg).items():
                f[i] = f.get(i, 0) + a * w
    return f


def quotient_apply(x, cfg: SpaceConfig) -> tuple:
    """Block averages (u_n*(x))_n over the window."""
    out = []
    for F in cfg.blocks:
        s = sum((x.get(i, 0) for i in F), Fraction(0))
        out.append(s / len(F))
    return tuple(out)


# --------------------------------------------------------------------------
# repeated averages


@dataclass(frozen=True)
class ProbMeasure:
    atoms: tuple[tuple[int, Fraction], ...]

    def __init__(self, atoms):
        items = atoms.items() if isinstance(atoms, dict) else atoms
        merged: dict[int, Fraction] = {}
        for k, w in items:
            merged[int(k)] = merged.get(int(k), Fraction(0)) + Fraction(w)
        if any(w <= 0 for w in merged.values()):
            raise ValueError("probability weights are positive")
        if sum(merged.values()) != 1:
            raise ValueError(f"weights sum to {sum(merged.values())}, not 1")
        object.__setattr__(self, "atoms", tuple(sorted(merged.items())))

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(k for k, _ in self.atoms)

    def __getitem__(self, k) -> Fraction:
        return dict(self.atoms).get(k, Fraction(0))

    def mass(self, F: Iterable[int]) -> Fraction:
        d = dict(self.atoms)
        return sum((d.get(k, Fraction(0)) for k in set(F)), Fraction(0))

    def as_dict(self) -> dict[int, Fraction]:
        return dict(self.atoms)


def _average(a: Ordinal, M: Sequence[int], start: int, budget: list) -> tuple[dict, int]:
    """Order-a average on M[start:]; returns (weights, next unused index)."""
    if start >= len(M):
        raise IndexError
    budget[0] -= 1
    if budget[0] < 0:
        raise ResourceLimitError(f"repeated average needs more than {SIMULATION_CAP} steps")
    first = M[start]
    if a.is_zero:
        return {first: Fraction(1)}, start + 1
    if a.is_limit:
        return _average(fundamental_sequence(a, first), M, start, budget)
    b = a.predecessor()
    out: dict = {}
    pos = start
    parts = []
    for _ in range(first):
        w, pos = _average(b, M, pos, budget)
        parts.append(w)
    scale = Fraction(1, first)
    for w in parts:
        for k, v in w.items():
            out[k] = out.get(k, Fraction(0)) + v * scale
    return out, pos


def repeated_average(a: OrdinalLike, M: Iterable[int]) -> tuple[ProbMeasure, tuple[int, ...]]:
    """The order-a repeated average on M and the prefix of M it consumes."""
    a = as_ordinal(a)
    M = finset(M)
    if not M:
        raise ExhaustedError("M is empty", 1)
    try:
        weights, used = _average(a, M, 0, [SIMULATION_CAP])
    except IndexError:
        required = _required_length(a, M)
        need = str(required) if required is not None else f"more than {SIMULATION_CAP}"
        raise ExhaustedError(f"order-{a} average needs {need} elements of M, got {len(M)}", required) from None
    return ProbMeasure(weights), M[:used]


def _required_length(a: Ordinal, M: Sequence[int]) -> Optional[int]:
    """Length needed on M extended by consecutive integers past max M."""
    n, last = len(M), M[-1]
    steps = [SIMULATION_CAP]

    def run(b: Ordinal, pos: int) -> int:
        steps[0] -= 1
        if pos >= SIMULATION_CAP or steps[0] < 0:
            raise ResourceLimitError
        first = M[pos] if pos < n else last + 1 + pos - n
        if b.is_zero:
            return pos + 1
        if b.is_limit:
            return run(fundamental_sequence(b, first), pos)
        c = b.predecessor()
        for _ in range(first):
            pos = run(c, pos)
        return pos

    try:
        return run(a, 0)
    except ResourceLimitError:
        return None


# --------------------------------------------------------------------------
# witness families


@dataclass
class WitnessFamily:
    M: tuple[int, ...]
    alpha: Ordinal
    eps: Fraction
    u: dict[int, SparseVector]
    k: int
    order: Ordinal
    offset: int
    mus: list[ProbMeasure]
    segments: dict[tuple[int, int], int]  # (i, m) -> |G_im|
    taus: list[Optional[PMeasure]]
    D: Fraction
    checks: dict[str, bool] = field(default_factory=dict)
    largest_small: tuple = ((), Fraction(0))  # (F, ||sum_{m in F} u_m||) maximising the norm

    @property
    def total(self) -> SparseVector:
        out = SparseVector()
        for v in self.u.values():
            out = out + v
        return out


def e7_length(mu: Fraction, size: int, p: Fraction) -> int:
    """Largest g with (g / size) ** p <= mu, decided without extracting roots."""
    P, Q = p.numerator, p.denominator
    target = Fraction(mu) ** Q
    lo, hi = 0, size
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if Fraction(mid, size) ** P <= target:
            lo = mid
        else:
            hi = mid - 1
    return lo


def _successive_measures(order: Ordinal, M: Sequence[int], k: int):
    pos, out = 0, []
    budget = [SIMULATION_CAP]
    for _ in range(k):
        w, pos = _average(order, M, pos, budget)
        out.append(ProbMeasure(w))
    return out


def _assemble(cfg: SpaceConfig, M, k, mus):
    p = cfg.p
    segments, taus = {}, []
    v: dict[int, SparseVector] = {m: SparseVector() for m in M}
    for i, mu in enumerate(mus, 1):
        segs = {}
        for m, w in mu.atoms:
            g = e7_length(w, cfg.size(m), p)
            segments[(i, m)] = g
            if g:
                segs[m] = g
                v[m] = SparseVector.indicator(cfg.block(m)[:g], Fraction(1, k))
        taus.append(PMeasure(segs) if segs else None)
    return segments, taus, v


def _small_sets(cfg, a, M, u, eps):
    """Largest ||sum_{m in F} u_m|| over F in S_a inside M, with a maximiser."""
    live = {m for m in M if u[m]}
    best_F, best = (), Fraction(0)
    seen = set()
    for F in schreier_subsets(a, M):
        key = tuple(m for m in F if m in live)
        if key in seen:
            continue
        seen.add(key)
        x = SparseVector()
        for m in key:
            x = x + u[m]
        val = norm_bb(x, cfg).value
        if val > best:
            best_F, best = F, val
    return best_F, best


def c5_witness(M: Iterable[int], a: OrdinalLike, eps, cfg: SpaceConfig, strict: bool = False) -> WitnessFamily:
    """Witness family (u_m)_{m in M} with small S_a sums and unit total.

    ``M`` lists block indices.  Strict mode enforces the quantitative
    hypotheses on M and eps; lab mode skips them and validates the outputs.
    """
    if not cfg.exact:
        raise ValueError("witness families are built in exact mode (integer p)")
    a = as_ordinal(a)
    eps = Fraction(eps)
    M = finset(M)
    if not M:
        raise ValueError("M must be non-empty")
    for m in M:
        cfg.block(m)
    two = Fraction(2) ** (cfg.p.numerator + 1)
    recip = sum(Fraction(1, cfg.size(m)) for m in M)
    if strict:
        problems = []
        if not M[0] > two / eps:
            problems.append(f"min M = {M[0]} not > 2^(p+1)/eps = {two / eps}")
        if not recip < 1 / two:
            problems.append(f"sum 1/|F_m| = {recip} not < 1/2^(p+1) = {1 / two}")
        if problems:
            raise PreconditionError("; ".join(problems))
    k = cfg.blocks[M[0] - 1][0]
    orders = [a.successor()]
    if not strict:
        orders.append(a)
        if a.is_finite:
            orders.extend(Ordinal.finite(j) for j in range(int(a) - 1, -1, -1))
    first_failure = None
    for order in orders:
        for offset in range(len(M)):
            try:
                mus = _successive_measures(order, M[offset:], k)
            except (IndexError, ResourceLimitError):
                break
            fam = _build(cfg, M, a, eps, k, order, offset, mus, strict, two, recip)
            if all(fam.checks.values()):
                return fam
            if first_failure is None:
                first_failure = fam
    if first_failure is None:
        raise SmallnessError(f"M = {M} is too short for {k} successive repeated averages")
    F, val = first_failure.largest_small
    raise SmallnessError(
        f"no witness family found; ||sum over F={F}|| = {val} >= eps = {eps}", violating=F, value=val
    )


def _build(cfg, M, a, eps, k, order, offset, mus, strict, two, recip) -> WitnessFamily:
    segments, taus, v = _assemble(cfg, M, k, mus)
    checks: dict[str, bool] = {}
    # each tau_i within budget, and the non-empty ones admissible
    live = [t for t in taus if t is not None]
    try:
        if live:
            check_functional(Admissible(live), cfg)
        checks["tau_in_M"] = True
    except ValueError:
        checks["tau_in_M"] = False
    total = SparseVector()
    for m in M:
        total = total + v[m]
    D = norm_bb(total, cfg).value
    if D == 0:
        checks["normalised"] = False
        return WitnessFamily(M, a, eps, v, k, order, offset, mus, segments, taus, D, checks)
    u = {m: v[m].scale(1 / D) for m in M}
    if strict:
        checks["D_lower"] = D > 1 / two
        checks["D_estimate"] = two / 2 * D >= 1 - two / 2 * recip
    utotal = SparseVector()
    for m in M:
        utotal = utotal + u[m]
    checks["normalised"] = norm_bb(utotal, cfg).value == 1
    block_sets = {m: set(cfg.block(m)) for m in M}
    checks["dominated"] = all(
        all(c in block_sets[m] and abs(val) <= 1 for c, val in u[m].items()) for m in M
    )
    F, val = _small_sets(cfg, a, M, u, eps)
    checks["small"] = val < eps
    fam = WitnessFamily(M, a, eps, u, k, order, offset, mus, segments, taus, D, checks, (F, val))
    return fam
