"""Space configurations, vectors, p-measures and the functionals of M_p.

A configuration fixes the successive blocks ``F_1 < F_2 < ...`` (a finite
window of them), the exponent ``p`` and, in ``section4`` mode, the parameters
theta, alpha, beta, gamma that drive ``eps_n = theta ** (alpha ** n)``.

Block indices and segment lengths are 1-based throughout: segment length ``g``
in block ``n`` is the initial segment of ``F_n`` of size ``g``, whose atom is
``F_n[g-1]`` and whose weight is ``(g / |F_n|) ** p``.
"""

from __future__ import annotations

import hashlib
import re
from collections.abc import Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Optional, Union

import mpmath

from . import numeric
from .numeric import is_exact, parse_rational, rational_power, to_mpf


class StructuralError(ValueError):
    """A functional or vector does not fit the configuration's window."""


# --------------------------------------------------------------------------
# vectors


class SparseVector(Mapping):
    """Finitely supported vector: coordinate -> non-zero value."""

    __slots__ = ("_d", "_hash")

    def __init__(self, entries: Union[Mapping, Iterable[tuple[int, object]], None] = None):
        items = entries.items() if isinstance(entries, Mapping) else (entries or ())
        d = {}
        for k, v in items:
            k = int(k)
            if k < 1:
                raise ValueError(f"coordinates are positive integers, got {k}")
            if isinstance(v, int):
                v = Fraction(v)
            elif isinstance(v, str):
                v = parse_rational(v)
            elif isinstance(v, float):
                raise TypeError("use Fraction or mpf, not float")
            if v != 0:
                d[k] = v
        self._d = dict(sorted(d.items()))
        self._hash = None

    @classmethod
    def parse(cls, text: str) -> "SparseVector":
        """``"3:1,6:-1/2"`` -> {3: 1, 6: -1/2}."""
        entries = []
        for part in filter(None, (t.strip() for t in text.split(","))):
            k, _, v = part.partition(":")
            if not _:
                raise ValueError(f"expected coord:value, got {part!r}")
            entries.append((int(k), parse_rational(v)))
        return cls(entries)

    @classmethod
    def indicator(cls, coords: Iterable[int], value=1) -> "SparseVector":
        return cls((c, value) for c in coords)

    def __getitem__(self, k):
        return self._d[k]

    # dict views directly; the Mapping mixins are slow on hot paths
    def items(self):
        return self._d.items()

    def values(self):
        return self._d.values()

    def keys(self):
        return self._d.keys()

    def get(self, k, default=None):
        return self._d.get(k, default)

    def get(self, k, default=0):
        return self._d.get(k, default)

    def __iter__(self) -> Iterator[int]:
        return iter(self._d)

    def __len__(self):
        return len(self._d)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._d.items()))
        return self._hash

    def __eq__(self, other):
        if isinstance(other, SparseVector):
            return self._d == other._d
        return NotImplemented

    def __repr__(self):
        body = ", ".join(f"{k}: {numeric.format_number(v)}" for k, v in self._d.items())
        return f"SparseVector({{{body}}})"

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(self._d)

    @property
    def exact(self) -> bool:
        return all(is_exact(v) for v in self._d.values())

    def __add__(self, other: "SparseVector") -> "SparseVector":
        d = dict(self._d)
        for k, v in other.items():
            d[k] = d.get(k, 0) + v
        return SparseVector(d)

    def __sub__(self, other: "SparseVector") -> "SparseVector":
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> "SparseVector":
        return SparseVector({k: c * v for k, v in self._d.items()})

    def restrict(self, coords: Iterable[int]) -> "SparseVector":
        keep = set(coords)
        return SparseVector({k: v for k, v in self._d.items() if k in keep})

    def positive_part(self) -> "SparseVector":
        return SparseVector({k: v for k, v in self._d.items() if v > 0})

    def negative_part(self) -> "SparseVector":
        return SparseVector({k: -v for k, v in self._d.items() if v < 0})

    def max_abs(self):
        return max((abs(v) for v in self._d.values()), default=Fraction(0))

    def dot(self, coeffs: Mapping):
        return sum((v * coeffs[k] for k, v in self._d.items() if k in coeffs), Fraction(0))

    def format(self) -> str:
        return ",".join(f"{k}:{numeric.format_number(v)}" for k, v in self._d.items())


# --------------------------------------------------------------------------
# configurations


@dataclass(frozen=True)
class SpaceConfig:
    p: Fraction
    blocks: tuple[tuple[int, ...], ...]
    mode: str = "basic"
    theta: Optional[Fraction] = None
    alpha: Optional[Fraction] = None
    beta: Optional[Fraction] = None
    gamma: Optional[Fraction] = None
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "p", Fraction(self.p))
        object.__setattr__(self, "blocks", tuple(tuple(sorted(int(e) for e in b)) for b in self.blocks))
        for attr in ("theta", "alpha", "beta", "gamma"):
            v = getattr(self, attr)
            if v is not None:
                object.__setattr__(self, attr, Fraction(v))
        if self.mode not in ("basic", "section4"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.p < 1:
            raise ValueError("p must be >= 1")
        if any(len(b) == 0 for b in self.blocks):
            raise ValueError("blocks must be non-empty")
        if any(b[0] < 1 for b in self.blocks):
            raise ValueError("block elements are positive integers")
        if self.mode == "section4" and None in (self.theta, self.alpha, self.beta, self.gamma):
            raise ValueError("section4 mode needs theta, alpha, beta, gamma")

    # -- structure ---------------------------------------------------------

    @property
    def num_blocks(self) -> int:
        return len(self.blocks)

    @property
    def exact(self) -> bool:
        """Weights are exact rationals iff p is an integer."""
        return self.p.denominator == 1

    @property
    def q(self) -> Fraction:
        if self.p == 1:
            raise ValueError("p = 1 has no finite conjugate exponent")
        return self.p / (self.p - 1)

    def block(self, n: int) -> tuple[int, ...]:
        if not 1 <= n <= len(self.blocks):
            raise StructuralError(f"block {n} outside the window 1..{len(self.blocks)}")
        return self.blocks[n - 1]

    def size(self, n: int) -> int:
        return len(self.block(n))

    def atom(self, n: int, g: int) -> int:
        F = self.block(n)
        if not 1 <= g <= len(F):
            raise StructuralError(f"segment length {g} invalid for block {n} of size {len(F)}")
        return F[g - 1]

    @cached_property
    def _locator(self) -> dict[int, tuple[int, int]]:
        return {e: (n, g) for n, F in enumerate(self.blocks, 1) for g, e in enumerate(F, 1)}

    def locate(self, coord: int) -> Optional[tuple[int, int]]:
        """(block index, position) of ``coord``, or None if it lies in no block."""
        return self._locator.get(coord)

    @cached_property
    def window(self) -> tuple[int, ...]:
        return tuple(e for F in self.blocks for e in F)

    @cached_property
    def _weights(self) -> dict[tuple[int, int], object]:
        return {
            (n, g): rational_power(Fraction(g, len(F)), self.p)
            for n, F in enumerate(self.blocks, 1)
            for g in range(1, len(F) + 1)
        }

    def weight(self, n: int, g: int):
        """(g / |F_n|) ** p; exact when p is an integer."""
        try:
            return self._weights[(n, g)]
        except KeyError:
            self.atom(n, g)  # raises the structural error
            raise

    @cached_property
    def weight_denominator(self) -> int:
        """Common denominator of all exact weights (1 in float mode)."""
        if not self.exact:
            return 1
        L = 1
        for F in self.blocks:
            L = _lcm(L, len(F) ** self.p.numerator)
        return L

    def eps(self, n: int) -> mpmath.mpf:
        """eps_n = theta ** (alpha ** n) to 60 digits."""
        self._need_section4()
        return to_mpf(self.theta) ** (to_mpf(self.alpha) ** n)

    def _need_section4(self):
        if self.mode != "section4":
            raise ValueError("operation needs a section4-mode configuration")

    @property
    def digest(self) -> str:
        return hashlib.sha256(format_config(self).encode()).hexdigest()[:16]

    def __str__(self):
        return self.name or format_config(self).replace("\n", "; ")


def _lcm(a: int, b: int) -> int:
    from math import gcd

    return a // gcd(a, b) * b


# --------------------------------------------------------------------------
# config files

_RANGE = re.compile(r"^(\d+)(?:-(\d+))?$")


def parse_config(text: str, name: str = "") -> SpaceConfig:
    """Parse ``key = value`` lines; ``blocks = [2-3, 4-6, 7-10]``."""
    vals: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ValueError(f"line {lineno}: expected key = value, got {raw!r}")
        vals[key.strip().lower()] = value.strip()
    unknown = set(vals) - {"p", "mode", "blocks", "theta", "alpha", "beta", "gamma", "name"}
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    if "p" not in vals or "blocks" not in vals:
        raise ValueError("config needs p and blocks")
    blocks_s = vals["blocks"].strip()
    if not (blocks_s.startswith("[") and blocks_s.endswith("]")):
        raise ValueError("blocks must be a bracketed list of ranges")
    blocks = []
    for part in filter(None, (t.strip() for t in blocks_s[1:-1].split(","))):
        m = _RANGE.match(part)
        if not m:
            raise ValueError(f"bad block range {part!r}")
        lo = int(m.group(1))
        hi = int(m.group(2)) if m.group(2) else lo
        if hi < lo:
            raise ValueError(f"empty block range {part!r}")
        blocks.append(tuple(range(lo, hi + 1)))
    kw = {k: parse_rational(vals[k]) for k in ("theta", "alpha", "beta", "gamma") if k in vals}
    return SpaceConfig(
        p=parse_rational(vals["p"]),
        blocks=tuple(blocks),
        mode=vals.get("mode", "basic"),
        name=vals.get("name", name),
        **kw,
    )


def format_config(cfg: SpaceConfig) -> str:
    def rng(F):
        if list(F) == list(range(F[0], F[-1] + 1)):
            return f"{F[0]}-{F[-1]}" if len(F) > 1 else f"{F[0]}"
        raise ValueError("config files only describe interval blocks")

    lines = [f"p = {numeric.format_number(cfg.p)}", f"mode = {cfg.mode}"]
    lines.append("blocks = [" + ", ".join(rng(F) for F in cfg.blocks) + "]")
    for attr in ("theta", "alpha", "beta", "gamma"):
        v = getattr(cfg, attr)
        if v is not None:
            lines.append(f"{attr} = {numeric.format_number(v)}")
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# validation


@dataclass
class ValidationReport:
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok


def config_validate(cfg: SpaceConfig, growth: bool = False) -> ValidationReport:
    """Report every violated constraint of the config's declared mode.

    ``growth=True`` additionally requires nondecreasing block sizes (needed
    before building witness families).
    """
    rep = ValidationReport()
    for n in range(1, cfg.num_blocks):
        if cfg.blocks[n - 1][-1] >= cfg.blocks[n][0]:
            rep.violations.append(
                f"blocks not successive: max F_{n} = {cfg.blocks[n - 1][-1]} >= min F_{n + 1} = {cfg.blocks[n][0]}"
            )
    if growth:
        for n in range(1, cfg.num_blocks):
            if len(cfg.blocks[n]) < len(cfg.blocks[n - 1]):
                rep.violations.append(f"block sizes decrease: |F_{n + 1}| < |F_{n}|")
    if cfg.mode != "section4":
        return rep

    p, th, al, be, ga = cfg.p, cfg.theta, cfg.alpha, cfg.beta, cfg.gamma
    if p <= 1:
        rep.violations.append("section4 needs p > 1")
    if not 0 < th < 1:
        rep.violations.append(f"theta = {th} not in (0,1)")
    if al <= 1:
        rep.violations.append(f"alpha = {al} not > 1")
    if be <= 0:
        rep.violations.append(f"beta = {be} not > 0")
    if ga <= 0:
        rep.violations.append(f"gamma = {ga} not > 0")
    if p > 1:
        # beta / (q - 1) == beta * (p - 1)
        lhs = al + be * (p - 1) + ga
        if lhs != p:
            rep.violations.append(f"alpha + beta/(q-1) + gamma = {lhs} != p = {p}")
    recip = sum(Fraction(1, len(F)) for F in cfg.blocks)
    if recip >= 1:
        rep.violations.append(f"sum 1/|F_n| = {recip} not < 1")
    if 0 < th < 1 and al > 1:
        for n in range(1, cfg.num_blocks + 1):
            lo = cfg.blocks[n - 1][0]
            bound = 1 + 2 / cfg.eps(n)
            if not lo > bound:
                rep.violations.append(
                    f"min F_{n} = {lo} not > 1 + 2/eps_{n} = {mpmath.nstr(bound, 8)}"
                )
    return rep


# --------------------------------------------------------------------------
# functionals


@dataclass(frozen=True)
class PMeasure:
    """Segment lengths per block: ``{block index: g}``; absent blocks are empty."""

    segments: tuple[tuple[int, int], ...]

    def __init__(self, segments: Union[Mapping[int, int], Iterable[tuple[int, int]]]):
        items = segments.items() if isinstance(segments, Mapping) else segments
        segs = tuple(sorted((int(n), int(g)) for n, g in items))
        if not segs:
            raise ValueError("the empty p-measure is not a value")
        if len({n for n, _ in segs}) != len(segs):
            raise ValueError("one segment per block")
        if any(g < 1 for _, g in segs):
            raise ValueError("segment lengths are >= 1")
        object.__setattr__(self, "segments", segs)

    @property
    def blocks(self) -> tuple[int, ...]:
        return tuple(n for n, _ in self.segments)

    def budget(self, cfg: SpaceConfig):
        return sum((cfg.weight(n, g) for n, g in self.segments), Fraction(0))

    def atoms(self, cfg: SpaceConfig) -> dict[int, object]:
        return {cfg.atom(n, g): cfg.weight(n, g) for n, g in self.segments}

    def encode(self):
        return self.segments

    def __str__(self):
        return "{" + ",".join(f"b{n}:g={g}" for n, g in self.segments) + "}"


@dataclass(frozen=True)
class Unit:
    """The coordinate functional e_n*."""

    n: int

    def encode(self):
        return (0, (self.n,))

    def __str__(self):
        return f"Unit({self.n})"


@dataclass(frozen=True)
class Admissible:
    """Sum of an admissible sequence of p-measures."""

    measures: tuple[PMeasure, ...]

    def __init__(self, measures: Iterable[PMeasure]):
        ms = tuple(measures)
        if not ms:
            raise ValueError("an admissible sum needs at least one p-measure")
        object.__setattr__(self, "measures", ms)

    def encode(self):
        return (1, tuple(m.encode() for m in self.measures))

    def atoms(self, cfg: SpaceConfig) -> dict[int, object]:
        out: dict[int, object] = {}
        for m in self.measures:
            for a, w in m.atoms(cfg).items():
                out[a] = out.get(a, 0) + w
        return out

    def __str__(self):
        return "Admissible[" + ",".join(str(m) for m in self.measures) + "]"


NormFunctional = Union[Unit, Admissible]


def functional_atoms(fn: NormFunctional, cfg: SpaceConfig) -> dict[int, object]:
    """The functional as a finitely supported measure: coordinate -> mass."""
    if isinstance(fn, Unit):
        return {fn.n: Fraction(1)}
    return fn.atoms(cfg)


def admissible_check(ms: Iterable[PMeasure], cfg: SpaceConfig) -> bool:
    """Successive supports and ``k <= min F_{m_1}``.

    Successive is taken block-wise: every block used by one measure precedes
    every block used by the next, so no block is visited twice.
    """
    ms = list(ms)
    if not ms:
        return False
    for m in ms:
        for n, g in m.segments:
            cfg.atom(n, g)
    for left, right in zip(ms, ms[1:]):
        if left.blocks[-1] >= right.blocks[0]:
            return False
    return len(ms) <= cfg.blocks[ms[0].blocks[0] - 1][0]


def check_functional(fn: NormFunctional, cfg: SpaceConfig) -> None:
    """Raise unless ``fn`` is a member of M_p for ``cfg``."""
    if isinstance(fn, Unit):
        if fn.n < 1:
            raise StructuralError(f"bad coordinate {fn.n}")
        return
    for m in fn.measures:
        if not numeric.leq(m.budget(cfg), 1):
            raise ValueError(f"p-measure {m} exceeds the budget: {m.budget(cfg)}")
    if not admissible_check(fn.measures, cfg):
        raise ValueError(f"{fn} is not an admissible sequence")


def functional_value(fn: NormFunctional, x: Mapping, cfg: SpaceConfig):
    """sum_n x(n) * fn(n)."""
    if isinstance(fn, Unit):
        return x.get(fn.n, Fraction(0))
    total = Fraction(0)
    vals = []
    for m in fn.measures:
        for n, g in m.segments:
            a = cfg.atom(n, g)
            xv = x.get(a, 0)
            if xv:
                vals.append((cfg.weight(n, g), xv))
    if any(not is_exact(w) or not is_exact(v) for w, v in vals):
        return sum((to_mpf(w) * to_mpf(v) for w, v in vals), mpmath.mpf(0))
    for w, v in vals:
        total += w * v
    return total


def functional_restrict(fn: NormFunctional, I: Iterable[int], cfg: SpaceConfig) -> Optional[NormFunctional]:
    """Restriction to the atoms inside ``I``; None when nothing survives."""
    keep = set(I)
    if isinstance(fn, Unit):
        return fn if fn.n in keep else None
    out = []
    for m in fn.measures:
        segs = [(n, g) for n, g in m.segments if cfg.atom(n, g) in keep]
        if segs:
            out.append(PMeasure(segs))
    if not out:
        return None
    res = Admissible(out)
    check_functional(res, cfg)
    return res


def parse_functional_coeffs(text: str) -> dict[int, Fraction]:
    """``"2:1/2,3:1/2"`` -> coefficient map over coordinate functionals."""
    return dict(SparseVector.parse(text).items())
